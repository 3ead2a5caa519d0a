#pragma once

// Independent reference computations used by the unit and acceptance tests.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "scripta/network.hpp"
#include "scripta/rng.hpp"

namespace scripta::oracle {

// E = sum_k (d_k - y_k)^2 evaluated from scratch, without the library's
// forward pass.
inline double squared_error(const FeedForwardNet& net, const std::vector<double>& x,
                            const std::vector<double>& d) {
    auto act = [](double v) { return 1.0 / (1.0 + std::exp(-v)); };
    std::vector<double> h(net.hidden_size());
    for (std::size_t j = 0; j < h.size(); ++j) {
        double s = net.hidden().bias(j);
        for (std::size_t i = 0; i < x.size(); ++i) s += net.hidden().at(j, i) * x[i];
        h[j] = act(s);
    }
    double e = 0.0;
    for (std::size_t k = 0; k < net.output_size(); ++k) {
        double s = net.output().bias(k);
        for (std::size_t j = 0; j < h.size(); ++j) s += net.output().at(k, j) * h[j];
        const double diff = d[k] - act(s);
        e += diff * diff;
    }
    return e;
}

enum class Layer { Hidden, Output };

// -1/2 dE/dw by central differences.
inline double fd_update(FeedForwardNet net, const std::vector<double>& x, const std::vector<double>& d,
                        Layer layer, std::size_t j, std::size_t i, double step = 1e-5) {
    double& w = layer == Layer::Hidden ? net.hidden().at(j, i) : net.output().at(j, i);
    const double orig = w;
    w = orig + step;
    const double up = squared_error(net, x, d);
    w = orig - step;
    const double down = squared_error(net, x, d);
    w = orig;
    return -0.5 * (up - down) / (2.0 * step);
}

// Momentum-free online trainer: w += eta * delta * y, no momentum state at
// all. Mirrors the library trainer's sample order and MSE pass so the two
// can be compared bit for bit.
inline TrainingOutcome plain_delta_train(FeedForwardNet net, const std::vector<SampleRef>& samples,
                                         const TrainingConfig& cfg,
                                         std::vector<FeedForwardNet>* snapshots = nullptr) {
    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffler(mix64(cfg.seed));
    TrainingTrace trace;
    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        if (cfg.shuffle_each_epoch)
            for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[shuffler.below(i)]);
        for (std::size_t idx : order) {
            const auto& s = samples[idx];
            const auto a = forward(net, s.input);
            std::vector<double> od(net.output_size()), hd(net.hidden_size());
            for (std::size_t k = 0; k < od.size(); ++k) od[k] = output_delta(a.output_y[k], s.target[k]);
            for (std::size_t j = 0; j < hd.size(); ++j) {
                std::vector<double> col(od.size());
                for (std::size_t k = 0; k < od.size(); ++k) col[k] = net.output().at(k, j);
                hd[j] = hidden_delta(a.hidden_y[j], od, col);
            }
            auto update = [&](LayerWeights& layer, const std::vector<double>& delta,
                              std::span<const double> in) {
                for (std::size_t r = 0; r < layer.out_count(); ++r) {
                    for (std::size_t c = 0; c < layer.in_count(); ++c)
                        layer.at(r, c) += cfg.eta * delta[r] * in[c];
                    layer.at(r, layer.in_count()) += cfg.eta * delta[r] * 1.0;
                }
            };
            update(net.output(), od, a.hidden_y);
            update(net.hidden(), hd, s.input);
            if (snapshots) snapshots->push_back(net);
        }
        const double m = dataset_mse(net, samples);
        trace.epoch_mse.push_back(m);
        trace.epochs_run = epoch + 1;
        if (m < cfg.mse_threshold) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(net), std::move(trace)};
}

// Relative error with an absolute floor for near-zero gradients.
inline double relative_error(double a, double b, double floor) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), floor});
}

}  // namespace scripta::oracle
