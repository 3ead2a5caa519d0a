#include "scripta/network.hpp"

#include <cmath>
#include <numeric>

#include "scripta/error.hpp"
#include "scripta/rng.hpp"

namespace scripta {

namespace {

void require_same(std::size_t got, std::size_t want, const char* what) {
    if (got != want)
        throw Error(Errc::DimensionMismatch, std::string(what) + ": got " + std::to_string(got) +
                                                 ", expected " + std::to_string(want));
}

// Weighted sum of `x` against the first x.size() entries of `w`, plus the
// bias stored right after them. Four fixed partial sums keep the
// evaluation order deterministic while shortening the dependency chain.
double weighted_sum(std::span<const double> w, std::span<const double> x) {
    const std::size_t n = x.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        s0 += w[i] * x[i];
        s1 += w[i + 1] * x[i + 1];
        s2 += w[i + 2] * x[i + 2];
        s3 += w[i + 3] * x[i + 3];
    }
    double tail = 0.0;
    for (; i < n; ++i) tail += w[i] * x[i];
    return ((s0 + s1) + (s2 + s3)) + tail + w[n];
}

void layer_forward(const LayerWeights& layer, std::span<const double> in, std::span<double> out) {
    for (std::size_t j = 0; j < layer.out_count(); ++j) out[j] = sigmoid(weighted_sum(layer.row(j), in));
}

}  // namespace

LayerWeights::LayerWeights(std::size_t out_count, std::size_t in_count)
    : out_count_(out_count), in_count_(in_count), w_(out_count * (in_count + 1), 0.0) {
    if (out_count == 0 || in_count == 0)
        throw Error(Errc::InvalidArgument, "layer dimensions must be positive");
}

LayerWeights::LayerWeights(std::size_t out_count, std::size_t in_count, std::vector<double> weights)
    : out_count_(out_count), in_count_(in_count), w_(std::move(weights)) {
    if (out_count == 0 || in_count == 0)
        throw Error(Errc::InvalidArgument, "layer dimensions must be positive");
    require_same(w_.size(), out_count * (in_count + 1), "layer weight count");
    for (double v : w_)
        if (!std::isfinite(v)) throw Error(Errc::InvalidArgument, "layer weights must be finite");
}

FeedForwardNet::FeedForwardNet(LayerWeights hidden, LayerWeights output)
    : hidden_(std::move(hidden)), output_(std::move(output)) {
    if (hidden_.out_count() == 0 || output_.out_count() == 0)
        throw Error(Errc::InvalidArgument, "network layers must be non-empty");
    require_same(output_.in_count(), hidden_.out_count(), "output layer fan-in");
}

FeedForwardNet FeedForwardNet::random(std::size_t inputs, std::size_t hidden, std::size_t outputs,
                                      double init_range, std::uint64_t seed) {
    if (!(init_range > 0.0)) throw Error(Errc::InvalidArgument, "init_range must be positive");
    Rng rng(seed);
    LayerWeights h(hidden, inputs), o(outputs, hidden);
    for (double& v : h.values()) v = rng.uniform(-init_range, init_range);
    for (double& v : o.values()) v = rng.uniform(-init_range, init_range);
    return FeedForwardNet(std::move(h), std::move(o));
}

void TrainingConfig::validate() const {
    auto fail = [](const std::string& msg) { throw Error(Errc::InvalidArgument, msg); };
    if (!(eta > 0.0) || !std::isfinite(eta)) fail("eta must be positive");
    if (!(alpha >= 0.0 && alpha < 1.0)) fail("alpha must lie in [0, 1)");
    if (!(mse_threshold > 0.0)) fail("mse_threshold must be positive");
    if (max_epochs == 0) fail("max_epochs must be at least 1");
    if (!(init_range > 0.0) || !std::isfinite(init_range)) fail("init_range must be positive");
}

double sigmoid(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

Activations forward(const FeedForwardNet& net, std::span<const double> input) {
    require_same(input.size(), net.input_size(), "input length");
    Activations a;
    a.input.assign(input.begin(), input.end());
    a.hidden_y.resize(net.hidden_size());
    a.output_y.resize(net.output_size());
    layer_forward(net.hidden(), input, a.hidden_y);
    layer_forward(net.output(), a.hidden_y, a.output_y);
    return a;
}

std::vector<double> predict(const FeedForwardNet& net, std::span<const double> input) {
    return forward(net, input).output_y;
}

double output_delta(double y, double d) noexcept { return y * (1.0 - y) * (d - y); }

double hidden_delta(double y, std::span<const double> downstream_deltas,
                    std::span<const double> downstream_weights) {
    require_same(downstream_weights.size(), downstream_deltas.size(), "downstream weights");
    double sum = 0.0;
    for (std::size_t k = 0; k < downstream_deltas.size(); ++k)
        sum += downstream_deltas[k] * downstream_weights[k];
    return y * (1.0 - y) * sum;
}

double mse(std::span<const double> outputs, std::span<const double> targets) {
    require_same(targets.size(), outputs.size(), "target length");
    if (outputs.empty()) throw Error(Errc::DimensionMismatch, "mse of empty vectors");
    double sum = 0.0;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
        const double e = targets[i] - outputs[i];
        sum += e * e;
    }
    return sum / static_cast<double>(outputs.size());
}

void apply_delta_rule_inplace(LayerWeights& layer, std::span<const double> deltas,
                              std::span<const double> inputs, double eta, double alpha,
                              LayerWeights& change) {
    require_same(deltas.size(), layer.out_count(), "delta count");
    require_same(inputs.size(), layer.in_count(), "layer input count");
    if (change.out_count() != layer.out_count() || change.in_count() != layer.in_count())
        throw Error(Errc::DimensionMismatch, "momentum matrix shape differs from layer");

    const std::size_t n = inputs.size();
    for (std::size_t j = 0; j < layer.out_count(); ++j) {
        const double step = eta * deltas[j];
        auto w = layer.row(j);
        auto c = change.row(j);
        for (std::size_t i = 0; i < n; ++i) {
            const double dw = step * inputs[i] + alpha * c[i];
            w[i] += dw;
            c[i] = dw;
        }
        const double db = step * 1.0 + alpha * c[n];
        w[n] += db;
        c[n] = db;
    }
}

DeltaRuleResult apply_delta_rule(const LayerWeights& layer, std::span<const double> deltas,
                                 std::span<const double> inputs, const TrainingConfig& cfg,
                                 const LayerWeights& prev_change) {
    DeltaRuleResult r{layer, prev_change};
    apply_delta_rule_inplace(r.weights, deltas, inputs, cfg.eta, cfg.alpha, r.change);
    return r;
}

double dataset_mse(const FeedForwardNet& net, std::span<const SampleRef> samples) {
    if (samples.empty()) throw Error(Errc::EmptyDataset, "no samples");
    std::vector<double> hidden(net.hidden_size()), out(net.output_size());
    double sum = 0.0;
    for (const auto& s : samples) {
        layer_forward(net.hidden(), s.input, hidden);
        layer_forward(net.output(), hidden, out);
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double e = s.target[k] - out[k];
            sum += e * e;
        }
    }
    return sum / static_cast<double>(samples.size() * net.output_size());
}

TrainingOutcome train(FeedForwardNet net, std::span<const SampleRef> samples,
                      const TrainingConfig& cfg) {
    cfg.validate();
    if (samples.empty()) throw Error(Errc::EmptyDataset, "training set is empty");
    for (const auto& s : samples) {
        require_same(s.input.size(), net.input_size(), "sample input length");
        require_same(s.target.size(), net.output_size(), "sample target length");
        for (double d : s.target)
            if (!(d >= 0.0 && d <= 1.0))
                throw Error(Errc::InvalidArgument, "targets must lie in [0, 1]");
    }

    const std::size_t n_hidden = net.hidden_size();
    const std::size_t n_out = net.output_size();
    LayerWeights hidden_change(n_hidden, net.input_size());
    LayerWeights output_change(n_out, n_hidden);
    std::vector<double> hidden_y(n_hidden), output_y(n_out);
    std::vector<double> out_delta(n_out), hid_delta(n_hidden), column(n_out);

    std::vector<std::size_t> order(samples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Rng shuffler(mix64(cfg.seed));

    TrainingTrace trace;
    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        if (cfg.shuffle_each_epoch) {
            for (std::size_t i = order.size(); i > 1; --i)
                std::swap(order[i - 1], order[shuffler.below(i)]);
        }
        for (std::size_t idx : order) {
            const auto& s = samples[idx];
            layer_forward(net.hidden(), s.input, hidden_y);
            layer_forward(net.output(), hidden_y, output_y);
            for (std::size_t k = 0; k < n_out; ++k) out_delta[k] = output_delta(output_y[k], s.target[k]);
            for (std::size_t j = 0; j < n_hidden; ++j) {
                for (std::size_t k = 0; k < n_out; ++k) column[k] = net.output().at(k, j);
                hid_delta[j] = hidden_delta(hidden_y[j], out_delta, column);
            }
            apply_delta_rule_inplace(net.output(), out_delta, hidden_y, cfg.eta, cfg.alpha,
                                     output_change);
            apply_delta_rule_inplace(net.hidden(), hid_delta, s.input, cfg.eta, cfg.alpha,
                                     hidden_change);
        }
        const double epoch_mse = dataset_mse(net, samples);
        trace.epoch_mse.push_back(epoch_mse);
        trace.epochs_run = epoch + 1;
        if (epoch_mse < cfg.mse_threshold) {
            trace.converged = true;
            break;
        }
    }
    return {std::move(net), std::move(trace)};
}

}  // namespace scripta
