#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scripta {

/// Dense weight matrix of one layer: out_count rows of (in_count + 1)
/// entries. The last entry of each row is the bias, fed by a constant 1.0.
class LayerWeights {
public:
    LayerWeights() = default;
    LayerWeights(std::size_t out_count, std::size_t in_count);
    LayerWeights(std::size_t out_count, std::size_t in_count, std::vector<double> weights);

    std::size_t out_count() const noexcept { return out_count_; }
    std::size_t in_count() const noexcept { return in_count_; }
    std::size_t stride() const noexcept { return in_count_ + 1; }

    std::span<const double> row(std::size_t j) const {
        return std::span<const double>(w_).subspan(j * stride(), stride());
    }
    std::span<double> row(std::size_t j) { return std::span<double>(w_).subspan(j * stride(), stride()); }

    double at(std::size_t j, std::size_t i) const { return w_[j * stride() + i]; }
    double& at(std::size_t j, std::size_t i) { return w_[j * stride() + i]; }
    double bias(std::size_t j) const { return w_[j * stride() + in_count_]; }

    std::span<const double> values() const noexcept { return w_; }
    std::span<double> values() noexcept { return w_; }

    bool operator==(const LayerWeights&) const = default;

private:
    std::size_t out_count_ = 0;
    std::size_t in_count_ = 0;
    std::vector<double> w_;
};

/// Input -> hidden -> output, unipolar sigmoid on every active neuron.
class FeedForwardNet {
public:
    FeedForwardNet(LayerWeights hidden, LayerWeights output);

    /// Weights drawn uniformly from [-init_range, +init_range).
    static FeedForwardNet random(std::size_t inputs, std::size_t hidden, std::size_t outputs,
                                 double init_range, std::uint64_t seed);

    std::size_t input_size() const noexcept { return hidden_.in_count(); }
    std::size_t hidden_size() const noexcept { return hidden_.out_count(); }
    std::size_t output_size() const noexcept { return output_.out_count(); }

    const LayerWeights& hidden() const noexcept { return hidden_; }
    const LayerWeights& output() const noexcept { return output_; }
    LayerWeights& hidden() noexcept { return hidden_; }
    LayerWeights& output() noexcept { return output_; }

    bool operator==(const FeedForwardNet&) const = default;

private:
    LayerWeights hidden_;
    LayerWeights output_;
};

struct TrainingConfig {
    double eta = 0.2;
    double alpha = 0.1;
    double mse_threshold = 0.001;
    std::size_t max_epochs = 50000;
    std::uint64_t seed = 42;
    double init_range = 0.5;
    bool shuffle_each_epoch = true;

    /// Throws InvalidArgument on eta <= 0, alpha outside [0,1),
    /// mse_threshold <= 0, max_epochs == 0 or init_range <= 0.
    void validate() const;
};

struct TrainingTrace {
    std::vector<double> epoch_mse;
    std::size_t epochs_run = 0;
    bool converged = false;

    bool operator==(const TrainingTrace&) const = default;
};

struct Activations {
    std::vector<double> input;
    std::vector<double> hidden_y;
    std::vector<double> output_y;
};

double sigmoid(double x) noexcept;

Activations forward(const FeedForwardNet& net, std::span<const double> input);
/// Output activations only.
std::vector<double> predict(const FeedForwardNet& net, std::span<const double> input);

/// y(1 - y)(d - y)
double output_delta(double y, double d) noexcept;

/// y(1 - y) * sum_k delta_k * w_kj, where w_kj is the weight from this hidden
/// neuron into downstream neuron k.
double hidden_delta(double y, std::span<const double> downstream_deltas,
                    std::span<const double> downstream_weights);

double mse(std::span<const double> outputs, std::span<const double> targets);

struct DeltaRuleResult {
    LayerWeights weights;
    LayerWeights change;
};

/// w(t+1) = w(t) + eta * delta_j * y_i + alpha * [w(t) - w(t-1)].
/// `inputs` excludes the bias input; `prev_change` holds w(t) - w(t-1)
/// and has the layer's shape. The returned change is w(t+1) - w(t).
DeltaRuleResult apply_delta_rule(const LayerWeights& layer, std::span<const double> deltas,
                                 std::span<const double> inputs, const TrainingConfig& cfg,
                                 const LayerWeights& prev_change);

/// In-place form of apply_delta_rule; `change` is read as the previous
/// change and overwritten with the new one.
void apply_delta_rule_inplace(LayerWeights& layer, std::span<const double> deltas,
                              std::span<const double> inputs, double eta, double alpha,
                              LayerWeights& change);

struct SampleRef {
    std::span<const double> input;
    std::span<const double> target;
};

struct TrainingOutcome {
    FeedForwardNet net;
    TrainingTrace trace;
};

/// Online backpropagation with momentum.
///
/// Every epoch presents all samples once (in an order reshuffled from
/// cfg.seed when shuffle_each_epoch is set), updating after each sample.
/// After the epoch a separate pass measures the MSE over all samples and
/// outputs; training stops once it falls below cfg.mse_threshold or after
/// cfg.max_epochs epochs.
TrainingOutcome train(FeedForwardNet net, std::span<const SampleRef> samples,
                      const TrainingConfig& cfg);

/// Mean over samples and outputs of (d - y)^2.
double dataset_mse(const FeedForwardNet& net, std::span<const SampleRef> samples);

// Text persistence: "FFNET v1 <input> <hidden> <output>" followed by one
// line per neuron, hidden layer first.
std::string save_net(const FeedForwardNet& net);

struct NetShape {
    std::size_t inputs, hidden, outputs;
};
/// Throws MalformedFile on syntax errors and DimensionMismatch when the
/// stored shape differs from `expected`.
FeedForwardNet load_net(std::string_view text, std::optional<NetShape> expected = std::nullopt);

}  // namespace scripta
