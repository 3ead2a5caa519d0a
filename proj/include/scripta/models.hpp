#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "scripta/extraction.hpp"
#include "scripta/label.hpp"
#include "scripta/network.hpp"

namespace scripta {

enum class ModelKind { Direct, Correlation, Hierarchical };

const char* to_string(ModelKind kind) noexcept;
/// "direct", "correlation" or "hierarchical".
ModelKind parse_model_kind(std::string_view text);

/// Ordered partition of the 26 labels into groups for the two-stage model.
class GroupingScheme {
public:
    /// Throws InvalidGrouping unless the groups are non-empty and cover
    /// every label exactly once.
    explicit GroupingScheme(std::vector<std::vector<Label>> groups);

    /// Alphabetical letters dealt consecutively into groups of
    /// 2,4,3,4,2,3,1,3,1,2,1: AB CDEF GHI JKLM NO PQR S TUV W XY Z.
    static GroupingScheme default_scheme();

    /// One group per non-empty line, letters separated by commas.
    static GroupingScheme parse(std::string_view text);
    std::string to_text() const;

    std::size_t group_count() const noexcept { return groups_.size(); }
    const std::vector<Label>& group(std::size_t g) const { return groups_.at(g); }
    const std::vector<std::vector<Label>>& groups() const noexcept { return groups_; }
    std::vector<std::size_t> sizes() const;

    struct Position {
        std::size_t group;
        std::size_t position;
    };
    Position locate(Label label) const { return where_[label.index()]; }

    bool operator==(const GroupingScheme& other) const { return groups_ == other.groups_; }

private:
    std::vector<std::vector<Label>> groups_;
    std::vector<Position> where_;
};

inline constexpr std::size_t kDefaultHidden = 50;

struct CorrelationDetail {
    std::vector<double> degrees;  // one per label
};

struct HierarchicalDetail {
    std::size_t group = 0;
    std::vector<double> group_scores;
    std::vector<double> position_scores;
};

struct RecognitionResult {
    Label predicted;
    std::vector<double> scores;  // final decision stage
    std::variant<std::monostate, CorrelationDetail, HierarchicalDetail> detail;
};

/// Index of the largest value; the lowest index wins ties.
std::size_t argmax(std::span<const double> values);

/// One 500-H-26 network, one output per letter.
class DirectModel {
public:
    explicit DirectModel(FeedForwardNet net);
    const FeedForwardNet& net() const noexcept { return net_; }
    RecognitionResult recognize(const PatternBlock& block) const;

private:
    FeedForwardNet net_;
};

/// 26 single-output 500-H-1 networks; net k scores letter k+1.
class CorrelationModel {
public:
    explicit CorrelationModel(std::vector<FeedForwardNet> nets);
    std::span<const FeedForwardNet> nets() const noexcept { return nets_; }
    RecognitionResult recognize(const PatternBlock& block) const;

private:
    std::vector<FeedForwardNet> nets_;
};

/// Group recognizer followed by a per-group position recognizer.
/// Singleton groups carry no position network.
class HierarchicalModel {
public:
    HierarchicalModel(GroupingScheme grouping, FeedForwardNet group_net,
                      std::vector<std::optional<FeedForwardNet>> position_nets);

    const GroupingScheme& grouping() const noexcept { return grouping_; }
    const FeedForwardNet& group_net() const noexcept { return group_net_; }
    const std::vector<std::optional<FeedForwardNet>>& position_nets() const noexcept {
        return position_nets_;
    }
    RecognitionResult recognize(const PatternBlock& block) const;

private:
    GroupingScheme grouping_;
    FeedForwardNet group_net_;
    std::vector<std::optional<FeedForwardNet>> position_nets_;
};

using Model = std::variant<DirectModel, CorrelationModel, HierarchicalModel>;

ModelKind kind_of(const Model& model) noexcept;
RecognitionResult recognize(const Model& model, const PatternBlock& block);

struct ModelOptions {
    std::size_t hidden = kDefaultHidden;
    std::size_t threads = 0;  // 0 = hardware concurrency
};

/// One-hot target: 1.0 at `index`, 0.0 elsewhere.
std::vector<double> one_hot(std::size_t index, std::size_t width);

// Seeds of the constituent networks, derived from TrainingConfig::seed with
// derive_seed(): direct net id 0, correlation net for label v id v,
// hierarchical group net id 100 and position net of group g id 101 + g.
inline constexpr std::uint64_t kDirectNetId = 0;
inline constexpr std::uint64_t kGroupNetId = 100;
inline constexpr std::uint64_t kPositionNetIdBase = 101;

struct DirectTraining {
    DirectModel model;
    TrainingTrace trace;
    std::vector<std::string> warnings;
};

struct CorrelationTraining {
    CorrelationModel model;
    std::vector<TrainingTrace> traces;  // per label
    std::vector<std::string> warnings;
};

struct HierarchicalTraining {
    HierarchicalModel model;
    TrainingTrace group_trace;
    std::vector<std::optional<TrainingTrace>> position_traces;  // per group
    std::vector<std::string> warnings;
};

DirectTraining train_direct(std::span<const LabeledSample> samples, const TrainingConfig& cfg,
                            const ModelOptions& options = {});

/// Net k is trained one-vs-rest: target 1.0 on letter k+1, 0.0 on the rest.
CorrelationTraining train_correlation(std::span<const LabeledSample> samples,
                                      const TrainingConfig& cfg, const ModelOptions& options = {});

/// Throws EmptyGroup when a group with more than one letter has no samples.
HierarchicalTraining train_hierarchical(std::span<const LabeledSample> samples,
                                        const GroupingScheme& grouping, const TrainingConfig& cfg,
                                        const ModelOptions& options = {});

/// Run fn(i) for i in [0, count) on up to `threads` workers (0 = auto).
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

/// SCRIPTA_THREADS from the environment, 0 when unset or invalid.
std::size_t threads_from_env();

}  // namespace scripta
