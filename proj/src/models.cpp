#include "scripta/models.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include "scripta/error.hpp"
#include "scripta/io.hpp"
#include "scripta/rng.hpp"

namespace scripta {

const char* to_string(ModelKind kind) noexcept {
    switch (kind) {
        case ModelKind::Direct: return "direct";
        case ModelKind::Correlation: return "correlation";
        case ModelKind::Hierarchical: return "hierarchical";
    }
    return "unknown";
}

ModelKind parse_model_kind(std::string_view text) {
    if (text == "direct") return ModelKind::Direct;
    if (text == "correlation") return ModelKind::Correlation;
    if (text == "hierarchical") return ModelKind::Hierarchical;
    throw Error(Errc::InvalidArgument, "unknown model kind '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------
// GroupingScheme

GroupingScheme::GroupingScheme(std::vector<std::vector<Label>> groups)
    : groups_(std::move(groups)), where_(kLabelCount, Position{0, 0}) {
    if (groups_.empty()) throw Error(Errc::InvalidGrouping, "no groups");
    std::vector<bool> seen(kLabelCount, false);
    std::size_t total = 0;
    for (std::size_t g = 0; g < groups_.size(); ++g) {
        if (groups_[g].empty())
            throw Error(Errc::InvalidGrouping, "group " + std::to_string(g + 1) + " is empty");
        for (std::size_t p = 0; p < groups_[g].size(); ++p) {
            const Label label = groups_[g][p];
            if (seen[label.index()])
                throw Error(Errc::InvalidGrouping,
                            std::string("letter ") + label.letter() + " appears more than once");
            seen[label.index()] = true;
            where_[label.index()] = {g, p};
            ++total;
        }
    }
    if (total != kLabelCount) {
        std::string missing;
        for (std::size_t k = 0; k < kLabelCount; ++k)
            if (!seen[k]) missing += Label::from_index(k).letter();
        throw Error(Errc::InvalidGrouping, "letters missing from grouping: " + missing);
    }
}

GroupingScheme GroupingScheme::default_scheme() {
    static constexpr std::size_t kSizes[] = {2, 4, 3, 4, 2, 3, 1, 3, 1, 2, 1};
    std::vector<std::vector<Label>> groups;
    std::size_t next = 0;
    for (auto size : kSizes) {
        auto& g = groups.emplace_back();
        for (std::size_t i = 0; i < size; ++i) g.push_back(Label::from_index(next++));
    }
    return GroupingScheme(std::move(groups));
}

GroupingScheme GroupingScheme::parse(std::string_view text) {
    std::vector<std::vector<Label>> groups;
    for (auto line : split_lines(text)) {
        if (split_whitespace(line).empty()) continue;
        auto& g = groups.emplace_back();
        for (auto field : split_fields(line, ',')) {
            auto tokens = split_whitespace(field);
            if (tokens.size() != 1 || tokens[0].size() != 1)
                throw Error(Errc::InvalidGrouping,
                            "expected comma-separated single letters, got '" + std::string(line) + "'");
            try {
                g.push_back(Label::from_letter(tokens[0][0]));
            } catch (const Error& e) {
                throw Error(Errc::InvalidGrouping, e.what());
            }
        }
    }
    return GroupingScheme(std::move(groups));
}

std::string GroupingScheme::to_text() const {
    std::string out;
    for (const auto& g : groups_) {
        for (std::size_t p = 0; p < g.size(); ++p) {
            if (p) out += ',';
            out += g[p].letter();
        }
        out += '\n';
    }
    return out;
}

std::vector<std::size_t> GroupingScheme::sizes() const {
    std::vector<std::size_t> out;
    for (const auto& g : groups_) out.push_back(g.size());
    return out;
}

// ---------------------------------------------------------------------------
// Recognition

std::size_t argmax(std::span<const double> values) {
    if (values.empty()) throw Error(Errc::InvalidArgument, "argmax of an empty vector");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    return best;
}

namespace {

void require_shape(const FeedForwardNet& net, std::size_t outputs, const char* what) {
    if (net.input_size() != PatternBlock::kSize || net.output_size() != outputs)
        throw Error(Errc::DimensionMismatch,
                    std::string(what) + " must be 500-H-" + std::to_string(outputs) + ", got " +
                        std::to_string(net.input_size()) + "-" + std::to_string(net.hidden_size()) +
                        "-" + std::to_string(net.output_size()));
}

}  // namespace

DirectModel::DirectModel(FeedForwardNet net) : net_(std::move(net)) {
    require_shape(net_, kLabelCount, "direct network");
}

RecognitionResult DirectModel::recognize(const PatternBlock& block) const {
    const auto input = flatten(block);
    auto scores = predict(net_, input);
    const Label predicted = Label::from_index(argmax(scores));
    return {predicted, std::move(scores), {}};
}

CorrelationModel::CorrelationModel(std::vector<FeedForwardNet> nets) : nets_(std::move(nets)) {
    if (nets_.size() != kLabelCount)
        throw Error(Errc::DimensionMismatch,
                    "correlation model needs 26 networks, got " + std::to_string(nets_.size()));
    for (const auto& n : nets_) require_shape(n, 1, "correlation network");
}

RecognitionResult CorrelationModel::recognize(const PatternBlock& block) const {
    const auto input = flatten(block);
    std::vector<double> degrees(kLabelCount);
    for (std::size_t k = 0; k < kLabelCount; ++k) degrees[k] = predict(nets_[k], input)[0];
    const Label predicted = Label::from_index(argmax(degrees));
    return {predicted, degrees, CorrelationDetail{degrees}};
}

HierarchicalModel::HierarchicalModel(GroupingScheme grouping, FeedForwardNet group_net,
                                     std::vector<std::optional<FeedForwardNet>> position_nets)
    : grouping_(std::move(grouping)),
      group_net_(std::move(group_net)),
      position_nets_(std::move(position_nets)) {
    require_shape(group_net_, grouping_.group_count(), "group network");
    if (position_nets_.size() != grouping_.group_count())
        throw Error(Errc::DimensionMismatch, "one position slot per group is required");
    for (std::size_t g = 0; g < position_nets_.size(); ++g) {
        const auto size = grouping_.group(g).size();
        if (size == 1) {
            if (position_nets_[g])
                throw Error(Errc::DimensionMismatch, "singleton groups take no position network");
        } else {
            if (!position_nets_[g])
                throw Error(Errc::DimensionMismatch,
                            "group " + std::to_string(g + 1) + " lacks a position network");
            require_shape(*position_nets_[g], size, "position network");
        }
    }
}

RecognitionResult HierarchicalModel::recognize(const PatternBlock& block) const {
    const auto input = flatten(block);
    HierarchicalDetail detail;
    detail.group_scores = predict(group_net_, input);
    detail.group = argmax(detail.group_scores);
    const auto& pos_net = position_nets_[detail.group];
    detail.position_scores = pos_net ? predict(*pos_net, input) : std::vector<double>{1.0};
    const Label predicted = grouping_.group(detail.group)[argmax(detail.position_scores)];
    auto scores = detail.position_scores;
    return {predicted, std::move(scores), std::move(detail)};
}

ModelKind kind_of(const Model& model) noexcept {
    switch (model.index()) {
        case 0: return ModelKind::Direct;
        case 1: return ModelKind::Correlation;
        default: return ModelKind::Hierarchical;
    }
}

RecognitionResult recognize(const Model& model, const PatternBlock& block) {
    return std::visit([&](const auto& m) { return m.recognize(block); }, model);
}

// ---------------------------------------------------------------------------
// Training

std::vector<double> one_hot(std::size_t index, std::size_t width) {
    if (index >= width) throw Error(Errc::InvalidArgument, "one-hot index out of range");
    std::vector<double> v(width, 0.0);
    v[index] = 1.0;
    return v;
}

std::size_t threads_from_env() {
    const char* value = std::getenv("SCRIPTA_THREADS");
    if (!value) return 0;
    try {
        return static_cast<std::size_t>(parse_unsigned(value));
    } catch (const Error&) {
        return 0;
    }
}

void parallel_for(std::size_t count, std::size_t threads,
                  const std::function<void(std::size_t)>& fn) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (std::size_t i = next++; i < count; i = next++) {
                    try {
                        fn(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

namespace {

using Input = std::array<double, PatternBlock::kSize>;

std::vector<Input> flatten_all(std::span<const LabeledSample> samples) {
    if (samples.empty()) throw Error(Errc::EmptyDataset, "training set is empty");
    std::vector<Input> out;
    out.reserve(samples.size());
    for (const auto& s : samples) out.push_back(flatten(s.block));
    return out;
}

std::vector<std::string> missing_label_warnings(std::span<const LabeledSample> samples) {
    std::vector<std::size_t> counts(kLabelCount, 0);
    for (const auto& s : samples) ++counts[s.label.index()];
    std::string missing;
    for (std::size_t k = 0; k < kLabelCount; ++k)
        if (counts[k] == 0) missing += Label::from_index(k).letter();
    if (missing.empty()) return {};
    return {"no training samples for letters " + missing};
}

TrainingConfig with_seed(const TrainingConfig& cfg, std::uint64_t net_id) {
    TrainingConfig out = cfg;
    out.seed = derive_seed(cfg.seed, net_id);
    return out;
}

TrainingOutcome train_one(std::span<const Input> inputs, std::span<const std::vector<double>> targets,
                          std::size_t hidden, const TrainingConfig& cfg) {
    std::vector<SampleRef> refs;
    refs.reserve(inputs.size());
    for (std::size_t i = 0; i < inputs.size(); ++i) refs.push_back({inputs[i], targets[i]});
    auto net = FeedForwardNet::random(PatternBlock::kSize, hidden, targets.front().size(),
                                      cfg.init_range, cfg.seed);
    return train(std::move(net), refs, cfg);
}

}  // namespace

DirectTraining train_direct(std::span<const LabeledSample> samples, const TrainingConfig& cfg,
                            const ModelOptions& options) {
    cfg.validate();
    const auto inputs = flatten_all(samples);
    std::vector<std::vector<double>> targets;
    for (const auto& s : samples) targets.push_back(one_hot(s.label.index(), kLabelCount));
    auto outcome = train_one(inputs, targets, options.hidden, with_seed(cfg, kDirectNetId));
    return {DirectModel(std::move(outcome.net)), std::move(outcome.trace),
            missing_label_warnings(samples)};
}

CorrelationTraining train_correlation(std::span<const LabeledSample> samples,
                                      const TrainingConfig& cfg, const ModelOptions& options) {
    cfg.validate();
    const auto inputs = flatten_all(samples);
    std::vector<std::optional<TrainingOutcome>> outcomes(kLabelCount);
    parallel_for(kLabelCount, options.threads, [&](std::size_t k) {
        std::vector<std::vector<double>> targets;
        targets.reserve(samples.size());
        for (const auto& s : samples) targets.push_back({s.label.index() == k ? 1.0 : 0.0});
        outcomes[k] = train_one(inputs, targets, options.hidden,
                                with_seed(cfg, Label::from_index(k).value()));
    });
    std::vector<FeedForwardNet> nets;
    std::vector<TrainingTrace> traces;
    for (auto& o : outcomes) {
        nets.push_back(std::move(o->net));
        traces.push_back(std::move(o->trace));
    }
    return {CorrelationModel(std::move(nets)), std::move(traces), missing_label_warnings(samples)};
}

HierarchicalTraining train_hierarchical(std::span<const LabeledSample> samples,
                                        const GroupingScheme& grouping, const TrainingConfig& cfg,
                                        const ModelOptions& options) {
    cfg.validate();
    const auto inputs = flatten_all(samples);
    const std::size_t groups = grouping.group_count();

    // Per-group member samples, checked before any training starts.
    std::vector<std::vector<std::size_t>> members(groups);
    for (std::size_t i = 0; i < samples.size(); ++i)
        members[grouping.locate(samples[i].label).group].push_back(i);
    for (std::size_t g = 0; g < groups; ++g)
        if (grouping.group(g).size() > 1 && members[g].empty())
            throw Error(Errc::EmptyGroup, "group " + std::to_string(g + 1) + " (" +
                                              std::string(1, grouping.group(g).front().letter()) +
                                              "...) has no training samples");

    // Job 0 is the group recognizer, job 1 + g the position recognizer of g.
    std::optional<TrainingOutcome> group_outcome;
    std::vector<std::optional<TrainingOutcome>> position_outcomes(groups);
    parallel_for(groups + 1, options.threads, [&](std::size_t job) {
        if (job == 0) {
            std::vector<std::vector<double>> targets;
            for (const auto& s : samples) targets.push_back(one_hot(grouping.locate(s.label).group, groups));
            group_outcome = train_one(inputs, targets, options.hidden, with_seed(cfg, kGroupNetId));
            return;
        }
        const std::size_t g = job - 1;
        const std::size_t size = grouping.group(g).size();
        if (size == 1) return;
        std::vector<Input> group_inputs;
        std::vector<std::vector<double>> targets;
        for (std::size_t i : members[g]) {
            group_inputs.push_back(inputs[i]);
            targets.push_back(one_hot(grouping.locate(samples[i].label).position, size));
        }
        position_outcomes[g] = train_one(group_inputs, targets, options.hidden,
                                         with_seed(cfg, kPositionNetIdBase + g));
    });

    std::vector<std::optional<FeedForwardNet>> position_nets(groups);
    std::vector<std::optional<TrainingTrace>> position_traces(groups);
    for (std::size_t g = 0; g < groups; ++g) {
        if (!position_outcomes[g]) continue;
        position_nets[g] = std::move(position_outcomes[g]->net);
        position_traces[g] = std::move(position_outcomes[g]->trace);
    }
    return {HierarchicalModel(grouping, std::move(group_outcome->net), std::move(position_nets)),
            std::move(group_outcome->trace), std::move(position_traces),
            missing_label_warnings(samples)};
}

}  // namespace scripta
