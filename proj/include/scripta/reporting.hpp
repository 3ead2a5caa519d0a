#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>

#include "scripta/label.hpp"
#include "scripta/models.hpp"
#include "scripta/network.hpp"

namespace scripta {

using ConfusionMatrix = std::array<std::array<std::size_t, kLabelCount>, kLabelCount>;

struct EvaluationReport {
    ModelKind model_kind = ModelKind::Direct;
    std::size_t sample_count = 0;
    double overall_accuracy = 0.0;
    // Absent for letters with no samples.
    std::array<std::optional<double>, kLabelCount> per_label_accuracy{};
    ConfusionMatrix confusion{};  // [true - 1][predicted - 1]
    // Hierarchical only. Position accuracy counts only correctly grouped
    // samples and is absent when there are none.
    std::optional<double> group_accuracy;
    std::optional<double> position_accuracy;

    bool operator==(const EvaluationReport&) const = default;
};

using RecognizeFn = std::function<RecognitionResult(const PatternBlock&)>;

/// Tally `recognize` over every sample. Pass `grouping` to score the
/// group and position stages (requires HierarchicalDetail results).
EvaluationReport evaluate(ModelKind kind, std::span<const LabeledSample> samples,
                          const RecognizeFn& recognize, const GroupingScheme* grouping = nullptr);

EvaluationReport evaluate(const Model& model, std::span<const LabeledSample> samples);

/// `epoch,mse` header and one row per epoch (1-based).
std::string trace_csv(const TrainingTrace& trace);

/// `label,accuracy` block, `confusion,...` block, then a `summary` row.
std::string report_csv(const EvaluationReport& report);

/// Same content as report_csv, as a JSON object.
std::string report_json(const EvaluationReport& report);

}  // namespace scripta
