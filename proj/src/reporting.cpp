#include "scripta/reporting.hpp"

#include <json.hpp>

#include "scripta/error.hpp"
#include "scripta/io.hpp"

namespace scripta {

EvaluationReport evaluate(ModelKind kind, std::span<const LabeledSample> samples,
                          const RecognizeFn& recognize, const GroupingScheme* grouping) {
    if (samples.empty()) throw Error(Errc::EmptyDataset, "nothing to evaluate");
    EvaluationReport report;
    report.model_kind = kind;
    report.sample_count = samples.size();

    std::size_t grouped = 0, positioned = 0;
    for (const auto& s : samples) {
        const auto result = recognize(s.block);
        ++report.confusion[s.label.index()][result.predicted.index()];
        if (!grouping) continue;
        const auto* detail = std::get_if<HierarchicalDetail>(&result.detail);
        if (!detail) throw Error(Errc::InvalidArgument, "group scoring needs hierarchical results");
        if (detail->group == grouping->locate(s.label).group) {
            ++grouped;
            if (result.predicted == s.label) ++positioned;
        }
    }

    std::size_t correct = 0;
    for (std::size_t k = 0; k < kLabelCount; ++k) {
        std::size_t row = 0;
        for (auto n : report.confusion[k]) row += n;
        correct += report.confusion[k][k];
        if (row > 0)
            report.per_label_accuracy[k] =
                static_cast<double>(report.confusion[k][k]) / static_cast<double>(row);
    }
    report.overall_accuracy = static_cast<double>(correct) / static_cast<double>(samples.size());
    if (grouping) {
        report.group_accuracy = static_cast<double>(grouped) / static_cast<double>(samples.size());
        if (grouped > 0)
            report.position_accuracy = static_cast<double>(positioned) / static_cast<double>(grouped);
    }
    return report;
}

EvaluationReport evaluate(const Model& model, std::span<const LabeledSample> samples) {
    const auto* h = std::get_if<HierarchicalModel>(&model);
    return evaluate(
        kind_of(model), samples,
        [&](const PatternBlock& b) { return scripta::recognize(model, b); },
        h ? &h->grouping() : nullptr);
}

std::string trace_csv(const TrainingTrace& trace) {
    std::string out = "epoch,mse\n";
    for (std::size_t e = 0; e < trace.epoch_mse.size(); ++e)
        out += std::to_string(e + 1) + "," + format_double(trace.epoch_mse[e]) + "\n";
    return out;
}

namespace {

std::string opt(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

}  // namespace

std::string report_csv(const EvaluationReport& report) {
    std::string out = "label,accuracy\n";
    for (std::size_t k = 0; k < kLabelCount; ++k)
        out += std::string(1, Label::from_index(k).letter()) + "," + opt(report.per_label_accuracy[k]) + "\n";

    out += "confusion";
    for (std::size_t k = 0; k < kLabelCount; ++k) out += std::string(",") + Label::from_index(k).letter();
    out += '\n';
    for (std::size_t t = 0; t < kLabelCount; ++t) {
        out += Label::from_index(t).letter();
        for (auto n : report.confusion[t]) out += "," + std::to_string(n);
        out += '\n';
    }

    out += "summary,kind,samples,overall_accuracy,group_accuracy,position_accuracy\n";
    out += std::string("summary,") + to_string(report.model_kind) + "," +
           std::to_string(report.sample_count) + "," + format_double(report.overall_accuracy) + "," +
           opt(report.group_accuracy) + "," + opt(report.position_accuracy) + "\n";
    return out;
}

std::string report_json(const EvaluationReport& report) {
    using json = nlohmann::ordered_json;
    auto opt_json = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
    json per_label = json::object();
    for (std::size_t k = 0; k < kLabelCount; ++k)
        per_label[std::string(1, Label::from_index(k).letter())] = opt_json(report.per_label_accuracy[k]);
    json confusion = json::array();
    for (const auto& row : report.confusion) confusion.push_back(row);
    json out{{"model_kind", to_string(report.model_kind)},
             {"samples", report.sample_count},
             {"overall_accuracy", report.overall_accuracy},
             {"per_label_accuracy", per_label},
             {"confusion", confusion},
             {"group_accuracy", opt_json(report.group_accuracy)},
             {"position_accuracy", opt_json(report.position_accuracy)}};
    return out.dump(2) + "\n";
}

}  // namespace scripta
