#include <doctest.h>

#include <filesystem>
#include <json.hpp>

#include "scripta/dataset.hpp"
#include "scripta/error.hpp"
#include "scripta/io.hpp"
#include "scripta/model_io.hpp"
#include "scripta/reporting.hpp"

using namespace scripta;

namespace {

// Straight recount from the confusion matrix.
double recount_accuracy(const EvaluationReport& r) {
    std::size_t diag = 0, total = 0;
    for (std::size_t t = 0; t < kLabelCount; ++t)
        for (std::size_t p = 0; p < kLabelCount; ++p) {
            total += r.confusion[t][p];
            if (t == p) diag += r.confusion[t][p];
        }
    return static_cast<double>(diag) / static_cast<double>(total);
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("scripta_test_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST_CASE("an oracle recognizer scores perfectly") {
    auto corpus = generate_synthetic(2, {0.05, 1, 4});
    // Lookup by block; every sample in this corpus is distinct.
    auto samples = corpus.samples();
    auto report = evaluate(
        ModelKind::Direct, samples,
        [&](const PatternBlock& b) {
            for (const auto& s : samples)
                if (s.block == b) return RecognitionResult{s.label, {}, {}};
            return RecognitionResult{Label(1), {}, {}};
        });
    CHECK(report.overall_accuracy == 1.0);
    for (std::size_t t = 0; t < 26; ++t) {
        CHECK(report.per_label_accuracy[t] == 1.0);
        for (std::size_t p = 0; p < 26; ++p) CHECK(report.confusion[t][p] == (t == p ? 2u : 0u));
    }
}

TEST_CASE("a constant recognizer scores 1/26 on a balanced corpus") {
    auto corpus = generate_synthetic(3, {});
    auto report = evaluate(ModelKind::Correlation, corpus.samples(),
                           [](const PatternBlock&) { return RecognitionResult{Label(1), {}, {}}; });
    // Brute-force tally.
    std::size_t hits = 0;
    for (const auto& s : corpus.samples()) hits += s.label == Label(1);
    CHECK(report.overall_accuracy == static_cast<double>(hits) / corpus.size());
    CHECK(report.overall_accuracy == doctest::Approx(1.0 / 26.0));
    CHECK(report.overall_accuracy == recount_accuracy(report));
    CHECK(report.per_label_accuracy[0] == 1.0);
    CHECK(report.per_label_accuracy[1] == 0.0);
    for (std::size_t t = 0; t < 26; ++t) CHECK(report.confusion[t][0] == 3u);
}

TEST_CASE("evaluation errors and absent letters") {
    std::vector<LabeledSample> none;
    CHECK_THROWS_AS(evaluate(ModelKind::Direct, none,
                             [](const PatternBlock&) { return RecognitionResult{Label(1), {}, {}}; }),
                    Error);
    std::vector<LabeledSample> one{{glyph_template(Label(3)), Label(3), 0}};
    auto r = evaluate(ModelKind::Direct, one,
                      [](const PatternBlock&) { return RecognitionResult{Label(3), {}, {}}; });
    CHECK_FALSE(r.per_label_accuracy[0].has_value());
    CHECK(r.per_label_accuracy[2] == 1.0);
}

TEST_CASE("hierarchical stage accuracies") {
    auto grouping = GroupingScheme::default_scheme();
    auto corpus = generate_synthetic(1, {});
    // Always answers group 0 ('A' or 'B'), position by parity of the label.
    auto fake = [&](const PatternBlock& b) {
        for (const auto& s : corpus.samples())
            if (s.block == b) {
                const auto pos = s.label.value() % 2 == 1 ? 0u : 1u;
                HierarchicalDetail d{0, std::vector<double>(11, 0.0), {0.0, 0.0}};
                return RecognitionResult{grouping.group(0)[pos], {}, d};
            }
        throw std::logic_error("unknown block");
    };
    auto r = evaluate(ModelKind::Hierarchical, corpus.samples(), fake, &grouping);
    CHECK(r.group_accuracy == doctest::Approx(2.0 / 26.0));
    CHECK(r.position_accuracy == 1.0);
    CHECK(r.overall_accuracy == doctest::Approx(2.0 / 26.0));

    std::vector<LabeledSample> z_only{{glyph_template(Label(26)), Label(26), 0}};
    auto never = evaluate(ModelKind::Hierarchical, z_only, fake, &grouping);
    CHECK(never.group_accuracy == 0.0);
    CHECK_FALSE(never.position_accuracy.has_value());
}

TEST_CASE("trace CSV") {
    CHECK(trace_csv(TrainingTrace{}) == "epoch,mse\n");
    TrainingTrace t{{0.5, 0.01}, 2, false};
    CHECK(trace_csv(t) == "epoch,mse\n1,0.5\n2,0.01\n");
}

TEST_CASE("report CSV and JSON") {
    auto corpus = generate_synthetic(1, {});
    auto report = evaluate(ModelKind::Direct, corpus.samples(),
                           [](const PatternBlock&) { return RecognitionResult{Label(2), {}, {}}; });
    auto csv = report_csv(report);
    CHECK(csv == report_csv(report));
    auto lines = split_lines(csv);
    CHECK(lines.size() == 1 + 26 + 1 + 26 + 2);
    CHECK(lines[0] == "label,accuracy");
    CHECK(lines[1] == "A,0");
    CHECK(lines[2] == "B,1");
    CHECK(lines[27].substr(0, 12) == "confusion,A,");
    CHECK(lines.back() == "summary,direct,26,0.038461538461538464,,");

    auto j = nlohmann::json::parse(report_json(report));
    CHECK(j["overall_accuracy"].get<double>() == report.overall_accuracy);
    CHECK(j["confusion"][0][1].get<int>() == 1);
    CHECK(j["group_accuracy"].is_null());
}

TEST_CASE("model bundles round trip") {
    auto corpus = generate_synthetic(1, {});
    TrainingConfig cfg;
    cfg.max_epochs = 3;
    const ModelOptions opts{5, 1};
    ModelMetadata meta{cfg, 5};

    const Model models[] = {
        train_direct(corpus.samples(), cfg, opts).model,
        train_correlation(corpus.samples(), cfg, opts).model,
        train_hierarchical(corpus.samples(), GroupingScheme::default_scheme(), cfg, opts).model,
    };
    for (const auto& model : models) {
        const auto dir = scratch_dir(to_string(kind_of(model)));
        save_model(dir, model, meta);
        auto loaded = load_model(dir);
        CHECK(kind_of(loaded.model) == kind_of(model));
        CHECK(loaded.meta.hidden == 5);
        CHECK(loaded.meta.config.max_epochs == 3);
        for (const auto& s : corpus.samples()) {
            auto a = recognize(model, s.block), b = recognize(loaded.model, s.block);
            CHECK(a.scores == b.scores);
            CHECK(a.predicted == b.predicted);
        }
        // Saving twice yields identical bytes.
        const auto again = scratch_dir(std::string(to_string(kind_of(model))) + "_again");
        save_model(again, loaded.model, loaded.meta);
        for (const auto& entry : std::filesystem::directory_iterator(dir))
            CHECK(read_file(entry.path()) == read_file(again / entry.path().filename()));
    }
}

TEST_CASE("model bundle errors") {
    CHECK_THROWS_AS(load_model(scratch_dir("missing")), Error);
    const auto dir = scratch_dir("bad_manifest");
    std::filesystem::create_directories(dir);
    write_file(dir / "manifest", "{not json");
    try {
        load_model(dir);
        FAIL("expected MalformedFile");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MalformedFile);
    }
}
