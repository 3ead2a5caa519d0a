// scripta: generate character corpora, train the three recognizers,
// evaluate them and recognize single scanned cells.
//
// Exit status: 0 success, 1 runtime failure, 2 usage or validation error.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "scripta/io.hpp"
#include "scripta/scripta.hpp"

namespace fs = std::filesystem;
using namespace scripta;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SplitFlags {
    std::size_t train_rows = 10;
    std::size_t test_rows = 5;

    void add(CLI::App* cmd) {
        cmd->add_option("--train-rows", train_rows, "Leading sheet rows used for training")
            ->capture_default_str();
        cmd->add_option("--test-rows", test_rows, "Trailing sheet rows used for testing")
            ->capture_default_str();
    }
};

// Validation failures on user input map to exit 2, everything else to 1.
bool is_usage_error(Errc code) {
    return code == Errc::InvalidArgument || code == Errc::InvalidGrouping ||
           code == Errc::InsufficientRows;
}

Corpus load_corpus_file(const fs::path& path) { return load_corpus(read_file(path)); }

std::string join_scores(const std::vector<double>& scores) {
    std::string out;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (i) out += ' ';
        out += format_double(scores[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------

struct GenDataArgs {
    std::size_t rows = 15;
    NoiseSpec noise;
    fs::path out;
};

int run_gen_data(const GenDataArgs& a) {
    if (a.rows == 0) throw UsageError("--rows must be at least 1");
    auto corpus = generate_synthetic(a.rows, a.noise);
    write_file(a.out, save_corpus(corpus));
    std::cout << "wrote " << corpus.size() << " samples (" << corpus.rows() << " rows) to "
              << a.out.string() << "\n";
    return 0;
}

struct RenderArgs {
    std::optional<fs::path> corpus;
    std::optional<std::string> letter;
    SheetGrid grid;
    bool ascii = false;
    fs::path out;
};

int run_render(const RenderArgs& a) {
    if (a.corpus.has_value() == a.letter.has_value())
        throw UsageError("give exactly one of --corpus or --letter");
    GrayImage img = GrayImage::filled(1, 1, 255);
    if (a.letter) {
        if (a.letter->size() != 1) throw UsageError("--letter takes a single letter");
        img = render_cell(glyph_template(Label::from_letter((*a.letter)[0])), a.grid.cell_height,
                          a.grid.cell_width);
    } else {
        auto corpus = load_corpus_file(*a.corpus);
        SheetGrid grid = a.grid;
        grid.rows = corpus.rows();
        img = render_sheet(corpus, grid);
    }
    write_pgm_file(a.out, img, a.ascii ? PgmFormat::Ascii : PgmFormat::Raw);
    std::cout << "wrote " << img.width() << "x" << img.height() << " image to " << a.out.string()
              << "\n";
    return 0;
}

struct IngestArgs {
    fs::path image;
    SheetGrid grid;
    std::string threshold = "128";
    bool invert = false;
    fs::path out;
};

int run_ingest(const IngestArgs& a) {
    if (a.grid.rows == 0) throw UsageError("--rows must be at least 1");
    const auto policy = ThresholdPolicy::parse(a.threshold);
    auto img = read_pgm_file(a.image);
    if (a.invert) img = invert(img);
    auto result = ingest_sheet(img, a.grid, policy);
    for (const auto& s : result.skipped)
        std::cerr << "skipped cell row " << s.row << " col " << s.col << ": " << s.reason << "\n";
    write_file(a.out, save_corpus(result.corpus));
    std::cout << "wrote " << result.corpus.size() << " samples to " << a.out.string() << " ("
              << result.skipped.size() << " cells skipped)\n";
    return 0;
}

struct TrainArgs {
    fs::path corpus;
    std::string model = "direct";
    std::optional<fs::path> grouping;
    TrainingConfig cfg;
    std::size_t hidden = kDefaultHidden;
    bool no_shuffle = false;
    SplitFlags split;
    fs::path out;
    bool require_converged = false;
};

void report_trace(const std::string& name, const TrainingTrace& t) {
    std::cout << name << ": epochs " << t.epochs_run << ", final mse "
              << (t.epoch_mse.empty() ? std::string("n/a") : format_double(t.epoch_mse.back()))
              << (t.converged ? "" : " (not converged)") << "\n";
}

int run_train(TrainArgs a) {
    const auto kind = parse_model_kind(a.model);
    if (a.grouping && kind != ModelKind::Hierarchical)
        throw UsageError("--grouping only applies to --model hierarchical");
    a.cfg.shuffle_each_epoch = !a.no_shuffle;
    a.cfg.validate();
    if (a.hidden == 0) throw UsageError("--hidden must be at least 1");
    const auto grouping =
        a.grouping ? GroupingScheme::parse(read_file(*a.grouping)) : GroupingScheme::default_scheme();

    const auto corpus = load_corpus_file(a.corpus);
    const auto parts = split(corpus, a.split.train_rows, a.split.test_rows);
    std::cout << "training " << to_string(kind) << " model on " << parts.train.size()
              << " samples (rows 0.." << a.split.train_rows << ")\n";

    const ModelOptions options{a.hidden, threads_from_env()};
    std::vector<std::pair<std::string, TrainingTrace>> traces;
    std::vector<std::string> warnings;
    std::optional<Model> model;

    switch (kind) {
        case ModelKind::Direct: {
            auto t = train_direct(parts.train.samples(), a.cfg, options);
            traces.emplace_back("trace", t.trace);
            warnings = t.warnings;
            model.emplace(std::move(t.model));
            break;
        }
        case ModelKind::Correlation: {
            auto t = train_correlation(parts.train.samples(), a.cfg, options);
            for (std::size_t k = 0; k < t.traces.size(); ++k)
                traces.emplace_back(std::string("trace_") + Label::from_index(k).letter(), t.traces[k]);
            warnings = t.warnings;
            model.emplace(std::move(t.model));
            break;
        }
        case ModelKind::Hierarchical: {
            auto t = train_hierarchical(parts.train.samples(), grouping, a.cfg, options);
            traces.emplace_back("trace_group", t.group_trace);
            for (std::size_t g = 0; g < t.position_traces.size(); ++g)
                if (t.position_traces[g])
                    {
                    char name[32];
                    std::snprintf(name, sizeof name, "trace_position_%02zu", g + 1);
                    traces.emplace_back(name, *t.position_traces[g]);
                }
            warnings = t.warnings;
            model.emplace(std::move(t.model));
            break;
        }
    }
    for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";

    save_model(a.out, *model, ModelMetadata{a.cfg, a.hidden});
    bool all_converged = true;
    for (const auto& [name, trace] : traces) {
        write_file(a.out / (name + ".csv"), trace_csv(trace));
        report_trace(name, trace);
        all_converged = all_converged && trace.converged;
    }
    std::cout << "model saved to " << a.out.string() << "\n";
    if (!all_converged) {
        std::cerr << "warning: mse threshold " << a.cfg.mse_threshold << " not reached within "
                  << a.cfg.max_epochs << " epochs\n";
        if (a.require_converged) return kExitRuntime;
    }
    return 0;
}

struct EvaluateArgs {
    fs::path model;
    fs::path corpus;
    std::string which = "test";
    SplitFlags split;
    fs::path report = "report.csv";
    bool json = false;
};

int run_evaluate(const EvaluateArgs& a) {
    auto loaded = load_model(a.model);
    auto corpus = load_corpus_file(a.corpus);
    std::optional<Corpus> subset;
    if (a.which == "all") {
        subset = corpus;
    } else {
        auto parts = split(corpus, a.split.train_rows, a.split.test_rows);
        subset = a.which == "train" ? parts.train : parts.test;
    }
    const auto report = evaluate(loaded.model, subset->samples());
    write_file(a.report, report_csv(report));
    if (a.json) {
        std::cout << report_json(report);
        return 0;
    }
    std::cout << to_string(report.model_kind) << " model, " << a.which << " split ("
              << report.sample_count << " samples)\n";
    std::cout << "overall accuracy: " << format_double(report.overall_accuracy) << "\n";
    if (report.group_accuracy)
        std::cout << "group accuracy: " << format_double(*report.group_accuracy) << "\n";
    if (report.position_accuracy)
        std::cout << "position accuracy: " << format_double(*report.position_accuracy) << "\n";
    std::cout << "report written to " << a.report.string() << "\n";
    return 0;
}

struct RecognizeArgs {
    fs::path model;
    fs::path image;
    std::size_t top = 0, left = 0;
    std::size_t height = 0, width = 0;  // 0 = rest of the image
    std::string threshold = "128";
    bool invert = false;
};

int run_recognize(const RecognizeArgs& a) {
    const auto policy = ThresholdPolicy::parse(a.threshold);
    auto loaded = load_model(a.model);
    auto img = read_pgm_file(a.image);
    if (a.invert) img = invert(img);
    if (a.top >= img.height() || a.left >= img.width())
        throw Error(Errc::GridMismatch, "cell origin lies outside the image");
    const auto h = a.height ? a.height : img.height() - a.top;
    const auto w = a.width ? a.width : img.width() - a.left;
    const auto cell = img.crop(a.top, a.left, h, w);
    const auto extraction = extract_pattern(binarize(cell, policy));
    const auto result = recognize(loaded.model, extraction.block);

    std::cout << result.predicted.letter() << "\n";
    if (const auto* d = std::get_if<HierarchicalDetail>(&result.detail))
        std::cout << "group: " << d->group + 1 << "\n"
                  << "group scores: " << join_scores(d->group_scores) << "\n";
    std::cout << "scores: " << join_scores(result.scores) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Handwritten capital letter extraction and neural recognition"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Help for every subcommand");

    GenDataArgs gen;
    auto* gen_cmd = app.add_subcommand("gen-data", "Generate a synthetic CORPUS v1 file");
    gen_cmd->add_option("--rows", gen.rows, "Sheet rows (26 letters each)")->capture_default_str();
    gen_cmd->add_option("--flip", gen.noise.flip_prob, "Per-pixel flip probability")->capture_default_str();
    gen_cmd->add_option("--jitter", gen.noise.jitter, "Max translation in pixels (0-3)")->capture_default_str();
    gen_cmd->add_option("--seed", gen.noise.seed, "Noise seed")->capture_default_str();
    gen_cmd->add_option("-o,--out", gen.out, "Output corpus path")->required();

    RenderArgs render;
    auto* render_cmd = app.add_subcommand("render", "Render a corpus sheet or one letter cell as PGM");
    render_cmd->add_option("--corpus", render.corpus, "Corpus to draw as a sheet");
    render_cmd->add_option("--letter", render.letter, "Single template letter to draw");
    render_cmd->add_option("--cell-height", render.grid.cell_height)->capture_default_str();
    render_cmd->add_option("--cell-width", render.grid.cell_width)->capture_default_str();
    render_cmd->add_flag("--ascii", render.ascii, "Write P2 instead of P5");
    render_cmd->add_option("-o,--out", render.out, "Output PGM path")->required();

    IngestArgs ingest;
    auto* ingest_cmd = app.add_subcommand("ingest", "Extract a corpus from a scanned sheet (PGM)");
    ingest_cmd->add_option("--image", ingest.image)->required();
    ingest_cmd->add_option("--rows", ingest.grid.rows, "Sheet rows")->required();
    ingest_cmd->add_option("--cols", ingest.grid.cols, "Letters per row")->capture_default_str();
    ingest_cmd->add_option("--cell-height", ingest.grid.cell_height)->capture_default_str();
    ingest_cmd->add_option("--cell-width", ingest.grid.cell_width)->capture_default_str();
    ingest_cmd->add_option("--top", ingest.grid.top)->capture_default_str();
    ingest_cmd->add_option("--left", ingest.grid.left)->capture_default_str();
    ingest_cmd->add_option("--threshold", ingest.threshold, "0-255 or 'otsu'")->capture_default_str();
    ingest_cmd->add_flag("--invert", ingest.invert, "Treat light pixels as ink");
    ingest_cmd->add_option("-o,--out", ingest.out, "Output corpus path")->required();

    TrainArgs tr;
    auto* train_cmd = app.add_subcommand("train", "Train a recognizer on the training rows of a corpus");
    train_cmd->add_option("--corpus", tr.corpus)->required();
    train_cmd->add_option("--model", tr.model, "direct | correlation | hierarchical")
        ->capture_default_str()
        ->check(CLI::IsMember({"direct", "correlation", "hierarchical"}));
    train_cmd->add_option("--grouping", tr.grouping, "Group file for the hierarchical model");
    train_cmd->add_option("--eta", tr.cfg.eta, "Learning rate")->capture_default_str();
    train_cmd->add_option("--alpha", tr.cfg.alpha, "Momentum")->capture_default_str();
    train_cmd->add_option("--mse-threshold", tr.cfg.mse_threshold)->capture_default_str();
    train_cmd->add_option("--max-epochs", tr.cfg.max_epochs)->capture_default_str();
    train_cmd->add_option("--seed", tr.cfg.seed)->capture_default_str();
    train_cmd->add_option("--init-range", tr.cfg.init_range)->capture_default_str();
    train_cmd->add_option("--hidden", tr.hidden, "Hidden units")->capture_default_str();
    train_cmd->add_flag("--no-shuffle", tr.no_shuffle, "Present samples in corpus order");
    train_cmd->add_flag("--require-converged", tr.require_converged,
                        "Exit 1 when the mse threshold is not reached");
    tr.split.add(train_cmd);
    train_cmd->add_option("-o,--out", tr.out, "Model bundle directory")->required();

    EvaluateArgs ev;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a model bundle against a corpus");
    eval_cmd->add_option("--model", ev.model)->required();
    eval_cmd->add_option("--corpus", ev.corpus)->required();
    eval_cmd->add_option("--split", ev.which, "train | test | all")
        ->capture_default_str()
        ->check(CLI::IsMember({"train", "test", "all"}));
    ev.split.add(eval_cmd);
    eval_cmd->add_option("--report", ev.report, "Report CSV path")->capture_default_str();
    eval_cmd->add_flag("--json", ev.json, "Print the report as JSON");

    RecognizeArgs rec;
    auto* rec_cmd = app.add_subcommand("recognize", "Recognize one character cell of a PGM image");
    rec_cmd->add_option("--model", rec.model)->required();
    rec_cmd->add_option("--image", rec.image)->required();
    rec_cmd->add_option("--cell-top", rec.top)->capture_default_str();
    rec_cmd->add_option("--cell-left", rec.left)->capture_default_str();
    rec_cmd->add_option("--cell-height", rec.height, "0 = to the image edge")->capture_default_str();
    rec_cmd->add_option("--cell-width", rec.width, "0 = to the image edge")->capture_default_str();
    rec_cmd->add_option("--threshold", rec.threshold, "0-255 or 'otsu'")->capture_default_str();
    rec_cmd->add_flag("--invert", rec.invert, "Treat light pixels as ink");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*gen_cmd) return run_gen_data(gen);
        if (*render_cmd) return run_render(render);
        if (*ingest_cmd) return run_ingest(ingest);
        if (*train_cmd) return run_train(tr);
        if (*eval_cmd) return run_evaluate(ev);
        if (*rec_cmd) return run_recognize(rec);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return is_usage_error(e.code()) ? kExitUsage : kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
