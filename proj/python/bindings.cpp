#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "scripta/io.hpp"
#include "scripta/scripta.hpp"

namespace py = pybind11;
using namespace scripta;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

U8Array to_array(std::size_t rows, std::size_t cols, const std::uint8_t* data) {
    U8Array out({rows, cols});
    std::copy(data, data + rows * cols, out.mutable_data());
    return out;
}

std::vector<std::uint8_t> flat(const U8Array& a, std::size_t& rows, std::size_t& cols) {
    if (a.ndim() != 2) throw Error(Errc::InvalidArgument, "expected a 2-d array");
    rows = a.shape(0);
    cols = a.shape(1);
    return {a.data(), a.data() + a.size()};
}

GrayImage gray_from(const U8Array& a) {
    std::size_t h, w;
    auto px = flat(a, h, w);
    return GrayImage(w, h, std::move(px));
}

BinaryImage binary_from(const U8Array& a) {
    std::size_t h, w;
    auto px = flat(a, h, w);
    return BinaryImage(w, h, std::move(px));
}

U8Array gray_to(const GrayImage& img) { return to_array(img.height(), img.width(), img.pixels().data()); }

U8Array binary_to(const BinaryImage& img) { return to_array(img.height(), img.width(), img.bits().data()); }

U8Array block_to(const PatternBlock& b) {
    return to_array(PatternBlock::kRows, PatternBlock::kCols, b.bits().data());
}

PatternBlock block_from(const U8Array& a) { return PatternBlock(binary_from(a)); }

ThresholdPolicy policy_from(const py::object& threshold) {
    if (py::isinstance<py::str>(threshold)) return ThresholdPolicy::parse(threshold.cast<std::string>());
    return ThresholdPolicy::fixed(threshold.cast<int>());
}

TrainingConfig make_config(double eta, double alpha, double mse_threshold, std::size_t max_epochs,
                           std::uint64_t seed, double init_range, bool shuffle) {
    TrainingConfig cfg;
    cfg.eta = eta;
    cfg.alpha = alpha;
    cfg.mse_threshold = mse_threshold;
    cfg.max_epochs = max_epochs;
    cfg.seed = seed;
    cfg.init_range = init_range;
    cfg.shuffle_each_epoch = shuffle;
    cfg.validate();
    return cfg;
}

py::dict trace_dict(const TrainingTrace& t) {
    py::dict d;
    d["epoch_mse"] = t.epoch_mse;
    d["epochs_run"] = t.epochs_run;
    d["converged"] = t.converged;
    return d;
}

// Python-side model handle; keeps the training traces next to the model.
struct PyModel {
    Model model;
    py::list traces;
    std::vector<std::string> warnings;
    ModelMetadata meta;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Character extraction and neural recognition core";

    static py::exception<Error> error(m, "Error", PyExc_ValueError);
    static py::exception<BlockTooSmall> too_small(m, "BlockTooSmall", error.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const BlockTooSmall& e) {
            py::set_error(too_small, e.what());
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    m.attr("BLOCK_ROWS") = PatternBlock::kRows;
    m.attr("BLOCK_COLS") = PatternBlock::kCols;

    // imaging
    m.def("parse_pgm", [](py::bytes data) { return gray_to(parse_pgm(std::string_view(data))); },
          py::arg("data"), "Decode P2/P5 bytes to a (height, width) uint8 array.");
    m.def(
        "write_pgm",
        [](const U8Array& img, bool ascii) {
            return py::bytes(write_pgm(gray_from(img), ascii ? PgmFormat::Ascii : PgmFormat::Raw));
        },
        py::arg("image"), py::arg("ascii") = false);
    m.def("otsu_threshold", [](const U8Array& img) { return otsu_threshold(gray_from(img)); });
    m.def(
        "binarize",
        [](const U8Array& img, const py::object& threshold) {
            return binary_to(binarize(gray_from(img), policy_from(threshold)));
        },
        py::arg("image"), py::arg("threshold") = 128,
        "1 where a pixel is ink (darker than the threshold). threshold: 0-255 or 'otsu'.");

    // extraction
    m.def(
        "extract_pattern",
        [](const U8Array& bits) {
            auto e = extract_pattern(binary_from(bits));
            py::dict report;
            report["rows_removed_top"] = e.report.rows_removed_top;
            report["rows_removed_bottom"] = e.report.rows_removed_bottom;
            report["cols_removed_left"] = e.report.cols_removed_left;
            report["cols_removed_right"] = e.report.cols_removed_right;
            return py::make_tuple(block_to(e.block), report);
        },
        py::arg("bits"), "Trim a binary image to a 25x20 block; returns (block, report).");
    m.def("glyph_template", [](char letter) { return block_to(glyph_template(Label::from_letter(letter))); });

    // network
    py::class_<FeedForwardNet>(m, "FeedForwardNet")
        .def_static("random", &FeedForwardNet::random, py::arg("inputs"), py::arg("hidden"), py::arg("outputs"),
                    py::arg("init_range") = 0.5, py::arg("seed") = 42)
        .def_property_readonly("shape",
                               [](const FeedForwardNet& n) {
                                   return py::make_tuple(n.input_size(), n.hidden_size(), n.output_size());
                               })
        .def("predict", [](const FeedForwardNet& n, const std::vector<double>& x) { return predict(n, x); })
        .def("save", [](const FeedForwardNet& n) { return save_net(n); })
        .def_static("load", [](const std::string& text) { return load_net(text); })
        .def(py::self == py::self);
    m.def(
        "train_net",
        [](const FeedForwardNet& net, const std::vector<std::vector<double>>& inputs,
           const std::vector<std::vector<double>>& targets, double eta, double alpha, double mse_threshold,
           std::size_t max_epochs, std::uint64_t seed, bool shuffle) {
            if (inputs.size() != targets.size())
                throw Error(Errc::DimensionMismatch, "inputs and targets differ in length");
            std::vector<SampleRef> refs;
            for (std::size_t i = 0; i < inputs.size(); ++i) refs.push_back({inputs[i], targets[i]});
            auto out = train(net, refs, make_config(eta, alpha, mse_threshold, max_epochs, seed, 0.5, shuffle));
            return py::make_tuple(out.net, trace_dict(out.trace));
        },
        py::arg("net"), py::arg("inputs"), py::arg("targets"), py::arg("eta") = 0.2, py::arg("alpha") = 0.1,
        py::arg("mse_threshold") = 0.001, py::arg("max_epochs") = 50000, py::arg("seed") = 42,
        py::arg("shuffle") = true, "Online backpropagation with momentum; returns (net, trace).");

    // dataset
    py::class_<Corpus>(m, "Corpus")
        .def_property_readonly("rows", &Corpus::rows)
        .def("__len__", &Corpus::size)
        .def("samples",
             [](const Corpus& c) {
                 py::list out;
                 for (const auto& s : c.samples())
                     out.append(py::make_tuple(s.row_index, std::string(1, s.label.letter()), block_to(s.block)));
                 return out;
             })
        .def("save", [](const Corpus& c) { return save_corpus(c); })
        .def_static("load", [](const std::string& text) { return load_corpus(text); })
        .def(py::self == py::self);
    m.def(
        "generate_synthetic",
        [](std::size_t rows, double flip, int jitter, std::uint64_t seed) {
            return generate_synthetic(rows, NoiseSpec{flip, jitter, seed});
        },
        py::arg("rows"), py::arg("flip") = 0.0, py::arg("jitter") = 0, py::arg("seed") = 0);
    m.def(
        "split",
        [](const Corpus& c, std::size_t train_rows, std::size_t test_rows) {
            auto s = split(c, train_rows, test_rows);
            return py::make_tuple(s.train, s.test);
        },
        py::arg("corpus"), py::arg("train_rows") = 10, py::arg("test_rows") = 5);
    m.def(
        "render_sheet",
        [](const Corpus& c) {
            SheetGrid grid;
            grid.rows = c.rows();
            return gray_to(render_sheet(c, grid));
        },
        py::arg("corpus"));
    m.def(
        "ingest_sheet",
        [](const U8Array& img, std::size_t rows, std::size_t cols, std::size_t cell_height, std::size_t cell_width,
           std::size_t top, std::size_t left, const py::object& threshold) {
            auto r = ingest_sheet(gray_from(img), SheetGrid{rows, cols, cell_height, cell_width, top, left},
                                  policy_from(threshold));
            py::list skipped;
            for (const auto& s : r.skipped) skipped.append(py::make_tuple(s.row, s.col, s.reason));
            return py::make_tuple(r.corpus, skipped);
        },
        py::arg("image"), py::arg("rows"), py::arg("cols") = kLabelCount, py::arg("cell_height") = 30,
        py::arg("cell_width") = 24, py::arg("top") = 0, py::arg("left") = 0, py::arg("threshold") = 128);

    // models
    py::class_<PyModel>(m, "Model")
        .def_property_readonly("kind", [](const PyModel& p) { return std::string(to_string(kind_of(p.model))); })
        .def_readonly("traces", &PyModel::traces)
        .def_readonly("warnings", &PyModel::warnings)
        .def(
            "recognize",
            [](const PyModel& p, const U8Array& block) {
                auto r = recognize(p.model, block_from(block));
                py::dict d;
                d["letter"] = std::string(1, r.predicted.letter());
                d["scores"] = r.scores;
                if (const auto* h = std::get_if<HierarchicalDetail>(&r.detail)) {
                    d["group"] = h->group;
                    d["group_scores"] = h->group_scores;
                }
                return d;
            },
            py::arg("block"), "Scores and predicted letter for one 25x20 block.")
        .def(
            "evaluate",
            [](const PyModel& p, const Corpus& c) { return report_json(evaluate(p.model, c.samples())); },
            py::arg("corpus"), "Evaluation report as a JSON string.")
        .def(
            "evaluate_csv",
            [](const PyModel& p, const Corpus& c) { return report_csv(evaluate(p.model, c.samples())); },
            py::arg("corpus"))
        .def(
            "save",
            [](const PyModel& p, const std::filesystem::path& dir) { save_model(dir, p.model, p.meta); },
            py::arg("directory"));
    m.def(
        "load_model",
        [](const std::filesystem::path& dir) {
            auto loaded = load_model(dir);
            return PyModel{std::move(loaded.model), py::list(), {}, loaded.meta};
        },
        py::arg("directory"));
    m.def(
        "train_model",
        [](const Corpus& train_set, const std::string& kind, std::optional<std::string> grouping, std::size_t hidden,
           double eta, double alpha, double mse_threshold, std::size_t max_epochs, std::uint64_t seed,
           double init_range, bool shuffle, std::size_t threads) {
            const auto cfg = make_config(eta, alpha, mse_threshold, max_epochs, seed, init_range, shuffle);
            const ModelOptions opts{hidden, threads};
            const auto samples = train_set.samples();
            py::gil_scoped_release release;
            switch (parse_model_kind(kind)) {
                case ModelKind::Direct: {
                    auto t = train_direct(samples, cfg, opts);
                    py::gil_scoped_acquire hold;
                    py::list traces;
                    traces.append(trace_dict(t.trace));
                    return PyModel{std::move(t.model), traces, t.warnings, {cfg, hidden}};
                }
                case ModelKind::Correlation: {
                    auto t = train_correlation(samples, cfg, opts);
                    py::gil_scoped_acquire hold;
                    py::list traces;
                    for (const auto& tr : t.traces) traces.append(trace_dict(tr));
                    return PyModel{std::move(t.model), traces, t.warnings, {cfg, hidden}};
                }
                case ModelKind::Hierarchical:
                default: {
                    const auto scheme =
                        grouping ? GroupingScheme::parse(*grouping) : GroupingScheme::default_scheme();
                    auto t = train_hierarchical(samples, scheme, cfg, opts);
                    py::gil_scoped_acquire hold;
                    py::list traces;
                    traces.append(trace_dict(t.group_trace));
                    for (const auto& tr : t.position_traces)
                        traces.append(tr ? py::object(trace_dict(*tr)) : py::object(py::none()));
                    return PyModel{std::move(t.model), traces, t.warnings, {cfg, hidden}};
                }
            }
        },
        py::arg("train_set"), py::arg("kind") = "direct", py::arg("grouping") = py::none(),
        py::arg("hidden") = kDefaultHidden, py::arg("eta") = 0.2, py::arg("alpha") = 0.1,
        py::arg("mse_threshold") = 0.001, py::arg("max_epochs") = 50000, py::arg("seed") = 42,
        py::arg("init_range") = 0.5, py::arg("shuffle") = true, py::arg("threads") = 0,
        "Train a direct, correlation or hierarchical recognizer. grouping: text, one comma-separated group per line.");
}
