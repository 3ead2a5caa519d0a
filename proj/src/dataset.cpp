#include "scripta/dataset.hpp"

#include <set>
#include <utility>

#include "scripta/error.hpp"
#include "scripta/io.hpp"
#include "scripta/rng.hpp"

namespace scripta {

Corpus::Corpus(std::size_t rows, std::vector<LabeledSample> samples)
    : rows_(rows), samples_(std::move(samples)) {
    if (rows_ == 0) throw Error(Errc::InvalidArgument, "corpus must span at least one row");
    std::set<std::pair<std::size_t, int>> seen;
    for (const auto& s : samples_) {
        if (s.row_index >= rows_)
            throw Error(Errc::InvalidArgument, "sample row " + std::to_string(s.row_index) +
                                                   " outside corpus of " + std::to_string(rows_) +
                                                   " rows");
        if (!seen.emplace(s.row_index, s.label.value()).second)
            throw Error(Errc::InvalidArgument, "duplicate sample for row " +
                                                   std::to_string(s.row_index) + " letter " +
                                                   s.label.letter());
    }
}

void NoiseSpec::validate() const {
    if (!(flip_prob >= 0.0 && flip_prob < 0.5))
        throw Error(Errc::InvalidArgument, "flip probability must lie in [0, 0.5)");
    if (jitter < 0 || jitter > 3) throw Error(Errc::InvalidArgument, "jitter must lie in 0..3");
}

PatternBlock shift(const PatternBlock& block, int dy, int dx) {
    PatternBlock out;
    const int rows = static_cast<int>(PatternBlock::kRows);
    const int cols = static_cast<int>(PatternBlock::kCols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int sr = r - dy, sc = c - dx;
            if (sr < 0 || sr >= rows || sc < 0 || sc >= cols) continue;
            if (block.at(static_cast<std::size_t>(sr), static_cast<std::size_t>(sc)))
                out.set(static_cast<std::size_t>(r), static_cast<std::size_t>(c), true);
        }
    }
    return out;
}

Corpus generate_synthetic(std::size_t rows, const NoiseSpec& noise) {
    if (rows == 0) throw Error(Errc::InvalidArgument, "rows must be at least 1");
    noise.validate();
    Rng rng(noise.seed);
    const auto span = static_cast<std::uint64_t>(2 * noise.jitter + 1);
    std::vector<LabeledSample> samples;
    samples.reserve(rows * kLabelCount);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t k = 0; k < kLabelCount; ++k) {
            const auto label = Label::from_index(k);
            const int dy = static_cast<int>(rng.below(span)) - noise.jitter;
            const int dx = static_cast<int>(rng.below(span)) - noise.jitter;
            PatternBlock block = shift(glyph_template(label), dy, dx);
            for (std::size_t i = 0; i < PatternBlock::kSize; ++i) {
                if (rng.uniform01() < noise.flip_prob) {
                    const auto row = i / PatternBlock::kCols, col = i % PatternBlock::kCols;
                    block.set(row, col, !block.at(row, col));
                }
            }
            samples.push_back({block, label, r});
        }
    }
    return Corpus(rows, std::move(samples));
}

CorpusSplit split(const Corpus& corpus, std::size_t train_rows, std::size_t test_rows) {
    if (train_rows + test_rows > corpus.rows())
        throw Error(Errc::InsufficientRows, std::to_string(train_rows) + " train + " +
                                                std::to_string(test_rows) + " test rows exceed " +
                                                std::to_string(corpus.rows()));
    std::vector<LabeledSample> train, test;
    const std::size_t test_start = corpus.rows() - test_rows;
    for (const auto& s : corpus.samples()) {
        if (s.row_index < train_rows) train.push_back(s);
        else if (s.row_index >= test_start) test.push_back(s);
    }
    return {Corpus(corpus.rows(), std::move(train)), Corpus(corpus.rows(), std::move(test))};
}

IngestResult ingest_sheet(const GrayImage& img, const SheetGrid& grid, const ThresholdPolicy& policy) {
    if (grid.rows == 0 || grid.cols == 0 || grid.cell_height == 0 || grid.cell_width == 0)
        throw Error(Errc::GridMismatch, "grid dimensions must be positive");
    if (grid.cols > kLabelCount)
        throw Error(Errc::GridMismatch, "a sheet row holds at most 26 letters");
    if (grid.top + grid.rows * grid.cell_height > img.height() ||
        grid.left + grid.cols * grid.cell_width > img.width())
        throw Error(Errc::GridMismatch,
                    "grid of " + std::to_string(grid.rows) + "x" + std::to_string(grid.cols) +
                        " cells exceeds the " + std::to_string(img.height()) + "x" +
                        std::to_string(img.width()) + " image");

    std::vector<LabeledSample> samples;
    std::vector<SkippedCell> skipped;
    for (std::size_t r = 0; r < grid.rows; ++r) {
        for (std::size_t c = 0; c < grid.cols; ++c) {
            const auto cell = img.crop(grid.top + r * grid.cell_height, grid.left + c * grid.cell_width,
                                       grid.cell_height, grid.cell_width);
            try {
                auto extraction = extract_pattern(binarize(cell, policy));
                if (extraction.block.blank()) {
                    skipped.push_back({r, c, "blank cell"});
                    continue;
                }
                samples.push_back({extraction.block, Label::from_index(c), r});
            } catch (const Error& e) {
                if (e.code() != Errc::BlockTooSmall && e.code() != Errc::DegenerateImage) throw;
                skipped.push_back({r, c, e.what()});
            }
        }
    }
    return {Corpus(grid.rows, std::move(samples)), std::move(skipped)};
}

GrayImage render_cell(const PatternBlock& block, std::size_t cell_height, std::size_t cell_width) {
    if (cell_height < PatternBlock::kRows || cell_width < PatternBlock::kCols)
        throw Error(Errc::InvalidArgument, "cell must be at least 25x20");
    auto img = GrayImage::filled(cell_width, cell_height, 255);
    const std::size_t top = cell_height - PatternBlock::kRows;
    const std::size_t left = cell_width - PatternBlock::kCols;
    for (std::size_t r = 0; r < PatternBlock::kRows; ++r)
        for (std::size_t c = 0; c < PatternBlock::kCols; ++c)
            if (block.at(r, c)) img.set(top + r, left + c, 0);
    return img;
}

GrayImage render_sheet(const Corpus& corpus, const SheetGrid& grid) {
    if (grid.cols > kLabelCount || grid.rows == 0 || grid.cols == 0)
        throw Error(Errc::GridMismatch, "invalid sheet grid");
    auto img = GrayImage::filled(grid.left + grid.cols * grid.cell_width,
                                 grid.top + grid.rows * grid.cell_height, 255);
    for (const auto& s : corpus.samples()) {
        if (s.row_index >= grid.rows || s.label.index() >= grid.cols)
            throw Error(Errc::GridMismatch, "sample falls outside the sheet grid");
        const auto cell = render_cell(s.block, grid.cell_height, grid.cell_width);
        const std::size_t top = grid.top + s.row_index * grid.cell_height;
        const std::size_t left = grid.left + s.label.index() * grid.cell_width;
        for (std::size_t r = 0; r < grid.cell_height; ++r)
            for (std::size_t c = 0; c < grid.cell_width; ++c) img.set(top + r, left + c, cell.at(r, c));
    }
    return img;
}

std::string save_corpus(const Corpus& corpus) {
    std::string out = "CORPUS v1 " + std::to_string(corpus.rows()) + " " +
                      std::to_string(corpus.size()) + "\n";
    out.reserve(out.size() + corpus.size() * (PatternBlock::kSize + 8));
    for (const auto& s : corpus.samples()) {
        out += std::to_string(s.row_index);
        out += ',';
        out += s.label.letter();
        out += ',';
        for (auto b : s.block.bits()) out += b ? '1' : '0';
        out += '\n';
    }
    return out;
}

Corpus load_corpus(std::string_view text) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(Errc::MalformedFile, "empty corpus file");
    auto header = split_whitespace(lines[0]);
    if (header.size() != 4 || header[0] != "CORPUS" || header[1] != "v1")
        throw Error(Errc::MalformedFile, "missing 'CORPUS v1' header");
    const std::size_t rows = parse_unsigned(header[2]);
    const std::size_t count = parse_unsigned(header[3]);

    std::vector<LabeledSample> samples;
    for (std::size_t n = 1; n < lines.size(); ++n) {
        if (lines[n].empty()) continue;
        auto fields = split_fields(lines[n], ',');
        const auto where = " on corpus line " + std::to_string(n + 1);
        if (fields.size() != 3 || fields[1].size() != 1 || fields[2].size() != PatternBlock::kSize)
            throw Error(Errc::MalformedFile, "expected row,label,<500 bits>" + where);
        PatternBlock block;
        for (std::size_t i = 0; i < PatternBlock::kSize; ++i) {
            const char ch = fields[2][i];
            if (ch != '0' && ch != '1') throw Error(Errc::MalformedFile, "bits must be 0/1" + where);
            block.set(i / PatternBlock::kCols, i % PatternBlock::kCols, ch == '1');
        }
        const char letter = fields[1][0];
        if (letter < 'A' || letter > 'Z') throw Error(Errc::MalformedFile, "bad label" + where);
        samples.push_back({block, Label::from_letter(letter),
                           static_cast<std::size_t>(parse_unsigned(fields[0]))});
    }
    if (samples.size() != count)
        throw Error(Errc::MalformedFile, "header declares " + std::to_string(count) +
                                             " samples, file holds " +
                                             std::to_string(samples.size()));
    try {
        return Corpus(rows, std::move(samples));
    } catch (const Error& e) {
        throw Error(Errc::MalformedFile, e.what());
    }
}

}  // namespace scripta
