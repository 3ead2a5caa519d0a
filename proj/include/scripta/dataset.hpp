#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scripta/extraction.hpp"
#include "scripta/imaging.hpp"
#include "scripta/label.hpp"

namespace scripta {

/// Samples laid out as on a handwriting sheet: each row holds the alphabet
/// once, so (row_index, label) identifies a sample.
class Corpus {
public:
    /// Throws InvalidArgument if rows == 0, a row index is out of range, or
    /// a (row, label) pair repeats.
    Corpus(std::size_t rows, std::vector<LabeledSample> samples);

    std::size_t rows() const noexcept { return rows_; }
    std::span<const LabeledSample> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    bool empty() const noexcept { return samples_.empty(); }

    bool operator==(const Corpus&) const = default;

private:
    std::size_t rows_;
    std::vector<LabeledSample> samples_;
};

struct NoiseSpec {
    double flip_prob = 0.0;  // per-pixel, must be < 0.5
    int jitter = 0;          // max translation in pixels, 0..=3
    std::uint64_t seed = 0;

    void validate() const;
};

/// Built-in 25x20 bitmap template for a letter.
const PatternBlock& glyph_template(Label label);

/// Translate by (dy, dx); vacated pixels are blank, ink leaving the block is lost.
PatternBlock shift(const PatternBlock& block, int dy, int dx);

/// `rows` copies of the alphabet. Per sample, in row-major order: draw a
/// translation (dy, dx) in [-jitter, jitter]^2, apply it, then flip each
/// bit with probability flip_prob. One generator seeded from noise.seed
/// drives everything, so the corpus is a pure function of the arguments.
Corpus generate_synthetic(std::size_t rows, const NoiseSpec& noise);

struct CorpusSplit {
    Corpus train;
    Corpus test;
};

/// train = rows [0, train_rows); test = rows [rows - test_rows, rows).
/// Both parts keep the source row indices and row count.
CorpusSplit split(const Corpus& corpus, std::size_t train_rows, std::size_t test_rows);

/// Cell layout of a scanned sheet: `rows` x `cols` cells of equal size,
/// starting at (top, left). Column c holds letter c+1.
struct SheetGrid {
    std::size_t rows = 0;
    std::size_t cols = kLabelCount;
    std::size_t cell_height = 30;
    std::size_t cell_width = 24;
    std::size_t top = 0;
    std::size_t left = 0;
};

struct SkippedCell {
    std::size_t row;
    std::size_t col;
    std::string reason;
};

struct IngestResult {
    Corpus corpus;
    std::vector<SkippedCell> skipped;
};

/// Binarize each cell, trim it to a pattern block and label it by column.
/// Cells that are too small, constant under Otsu, or blank after trimming
/// are skipped and listed in the result. Throws GridMismatch when the grid
/// does not fit the image or has more than 26 columns.
IngestResult ingest_sheet(const GrayImage& img, const SheetGrid& grid, const ThresholdPolicy& policy);

/// Block drawn into a cell_height x cell_width paper cell (ink 0, paper
/// 255), anchored to the bottom-right corner.
GrayImage render_cell(const PatternBlock& block, std::size_t cell_height, std::size_t cell_width);

/// Draw every sample of the corpus into its (row, label) cell.
GrayImage render_sheet(const Corpus& corpus, const SheetGrid& grid);

// "CORPUS v1 <rows> <count>" then "row,label,<500 0/1 chars>" per sample.
std::string save_corpus(const Corpus& corpus);
Corpus load_corpus(std::string_view text);

}  // namespace scripta
