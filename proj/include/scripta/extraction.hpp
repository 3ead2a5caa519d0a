#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "scripta/imaging.hpp"

namespace scripta {

/// Fixed 25x20 binary character block; the unit every recognizer consumes.
class PatternBlock {
public:
    static constexpr std::size_t kRows = 25;
    static constexpr std::size_t kCols = 20;
    static constexpr std::size_t kSize = kRows * kCols;

    PatternBlock() { bits_.fill(0); }
    /// Throws unless the image is exactly 25x20.
    explicit PatternBlock(const BinaryImage& img);

    std::uint8_t at(std::size_t row, std::size_t col) const { return bits_[row * kCols + col]; }
    void set(std::size_t row, std::size_t col, bool ink) { bits_[row * kCols + col] = ink ? 1 : 0; }
    std::span<const std::uint8_t, kSize> bits() const noexcept { return bits_; }

    bool blank() const noexcept;
    BinaryImage to_image() const;

    bool operator==(const PatternBlock&) const = default;

private:
    std::array<std::uint8_t, kSize> bits_;
};

struct TrimReport {
    std::size_t rows_removed_top = 0;
    std::size_t rows_removed_bottom = 0;
    std::size_t cols_removed_left = 0;
    std::size_t cols_removed_right = 0;
    std::vector<double> final_row_stddevs;
    std::vector<double> final_col_stddevs;

    bool operator==(const TrimReport&) const = default;
};

struct Extraction {
    PatternBlock block;
    TrimReport report;
};

/// Population standard deviation of each row's bits.
std::vector<double> row_stddevs(const BinaryImage& img);
/// Population standard deviation of each column's bits.
std::vector<double> col_stddevs(const BinaryImage& img);

struct TrimResult {
    BinaryImage image;
    TrimReport report;
};

/// Shrink `img` to target_rows x target_cols by peeling edge rows and columns.
///
/// Each round first drops one row (if still too tall): whichever of the top
/// and bottom rows has the smaller standard deviation, the top one on a tie.
/// Then one column (if still too wide), left on a tie. Statistics are taken
/// over the current window, so removing rows changes column scores.
/// Throws BlockTooSmall when either input dimension is below target.
TrimResult trim_to(const BinaryImage& img, std::size_t target_rows, std::size_t target_cols);

/// trim_to with the 25x20 pattern geometry.
Extraction extract_pattern(const BinaryImage& img);

/// Row-major 500-vector of 0.0/1.0.
std::array<double, PatternBlock::kSize> flatten(const PatternBlock& block);
/// Inverse of flatten; every value must be exactly 0.0 or 1.0.
PatternBlock unflatten(std::span<const double> values);

}  // namespace scripta
