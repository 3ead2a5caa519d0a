#include "scripta/extraction.hpp"

#include <cmath>

#include "scripta/error.hpp"

namespace scripta {

PatternBlock::PatternBlock(const BinaryImage& img) {
    if (img.height() != kRows || img.width() != kCols)
        throw Error(Errc::DimensionMismatch, "pattern block must be 25x20, got " +
                                                 std::to_string(img.height()) + "x" +
                                                 std::to_string(img.width()));
    for (std::size_t i = 0; i < kSize; ++i) bits_[i] = img.bits()[i];
}

bool PatternBlock::blank() const noexcept {
    for (auto b : bits_)
        if (b) return false;
    return true;
}

BinaryImage PatternBlock::to_image() const {
    return BinaryImage(kCols, kRows, std::vector<std::uint8_t>(bits_.begin(), bits_.end()));
}

namespace {

// Population stddev of the strided run bits[start + k*stride], k < n.
double run_stddev(std::span<const std::uint8_t> bits, std::size_t start, std::size_t stride,
                  std::size_t n) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) sum += bits[start + k * stride];
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double d = bits[start + k * stride] - mean;
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(n));
}

}  // namespace

std::vector<double> row_stddevs(const BinaryImage& img) {
    std::vector<double> out(img.height());
    for (std::size_t r = 0; r < img.height(); ++r)
        out[r] = run_stddev(img.bits(), r * img.width(), 1, img.width());
    return out;
}

std::vector<double> col_stddevs(const BinaryImage& img) {
    std::vector<double> out(img.width());
    for (std::size_t c = 0; c < img.width(); ++c)
        out[c] = run_stddev(img.bits(), c, img.width(), img.height());
    return out;
}

TrimResult trim_to(const BinaryImage& img, std::size_t target_rows, std::size_t target_cols) {
    if (target_rows == 0 || target_cols == 0)
        throw Error(Errc::InvalidArgument, "trim target must be positive");
    if (img.height() < target_rows || img.width() < target_cols)
        throw BlockTooSmall(img.height(), img.width(), target_rows, target_cols);

    const auto bits = img.bits();
    const std::size_t stride = img.width();
    std::size_t top = 0, bottom = img.height();  // [top, bottom)
    std::size_t left = 0, right = img.width();   // [left, right)
    TrimReport report;

    auto row_sd = [&](std::size_t r) { return run_stddev(bits, r * stride + left, 1, right - left); };
    auto col_sd = [&](std::size_t c) {
        return run_stddev(bits, top * stride + c, stride, bottom - top);
    };

    while (bottom - top > target_rows || right - left > target_cols) {
        if (bottom - top > target_rows) {
            if (row_sd(top) <= row_sd(bottom - 1)) {
                ++top;
                ++report.rows_removed_top;
            } else {
                --bottom;
                ++report.rows_removed_bottom;
            }
        }
        if (right - left > target_cols) {
            if (col_sd(left) <= col_sd(right - 1)) {
                ++left;
                ++report.cols_removed_left;
            } else {
                --right;
                ++report.cols_removed_right;
            }
        }
    }

    BinaryImage out = img.crop(top, left, target_rows, target_cols);
    report.final_row_stddevs = row_stddevs(out);
    report.final_col_stddevs = col_stddevs(out);
    return {std::move(out), std::move(report)};
}

Extraction extract_pattern(const BinaryImage& img) {
    auto trimmed = trim_to(img, PatternBlock::kRows, PatternBlock::kCols);
    return {PatternBlock(trimmed.image), std::move(trimmed.report)};
}

std::array<double, PatternBlock::kSize> flatten(const PatternBlock& block) {
    std::array<double, PatternBlock::kSize> out{};
    auto bits = block.bits();
    for (std::size_t i = 0; i < PatternBlock::kSize; ++i) out[i] = bits[i] ? 1.0 : 0.0;
    return out;
}

PatternBlock unflatten(std::span<const double> values) {
    if (values.size() != PatternBlock::kSize)
        throw Error(Errc::DimensionMismatch,
                    "expected 500 values, got " + std::to_string(values.size()));
    PatternBlock block;
    for (std::size_t i = 0; i < PatternBlock::kSize; ++i) {
        if (values[i] != 0.0 && values[i] != 1.0)
            throw Error(Errc::InvalidArgument, "pattern values must be 0.0 or 1.0");
        block.set(i / PatternBlock::kCols, i % PatternBlock::kCols, values[i] == 1.0);
    }
    return block;
}

}  // namespace scripta
