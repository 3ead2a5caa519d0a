#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scripta {

/// 8-bit grayscale raster, row-major.
class GrayImage {
public:
    GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels);

    /// Uniformly filled image.
    static GrayImage filled(std::size_t width, std::size_t height, std::uint8_t value);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }

    std::uint8_t at(std::size_t row, std::size_t col) const { return pixels_[row * width_ + col]; }
    void set(std::size_t row, std::size_t col, std::uint8_t value) {
        pixels_[row * width_ + col] = value;
    }

    /// Rectangular sub-image; throws GridMismatch if it leaves the image.
    GrayImage crop(std::size_t top, std::size_t left, std::size_t height, std::size_t width) const;

    bool operator==(const GrayImage&) const = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> pixels_;
};

/// Binary raster, row-major, 1 = ink.
class BinaryImage {
public:
    BinaryImage(std::size_t width, std::size_t height);
    BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

    std::size_t width() const noexcept { return width_; }
    std::size_t height() const noexcept { return height_; }
    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    std::uint8_t at(std::size_t row, std::size_t col) const { return bits_[row * width_ + col]; }
    void set(std::size_t row, std::size_t col, bool ink) { bits_[row * width_ + col] = ink ? 1 : 0; }

    BinaryImage transposed() const;
    BinaryImage crop(std::size_t top, std::size_t left, std::size_t height, std::size_t width) const;

    bool operator==(const BinaryImage&) const = default;

private:
    std::size_t width_;
    std::size_t height_;
    std::vector<std::uint8_t> bits_;
};

/// Ink is any pixel strictly darker than the threshold.
class ThresholdPolicy {
public:
    enum class Kind { Fixed, Otsu };

    /// level must lie in 0..=255.
    static ThresholdPolicy fixed(int level);
    static ThresholdPolicy otsu() noexcept { return ThresholdPolicy(Kind::Otsu, 0); }

    Kind kind() const noexcept { return kind_; }
    int level() const noexcept { return level_; }

    /// "otsu" or a decimal level.
    static ThresholdPolicy parse(std::string_view text);

    bool operator==(const ThresholdPolicy&) const = default;

private:
    ThresholdPolicy(Kind kind, int level) : kind_(kind), level_(level) {}

    Kind kind_;
    int level_;
};

enum class PgmFormat { Ascii, Raw };  // P2, P5

inline constexpr std::size_t kDefaultMaxPixels = 64u * 1024u * 1024u;

GrayImage parse_pgm(std::span<const std::uint8_t> bytes, std::size_t max_pixels = kDefaultMaxPixels);
GrayImage parse_pgm(std::string_view bytes, std::size_t max_pixels = kDefaultMaxPixels);
std::string write_pgm(const GrayImage& img, PgmFormat format = PgmFormat::Raw);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img,
                    PgmFormat format = PgmFormat::Raw);

/// Threshold that maximizes between-class variance. The returned value t
/// splits {v < t} (ink) from {v >= t}; ties resolve to the lowest t.
/// Throws DegenerateImage when every pixel has the same intensity.
int otsu_threshold(const GrayImage& img);

BinaryImage binarize(const GrayImage& img, const ThresholdPolicy& policy);

/// 255 - v for every pixel.
GrayImage invert(const GrayImage& img);

/// Ink renders as 0, background as 255.
GrayImage to_gray(const BinaryImage& img);

}  // namespace scripta
