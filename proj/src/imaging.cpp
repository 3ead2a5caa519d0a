#include "scripta/imaging.hpp"

#include <array>
#include <charconv>
#include <limits>

#include "scripta/error.hpp"
#include "scripta/io.hpp"

namespace scripta {

namespace {

void check_dims(std::size_t width, std::size_t height, std::size_t count, const char* what) {
    if (width == 0 || height == 0)
        throw Error(Errc::InvalidArgument, std::string(what) + " dimensions must be positive");
    if (count != width * height)
        throw Error(Errc::DimensionMismatch,
                    std::string(what) + " holds " + std::to_string(count) + " values, expected " +
                        std::to_string(width * height));
}

void check_rect(std::size_t img_h, std::size_t img_w, std::size_t top, std::size_t left,
                std::size_t height, std::size_t width) {
    if (height == 0 || width == 0 || top > img_h || left > img_w || height > img_h - top ||
        width > img_w - left)
        throw Error(Errc::GridMismatch, "crop rectangle exceeds image bounds");
}

}  // namespace

GrayImage::GrayImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
    check_dims(width_, height_, pixels_.size(), "GrayImage");
}

GrayImage GrayImage::filled(std::size_t width, std::size_t height, std::uint8_t value) {
    return GrayImage(width, height, std::vector<std::uint8_t>(width * height, value));
}

GrayImage GrayImage::crop(std::size_t top, std::size_t left, std::size_t height,
                          std::size_t width) const {
    check_rect(height_, width_, top, left, height, width);
    std::vector<std::uint8_t> out;
    out.reserve(width * height);
    for (std::size_t r = 0; r < height; ++r) {
        auto row = pixels_.begin() + static_cast<std::ptrdiff_t>((top + r) * width_ + left);
        out.insert(out.end(), row, row + static_cast<std::ptrdiff_t>(width));
    }
    return GrayImage(width, height, std::move(out));
}

BinaryImage::BinaryImage(std::size_t width, std::size_t height)
    : BinaryImage(width, height, std::vector<std::uint8_t>(width * height, 0)) {}

BinaryImage::BinaryImage(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
    check_dims(width_, height_, bits_.size(), "BinaryImage");
    for (auto b : bits_)
        if (b > 1) throw Error(Errc::InvalidArgument, "BinaryImage bits must be 0 or 1");
}

BinaryImage BinaryImage::transposed() const {
    BinaryImage out(height_, width_);
    for (std::size_t r = 0; r < height_; ++r)
        for (std::size_t c = 0; c < width_; ++c) out.bits_[c * height_ + r] = at(r, c);
    return out;
}

BinaryImage BinaryImage::crop(std::size_t top, std::size_t left, std::size_t height,
                              std::size_t width) const {
    check_rect(height_, width_, top, left, height, width);
    BinaryImage out(width, height);
    for (std::size_t r = 0; r < height; ++r)
        for (std::size_t c = 0; c < width; ++c) out.bits_[r * width + c] = at(top + r, left + c);
    return out;
}

ThresholdPolicy ThresholdPolicy::fixed(int level) {
    if (level < 0 || level > 255)
        throw Error(Errc::InvalidArgument,
                    "fixed threshold must lie in 0..255, got " + std::to_string(level));
    return ThresholdPolicy(Kind::Fixed, level);
}

ThresholdPolicy ThresholdPolicy::parse(std::string_view text) {
    if (text == "otsu" || text == "Otsu") return otsu();
    int level = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), level);
    if (ec != std::errc() || end != text.data() + text.size() || text.empty())
        throw Error(Errc::InvalidArgument, "threshold must be 'otsu' or 0..255");
    return fixed(level);
}

// ---------------------------------------------------------------------------
// PGM

namespace {

class PgmReader {
public:
    PgmReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    bool eof() const { return pos_ >= bytes_.size(); }
    std::size_t pos() const { return pos_; }
    std::uint8_t peek() const { return bytes_[pos_]; }
    void advance(std::size_t n = 1) { pos_ += n; }
    std::size_t remaining() const { return bytes_.size() - pos_; }
    std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

    static bool is_space(std::uint8_t c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
    }

    // Whitespace and '#' comments between header tokens.
    void skip_header_separators() {
        while (!eof()) {
            if (is_space(peek())) {
                advance();
            } else if (peek() == '#') {
                while (!eof() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }

    void skip_spaces() {
        while (!eof() && is_space(peek())) advance();
    }

    // Decimal token; nullopt-like false when absent. Saturates on overflow.
    bool read_decimal(std::uint64_t& value, bool& overflow) {
        value = 0;
        overflow = false;
        std::size_t start = pos_;
        while (!eof() && peek() >= '0' && peek() <= '9') {
            if (value > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) overflow = true;
            if (!overflow) value = value * 10 + (peek() - '0');
            advance();
        }
        if (pos_ == start) return false;
        // A token must end at whitespace, a comment, or end of input.
        return eof() || is_space(peek()) || peek() == '#';
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

GrayImage parse_pgm(std::span<const std::uint8_t> bytes, std::size_t max_pixels) {
    PgmReader in(bytes);
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw Error(Errc::MalformedHeader, "missing P2/P5 magic number");
    const bool raw = bytes[1] == '5';
    in.advance(2);
    if (!in.eof() && !PgmReader::is_space(in.peek()) && in.peek() != '#')
        throw Error(Errc::MalformedHeader, "magic number must be followed by whitespace");

    auto header_value = [&](const char* name, Errc on_overflow) {
        in.skip_header_separators();
        std::uint64_t value = 0;
        bool overflow = false;
        if (!in.read_decimal(value, overflow))
            throw Error(Errc::MalformedHeader, std::string("bad or missing ") + name);
        if (overflow) throw Error(on_overflow, std::string(name) + " is too large");
        return value;
    };

    const std::uint64_t width = header_value("width", Errc::DimensionOverflow);
    const std::uint64_t height = header_value("height", Errc::DimensionOverflow);
    if (width == 0 || height == 0) throw Error(Errc::MalformedHeader, "zero image dimension");
    if (width > max_pixels / height)
        throw Error(Errc::DimensionOverflow, std::to_string(width) + "x" + std::to_string(height) +
                                                 " exceeds the pixel cap of " +
                                                 std::to_string(max_pixels));
    const std::uint64_t maxval = header_value("maxval", Errc::UnsupportedMaxval);
    if (maxval == 0) throw Error(Errc::MalformedHeader, "maxval must be positive");
    if (maxval > 255)
        throw Error(Errc::UnsupportedMaxval, "maxval " + std::to_string(maxval) + " exceeds 255");

    const std::size_t count = static_cast<std::size_t>(width * height);
    std::vector<std::uint8_t> pixels;
    pixels.reserve(count);

    if (raw) {
        // Exactly one whitespace byte separates maxval from the raster.
        if (in.eof()) throw Error(Errc::TruncatedPixelData, "no pixel data");
        in.advance();
        if (in.remaining() < count)
            throw Error(Errc::TruncatedPixelData, "expected " + std::to_string(count) +
                                                      " pixels, found " +
                                                      std::to_string(in.remaining()));
        auto raster = in.rest().first(count);
        for (auto v : raster) {
            if (v > maxval)
                throw Error(Errc::InvalidPixelValue, "pixel value exceeds maxval");
            pixels.push_back(v);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            in.skip_spaces();
            if (in.eof())
                throw Error(Errc::TruncatedPixelData, "expected " + std::to_string(count) +
                                                          " pixels, found " + std::to_string(i));
            std::uint64_t v = 0;
            bool overflow = false;
            if (!in.read_decimal(v, overflow) || overflow || v > maxval)
                throw Error(Errc::InvalidPixelValue,
                            "bad pixel token at index " + std::to_string(i));
            pixels.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return GrayImage(static_cast<std::size_t>(width), static_cast<std::size_t>(height),
                     std::move(pixels));
}

GrayImage parse_pgm(std::string_view bytes, std::size_t max_pixels) {
    return parse_pgm(std::span<const std::uint8_t>(
                         reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()),
                     max_pixels);
}

std::string write_pgm(const GrayImage& img, PgmFormat format) {
    std::string out = format == PgmFormat::Raw ? "P5\n" : "P2\n";
    out += std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    if (format == PgmFormat::Raw) {
        out.append(reinterpret_cast<const char*>(img.pixels().data()), img.pixels().size());
        return out;
    }
    for (std::size_t r = 0; r < img.height(); ++r) {
        for (std::size_t c = 0; c < img.width(); ++c) {
            if (c) out += ' ';
            out += std::to_string(img.at(r, c));
        }
        out += '\n';
    }
    return out;
}

GrayImage read_pgm_file(const std::filesystem::path& path) { return parse_pgm(read_file(path)); }

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img, PgmFormat format) {
    write_file(path, write_pgm(img, format));
}

// ---------------------------------------------------------------------------
// Thresholding

int otsu_threshold(const GrayImage& img) {
    std::array<std::uint64_t, 256> hist{};
    for (auto v : img.pixels()) ++hist[v];

    const auto total = static_cast<__int128>(img.pixels().size());
    __int128 sum_all = 0;
    for (int v = 0; v < 256; ++v) sum_all += static_cast<__int128>(v) * hist[v];

    // For a split {v <= k} | {v > k}, N^2 * sigma_B^2 = (N*S0 - n0*S)^2 / (n0*n1).
    __int128 n0 = 0, s0 = 0;
    long double best = -1.0L;
    int best_k = -1;
    for (int k = 0; k < 255; ++k) {
        n0 += hist[k];
        s0 += static_cast<__int128>(k) * hist[k];
        const __int128 n1 = total - n0;
        if (n0 == 0 || n1 == 0) continue;
        const auto diff = static_cast<long double>(total * s0 - n0 * sum_all);
        const long double between =
            diff * diff / (static_cast<long double>(n0) * static_cast<long double>(n1));
        if (between > best) {
            best = between;
            best_k = k;
        }
    }
    if (best_k < 0) throw Error(Errc::DegenerateImage, "Otsu threshold of a constant image");
    return best_k + 1;
}

BinaryImage binarize(const GrayImage& img, const ThresholdPolicy& policy) {
    const int threshold =
        policy.kind() == ThresholdPolicy::Kind::Otsu ? otsu_threshold(img) : policy.level();
    std::vector<std::uint8_t> bits(img.pixels().size());
    auto px = img.pixels();
    for (std::size_t i = 0; i < px.size(); ++i) bits[i] = px[i] < threshold ? 1 : 0;
    return BinaryImage(img.width(), img.height(), std::move(bits));
}

GrayImage invert(const GrayImage& img) {
    std::vector<std::uint8_t> px(img.pixels().begin(), img.pixels().end());
    for (auto& v : px) v = static_cast<std::uint8_t>(255 - v);
    return GrayImage(img.width(), img.height(), std::move(px));
}

GrayImage to_gray(const BinaryImage& img) {
    std::vector<std::uint8_t> px(img.bits().size());
    for (std::size_t i = 0; i < px.size(); ++i) px[i] = img.bits()[i] ? 0 : 255;
    return GrayImage(img.width(), img.height(), std::move(px));
}

}  // namespace scripta
