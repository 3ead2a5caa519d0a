#include <doctest.h>

#include <limits>

#include "scripta/error.hpp"
#include "scripta/imaging.hpp"
#include "scripta/rng.hpp"

using namespace scripta;

namespace {

Errc error_code(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an Error");
    return Errc::InvalidArgument;
}

GrayImage random_image(Rng& rng, std::size_t w, std::size_t h) {
    std::vector<std::uint8_t> px(w * h);
    for (auto& v : px) v = static_cast<std::uint8_t>(rng.below(256));
    return GrayImage(w, h, std::move(px));
}

// Exhaustive Otsu: for every candidate threshold t, split the raw pixels
// into {v < t} and {v >= t} and compute w0*w1*(mu0 - mu1)^2 directly.
int brute_force_otsu(const GrayImage& img) {
    double best = -1.0;
    int best_t = -1;
    const auto px = img.pixels();
    for (int t = 1; t <= 255; ++t) {
        double n0 = 0, n1 = 0, s0 = 0, s1 = 0;
        for (auto v : px) {
            if (v < t) {
                n0 += 1;
                s0 += v;
            } else {
                n1 += 1;
                s1 += v;
            }
        }
        if (n0 == 0 || n1 == 0) continue;
        const double w0 = n0 / px.size(), w1 = n1 / px.size();
        const double d = s0 / n0 - s1 / n1;
        const double between = w0 * w1 * d * d;
        if (between > best * (1 + 1e-12)) {
            best = between;
            best_t = t;
        }
    }
    return best_t;
}

}  // namespace

TEST_CASE("GrayImage enforces its invariants") {
    CHECK_THROWS_AS(GrayImage(0, 1, {}), Error);
    CHECK(error_code([] { GrayImage(2, 2, {1, 2, 3}); }) == Errc::DimensionMismatch);
    GrayImage img(2, 1, {7, 9});
    CHECK(img.at(0, 1) == 9);
}

TEST_CASE("parse_pgm accepts P2 and P5") {
    auto one = parse_pgm("P2\n1 1\n255\n0\n");
    CHECK(one == GrayImage(1, 1, {0}));

    std::string raw = "P5\n2 2\n255\n";
    raw += std::string{'\x00', '\xff', '\xff', '\x00'};
    CHECK(parse_pgm(raw) == GrayImage(2, 2, {0, 255, 255, 0}));
}

TEST_CASE("parse_pgm header comments and trailing bytes") {
    auto img = parse_pgm("P2 # magic\n# a full comment line\n3 # width\n1\n# before maxval\n9\n1 2 3 trailing garbage");
    CHECK(img == GrayImage(3, 1, {1, 2, 3}));

    std::string raw = "P5\n#c\n1 1 255\n";
    raw += "\x42junk";
    CHECK(parse_pgm(raw) == GrayImage(1, 1, {0x42}));
}

TEST_CASE("parse_pgm error paths") {
    // 2x1 image with only one pixel token.
    CHECK(error_code([] { parse_pgm("P2\n2 1\n255\n5\n"); }) == Errc::TruncatedPixelData);
    CHECK(error_code([] { parse_pgm("P5\n2 2\n255\n\x01\x02"); }) == Errc::TruncatedPixelData);
    CHECK(error_code([] { parse_pgm("P6\n1 1\n255\n0"); }) == Errc::MalformedHeader);
    CHECK(error_code([] { parse_pgm("P2\nx 1\n255\n0"); }) == Errc::MalformedHeader);
    CHECK(error_code([] { parse_pgm("P2\n0 1\n255\n"); }) == Errc::MalformedHeader);
    CHECK(error_code([] { parse_pgm("P2\n1"); }) == Errc::MalformedHeader);
    CHECK(error_code([] { parse_pgm(""); }) == Errc::MalformedHeader);
    CHECK(error_code([] { parse_pgm("P2\n1 1\n256\n0"); }) == Errc::UnsupportedMaxval);
    CHECK(error_code([] { parse_pgm("P2\n1 1\n65535\n0"); }) == Errc::UnsupportedMaxval);
    CHECK(error_code([] { parse_pgm("P2\n1 1\n0\n0"); }) == Errc::MalformedHeader);
    CHECK(error_code([] { parse_pgm("P2\n1 1\n100\n101"); }) == Errc::InvalidPixelValue);
    CHECK(error_code([] { parse_pgm("P2\n2 1\n255\n1 #2"); }) == Errc::InvalidPixelValue);
    CHECK(error_code([] { parse_pgm("P2\n100000 100000\n255\n"); }) == Errc::DimensionOverflow);
    CHECK(error_code([] { parse_pgm("P2\n99999999999999999999999 1\n255\n"); }) ==
          Errc::DimensionOverflow);
    CHECK(error_code([] { parse_pgm("P2\n4 4\n255\n", 15); }) == Errc::DimensionOverflow);
}

TEST_CASE("PGM writer round trip, both formats") {
    Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const auto w = 1 + rng.below(40), h = 1 + rng.below(40);
        auto img = random_image(rng, w, h);
        CHECK(parse_pgm(write_pgm(img, PgmFormat::Ascii)) == img);
        CHECK(parse_pgm(write_pgm(img, PgmFormat::Raw)) == img);
    }
}

TEST_CASE("ThresholdPolicy validation") {
    CHECK_THROWS_AS(ThresholdPolicy::fixed(256), Error);
    CHECK_THROWS_AS(ThresholdPolicy::fixed(-1), Error);
    CHECK(ThresholdPolicy::parse("otsu").kind() == ThresholdPolicy::Kind::Otsu);
    CHECK(ThresholdPolicy::parse("77").level() == 77);
    CHECK_THROWS_AS(ThresholdPolicy::parse("7x"), Error);
}

TEST_CASE("binarize with a fixed threshold") {
    CHECK(binarize(GrayImage(2, 1, {10, 200}), ThresholdPolicy::fixed(128)) ==
          BinaryImage(2, 1, {1, 0}));
    CHECK(binarize(GrayImage(2, 1, {128, 128}), ThresholdPolicy::fixed(128)) ==
          BinaryImage(2, 1, {0, 0}));

    Rng rng(3);
    auto img = random_image(rng, 17, 9);
    auto zero = binarize(img, ThresholdPolicy::fixed(0));
    CHECK(zero.width() == 17);
    CHECK(zero.height() == 9);
    for (auto b : zero.bits()) CHECK(b == 0);

    auto all = binarize(GrayImage(3, 1, {0, 254, 255}), ThresholdPolicy::fixed(255));
    CHECK(all == BinaryImage(3, 1, {1, 1, 0}));
}

TEST_CASE("Otsu separates two clusters and matches exhaustive search") {
    Rng rng(5);
    std::vector<std::uint8_t> px;
    for (int i = 0; i < 300; ++i) px.push_back(static_cast<std::uint8_t>(20 + rng.below(30)));
    for (int i = 0; i < 200; ++i) px.push_back(static_cast<std::uint8_t>(180 + rng.below(40)));
    GrayImage img(50, 10, px);
    const int t = otsu_threshold(img);
    CHECK(t > 49);
    CHECK(t <= 180);
    CHECK(t == brute_force_otsu(img));

    auto bin = binarize(img, ThresholdPolicy::otsu());
    for (std::size_t i = 0; i < px.size(); ++i) CHECK(bin.bits()[i] == (px[i] < 100 ? 1 : 0));
}

TEST_CASE("Otsu ties resolve to the lowest threshold") {
    // Every split between 10 and 200 has identical class statistics.
    CHECK(otsu_threshold(GrayImage(2, 1, {10, 200})) == 11);
    CHECK(brute_force_otsu(GrayImage(2, 1, {10, 200})) == 11);
}

TEST_CASE("Otsu agrees with exhaustive search on random images") {
    Rng rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        auto img = random_image(rng, 1 + rng.below(30), 1 + rng.below(30));
        bool constant = true;
        for (auto v : img.pixels()) constant = constant && v == img.pixels()[0];
        if (constant) continue;
        CHECK(otsu_threshold(img) == brute_force_otsu(img));
    }
}

TEST_CASE("Otsu rejects constant images") {
    CHECK(error_code([] { binarize(GrayImage::filled(4, 4, 90), ThresholdPolicy::otsu()); }) ==
          Errc::DegenerateImage);
}

TEST_CASE("invert and crop") {
    GrayImage img(3, 2, {0, 1, 2, 3, 4, 255});
    CHECK(invert(img) == GrayImage(3, 2, {255, 254, 253, 252, 251, 0}));
    CHECK(img.crop(1, 1, 1, 2) == GrayImage(2, 1, {4, 255}));
    CHECK(error_code([&] { img.crop(1, 1, 2, 2); }) == Errc::GridMismatch);
}
