#include <doctest.h>

#include "scripta/error.hpp"
#include "scripta/extraction.hpp"
#include "scripta/rng.hpp"

using namespace scripta;

namespace {

BinaryImage random_binary(Rng& rng, std::size_t w, std::size_t h, double density) {
    std::vector<std::uint8_t> bits(w * h);
    for (auto& b : bits) b = rng.uniform01() < density ? 1 : 0;
    return BinaryImage(w, h, std::move(bits));
}

}  // namespace

TEST_CASE("row_stddevs: population standard deviation per row") {
    BinaryImage img(4, 3, {0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 1, 0});
    auto sd = row_stddevs(img);
    REQUIRE(sd.size() == 3);
    CHECK(sd[0] == 0.0);
    CHECK(sd[1] == 0.0);
    // mean 0.5, variance 0.25
    CHECK(sd[2] == 0.5);
}

TEST_CASE("col_stddevs and transpose duality") {
    auto zeros = col_stddevs(BinaryImage(2, 2));
    CHECK(zeros == std::vector<double>{0.0, 0.0});
    CHECK(col_stddevs(BinaryImage(1, 2, {1, 0})) == std::vector<double>{0.5});

    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
        auto img = random_binary(rng, 1 + rng.below(12), 1 + rng.below(12), 0.4);
        CHECK(col_stddevs(img) == row_stddevs(img.transposed()));
    }
}

TEST_CASE("extract_pattern on an exact 25x20 block is the identity") {
    Rng rng(2);
    auto img = random_binary(rng, 20, 25, 0.3);
    auto ex = extract_pattern(img);
    CHECK(ex.block.to_image() == img);
    CHECK(ex.report.rows_removed_top == 0);
    CHECK(ex.report.rows_removed_bottom == 0);
    CHECK(ex.report.cols_removed_left == 0);
    CHECK(ex.report.cols_removed_right == 0);
    CHECK(ex.report.final_row_stddevs == row_stddevs(img));
    CHECK(ex.report.final_col_stddevs == col_stddevs(img));
}

TEST_CASE("extract_pattern drops blank top and bottom rows first") {
    // 27x20: blank first and last rows, every interior row holds ink.
    BinaryImage img(20, 27);
    for (std::size_t r = 1; r < 26; ++r) img.set(r, r % 20, true);
    auto ex = extract_pattern(img);
    CHECK(ex.report.rows_removed_top == 1);
    CHECK(ex.report.rows_removed_bottom == 1);
    CHECK(ex.block.to_image() == img.crop(1, 0, 25, 20));
}

TEST_CASE("extract_pattern rejects undersized blocks") {
    try {
        extract_pattern(BinaryImage(10, 10));
        FAIL("expected BlockTooSmall");
    } catch (const BlockTooSmall& e) {
        CHECK(e.height() == 10);
        CHECK(e.width() == 10);
        CHECK(e.code() == Errc::BlockTooSmall);
    }
    CHECK_THROWS_AS(extract_pattern(BinaryImage(19, 40)), BlockTooSmall);
    CHECK_THROWS_AS(extract_pattern(BinaryImage(40, 24)), BlockTooSmall);
}

TEST_CASE("ties remove the top row and left column") {
    auto ex = extract_pattern(BinaryImage(21, 26));
    CHECK(ex.report.rows_removed_top == 1);
    CHECK(ex.report.rows_removed_bottom == 0);
    CHECK(ex.report.cols_removed_left == 1);
    CHECK(ex.report.cols_removed_right == 0);
}

TEST_CASE("oversized ink keeps shrinking by minimum-deviation edge") {
    // Both edges carry ink; the bottom row is nearly full (low deviation)
    // and must go before the half-filled top row.
    BinaryImage img(20, 26);
    for (std::size_t c = 0; c < 10; ++c) img.set(0, c, true);
    for (std::size_t c = 0; c < 19; ++c) img.set(25, c, true);
    for (std::size_t r = 1; r < 25; ++r) img.set(r, 3, true);
    auto ex = extract_pattern(img);
    CHECK(ex.report.rows_removed_bottom == 1);
    CHECK(ex.report.rows_removed_top == 0);
}

TEST_CASE("blank margins go before any ink row or column") {
    Rng rng(4);
    for (int trial = 0; trial < 200; ++trial) {
        // Ink region in which every row and column of length >= 5 holds both
        // values (diagonal stripes), so only blank lines have zero deviation.
        const std::size_t ih = 25 + rng.below(4), iw = 20 + rng.below(4);
        const std::size_t mt = rng.below(5), mb = rng.below(5), ml = rng.below(5), mr = rng.below(5);
        BinaryImage img(iw + ml + mr, ih + mt + mb);
        for (std::size_t r = 0; r < ih; ++r) {
            for (std::size_t c = 0; c < iw; ++c) {
                bool ink = rng.uniform01() < 0.4;
                if ((r + c) % 5 == 0) ink = true;
                if ((r + c) % 5 == 1) ink = false;
                img.set(mt + r, ml + c, ink);
            }
        }
        auto ex = extract_pattern(img);
        // Rows: while either side is still blank, no ink row goes.
        const std::size_t row_excess = mt + mb + ih - 25;
        if (row_excess >= mt + mb) {
            CHECK(ex.report.rows_removed_top >= mt);
            CHECK(ex.report.rows_removed_bottom >= mb);
        }
        const std::size_t col_excess = ml + mr + iw - 20;
        if (col_excess >= ml + mr) {
            CHECK(ex.report.cols_removed_left >= ml);
            CHECK(ex.report.cols_removed_right >= mr);
        }
        CHECK(extract_pattern(img).block == ex.block);
    }
}

TEST_CASE("flatten is row-major and invertible") {
    PatternBlock block;
    auto v = flatten(block);
    for (double x : v) CHECK(x == 0.0);

    block.set(0, 0, true);
    CHECK(flatten(block)[0] == 1.0);

    PatternBlock second;
    second.set(1, 0, true);
    auto w = flatten(second);
    CHECK(w[1 * 20 + 0] == 1.0);

    Rng rng(6);
    for (int i = 0; i < 20; ++i) {
        PatternBlock b(random_binary(rng, 20, 25, 0.5));
        auto flat = flatten(b);
        CHECK(unflatten(flat) == b);
    }
    std::vector<double> bad(500, 0.0);
    bad[3] = 0.5;
    CHECK_THROWS_AS(unflatten(bad), Error);
    CHECK_THROWS_AS(unflatten(std::vector<double>(499, 0.0)), Error);
}
