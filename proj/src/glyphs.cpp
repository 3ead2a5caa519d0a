#include <array>
#include <cstdint>

#include "scripta/dataset.hpp"

namespace scripta {

namespace {

// 5x7 capitals, one byte per row, bit 4 = leftmost column.
constexpr std::array<std::array<std::uint8_t, 7>, kLabelCount> kFont5x7 = {{
    {0x0E, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // A
    {0x1E, 0x11, 0x11, 0x1E, 0x11, 0x11, 0x1E},  // B
    {0x0E, 0x11, 0x10, 0x10, 0x10, 0x11, 0x0E},  // C
    {0x1C, 0x12, 0x11, 0x11, 0x11, 0x12, 0x1C},  // D
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x1F},  // E
    {0x1F, 0x10, 0x10, 0x1E, 0x10, 0x10, 0x10},  // F
    {0x0E, 0x11, 0x10, 0x17, 0x11, 0x11, 0x0F},  // G
    {0x11, 0x11, 0x11, 0x1F, 0x11, 0x11, 0x11},  // H
    {0x0E, 0x04, 0x04, 0x04, 0x04, 0x04, 0x0E},  // I
    {0x07, 0x02, 0x02, 0x02, 0x02, 0x12, 0x0C},  // J
    {0x11, 0x12, 0x14, 0x18, 0x14, 0x12, 0x11},  // K
    {0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x1F},  // L
    {0x11, 0x1B, 0x15, 0x15, 0x11, 0x11, 0x11},  // M
    {0x11, 0x11, 0x19, 0x15, 0x13, 0x11, 0x11},  // N
    {0x0E, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // O
    {0x1E, 0x11, 0x11, 0x1E, 0x10, 0x10, 0x10},  // P
    {0x0E, 0x11, 0x11, 0x11, 0x15, 0x12, 0x0D},  // Q
    {0x1E, 0x11, 0x11, 0x1E, 0x14, 0x12, 0x11},  // R
    {0x0F, 0x10, 0x10, 0x0E, 0x01, 0x01, 0x1E},  // S
    {0x1F, 0x04, 0x04, 0x04, 0x04, 0x04, 0x04},  // T
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x0E},  // U
    {0x11, 0x11, 0x11, 0x11, 0x11, 0x0A, 0x04},  // V
    {0x11, 0x11, 0x11, 0x15, 0x15, 0x15, 0x0A},  // W
    {0x11, 0x11, 0x0A, 0x04, 0x0A, 0x11, 0x11},  // X
    {0x11, 0x11, 0x11, 0x0A, 0x04, 0x04, 0x04},  // Y
    {0x1F, 0x01, 0x02, 0x04, 0x08, 0x10, 0x1F},  // Z
}};

// Each font cell becomes a 3x3 square; the 21x15 glyph sits at (2, 2)
// inside the 25x20 block.
constexpr std::size_t kScale = 3;
constexpr std::size_t kTopMargin = 2;
constexpr std::size_t kLeftMargin = 2;

std::array<PatternBlock, kLabelCount> build_templates() {
    std::array<PatternBlock, kLabelCount> out;
    for (std::size_t g = 0; g < kLabelCount; ++g) {
        for (std::size_t fr = 0; fr < 7; ++fr) {
            for (std::size_t fc = 0; fc < 5; ++fc) {
                if (!((kFont5x7[g][fr] >> (4 - fc)) & 1u)) continue;
                for (std::size_t dr = 0; dr < kScale; ++dr)
                    for (std::size_t dc = 0; dc < kScale; ++dc)
                        out[g].set(kTopMargin + fr * kScale + dr, kLeftMargin + fc * kScale + dc, true);
            }
        }
    }
    return out;
}

}  // namespace

const PatternBlock& glyph_template(Label label) {
    static const auto templates = build_templates();
    return templates[label.index()];
}

}  // namespace scripta
