#pragma once

#include <cstddef>
#include <string>

#include "scripta/extraction.hpp"

namespace scripta {

inline constexpr std::size_t kLabelCount = 26;

/// Character class, A=1 ... Z=26.
class Label {
public:
    /// Throws InvalidArgument outside 1..=26.
    explicit Label(int value);

    static Label from_letter(char letter);
    static Label from_index(std::size_t zero_based) { return Label(static_cast<int>(zero_based) + 1); }

    int value() const noexcept { return value_; }
    std::size_t index() const noexcept { return static_cast<std::size_t>(value_ - 1); }
    char letter() const noexcept { return static_cast<char>('A' + value_ - 1); }

    auto operator<=>(const Label&) const = default;

private:
    int value_;
};

struct LabeledSample {
    PatternBlock block;
    Label label;
    std::size_t row_index = 0;

    bool operator==(const LabeledSample&) const = default;
};

}  // namespace scripta
