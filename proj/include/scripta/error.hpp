#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scripta {

enum class Errc {
    InvalidArgument,
    MalformedHeader,
    TruncatedPixelData,
    InvalidPixelValue,
    UnsupportedMaxval,
    DimensionOverflow,
    DegenerateImage,
    BlockTooSmall,
    DimensionMismatch,
    EmptyDataset,
    EmptyGroup,
    InsufficientRows,
    GridMismatch,
    InvalidGrouping,
    MalformedFile,
    IoFailure,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to an exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

class BlockTooSmall : public Error {
public:
    BlockTooSmall(std::size_t height, std::size_t width, std::size_t min_height,
                  std::size_t min_width);

    std::size_t height() const noexcept { return height_; }
    std::size_t width() const noexcept { return width_; }

private:
    std::size_t height_;
    std::size_t width_;
};

}  // namespace scripta
