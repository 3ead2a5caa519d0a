#include "scripta/error.hpp"

namespace scripta {

const char* to_string(Errc code) noexcept {
    switch (code) {
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::MalformedHeader: return "MalformedHeader";
        case Errc::TruncatedPixelData: return "TruncatedPixelData";
        case Errc::InvalidPixelValue: return "InvalidPixelValue";
        case Errc::UnsupportedMaxval: return "UnsupportedMaxval";
        case Errc::DimensionOverflow: return "DimensionOverflow";
        case Errc::DegenerateImage: return "DegenerateImage";
        case Errc::BlockTooSmall: return "BlockTooSmall";
        case Errc::DimensionMismatch: return "DimensionMismatch";
        case Errc::EmptyDataset: return "EmptyDataset";
        case Errc::EmptyGroup: return "EmptyGroup";
        case Errc::InsufficientRows: return "InsufficientRows";
        case Errc::GridMismatch: return "GridMismatch";
        case Errc::InvalidGrouping: return "InvalidGrouping";
        case Errc::MalformedFile: return "MalformedFile";
        case Errc::IoFailure: return "IoFailure";
    }
    return "Unknown";
}

BlockTooSmall::BlockTooSmall(std::size_t height, std::size_t width, std::size_t min_height,
                             std::size_t min_width)
    : Error(Errc::BlockTooSmall,
            "block is " + std::to_string(height) + "x" + std::to_string(width) +
                " (rows x cols); at least " + std::to_string(min_height) + "x" +
                std::to_string(min_width) + " is required"),
      height_(height),
      width_(width) {}

}  // namespace scripta
