#pragma once

#include <filesystem>

#include "scripta/models.hpp"
#include "scripta/network.hpp"

namespace scripta {

/// Training settings echoed into a model bundle's manifest.
struct ModelMetadata {
    TrainingConfig config;
    std::size_t hidden = kDefaultHidden;
};

/// Bundle layout: `<dir>/manifest` (JSON: kind, grouping, config echo,
/// network file list) plus one FFNET v1 file per constituent network.
void save_model(const std::filesystem::path& dir, const Model& model, const ModelMetadata& meta);

struct LoadedModel {
    Model model;
    ModelMetadata meta;
};

/// Throws MalformedFile for a bad manifest, DimensionMismatch when a
/// network file disagrees with the manifest, IoFailure on unreadable files.
LoadedModel load_model(const std::filesystem::path& dir);

}  // namespace scripta
