#include "scripta/model_io.hpp"

#include <json.hpp>

#include "scripta/error.hpp"
#include "scripta/io.hpp"

namespace scripta {

namespace {

using json = nlohmann::ordered_json;

constexpr const char* kManifest = "manifest";

std::string net_name_for(const Model& model, std::size_t i) {
    switch (kind_of(model)) {
        case ModelKind::Direct: return "net.ffnet";
        case ModelKind::Correlation: return std::string("net_") + Label::from_index(i).letter() + ".ffnet";
        case ModelKind::Hierarchical: {
            if (i == 0) return "group.ffnet";
            auto n = std::to_string(i);
            return "position_" + std::string(2 - std::min<std::size_t>(2, n.size()), '0') + n + ".ffnet";
        }
    }
    return {};
}

json config_json(const ModelMetadata& meta) {
    const auto& c = meta.config;
    return json{{"eta", c.eta},
                {"alpha", c.alpha},
                {"mse_threshold", c.mse_threshold},
                {"max_epochs", c.max_epochs},
                {"seed", c.seed},
                {"init_range", c.init_range},
                {"shuffle_each_epoch", c.shuffle_each_epoch},
                {"hidden", meta.hidden}};
}

FeedForwardNet read_net(const std::filesystem::path& dir, const json& name, NetShape shape) {
    if (!name.is_string()) throw Error(Errc::MalformedFile, "network entry must be a file name");
    return load_net(read_file(dir / name.get<std::string>()), shape);
}

}  // namespace

void save_model(const std::filesystem::path& dir, const Model& model, const ModelMetadata& meta) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(Errc::IoFailure, "cannot create " + dir.string() + ": " + ec.message());

    json manifest{{"format", "scripta-model"}, {"version", 1}, {"kind", to_string(kind_of(model))}};
    manifest["config"] = config_json(meta);
    json nets = json::array();

    auto emit = [&](std::size_t i, const FeedForwardNet& net) {
        const auto name = net_name_for(model, i);
        write_file(dir / name, save_net(net));
        nets.push_back(name);
    };

    if (const auto* m = std::get_if<DirectModel>(&model)) {
        emit(0, m->net());
    } else if (const auto* m = std::get_if<CorrelationModel>(&model)) {
        for (std::size_t k = 0; k < m->nets().size(); ++k) emit(k, m->nets()[k]);
    } else if (const auto* m = std::get_if<HierarchicalModel>(&model)) {
        json groups = json::array();
        for (const auto& g : m->grouping().groups()) {
            std::string line;
            for (std::size_t p = 0; p < g.size(); ++p) {
                if (p) line += ',';
                line += g[p].letter();
            }
            groups.push_back(line);
        }
        manifest["grouping"] = groups;
        emit(0, m->group_net());
        for (std::size_t g = 0; g < m->position_nets().size(); ++g) {
            if (m->position_nets()[g]) emit(g + 1, *m->position_nets()[g]);
            else nets.push_back(nullptr);
        }
    }
    manifest["networks"] = nets;
    write_file(dir / kManifest, manifest.dump(2) + "\n");
}

LoadedModel load_model(const std::filesystem::path& dir) {
    json manifest;
    try {
        manifest = json::parse(read_file(dir / kManifest));
    } catch (const json::exception& e) {
        throw Error(Errc::MalformedFile, "manifest is not valid JSON: " + std::string(e.what()));
    }
    try {
        if (manifest.value("format", "") != "scripta-model" || manifest.value("version", 0) != 1)
            throw Error(Errc::MalformedFile, "not a scripta model bundle (v1)");

        ModelMetadata meta;
        const auto& c = manifest.at("config");
        meta.config.eta = c.at("eta").get<double>();
        meta.config.alpha = c.at("alpha").get<double>();
        meta.config.mse_threshold = c.at("mse_threshold").get<double>();
        meta.config.max_epochs = c.at("max_epochs").get<std::size_t>();
        meta.config.seed = c.at("seed").get<std::uint64_t>();
        meta.config.init_range = c.at("init_range").get<double>();
        meta.config.shuffle_each_epoch = c.at("shuffle_each_epoch").get<bool>();
        meta.hidden = c.at("hidden").get<std::size_t>();

        const auto kind = parse_model_kind(manifest.at("kind").get<std::string>());
        const auto& nets = manifest.at("networks");
        if (!nets.is_array()) throw Error(Errc::MalformedFile, "'networks' must be an array");
        const std::size_t in = PatternBlock::kSize, hid = meta.hidden;

        switch (kind) {
            case ModelKind::Direct:
                if (nets.size() != 1) throw Error(Errc::MalformedFile, "direct model has one network");
                return {DirectModel(read_net(dir, nets[0], {in, hid, kLabelCount})), meta};
            case ModelKind::Correlation: {
                if (nets.size() != kLabelCount)
                    throw Error(Errc::MalformedFile, "correlation model has 26 networks");
                std::vector<FeedForwardNet> loaded;
                for (const auto& n : nets) loaded.push_back(read_net(dir, n, {in, hid, 1}));
                return {CorrelationModel(std::move(loaded)), meta};
            }
            case ModelKind::Hierarchical: {
                std::string text;
                for (const auto& line : manifest.at("grouping")) text += line.get<std::string>() + "\n";
                auto grouping = GroupingScheme::parse(text);
                if (nets.size() != grouping.group_count() + 1)
                    throw Error(Errc::MalformedFile, "hierarchical model needs 1 + groups entries");
                auto group_net = read_net(dir, nets[0], {in, hid, grouping.group_count()});
                std::vector<std::optional<FeedForwardNet>> positions(grouping.group_count());
                for (std::size_t g = 0; g < grouping.group_count(); ++g) {
                    const auto& entry = nets[g + 1];
                    if (entry.is_null()) continue;
                    positions[g] = read_net(dir, entry, {in, hid, grouping.group(g).size()});
                }
                return {HierarchicalModel(std::move(grouping), std::move(group_net), std::move(positions)),
                        meta};
            }
        }
    } catch (const json::exception& e) {
        throw Error(Errc::MalformedFile, "bad manifest: " + std::string(e.what()));
    }
    throw Error(Errc::MalformedFile, "unreachable model kind");
}

}  // namespace scripta
