#include <string>

#include "scripta/error.hpp"
#include "scripta/io.hpp"
#include "scripta/network.hpp"

namespace scripta {

namespace {

void append_layer(std::string& out, const LayerWeights& layer) {
    for (std::size_t j = 0; j < layer.out_count(); ++j) {
        auto row = layer.row(j);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ' ';
            out += format_double(row[i]);
        }
        out += '\n';
    }
}

LayerWeights read_layer(const std::vector<std::string_view>& lines, std::size_t& next,
                        std::size_t out_count, std::size_t in_count) {
    std::vector<double> w;
    w.reserve(out_count * (in_count + 1));
    for (std::size_t j = 0; j < out_count; ++j, ++next) {
        if (next >= lines.size()) throw Error(Errc::MalformedFile, "FFNET file is truncated");
        auto fields = split_whitespace(lines[next]);
        if (fields.size() != in_count + 1)
            throw Error(Errc::MalformedFile, "FFNET line " + std::to_string(next + 1) + " has " +
                                                 std::to_string(fields.size()) + " values, expected " +
                                                 std::to_string(in_count + 1));
        for (auto f : fields) w.push_back(parse_double(f));
    }
    return LayerWeights(out_count, in_count, std::move(w));
}

}  // namespace

std::string save_net(const FeedForwardNet& net) {
    std::string out = "FFNET v1 " + std::to_string(net.input_size()) + " " +
                      std::to_string(net.hidden_size()) + " " + std::to_string(net.output_size()) +
                      "\n";
    append_layer(out, net.hidden());
    append_layer(out, net.output());
    return out;
}

FeedForwardNet load_net(std::string_view text, std::optional<NetShape> expected) {
    auto lines = split_lines(text);
    if (lines.empty()) throw Error(Errc::MalformedFile, "empty FFNET file");
    auto header = split_whitespace(lines[0]);
    if (header.size() != 5 || header[0] != "FFNET" || header[1] != "v1")
        throw Error(Errc::MalformedFile, "missing 'FFNET v1' header");
    const std::size_t inputs = parse_unsigned(header[2]);
    const std::size_t hidden = parse_unsigned(header[3]);
    const std::size_t outputs = parse_unsigned(header[4]);
    if (inputs == 0 || hidden == 0 || outputs == 0)
        throw Error(Errc::MalformedFile, "FFNET dimensions must be positive");
    if (expected && (expected->inputs != inputs || expected->hidden != hidden ||
                     expected->outputs != outputs))
        throw Error(Errc::DimensionMismatch,
                    "stored network is " + std::to_string(inputs) + "-" + std::to_string(hidden) +
                        "-" + std::to_string(outputs) + ", expected " +
                        std::to_string(expected->inputs) + "-" + std::to_string(expected->hidden) +
                        "-" + std::to_string(expected->outputs));

    std::size_t next = 1;
    auto h = read_layer(lines, next, hidden, inputs);
    auto o = read_layer(lines, next, outputs, hidden);
    for (; next < lines.size(); ++next)
        if (!split_whitespace(lines[next]).empty())
            throw Error(Errc::MalformedFile, "trailing data after FFNET weights");
    return FeedForwardNet(std::move(h), std::move(o));
}

}  // namespace scripta
