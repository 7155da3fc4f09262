#include "rwprune/complexity.hpp"

#include <fmt/format.h>

#include "rwprune/error.hpp"

namespace rwprune {

ArchitectureSpec::Layer ArchitectureSpec::stage(int index) const {
    if (index < 0 || index > 2) throw ContractViolation(fmt::format("stage index {} out of range", index));
    const int channels = channel_base << index;
    const int in_channels = index == 0 ? channel_base : channel_base << (index - 1);
    return {in_channels, channels, input_resolution >> (3 + index)};
}

nlohmann::ordered_json ArchitectureSpec::to_json() const {
    return {{"C", channel_base}, {"N", node_count}, {"classes", classes}};
}

ArchitectureSpec ArchitectureSpec::from_json(const nlohmann::json& j) {
    ArchitectureSpec a;
    a.channel_base = j.value("C", a.channel_base);
    a.node_count = j.value("N", a.node_count);
    a.classes = j.value("classes", a.classes);
    a.input_resolution = j.value("input_resolution", a.input_resolution);
    a.classifier_channels = j.value("classifier_channels", a.classifier_channels);
    a.fc_outputs = j.value("fc_outputs", a.fc_outputs);
    if (a.channel_base <= 0 || a.input_resolution < 32) throw ConfigError("architecture needs C > 0 and input >= 32");
    return a;
}

namespace {

std::int64_t area(int side) { return static_cast<std::int64_t>(side) * side; }

LayerCost dense_conv(std::string name, const ArchitectureSpec::Layer& l) {
    LayerCost c;
    c.name = std::move(name);
    const std::int64_t weights = 9LL * l.in_channels * l.channels;
    c.parameters = weights + 2LL * l.channels;
    c.flops = weights * area(l.resolution);
    return c;
}

struct NodeCost {
    std::int64_t parameters;
    std::int64_t flops;
};

NodeCost node_cost(int in_channels, int channels, int resolution, NodeConv conv) {
    std::int64_t weights = 0;
    if (conv == NodeConv::DepthwiseSeparable) {
        weights = 9LL * in_channels + static_cast<std::int64_t>(in_channels) * channels;
    } else {
        weights = 9LL * in_channels * channels;
    }
    return {weights + 2LL * channels, weights * area(resolution)};
}

} // namespace

ComplexityReport count_complexity(std::span<const StageDag> stages, const ArchitectureSpec& arch,
                                  const CostModel& model) {
    if (stages.size() != 3) throw ContractViolation(fmt::format("expected 3 stages, got {}", stages.size()));

    ComplexityReport report;
    report.layers.push_back(dense_conv("conv1", arch.conv1()));
    report.layers.push_back(dense_conv("conv2", arch.conv2()));

    for (int s = 0; s < 3; ++s) {
        const StageDag& dag = stages[static_cast<std::size_t>(s)];
        const auto layer = arch.stage(s);
        LayerCost c;
        c.name = fmt::format("stage{}", s + 1);
        const NodeCost entry = node_cost(layer.in_channels, layer.channels, layer.resolution, model.node_conv);
        const NodeCost inner = node_cost(layer.channels, layer.channels, layer.resolution, model.node_conv);
        c.nodes = static_cast<std::int64_t>(dag.interior.size());
        c.entry_nodes = static_cast<std::int64_t>(dag.inputs.size());
        c.edges = static_cast<std::int64_t>(dag.edges.size());
        c.parameters = c.entry_nodes * entry.parameters + (c.nodes - c.entry_nodes) * inner.parameters;
        c.flops = c.entry_nodes * entry.flops + (c.nodes - c.entry_nodes) * inner.flops;
        c.parameters += c.edges;
        c.flops += c.edges * layer.channels * area(layer.resolution);
        report.layers.push_back(std::move(c));
    }

    LayerCost head;
    head.name = "classifier";
    const auto last = arch.stage(2);
    const std::int64_t proj = static_cast<std::int64_t>(last.channels) * arch.classifier_channels;
    const std::int64_t fc = static_cast<std::int64_t>(arch.classifier_channels) * arch.fc_outputs;
    head.parameters = proj + 2LL * arch.classifier_channels + fc + arch.fc_outputs;
    head.flops = proj * area(last.resolution) + fc;
    report.layers.push_back(std::move(head));

    for (const LayerCost& l : report.layers) {
        report.parameters += l.parameters;
        report.flops += l.flops;
    }
    return report;
}

nlohmann::ordered_json ComplexityReport::to_json() const {
    nlohmann::ordered_json j;
    j["parameters"] = parameters;
    j["flops"] = flops;
    auto list = nlohmann::ordered_json::array();
    for (const LayerCost& l : layers) {
        nlohmann::ordered_json row;
        row["name"] = l.name;
        row["parameters"] = l.parameters;
        row["flops"] = l.flops;
        if (l.name.starts_with("stage")) {
            row["nodes"] = l.nodes;
            row["entry_nodes"] = l.entry_nodes;
            row["edges"] = l.edges;
        }
        list.push_back(std::move(row));
    }
    j["stages"] = std::move(list);
    return j;
}

double compression_ratio(const ComplexityReport& base, const ComplexityReport& pruned) {
    if (pruned.parameters <= 0) throw DegenerateNetworkError("pruned network has no parameters");
    return static_cast<double>(base.parameters) / static_cast<double>(pruned.parameters);
}

double theoretical_speedup(const ComplexityReport& base, const ComplexityReport& pruned) {
    if (pruned.flops <= 0) throw DegenerateNetworkError("pruned network has no FLOPs");
    return static_cast<double>(base.flops) / static_cast<double>(pruned.flops);
}

double parameters_retained_percent(const ComplexityReport& base, const ComplexityReport& pruned) {
    return 100.0 / compression_ratio(base, pruned);
}

} // namespace rwprune
