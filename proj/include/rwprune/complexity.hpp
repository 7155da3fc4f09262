#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rwprune/graph.hpp"

namespace rwprune {

// Skeleton of the network: conv1, conv2, three random-wiring stages and the
// classifier. Stage channels are C, 2C, 4C; resolutions halve from the input.
struct ArchitectureSpec {
    int channel_base = 78;          // C
    int node_count = 32;            // N, nodes per stage
    int input_resolution = 224;
    int input_channels = 3;
    int classifier_channels = 1280; // 1x1 conv width before global pooling
    int fc_outputs = 1000;
    int classes = 2;                // reported to external evaluators

    struct Layer {
        int in_channels;
        int channels;
        int resolution;  // output side length
    };

    Layer conv1() const { return {input_channels, channel_base, input_resolution / 2}; }
    Layer conv2() const { return {channel_base, channel_base, input_resolution / 4}; }
    // stage 0..2 -> conv3..conv5
    Layer stage(int index) const;

    nlohmann::ordered_json to_json() const;
    static ArchitectureSpec from_json(const nlohmann::json& j);
};

enum class NodeConv {
    DepthwiseSeparable,  // 3x3 depthwise + 1x1 pointwise
    Full,                // dense 3x3
};

struct CostModel {
    NodeConv node_conv = NodeConv::DepthwiseSeparable;
};

struct LayerCost {
    std::string name;
    std::int64_t parameters = 0;
    std::int64_t flops = 0;  // multiply-accumulates
    std::int64_t nodes = 0;
    std::int64_t entry_nodes = 0;
    std::int64_t edges = 0;
};

struct ComplexityReport {
    std::int64_t parameters = 0;
    std::int64_t flops = 0;
    std::vector<LayerCost> layers;  // conv1, conv2, stage1..3, classifier

    nlohmann::ordered_json to_json() const;
};

// Parameter and FLOP count for a three-stage network.
//
// Per stage node: ReLU, 3x3 conv (per CostModel), BatchNorm (2 * C_out).
// Nodes fed by in_node take the previous stage's channels and stride 2;
// everything else maps C_stage -> C_stage at the stage resolution.
// Each interior edge adds one aggregation weight and one multiply-accumulate
// per output element of its target node. conv1/conv2 are dense 3x3 stride-2
// convolutions with BatchNorm; the classifier is a 1x1 conv to 1280 with
// BatchNorm, global average pooling and a fully connected layer with bias.
ComplexityReport count_complexity(std::span<const StageDag> stages, const ArchitectureSpec& arch = {},
                                  const CostModel& model = {});

// base.parameters / pruned.parameters. Throws DegenerateNetworkError on zero.
double compression_ratio(const ComplexityReport& base, const ComplexityReport& pruned);

// base.flops / pruned.flops. Throws DegenerateNetworkError on zero.
double theoretical_speedup(const ComplexityReport& base, const ComplexityReport& pruned);

// 100 / compression ratio.
double parameters_retained_percent(const ComplexityReport& base, const ComplexityReport& pruned);

} // namespace rwprune
