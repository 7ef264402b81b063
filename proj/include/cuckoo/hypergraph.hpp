#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cuckoo/degree_spec.hpp"

namespace cuckoo {

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

// n labeled hyperedges over nodes 0..m-1. Each edge is stored as a sorted
// list of distinct nodes; node incidence lists hold edge ids in increasing
// order. Both directions use flat offset arrays.
class Hypergraph {
public:
    Hypergraph() = default;
    Hypergraph(std::size_t node_count, const std::vector<std::vector<NodeId>>& edges);

    // Flat form: edge e spans nodes[offsets[e] .. offsets[e+1]).
    Hypergraph(std::size_t node_count, std::vector<std::uint32_t> offsets, std::vector<NodeId> nodes);

    std::size_t node_count() const noexcept { return node_count_; }
    std::size_t edge_count() const noexcept { return edge_offsets_.size() - 1; }
    std::size_t total_edge_size() const noexcept { return edge_nodes_.size(); }
    int max_edge_size() const noexcept { return max_edge_size_; }

    std::span<const NodeId> edge(EdgeId e) const {
        return {edge_nodes_.data() + edge_offsets_[e], edge_nodes_.data() + edge_offsets_[e + 1]};
    }
    std::span<const EdgeId> incident(NodeId v) const {
        return {node_edges_.data() + node_offsets_[v], node_edges_.data() + node_offsets_[v + 1]};
    }
    std::size_t degree(NodeId v) const { return node_offsets_[v + 1] - node_offsets_[v]; }

    std::vector<std::vector<NodeId>> edge_lists() const;

    // Text form: "m n", then one line of space-separated node ids per edge.
    std::string to_text() const;
    static Hypergraph from_text(std::string_view text);
    void write(std::ostream& out) const;
    static Hypergraph read(std::istream& in);

    friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
        return a.node_count_ == b.node_count_ && a.edge_offsets_ == b.edge_offsets_ && a.edge_nodes_ == b.edge_nodes_;
    }

private:
    void build_incidence();

    std::size_t node_count_ = 0;
    int max_edge_size_ = 0;
    std::vector<std::uint32_t> edge_offsets_{0};
    std::vector<NodeId> edge_nodes_;
    std::vector<std::uint32_t> node_offsets_{0};
    std::vector<EdgeId> node_edges_;
};

// n edges, each an independent uniform k-subset of the m nodes. Identical
// edges may repeat. Deterministic in seed.
Hypergraph sample_regular(std::size_t m, std::size_t n, int k, std::uint64_t seed);

// Each edge draws its size from spec, then a uniform subset of that size.
// For a point mass no size draw is made, so the result equals
// sample_regular with the same seed.
Hypergraph sample_mixed(std::size_t m, std::size_t n, const DegreeSpec& spec, std::uint64_t seed);

}  // namespace cuckoo
