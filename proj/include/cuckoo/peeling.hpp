#pragma once

#include <cstdint>
#include <vector>

#include "cuckoo/hypergraph.hpp"

namespace cuckoo {

struct CoreStats {
    std::size_t core_nodes = 0;
    std::size_t core_edges = 0;
    double edge_density = 0.0;  // core_edges / core_nodes, 0 for an empty core
    std::size_t rounds = 0;     // synchronous deletion rounds (generations of deficient nodes)
};

struct CoreResult {
    CoreStats stats;
    // Same node id space as the input; holds only the surviving edges, in
    // their original order.
    Hypergraph core;
    std::vector<EdgeId> edge_ids;        // core edge i is input edge edge_ids[i]
    std::vector<std::uint8_t> in_core;   // per input node
};

// The ell-core: repeatedly delete nodes of degree < ell together with
// their incident edges. The result does not depend on deletion order.
CoreResult peel(const Hypergraph& g, int ell);

// Degree of every node inside the reported core must be >= ell, and no
// edge may touch a node outside it.
bool is_valid_core(const CoreResult& result, int ell);

}  // namespace cuckoo
