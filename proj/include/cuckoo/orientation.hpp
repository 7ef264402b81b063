#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cuckoo/hypergraph.hpp"
#include "cuckoo/random.hpp"

namespace cuckoo {

// Assignment of every hyperedge (key) to one of its nodes (buckets) with at
// most ell edges per node, or the step at which construction failed.
struct Orientation {
    std::vector<std::optional<NodeId>> target;  // per edge
    bool success = false;
    std::size_t failed_at_step = 0;  // 1-based step number, 0 on success
    std::size_t steps = 0;           // edges directed before stopping (matching: matching size)

    friend bool operator==(const Orientation&, const Orientation&) = default;
};

struct SelflessOptions {
    // Re-derives all weights and priorities from scratch after every step
    // and checks them against the incremental state, plus the priority sum
    // identity. Quadratic; meant for small instances in tests.
    bool check_invariants = false;
};

// Generalized selfless orientation. Each step picks an unsaturated node of
// minimum priority
//     0                                  if |U(v)| + |I(v)| <= ell
//     sum_{e in U(v)} 1/w(e) + |I(v)|    otherwise,
// where U(v) are undirected incident edges, I(v) edges directed to v and
// w(e) the number of unsaturated nodes of e, fails if that priority exceeds
// ell, and otherwise directs a minimum-weight edge of U(v) to v.
// Ties are broken uniformly with a generator seeded from `seed`, ordering
// candidates by (priority, node id) and by incidence order respectively.
Orientation selfless_orient(const Hypergraph& g, int ell, std::uint64_t seed, SelflessOptions options = {});

// Exact decision via maximum bipartite matching of edges into ell slots per
// node (Hopcroft-Karp).
Orientation matching_orient(const Hypergraph& g, int ell);

// True iff o succeeded, every target lies in its edge and no node receives
// more than ell edges.
bool verify(const Hypergraph& g, const Orientation& o, int ell);

// lcm(1..k) for k <= 64; the common denominator of all selfless priorities.
uint128 priority_scale(int max_edge_size);

}  // namespace cuckoo
