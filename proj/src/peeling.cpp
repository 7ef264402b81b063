#include "cuckoo/peeling.hpp"

#include "cuckoo/errors.hpp"

namespace cuckoo {

CoreResult peel(const Hypergraph& g, int ell) {
    if (ell < 1) throw DomainError("core order ell must be at least 1");
    const std::size_t m = g.node_count();
    const std::size_t n = g.edge_count();
    std::vector<std::uint32_t> degree(m);
    std::vector<std::uint8_t> node_alive(m, 1);
    std::vector<std::uint8_t> edge_alive(n, 1);

    std::vector<NodeId> frontier;
    for (NodeId v = 0; v < m; ++v) {
        degree[v] = static_cast<std::uint32_t>(g.degree(v));
        if (degree[v] < static_cast<std::uint32_t>(ell)) {
            node_alive[v] = 0;
            frontier.push_back(v);
        }
    }

    std::size_t rounds = 0;
    std::vector<NodeId> next;
    while (!frontier.empty()) {
        for (NodeId v : frontier) {
            for (EdgeId e : g.incident(v)) {
                if (!edge_alive[e]) continue;
                edge_alive[e] = 0;
                for (NodeId u : g.edge(e)) {
                    if (!node_alive[u]) continue;
                    if (--degree[u] < static_cast<std::uint32_t>(ell)) {
                        node_alive[u] = 0;
                        next.push_back(u);
                    }
                }
            }
        }
        ++rounds;
        frontier.swap(next);
        next.clear();
    }

    CoreResult result;
    std::vector<std::uint32_t> offsets{0};
    std::vector<NodeId> nodes;
    for (EdgeId e = 0; e < n; ++e) {
        if (!edge_alive[e]) continue;
        result.edge_ids.push_back(e);
        for (NodeId u : g.edge(e)) nodes.push_back(u);
        offsets.push_back(static_cast<std::uint32_t>(nodes.size()));
    }
    result.core = Hypergraph(m, std::move(offsets), std::move(nodes));
    result.in_core = std::move(node_alive);
    for (auto alive : result.in_core) result.stats.core_nodes += alive;
    result.stats.core_edges = result.edge_ids.size();
    result.stats.edge_density = result.stats.core_nodes == 0
                                    ? 0.0
                                    : static_cast<double>(result.stats.core_edges) / result.stats.core_nodes;
    result.stats.rounds = rounds;
    return result;
}

bool is_valid_core(const CoreResult& result, int ell) {
    const Hypergraph& core = result.core;
    if (result.in_core.size() != core.node_count()) return false;
    for (EdgeId e = 0; e < core.edge_count(); ++e) {
        for (NodeId u : core.edge(e)) {
            if (!result.in_core[u]) return false;
        }
    }
    for (NodeId v = 0; v < core.node_count(); ++v) {
        if (result.in_core[v] && core.degree(v) < static_cast<std::size_t>(ell)) return false;
    }
    return true;
}

}  // namespace cuckoo
