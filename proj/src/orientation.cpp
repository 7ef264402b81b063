#include "cuckoo/orientation.hpp"

#include <ext/pb_ds/assoc_container.hpp>
#include <ext/pb_ds/tree_policy.hpp>

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "cuckoo/errors.hpp"
#include "cuckoo/matching.hpp"
#include "cuckoo/random.hpp"

namespace cuckoo {

using Scaled = uint128;

Scaled priority_scale(int max_edge_size) {
    if (max_edge_size > 64) throw DomainError("selfless priorities support edges of at most 64 nodes");
    Scaled lcm = 1;
    for (int i = 2; i <= max_edge_size; ++i) {
        Scaled a = lcm;
        Scaled b = static_cast<Scaled>(i);
        while (b != 0) a = std::exchange(b, a % b);
        lcm = lcm / a * i;
    }
    return lcm;
}

namespace {

// Order-statistics tree keyed by (priority, node): the minimum-priority ties
// form a prefix whose length and i-th element are O(log n) queries.
using QueueKey = std::pair<Scaled, NodeId>;
using PriorityQueue = __gnu_pbds::tree<QueueKey, __gnu_pbds::null_type, std::less<QueueKey>,
                                       __gnu_pbds::rb_tree_tag, __gnu_pbds::tree_order_statistics_node_update>;

class SelflessState {
public:
    SelflessState(const Hypergraph& g, int ell, std::uint64_t seed, SelflessOptions options)
        : g_(g),
          ell_(static_cast<std::uint32_t>(ell)),
          scale_(priority_scale(std::max(2, g.max_edge_size()))),
          rng_(seed, Stream::tie_break),
          options_(options),
          directed_(g.edge_count(), 0),
          weight_(g.edge_count()),
          indegree_(g.node_count(), 0),
          undirected_(g.node_count()),
          priority_(g.node_count(), 0),
          queued_(g.node_count(), 0) {
        share_.assign(static_cast<std::size_t>(std::max(2, g.max_edge_size())) + 1, 0);
        for (std::size_t w = 1; w < share_.size(); ++w) share_[w] = scale_ / w;
        result_.target.assign(g.edge_count(), std::nullopt);
        for (EdgeId e = 0; e < g.edge_count(); ++e) weight_[e] = static_cast<std::uint32_t>(g.edge(e).size());
        for (NodeId v = 0; v < g.node_count(); ++v) {
            undirected_[v] = static_cast<std::uint32_t>(g.degree(v));
            refresh(v);
        }
    }

    Orientation run() {
        const Scaled limit = scale_ * ell_;
        for (std::size_t step = 1; step <= g_.edge_count(); ++step) {
            if (options_.check_invariants) check_invariants();
            if (dead_edge_ || queue_.empty()) return fail(step);
            const Scaled best = queue_.begin()->first;
            if (best > limit) return fail(step);
            const auto ties = queue_.order_of_key({best, UINT32_MAX});
            const NodeId v = queue_.find_by_order(rng_.below(ties))->second;
            direct(pick_edge(v), v);
            result_.steps = step;
        }
        result_.success = true;
        return std::move(result_);
    }

private:
    Orientation fail(std::size_t step) {
        result_.success = false;
        result_.failed_at_step = step;
        return std::move(result_);
    }

    bool saturated(NodeId v) const { return indegree_[v] >= ell_; }

    Scaled compute_priority(NodeId v) const {
        if (undirected_[v] + indegree_[v] <= ell_) return 0;
        Scaled sum = static_cast<Scaled>(indegree_[v]) * scale_;
        for (EdgeId e : g_.incident(v)) {
            if (!directed_[e]) sum += share_[weight_[e]];
        }
        return sum;
    }

    // Saturated nodes and nodes without undirected edges are not candidates:
    // a saturated node's priority always exceeds ell.
    void refresh(NodeId v) {
        const bool candidate = undirected_[v] != 0 && !saturated(v);
        const Scaled p = candidate ? compute_priority(v) : 0;
        if (queued_[v]) {
            if (candidate && p == priority_[v]) return;
            queue_.erase({priority_[v], v});
            queued_[v] = 0;
        }
        if (!candidate) return;
        priority_[v] = p;
        queue_.insert({p, v});
        queued_[v] = 1;
    }

    EdgeId pick_edge(NodeId v) {
        std::uint32_t best = UINT32_MAX;
        candidates_.clear();
        for (EdgeId e : g_.incident(v)) {
            if (directed_[e]) continue;
            if (weight_[e] < best) {
                best = weight_[e];
                candidates_.clear();
            }
            if (weight_[e] == best) candidates_.push_back(e);
        }
        return candidates_[rng_.below(candidates_.size())];
    }

    void direct(EdgeId e, NodeId v) {
        directed_[e] = 1;
        result_.target[e] = v;
        ++indegree_[v];
        touched_.clear();
        for (NodeId u : g_.edge(e)) {
            --undirected_[u];
            touched_.push_back(u);
        }
        if (saturated(v)) {
            for (EdgeId f : g_.incident(v)) {
                if (directed_[f]) continue;
                if (--weight_[f] == 0) dead_edge_ = true;
                for (NodeId u : g_.edge(f)) touched_.push_back(u);
            }
        }
        for (NodeId u : touched_) refresh(u);
    }

    void check_invariants() const {
        std::size_t open_edges = 0;
        for (EdgeId e = 0; e < g_.edge_count(); ++e) {
            if (directed_[e]) continue;
            ++open_edges;
            std::uint32_t w = 0;
            for (NodeId u : g_.edge(e)) w += !saturated(u);
            if (w != weight_[e]) throw std::logic_error("selfless: stale edge weight");
        }
        Scaled priority_sum = 0;
        Scaled indegree_sum = 0;
        bool has_zero = false;
        std::size_t candidates = 0;
        for (NodeId v = 0; v < g_.node_count(); ++v) {
            std::uint32_t open = 0;
            for (EdgeId e : g_.incident(v)) open += !directed_[e];
            if (open != undirected_[v]) throw std::logic_error("selfless: stale undirected count");
            const bool candidate = open > 0 && !saturated(v);
            if (candidate != static_cast<bool>(queued_[v])) throw std::logic_error("selfless: queue membership");
            if (!candidate) continue;
            ++candidates;
            const Scaled p = compute_priority(v);
            if (p != priority_[v]) throw std::logic_error("selfless: stale priority");
            has_zero = has_zero || p == 0;
            priority_sum += p;
            indegree_sum += indegree_[v];
        }
        if (candidates != queue_.size()) throw std::logic_error("selfless: queue size");
        if (!has_zero && !dead_edge_ && priority_sum != scale_ * (open_edges + indegree_sum)) {
            throw std::logic_error("selfless: priority sum differs from open edges plus indegrees");
        }
    }

    const Hypergraph& g_;
    std::uint32_t ell_;
    Scaled scale_;
    Rng rng_;
    SelflessOptions options_;
    std::vector<std::uint8_t> directed_;
    std::vector<std::uint32_t> weight_;
    std::vector<std::uint32_t> indegree_;
    std::vector<std::uint32_t> undirected_;
    std::vector<Scaled> share_;  // scale_ / w
    std::vector<Scaled> priority_;
    std::vector<std::uint8_t> queued_;
    PriorityQueue queue_;
    bool dead_edge_ = false;
    std::vector<EdgeId> candidates_;
    std::vector<NodeId> touched_;
    Orientation result_;
};

}  // namespace

Orientation selfless_orient(const Hypergraph& g, int ell, std::uint64_t seed, SelflessOptions options) {
    if (ell < 1) throw DomainError("bucket capacity ell must be at least 1");
    return SelflessState(g, ell, seed, options).run();
}

Orientation matching_orient(const Hypergraph& g, int ell) {
    if (ell < 1) throw DomainError("bucket capacity ell must be at least 1");
    const auto slots = static_cast<std::uint32_t>(ell);
    std::vector<std::uint32_t> offsets{0};
    offsets.reserve(g.edge_count() + 1);
    std::vector<std::uint32_t> adjacency;
    adjacency.reserve(g.total_edge_size() * slots);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        for (NodeId v : g.edge(e)) {
            for (std::uint32_t s = 0; s < slots; ++s) adjacency.push_back(v * slots + s);
        }
        offsets.push_back(static_cast<std::uint32_t>(adjacency.size()));
    }
    BipartiteMatching matching(g.node_count() * slots, std::move(offsets), std::move(adjacency));
    const std::size_t size = matching.solve();

    Orientation o;
    o.target.assign(g.edge_count(), std::nullopt);
    const auto match = matching.match_of_left();
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (match[e] != kUnmatched) o.target[e] = match[e] / slots;
    }
    o.steps = size;
    o.success = size == g.edge_count();
    if (!o.success) o.failed_at_step = size + 1;
    return o;
}

bool verify(const Hypergraph& g, const Orientation& o, int ell) {
    if (!o.success || o.target.size() != g.edge_count()) return false;
    std::vector<std::uint32_t> load(g.node_count(), 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (!o.target[e]) return false;
        const NodeId v = *o.target[e];
        const auto nodes = g.edge(e);
        if (std::find(nodes.begin(), nodes.end(), v) == nodes.end()) return false;
        if (++load[v] > static_cast<std::uint32_t>(ell)) return false;
    }
    return true;
}

}  // namespace cuckoo
