#include "cuckoo/hypergraph.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "cuckoo/errors.hpp"
#include "cuckoo/random.hpp"

namespace cuckoo {

Hypergraph::Hypergraph(std::size_t node_count, const std::vector<std::vector<NodeId>>& edges)
    : node_count_(node_count) {
    std::size_t total = 0;
    for (const auto& e : edges) total += e.size();
    edge_offsets_.reserve(edges.size() + 1);
    edge_nodes_.reserve(total);
    for (const auto& e : edges) {
        edge_nodes_.insert(edge_nodes_.end(), e.begin(), e.end());
        edge_offsets_.push_back(static_cast<std::uint32_t>(edge_nodes_.size()));
    }
    build_incidence();
}

Hypergraph::Hypergraph(std::size_t node_count, std::vector<std::uint32_t> offsets, std::vector<NodeId> nodes)
    : node_count_(node_count), edge_offsets_(std::move(offsets)), edge_nodes_(std::move(nodes)) {
    if (edge_offsets_.empty() || edge_offsets_.front() != 0 || edge_offsets_.back() != edge_nodes_.size() ||
        !std::is_sorted(edge_offsets_.begin(), edge_offsets_.end())) {
        throw DomainError("malformed edge offset array");
    }
    build_incidence();
}

void Hypergraph::build_incidence() {
    if (node_count_ > std::numeric_limits<NodeId>::max() || edge_nodes_.size() > std::numeric_limits<std::uint32_t>::max()) {
        throw DomainError("hypergraph too large for 32-bit ids");
    }
    std::vector<std::uint32_t> counts(node_count_ + 1, 0);
    for (std::size_t e = 0; e + 1 < edge_offsets_.size(); ++e) {
        auto first = edge_nodes_.begin() + edge_offsets_[e];
        auto last = edge_nodes_.begin() + edge_offsets_[e + 1];
        std::sort(first, last);
        const auto size = last - first;
        if (size < 2) throw DomainError("edge " + std::to_string(e) + " has fewer than 2 nodes");
        if (std::adjacent_find(first, last) != last) {
            throw DomainError("edge " + std::to_string(e) + " repeats a node");
        }
        if (*(last - 1) >= node_count_) {
            throw DomainError("edge " + std::to_string(e) + " references a node outside [0, m)");
        }
        max_edge_size_ = std::max(max_edge_size_, static_cast<int>(size));
        for (auto it = first; it != last; ++it) ++counts[*it + 1];
    }
    node_offsets_.assign(node_count_ + 1, 0);
    for (std::size_t v = 0; v < node_count_; ++v) node_offsets_[v + 1] = node_offsets_[v] + counts[v + 1];
    node_edges_.assign(edge_nodes_.size(), 0);
    std::vector<std::uint32_t> cursor(node_offsets_.begin(), node_offsets_.end() - 1);
    for (std::size_t e = 0; e + 1 < edge_offsets_.size(); ++e) {
        for (auto i = edge_offsets_[e]; i < edge_offsets_[e + 1]; ++i) {
            node_edges_[cursor[edge_nodes_[i]]++] = static_cast<EdgeId>(e);
        }
    }
}

std::vector<std::vector<NodeId>> Hypergraph::edge_lists() const {
    std::vector<std::vector<NodeId>> out;
    out.reserve(edge_count());
    for (EdgeId e = 0; e < edge_count(); ++e) {
        auto nodes = edge(e);
        out.emplace_back(nodes.begin(), nodes.end());
    }
    return out;
}

void Hypergraph::write(std::ostream& out) const {
    out << node_count_ << ' ' << edge_count() << '\n';
    for (EdgeId e = 0; e < edge_count(); ++e) {
        const auto nodes = edge(e);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            if (i) out << ' ';
            out << nodes[i];
        }
        out << '\n';
    }
}

std::string Hypergraph::to_text() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

Hypergraph Hypergraph::read(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw DomainError("hypergraph text: missing header line");
    std::istringstream header(line);
    std::size_t m = 0;
    std::size_t n = 0;
    if (!(header >> m >> n)) throw DomainError("hypergraph text: header must be 'm n'");
    std::vector<std::uint32_t> offsets{0};
    std::vector<NodeId> nodes;
    for (std::size_t e = 0; e < n; ++e) {
        if (!std::getline(in, line)) throw DomainError("hypergraph text: expected " + std::to_string(n) + " edges");
        std::istringstream row(line);
        long long v = 0;
        while (row >> v) {
            if (v < 0) throw DomainError("hypergraph text: negative node id");
            nodes.push_back(static_cast<NodeId>(v));
        }
        if (!row.eof()) throw DomainError("hypergraph text: bad token in edge line " + std::to_string(e));
        offsets.push_back(static_cast<std::uint32_t>(nodes.size()));
    }
    return Hypergraph(m, std::move(offsets), std::move(nodes));
}

Hypergraph Hypergraph::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    return read(in);
}

namespace {

// Floyd's algorithm: a uniform k-subset of [0, m) from exactly k draws.
void append_subset(Rng& rng, std::size_t m, int k, std::vector<NodeId>& out) {
    const auto start = out.size();
    for (std::size_t j = m - k; j < m; ++j) {
        const auto t = static_cast<NodeId>(rng.below(j + 1));
        const bool taken = std::find(out.begin() + start, out.end(), t) != out.end();
        out.push_back(taken ? static_cast<NodeId>(j) : t);
    }
}

}  // namespace

Hypergraph sample_regular(std::size_t m, std::size_t n, int k, std::uint64_t seed) {
    if (k < 2) throw DomainError("edge size must be at least 2");
    if (static_cast<std::size_t>(k) > m) throw DomainError("edge size exceeds node count");
    Rng rng(seed, Stream::instance);
    std::vector<std::uint32_t> offsets;
    offsets.reserve(n + 1);
    offsets.push_back(0);
    std::vector<NodeId> nodes;
    nodes.reserve(n * k);
    for (std::size_t e = 0; e < n; ++e) {
        append_subset(rng, m, k, nodes);
        offsets.push_back(static_cast<std::uint32_t>(nodes.size()));
    }
    return Hypergraph(m, std::move(offsets), std::move(nodes));
}

Hypergraph sample_mixed(std::size_t m, std::size_t n, const DegreeSpec& spec, std::uint64_t seed) {
    if (static_cast<std::size_t>(spec.max_degree()) > m) throw DomainError("edge size exceeds node count");
    if (spec.is_point_mass()) return sample_regular(m, n, spec.min_degree(), seed);
    std::vector<std::pair<double, int>> cumulative;
    double acc = 0.0;
    for (const auto& [k, w] : spec.weights()) {
        acc += w;
        cumulative.emplace_back(acc, k);
    }
    Rng rng(seed, Stream::instance);
    std::vector<std::uint32_t> offsets{0};
    offsets.reserve(n + 1);
    std::vector<NodeId> nodes;
    nodes.reserve(static_cast<std::size_t>(n * spec.mean()) + 1);
    for (std::size_t e = 0; e < n; ++e) {
        const double u = rng.unit();
        int k = cumulative.back().second;
        for (const auto& [bound, degree] : cumulative) {
            if (u < bound) {
                k = degree;
                break;
            }
        }
        append_subset(rng, m, k, nodes);
        offsets.push_back(static_cast<std::uint32_t>(nodes.size()));
    }
    return Hypergraph(m, std::move(offsets), std::move(nodes));
}

}  // namespace cuckoo
