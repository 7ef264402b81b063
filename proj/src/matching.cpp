#include "cuckoo/matching.hpp"

#include "cuckoo/errors.hpp"

namespace cuckoo {
namespace {
constexpr std::uint32_t kUnreached = UINT32_MAX;
}

BipartiteMatching::BipartiteMatching(std::size_t right_count, std::vector<std::uint32_t> offsets,
                                     std::vector<std::uint32_t> adjacency)
    : offsets_(std::move(offsets)), adjacency_(std::move(adjacency)) {
    if (offsets_.empty() || offsets_.back() != adjacency_.size()) throw DomainError("malformed adjacency offsets");
    for (auto r : adjacency_) {
        if (r >= right_count) throw DomainError("right vertex out of range");
    }
    match_left_.assign(left_count(), kUnmatched);
    match_right_.assign(right_count, kUnmatched);
    layer_.assign(left_count(), kUnreached);
    cursor_.assign(left_count(), 0);
}

bool BipartiteMatching::bfs() {
    std::vector<std::uint32_t> queue;
    queue.reserve(left_count());
    for (std::uint32_t u = 0; u < left_count(); ++u) {
        if (match_left_[u] == kUnmatched) {
            layer_[u] = 0;
            queue.push_back(u);
        } else {
            layer_[u] = kUnreached;
        }
    }
    bool reached_free = false;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::uint32_t u = queue[head];
        for (auto i = offsets_[u]; i < offsets_[u + 1]; ++i) {
            const std::uint32_t w = match_right_[adjacency_[i]];
            if (w == kUnmatched) {
                reached_free = true;
            } else if (layer_[w] == kUnreached) {
                layer_[w] = layer_[u] + 1;
                queue.push_back(w);
            }
        }
    }
    return reached_free;
}

// Iterative layered DFS; the stack holds left vertices whose cursor points
// at the right vertex leading to the next stack entry.
bool BipartiteMatching::dfs(std::uint32_t root) {
    std::vector<std::uint32_t> stack{root};
    while (!stack.empty()) {
        const std::uint32_t u = stack.back();
        if (cursor_[u] == offsets_[u + 1]) {
            layer_[u] = kUnreached;
            stack.pop_back();
            continue;
        }
        const std::uint32_t w = match_right_[adjacency_[cursor_[u]]];
        if (w == kUnmatched) {
            for (std::uint32_t v : stack) {
                const std::uint32_t r = adjacency_[cursor_[v]];
                match_left_[v] = r;
                match_right_[r] = v;
            }
            return true;
        }
        if (layer_[w] != kUnreached && layer_[w] == layer_[u] + 1) {
            stack.push_back(w);
        } else {
            ++cursor_[u];
        }
    }
    return false;
}

std::size_t BipartiteMatching::solve() {
    // Greedy start.
    for (std::uint32_t u = 0; u < left_count(); ++u) {
        if (match_left_[u] != kUnmatched) continue;
        for (auto i = offsets_[u]; i < offsets_[u + 1]; ++i) {
            if (match_right_[adjacency_[i]] == kUnmatched) {
                match_left_[u] = adjacency_[i];
                match_right_[adjacency_[i]] = u;
                ++size_;
                break;
            }
        }
    }
    while (size_ < left_count() && bfs()) {
        for (std::uint32_t u = 0; u < left_count(); ++u) cursor_[u] = offsets_[u];
        for (std::uint32_t u = 0; u < left_count(); ++u) {
            if (match_left_[u] == kUnmatched && dfs(u)) ++size_;
        }
    }
    return size_;
}

}  // namespace cuckoo
