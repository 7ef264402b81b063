#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cuckoo {

inline constexpr std::uint32_t kUnmatched = UINT32_MAX;

// Hopcroft-Karp maximum cardinality matching. Left vertex u is adjacent to
// right vertices adjacency[offsets[u] .. offsets[u+1]).
class BipartiteMatching {
public:
    BipartiteMatching(std::size_t right_count, std::vector<std::uint32_t> offsets,
                      std::vector<std::uint32_t> adjacency);

    std::size_t solve();

    std::size_t left_count() const noexcept { return offsets_.size() - 1; }
    std::size_t size() const noexcept { return size_; }
    std::span<const std::uint32_t> match_of_left() const noexcept { return match_left_; }

private:
    bool bfs();
    bool dfs(std::uint32_t root);

    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint32_t> adjacency_;
    std::vector<std::uint32_t> match_left_;
    std::vector<std::uint32_t> match_right_;
    std::vector<std::uint32_t> layer_;
    std::vector<std::uint32_t> cursor_;
    std::size_t size_ = 0;
};

}  // namespace cuckoo
