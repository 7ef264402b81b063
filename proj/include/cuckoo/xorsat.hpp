#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cuckoo/hypergraph.hpp"

namespace cuckoo {

// n linear equations over GF(2) in m variables. Row i is bit-packed into
// 64-bit words (bit v of word v / 64 set iff x_v appears) with right-hand
// side rhs[i].
class Gf2System {
public:
    Gf2System() = default;
    Gf2System(std::size_t variable_count, const std::vector<std::vector<std::uint32_t>>& equations,
              std::vector<std::uint8_t> rhs);

    std::size_t variable_count() const noexcept { return variables_; }
    std::size_t equation_count() const noexcept { return rhs_.size(); }
    std::size_t words_per_row() const noexcept { return words_; }

    std::span<const std::uint64_t> row(std::size_t i) const { return {bits_.data() + i * words_, words_}; }
    bool coefficient(std::size_t i, std::size_t v) const { return (row(i)[v / 64] >> (v % 64)) & 1U; }
    std::uint8_t rhs(std::size_t i) const { return rhs_[i]; }
    std::span<const std::uint8_t> rhs() const noexcept { return rhs_; }
    std::size_t popcount(std::size_t i) const;
    std::vector<std::uint32_t> variables(std::size_t i) const;

    // Same left-hand sides, different right-hand sides.
    Gf2System with_rhs(std::vector<std::uint8_t> rhs) const;

    // True iff assignment (one byte per variable) satisfies every equation.
    bool satisfied_by(std::span<const std::uint8_t> assignment) const;

    // Text form: header "p xor n m", then per equation its 1-based variable
    // indices followed by "= b".
    std::string to_text() const;
    static Gf2System from_text(std::string_view text);

    friend bool operator==(const Gf2System&, const Gf2System&) = default;

private:
    std::size_t variables_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> bits_;
    std::vector<std::uint8_t> rhs_;
};

// Equation i has ones exactly at edge i's nodes; right-hand sides are
// independent fair bits drawn from seed.
Gf2System from_hypergraph(const Hypergraph& g, std::uint64_t seed);

struct Gf2Solution {
    std::size_t rank = 0;
    bool satisfiable = false;
    std::optional<std::vector<std::uint8_t>> witness;  // free variables set to 0
};

// Gaussian elimination over GF(2). A returned witness has already been
// checked by substitution.
Gf2Solution rank_and_solve(const Gf2System& system);

}  // namespace cuckoo
