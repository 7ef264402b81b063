#include "cuckoo/xorsat.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

#include "cuckoo/errors.hpp"
#include "cuckoo/random.hpp"

namespace cuckoo {

Gf2System::Gf2System(std::size_t variable_count, const std::vector<std::vector<std::uint32_t>>& equations,
                     std::vector<std::uint8_t> rhs)
    : variables_(variable_count), words_((variable_count + 63) / 64), rhs_(std::move(rhs)) {
    if (equations.size() != rhs_.size()) throw DomainError("one right-hand side per equation required");
    bits_.assign(equations.size() * words_, 0);
    for (std::size_t i = 0; i < equations.size(); ++i) {
        if (rhs_[i] > 1) throw DomainError("right-hand sides must be 0 or 1");
        for (std::uint32_t v : equations[i]) {
            if (v >= variables_) throw DomainError("variable index out of range");
            std::uint64_t& word = bits_[i * words_ + v / 64];
            const std::uint64_t mask = std::uint64_t{1} << (v % 64);
            if (word & mask) throw DomainError("variable repeated within an equation");
            word |= mask;
        }
    }
}

std::size_t Gf2System::popcount(std::size_t i) const {
    std::size_t count = 0;
    for (std::uint64_t w : row(i)) count += std::popcount(w);
    return count;
}

std::vector<std::uint32_t> Gf2System::variables(std::size_t i) const {
    std::vector<std::uint32_t> out;
    const auto r = row(i);
    for (std::size_t w = 0; w < r.size(); ++w) {
        for (std::uint64_t bits = r[w]; bits != 0; bits &= bits - 1) {
            out.push_back(static_cast<std::uint32_t>(w * 64 + std::countr_zero(bits)));
        }
    }
    return out;
}

Gf2System Gf2System::with_rhs(std::vector<std::uint8_t> rhs) const {
    if (rhs.size() != rhs_.size()) throw DomainError("one right-hand side per equation required");
    for (auto b : rhs) {
        if (b > 1) throw DomainError("right-hand sides must be 0 or 1");
    }
    Gf2System copy = *this;
    copy.rhs_ = std::move(rhs);
    return copy;
}

bool Gf2System::satisfied_by(std::span<const std::uint8_t> assignment) const {
    if (assignment.size() != variables_) return false;
    for (std::size_t i = 0; i < equation_count(); ++i) {
        std::uint8_t sum = 0;
        for (std::uint32_t v : variables(i)) sum ^= assignment[v] & 1U;
        if (sum != rhs_[i]) return false;
    }
    return true;
}

std::string Gf2System::to_text() const {
    std::ostringstream out;
    out << "p xor " << equation_count() << ' ' << variables_ << '\n';
    for (std::size_t i = 0; i < equation_count(); ++i) {
        for (std::uint32_t v : variables(i)) out << v + 1 << ' ';
        out << "= " << static_cast<int>(rhs_[i]) << '\n';
    }
    return out.str();
}

Gf2System Gf2System::from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) throw DomainError("xor text: missing header");
    std::istringstream header(line);
    std::string p;
    std::string kind;
    std::size_t n = 0;
    std::size_t m = 0;
    if (!(header >> p >> kind >> n >> m) || p != "p" || kind != "xor") {
        throw DomainError("xor text: header must be 'p xor n m'");
    }
    std::vector<std::vector<std::uint32_t>> equations;
    std::vector<std::uint8_t> rhs;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::getline(in, line)) throw DomainError("xor text: expected " + std::to_string(n) + " equations");
        std::istringstream row(line);
        std::vector<std::uint32_t> vars;
        std::string token;
        bool saw_equals = false;
        int b = -1;
        while (row >> token) {
            if (token == "=") {
                saw_equals = true;
                if (!(row >> b) || (b != 0 && b != 1)) throw DomainError("xor text: right-hand side must be 0 or 1");
                break;
            }
            const long long v = std::stoll(token);
            if (v < 1 || static_cast<std::size_t>(v) > m) throw DomainError("xor text: variable out of range");
            vars.push_back(static_cast<std::uint32_t>(v - 1));
        }
        if (!saw_equals) throw DomainError("xor text: equation line lacks '= b'");
        equations.push_back(std::move(vars));
        rhs.push_back(static_cast<std::uint8_t>(b));
    }
    return Gf2System(m, equations, std::move(rhs));
}

Gf2System from_hypergraph(const Hypergraph& g, std::uint64_t seed) {
    Rng rng(seed, Stream::rhs);
    std::vector<std::uint8_t> rhs(g.edge_count());
    for (auto& b : rhs) b = rng.bit() ? 1 : 0;
    std::vector<std::vector<std::uint32_t>> equations;
    equations.reserve(g.edge_count());
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        const auto nodes = g.edge(e);
        equations.emplace_back(nodes.begin(), nodes.end());
    }
    return Gf2System(g.node_count(), equations, std::move(rhs));
}

Gf2Solution rank_and_solve(const Gf2System& system) {
    const std::size_t n = system.equation_count();
    const std::size_t m = system.variable_count();
    // Working matrix with the right-hand side appended as column m.
    const std::size_t words = (m + 1 + 63) / 64;
    std::vector<std::uint64_t> a(n * words, 0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto r = system.row(i);
        std::copy(r.begin(), r.end(), a.begin() + i * words);
        if (system.rhs(i)) a[i * words + m / 64] |= std::uint64_t{1} << (m % 64);
    }
    auto bit = [&](std::size_t i, std::size_t col) { return (a[i * words + col / 64] >> (col % 64)) & 1U; };

    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m && rank < n; ++col) {
        std::size_t pivot = rank;
        while (pivot < n && !bit(pivot, col)) ++pivot;
        if (pivot == n) continue;
        const std::size_t first_word = col / 64;
        if (pivot != rank) {
            std::swap_ranges(a.begin() + pivot * words + first_word, a.begin() + (pivot + 1) * words,
                             a.begin() + rank * words + first_word);
        }
        const std::uint64_t* src = a.data() + rank * words;
        for (std::size_t i = rank + 1; i < n; ++i) {
            if (!bit(i, col)) continue;
            std::uint64_t* dst = a.data() + i * words;
            for (std::size_t w = first_word; w < words; ++w) dst[w] ^= src[w];
        }
        pivot_cols.push_back(col);
        ++rank;
    }

    Gf2Solution solution;
    solution.rank = rank;
    solution.satisfiable = true;
    for (std::size_t i = rank; i < n; ++i) {
        if (bit(i, m)) {
            solution.satisfiable = false;
            return solution;
        }
    }

    // Back substitution; each echelon row only touches columns >= its pivot.
    std::vector<std::uint64_t> x(words, 0);
    for (std::size_t i = rank; i-- > 0;) {
        const std::size_t col = pivot_cols[i];
        const std::uint64_t* row = a.data() + i * words;
        unsigned parity = static_cast<unsigned>(bit(i, m));
        for (std::size_t w = col / 64; w < words; ++w) {
            std::uint64_t both = row[w] & x[w];
            if (w == m / 64) both &= ~(std::uint64_t{1} << (m % 64));
            parity ^= std::popcount(both) & 1U;
        }
        if (parity) x[col / 64] |= std::uint64_t{1} << (col % 64);
    }
    std::vector<std::uint8_t> witness(m);
    for (std::size_t v = 0; v < m; ++v) witness[v] = (x[v / 64] >> (v % 64)) & 1U;
    if (!system.satisfied_by(witness)) throw NumericalError("GF(2) witness failed substitution check");
    solution.witness = std::move(witness);
    return solution;
}

}  // namespace cuckoo
