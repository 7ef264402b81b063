#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cuckoo/degree_spec.hpp"
#include "cuckoo/sigmoid_fit.hpp"

namespace cuckoo {

// Failure events: selfless/matching fail to orient, xorsat is unsatisfiable
// for random right-hand sides, peel leaves a nonempty (ell+1)-core.
enum class Method { selfless, matching, xorsat, peel };

std::string_view method_name(Method method);
std::optional<Method> parse_method(std::string_view name);

struct SweepConfig {
    std::size_t m = 10000;
    std::optional<int> k;               // exactly one of k and spec
    std::optional<DegreeSpec> spec;
    int ell = 1;
    double center = 0.0;
    double half_width = 0.004;
    double step = 1e-4;
    std::size_t trials = 100;
    std::vector<Method> methods{Method::selfless};
    std::uint64_t master_seed = 1;
    unsigned jobs = 1;

    // Throws DomainError on an invalid configuration.
    void validate() const;
    // floor(2 * half_width / step) + 1 densities starting at center - half_width.
    std::vector<double> grid() const;

    nlohmann::json to_json() const;
    static SweepConfig from_json(const nlohmann::json& j);
};

struct MethodOutcome {
    Method method = Method::selfless;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double millis = 0.0;

    double rate() const { return trials == 0 ? 0.0 : static_cast<double>(failures) / static_cast<double>(trials); }
};

struct SweepRecord {
    double c = 0.0;
    std::size_t n = 0;
    std::vector<MethodOutcome> outcomes;  // in SweepConfig::methods order
    // Trials where selfless succeeded but matching failed; only counted when
    // both methods run. Always 0 for a correct implementation.
    std::size_t dominance_violations = 0;

    const MethodOutcome* outcome(Method method) const;
};

// Edge count at density c: round(c * m).
std::size_t edges_at(double c, std::size_t m);

// Instance seed for one grid point and trial; shared by all methods.
std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t grid_index, std::size_t trial_index);

std::vector<SweepRecord> run_sweep(const SweepConfig& cfg);

// Header `c,n,method,trials,failures,rate,millis`, one row per record and
// method, reals as %.10g. Without timing the millis column is 0 so output
// is byte-for-byte reproducible.
void write_csv(std::ostream& out, std::span<const SweepRecord> records, bool timing = false);

// Rows of a CSV in the format above.
struct CsvRow {
    double c = 0.0;
    std::size_t n = 0;
    std::string method;
    std::size_t trials = 0;
    std::size_t failures = 0;
    double rate = 0.0;
    double millis = 0.0;
};
std::vector<CsvRow> read_csv(std::istream& in);

std::vector<RatePoint> rate_points(std::span<const SweepRecord> records, Method method);
std::vector<RatePoint> rate_points(std::span<const CsvRow> rows, std::string_view method);

nlohmann::json fit_to_json(const SigmoidFit& fit);

}  // namespace cuckoo
