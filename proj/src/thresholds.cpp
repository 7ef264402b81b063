#include "cuckoo/thresholds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "cuckoo/errors.hpp"

namespace cuckoo {
namespace {

constexpr double kBetaFloor = 1e-12;  // stand-in for the beta -> 0 limit
constexpr double kScanStep = 1e-2;
constexpr double kBetaTolerance = 1e-13;
constexpr double kThresholdTolerance = 1e-10;
constexpr double kGoldenRatio = 0.6180339887498949;

void check_ell(int ell) {
    if (ell < 2) throw DomainError("core order ell must be at least 2 for core analysis");
}

void check_regular(int k, int ell) {
    if (k < 2) throw DomainError("edge size k must be at least 2");
    check_ell(ell);
    if (k + ell <= 4) {
        throw UnsupportedCase(
            "k + ell must exceed 4: 2-cores of ordinary graphs (k = 2, ell = 2) are excluded from the analysis");
    }
}

// Edge-size model: Lambda and Lambda' for a fixed k or a distribution.
struct RegularModel {
    int k;
    double gen(double x) const { return std::pow(x, k); }
    double deriv(double x) const { return k * std::pow(x, k - 1); }
    double mean() const { return k; }
};

struct MixedModel {
    const DegreeSpec& spec;
    double gen(double x) const { return spec.generating(x); }
    double deriv(double x) const { return spec.generating_derivative(x); }
    double mean() const { return spec.mean(); }
};

template <typename Model>
double load(const Model& model, int ell, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
    const double denom = model.deriv(poisson_tail(beta, ell - 1));
    if (denom <= 0.0) return std::numeric_limits<double>::infinity();
    return beta / denom;
}

template <typename Model>
double density(const Model& model, int ell, double beta) {
    if (!(beta > 0.0) || !std::isfinite(beta)) throw DomainError("beta must be positive and finite");
    const double survive = poisson_tail(beta, ell - 1);
    const double in_core = poisson_tail(beta, ell);
    const double deriv = model.deriv(survive);
    if (in_core <= 0.0 || deriv <= 0.0) return 0.0;
    return beta * model.gen(survive) / (deriv * in_core);
}

template <typename F>
Appearance golden_minimize(F&& f, double lo, double hi) {
    double a = lo;
    double b = hi;
    double x1 = b - kGoldenRatio * (b - a);
    double x2 = a + kGoldenRatio * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);
    for (int iter = 0; iter < 400 && b - a > 1e-12 * std::max(1.0, a); ++iter) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kGoldenRatio * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kGoldenRatio * (b - a);
            f2 = f(x2);
        }
    }
    return f1 <= f2 ? Appearance{x1, f1} : Appearance{x2, f2};
}

// Bisection for the point where pred flips from false (at lo) to true (at hi).
template <typename Pred>
std::pair<double, double> bisect(Pred&& pred, double lo, double hi) {
    for (int iter = 0; iter < 400 && hi - lo > kBetaTolerance * std::max(1.0, lo); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (pred(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return {lo, hi};
}

// Minimum of a possibly non-convex load function on [lo, inf). Uses
// g(beta) >= beta / mean to bound the scan, then refines the best cell.
template <typename Model>
Appearance scan_minimize(const Model& model, int ell, double lo) {
    auto g = [&](double b) { return load(model, ell, b); };
    Appearance best{lo, g(lo)};
    double best_cell = lo;
    for (double b = lo + kScanStep;; b += kScanStep) {
        const double v = g(b);
        if (v < best.c_star) {
            best = {b, v};
            best_cell = b;
        }
        if (b / model.mean() > best.c_star + kScanStep) break;
    }
    const double a = std::max(lo, best_cell - kScanStep);
    const Appearance refined = golden_minimize(g, a, best_cell + kScanStep);
    if (refined.c_star < best.c_star) best = refined;
    // The left edge of the first cell is also a candidate (beta -> lo limit).
    const Appearance edge = golden_minimize(g, lo, lo + kScanStep);
    if (edge.c_star < best.c_star) best = edge;
    return best;
}

template <typename Model>
void assert_density_monotone(const Model& model, int ell, double lo, double hi) {
    constexpr int samples = 64;
    double previous = density(model, ell, lo);
    for (int i = 1; i <= samples; ++i) {
        const double beta = lo + (hi - lo) * i / samples;
        const double current = density(model, ell, beta);
        if (current < previous * (1.0 - 1e-12)) {
            throw NumericalError("core edge density is not monotone on the bracket [" + std::to_string(lo) +
                                 ", " + std::to_string(hi) + "] near beta = " + std::to_string(beta));
        }
        previous = current;
    }
}

double upper_bracket(const auto& increasing_past, double start) {
    double hi = std::max(start, 1.0);
    for (int i = 0; i < 200 && !increasing_past(hi); ++i) hi *= 2.0;
    if (!increasing_past(hi)) throw NumericalError("failed to find an upper bracket");
    return hi;
}

}  // namespace

double poisson_tail(double beta, int j) {
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw DomainError("Poisson mean must be finite and non-negative");
    if (j <= 0) return 1.0;
    if (beta == 0.0) return 0.0;
    // pmf(i) by the product e^-beta * prod beta/r (error ~ i ulps); log
    // space only when e^-beta or the product would underflow.
    const auto pmf = [beta](int i) {
        if (beta < 700.0) {
            double term = std::exp(-beta);
            for (int r = 1; r <= i && term > 0.0; ++r) term *= beta / r;
            if (term > 1e-300) return term;
        }
        return std::exp(-beta + i * std::log(beta) - std::lgamma(i + 1.0));
    };

    if (j > beta) {
        // Upper tail directly: terms decrease from pmf(j) onward.
        double term = pmf(j);
        double sum = 0.0;
        for (int i = j; term > 0.0; ++i) {
            sum += term;
            if (term <= sum * 1e-17) break;
            term *= beta / (i + 1);
        }
        return std::min(sum, 1.0);
    }
    if (j == 1) return -std::expm1(-beta);
    // Complement of the lower sum, accumulated downward from its largest
    // term pmf(j-1).
    double term = pmf(j - 1);
    double lower = 0.0;
    for (int i = j - 1; i >= 0 && term > 0.0; --i) {
        lower += term;
        if (term <= lower * 1e-17) break;
        term *= i / beta;
    }
    return std::clamp(1.0 - lower, 0.0, 1.0);
}

double load_of_beta(int k, int ell, double beta) {
    if (k < 2 || ell < 1) throw DomainError("load function needs k >= 2 and ell >= 1");
    return load(RegularModel{k}, ell, beta);
}

double core_density_of_beta(int k, int ell, double beta) {
    if (k < 2 || ell < 1) throw DomainError("core density needs k >= 2 and ell >= 1");
    return density(RegularModel{k}, ell, beta);
}

Appearance core_appearance(int k, int ell) {
    check_regular(k, ell);
    const RegularModel model{k};
    auto g = [&](double b) { return load(model, ell, b); };
    // g is convex: once g(B) > g(B/2) the minimum lies below B.
    const double hi = upper_bracket([&](double b) { return g(b) > g(0.5 * b); }, 1.0);
    return golden_minimize(g, 1e-6, hi);
}

double beta_of_c(int k, int ell, double c) {
    const Appearance app = core_appearance(k, ell);
    if (!(c > app.c_star)) {
        throw NoSupercriticalSolution("load " + std::to_string(c) + " is not above the core appearance point " +
                                      std::to_string(app.c_star));
    }
    const RegularModel model{k};
    auto g = [&](double b) { return load(model, ell, b); };
    const double hi = upper_bracket([&](double b) { return g(b) > c; }, app.beta_star);
    return bisect([&](double b) { return g(b) >= c; }, app.beta_star, hi).second;
}

CorePrediction predict_core(int k, int ell, double c) {
    const double beta = beta_of_c(k, ell, c);
    const double survive = poisson_tail(beta, ell - 1);
    const double in_core = poisson_tail(beta, ell);
    return {beta, in_core, std::pow(survive, k), beta * survive / (k * in_core)};
}

ThresholdResult orientation_threshold(int k, int ell) {
    const Appearance app = core_appearance(k, ell);
    const RegularModel model{k};
    const double target = ell - 1.0;
    auto d = [&](double b) { return density(model, ell, b); };
    auto g = [&](double b) { return load(model, ell, b); };

    ThresholdResult result{app.c_star, app.beta_star, app.c_star, app.beta_star, 0.0};
    if (d(app.beta_star) >= target) return result;

    const double hi = upper_bracket([&](double b) { return d(b) >= target; }, app.beta_star);
    assert_density_monotone(model, ell, app.beta_star, hi);
    const auto [lo_beta, hi_beta] = bisect([&](double b) { return d(b) >= target; }, app.beta_star, hi);
    result.beta_threshold = hi_beta;
    result.c_threshold = g(hi_beta);
    result.residual = std::abs(g(hi_beta) - g(lo_beta));
    if (result.residual > kThresholdTolerance) {
        throw NumericalError("threshold bracket for (k=" + std::to_string(k) + ", ell=" + std::to_string(ell) +
                             ") did not shrink below 1e-10; width " + std::to_string(result.residual));
    }
    return result;
}

double mixed_load_of_beta(const DegreeSpec& spec, int ell, double beta) {
    if (ell < 1) throw DomainError("ell must be at least 1");
    return load(MixedModel{spec}, ell, beta);
}

double mixed_core_density_of_beta(const DegreeSpec& spec, int ell, double beta) {
    if (ell < 1) throw DomainError("ell must be at least 1");
    return density(MixedModel{spec}, ell, beta);
}

Appearance mixed_core_appearance(const DegreeSpec& spec, int ell) {
    check_ell(ell);
    if (spec.max_degree() + ell <= 4) {
        throw UnsupportedCase("all keys have 2 choices with ell = 2: ordinary graph 2-cores are excluded");
    }
    return scan_minimize(MixedModel{spec}, ell, kBetaFloor);
}

double mixed_beta_of_c(const DegreeSpec& spec, int ell, double c) {
    const Appearance app = mixed_core_appearance(spec, ell);
    if (!(c > app.c_star)) {
        throw NoSupercriticalSolution("load " + std::to_string(c) + " is not above the core appearance point " +
                                      std::to_string(app.c_star));
    }
    const MixedModel model{spec};
    auto g = [&](double b) { return load(model, ell, b); };
    // g(beta) >= beta / mean, so every root lies below c * mean.
    double upper = c * spec.mean() * (1.0 + 1e-9) + 1e-9;
    // Walk down to the first cell holding the largest root.
    double lower = std::max(app.beta_star, upper - kScanStep);
    while (lower > app.beta_star && g(lower) > c) {
        upper = lower;
        lower = std::max(app.beta_star, lower - kScanStep);
    }
    return bisect([&](double b) { return g(b) >= c; }, lower, upper).second;
}

CorePrediction predict_core(const DegreeSpec& spec, int ell, double c) {
    const double beta = mixed_beta_of_c(spec, ell, c);
    const double survive = poisson_tail(beta, ell - 1);
    const double in_core = poisson_tail(beta, ell);
    const double edge_fraction = spec.generating(survive);
    return {beta, in_core, edge_fraction, c * edge_fraction / in_core};
}

FixedPointTrace mixed_fixed_point_trace(const DegreeSpec& spec, double c, int ell) {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("load c must be positive and finite");
    if (ell < 1) throw DomainError("ell must be at least 1");
    constexpr int kMaxIterations = 1'000'000;
    FixedPointTrace trace;
    double p = 0.0;
    trace.iterates.push_back(p);
    for (int j = 0; j < kMaxIterations; ++j) {
        const double next = 1.0 - poisson_tail(c * spec.generating_derivative(1.0 - p), ell - 1);
        if (1.0 - next < 1e-13) {
            trace.iterates.push_back(1.0);
            trace.converged = true;
            return trace;
        }
        trace.iterates.push_back(next);
        if (std::abs(next - p) <= 1e-15) {
            trace.converged = true;
            return trace;
        }
        p = next;
    }
    return trace;
}

double mixed_fixed_point(const DegreeSpec& spec, double c, int ell) {
    return mixed_fixed_point_trace(spec, c, ell).iterates.back();
}

ThresholdResult mixed_threshold(const DegreeSpec& spec, int ell) {
    check_ell(ell);
    if (ell == 2 && !(spec.mean() > 2.0)) {
        throw UnsupportedCase("ell = 2 requires a mean number of choices above 2");
    }
    const Appearance app = mixed_core_appearance(spec, ell);
    const MixedModel model{spec};
    const double target = ell - 1.0;
    auto d = [&](double b) { return density(model, ell, b); };
    auto g = [&](double b) { return load(model, ell, b); };

    // Last crossing of the density through l - 1. With keys of size 2 the
    // density tends to 1 as beta -> 0 and can stay at or above it.
    const double hi = upper_bracket([&](double b) { return d(b) >= target; }, app.beta_star);
    double upper = hi;
    double lower = std::max(kBetaFloor, upper - kScanStep);
    while (lower > kBetaFloor && d(lower) >= target) {
        upper = lower;
        lower = std::max(kBetaFloor, lower - kScanStep);
    }

    ThresholdResult result{app.c_star, app.beta_star, 0.0, 0.0, 0.0};
    double crossing = kBetaFloor;
    double bracket_width = 0.0;
    if (d(lower) < target) {
        const auto [lo_beta, hi_beta] = bisect([&](double b) { return d(b) >= target; }, lower, upper);
        crossing = hi_beta;
        bracket_width = std::abs(g(hi_beta) - g(lo_beta));
        assert_density_monotone(model, ell, crossing, hi);
    }
    // Threshold load: smallest g on the supercritical branch past the crossing.
    const Appearance branch = scan_minimize(model, ell, crossing);
    result.beta_threshold = branch.beta_star;
    result.c_threshold = branch.c_star;
    result.residual = bracket_width;
    if (result.residual > kThresholdTolerance) {
        throw NumericalError("mixed threshold bracket did not shrink below 1e-10; width " +
                             std::to_string(result.residual));
    }
    return result;
}

double small_kappa_threshold_estimate(double kappa) {
    if (!(kappa >= 2.0) || !(kappa < 3.0)) throw DomainError("estimate defined for kappa in [2, 3)");
    return 0.5 / (3.0 - kappa);
}

}  // namespace cuckoo
