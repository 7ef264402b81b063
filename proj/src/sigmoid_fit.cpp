#include "cuckoo/sigmoid_fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "cuckoo/errors.hpp"

namespace cuckoo {

double sigmoid(double c, double a, double b) {
    if (!(b > 0.0)) throw DomainError("sigmoid width b must be positive");
    return 1.0 / (1.0 + std::exp(-(c - a) / b));
}

namespace {

constexpr int kMaxIterations = 500;
constexpr double kTolerance = 1e-10;

double sum_of_squares(std::span<const RatePoint> pts, double a, double b) {
    double s = 0.0;
    for (const auto& p : pts) {
        const double r = p.rate - sigmoid(p.c, a, b);
        s += r * r;
    }
    return s;
}

}  // namespace

SigmoidFit fit_sigmoid(std::span<const RatePoint> points) {
    if (points.size() < 3) throw DomainError("sigmoid fit needs at least 3 points");
    std::vector<RatePoint> pts(points.begin(), points.end());
    for (const auto& p : pts) {
        if (!std::isfinite(p.c)) throw DomainError("sigmoid fit: non-finite density");
        if (!(p.rate >= 0.0 && p.rate <= 1.0)) throw DomainError("sigmoid fit: rates must lie in [0, 1]");
    }
    std::stable_sort(pts.begin(), pts.end(), [](const RatePoint& x, const RatePoint& y) { return x.c < y.c; });
    const bool all_zero = std::all_of(pts.begin(), pts.end(), [](const RatePoint& p) { return p.rate == 0.0; });
    const bool all_one = std::all_of(pts.begin(), pts.end(), [](const RatePoint& p) { return p.rate == 1.0; });
    if (all_zero || all_one) throw DegenerateFit("sigmoid fit: constant failure rates have no transition");

    double step = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const double d = pts[i].c - pts[i - 1].c;
        if (d > 0.0 && (step == 0.0 || d < step)) step = d;
    }
    if (step == 0.0) throw DegenerateFit("sigmoid fit: all points share one density");

    double a = 0.5 * (pts.front().c + pts.back().c);
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i - 1].rate < 0.5 && pts[i].rate >= 0.5) {
            a = pts[i].c;
            break;
        }
    }
    double b = 2.0 * step;

    SigmoidFit fit;
    double ssr = sum_of_squares(pts, a, b);
    double lambda = 1e-3;
    for (int it = 1; it <= kMaxIterations; ++it) {
        fit.iterations = it;
        // Normal equations with J = d sigma / d(a, b) and residual r = rate - sigma.
        double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
        for (const auto& p : pts) {
            const double s = sigmoid(p.c, a, b);
            const double ds = s * (1.0 - s);
            const double da = -ds / b;
            const double db = -ds * (p.c - a) / (b * b);
            const double r = p.rate - s;
            jaa += da * da;
            jab += da * db;
            jbb += db * db;
            ga += da * r;
            gb += db * r;
        }
        bool accepted = false;
        double step_a = 0.0;
        double step_b = 0.0;
        while (lambda < 1e20) {
            const double m11 = jaa * (1.0 + lambda) + 1e-300;
            const double m22 = jbb * (1.0 + lambda) + 1e-300;
            const double det = m11 * m22 - jab * jab;
            step_a = (m22 * ga - jab * gb) / det;
            step_b = (m11 * gb - jab * ga) / det;
            const double na = a + step_a;
            const double nb = b + step_b;
            if (std::isfinite(na) && std::isfinite(nb) && nb > 0.0) {
                const double nssr = sum_of_squares(pts, na, nb);
                if (nssr <= ssr) {
                    a = na;
                    b = nb;
                    ssr = nssr;
                    lambda = std::max(lambda * 0.1, 1e-12);
                    accepted = true;
                    break;
                }
            }
            lambda *= 10.0;
        }
        if (!accepted || (std::abs(step_a) < kTolerance && std::abs(step_b) < kTolerance)) {
            fit.converged = true;
            break;
        }
    }
    fit.a = a;
    fit.b = b;
    fit.sum_res = ssr;
    return fit;
}

}  // namespace cuckoo
