#pragma once

#include <span>

namespace cuckoo {

// 1 / (1 + exp(-(c - a) / b)). Throws DomainError for b <= 0.
double sigmoid(double c, double a, double b);

struct RatePoint {
    double c = 0.0;
    double rate = 0.0;
};

struct SigmoidFit {
    double a = 0.0;        // inflection point, the empirical threshold
    double b = 0.0;        // transition width
    double sum_res = 0.0;  // residual sum of squares
    int iterations = 0;
    bool converged = false;
};

// Least-squares fit of the sigmoid to failure rates by damped Gauss-Newton
// (Levenberg-Marquardt scaling). Starts at the first point where the rate
// crosses 0.5 (grid midpoint if none) with b = 2 * grid spacing; stops when
// both parameter updates fall below 1e-10 or after 500 iterations.
// Needs >= 3 points with rates in [0, 1]; all-0 or all-1 data throws
// DegenerateFit.
SigmoidFit fit_sigmoid(std::span<const RatePoint> points);

}  // namespace cuckoo
