#pragma once

#include <vector>

#include "cuckoo/degree_spec.hpp"

// Analytic side of k-ary cuckoo hashing: Poisson tails, the load function
// g_{k,l}(beta) = beta / (k * Pr[Po(beta) >= l-1]^(k-1)), core appearance
// points, core size predictions and the orientation thresholds c_{k,l}.
//
// Everything is parametrized by beta, the mean number of surviving child
// hyperedges of a node in the peeling tree. A load c corresponds to the
// largest beta with g(beta) = c.
namespace cuckoo {

struct CorePrediction {
    double beta = 0.0;           // beta(c), supercritical branch
    double node_fraction = 0.0;  // core nodes / m
    double edge_fraction = 0.0;  // core edges / n
    double edge_density = 0.0;   // core edges / core nodes
};

struct Appearance {
    double beta_star = 0.0;  // argmin of g
    double c_star = 0.0;     // min of g: load where the core appears
};

struct ThresholdResult {
    double c_star = 0.0;
    double beta_star = 0.0;
    double c_threshold = 0.0;  // load where the core edge density reaches l-1
    double beta_threshold = 0.0;
    double residual = 0.0;  // width of the final bracket, in units of c
};

// Pr[Po(beta) >= j]. Throws DomainError for negative or non-finite beta.
double poisson_tail(double beta, int j);

// The load function g_{k,l}. Throws DomainError for beta <= 0.
double load_of_beta(int k, int ell, double beta);

// Core edge density as a function of beta:
//   beta * Pr[Po(beta) >= l-1] / (k * Pr[Po(beta) >= l]).
double core_density_of_beta(int k, int ell, double beta);

// Unique minimizer of the convex function g on (0, inf).
// Throws UnsupportedCase when k + ell <= 4 or k, ell < 2.
Appearance core_appearance(int k, int ell);

// Unique beta > beta* with g(beta) = c. Throws NoSupercriticalSolution for c <= c*.
double beta_of_c(int k, int ell, double c);

CorePrediction predict_core(int k, int ell, double c);

// c_{k,l}: load at which the l-core edge density equals l - 1.
ThresholdResult orientation_threshold(int k, int ell);

// Degree-distribution versions. With Lambda the generating function of
// `spec` the load function becomes beta / Lambda'(Pr[Po(beta) >= l-1]).
double mixed_load_of_beta(const DegreeSpec& spec, int ell, double beta);
double mixed_core_density_of_beta(const DegreeSpec& spec, int ell, double beta);
Appearance mixed_core_appearance(const DegreeSpec& spec, int ell);
double mixed_beta_of_c(const DegreeSpec& spec, int ell, double c);
CorePrediction predict_core(const DegreeSpec& spec, int ell, double c);

struct FixedPointTrace {
    std::vector<double> iterates;  // p_0 = 0, p_1, ...
    bool converged = false;
};

// Iterates p_{j+1} = Pr[Po(c * Lambda'(1 - p_j)) <= l - 2] from p_0 = 0.
// Stops when successive iterates agree to 1e-15, when 1 - p < 1e-13
// (reported as p = 1), or after 10^6 iterations.
FixedPointTrace mixed_fixed_point_trace(const DegreeSpec& spec, double c, int ell);

// Smallest non-negative solution p of p = Pr[Po(c * Lambda'(1 - p)) <= l - 2].
double mixed_fixed_point(const DegreeSpec& spec, double c, int ell);

// c_{kappa*,l} for a degree distribution. For ell = 2 requires mean > 2.
ThresholdResult mixed_threshold(const DegreeSpec& spec, int ell);

// The load 0.5 / (3 - kappa) observed to match the threshold for kappa <= 2.25.
// Informational only.
double small_kappa_threshold_estimate(double kappa);

}  // namespace cuckoo
