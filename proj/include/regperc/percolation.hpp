#pragma once

#include <cstdint>
#include <vector>

#include "regperc/gaussian_wave.hpp"

namespace regperc {

// Second-order Markov structure of the wave process along a tree path:
// X_{k} | (X_{k-2}=u, X_{k-1}=v) ~ N(a*u + b*v, sigma2).
struct PathKernel {
    double a = 0.0;
    double b = 0.0;
    double sigma2 = 0.0;
    double phi1 = 0.0;
    double phi2 = 0.0;
};

PathKernel path_kernel(const WaveModel& model);

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
};

// Monte Carlo orthant probability that all k+1 path values exceed alpha
// (equals P_k, the same-component probability at tree distance k).
McEstimate orthant_mc(const WaveModel& model, int k, double alpha,
                      std::size_t n_samples, std::uint64_t seed);

struct GrowthRateOptions {
    int quad_nodes = 128;
    double truncation = 8.0;
};

struct GrowthRateResult {
    double r = 0.0;
    std::size_t iterations = 0;
    double truncation_used = 0.0;
};

// Leading eigenvalue of the conditional-survival transfer operator on
// [alpha, alpha+truncation]^2, Gauss-Legendre discretized, by power iteration.
GrowthRateResult growth_rate_detail(const WaveModel& model, double alpha,
                                    const GrowthRateOptions& opts = {});

double growth_rate(const WaveModel& model, double alpha,
                   const GrowthRateOptions& opts = {});

struct CriticalResult {
    double alpha_c = 0.0;
    double r_residual = 0.0;
    int quad_nodes = 0;
    double truncation = 0.0;
    std::size_t iterations = 0; // growth-rate evaluations
};

// Solve r(alpha_c) = 1/(d-1) by bisection over the analytic bracket
// [supercritical_bound - 0.01, subcritical_bound + 0.01], then polish until
// the eigenvalue residual is below 1e-6.
CriticalResult critical_alpha(const WaveModel& model, double tol = 1e-3,
                              const GrowthRateOptions& opts = {});

struct ModelCurveRow {
    double lambda = 0.0;
    double alpha_c = 0.0;
    double r_residual = 0.0;
};

std::vector<ModelCurveRow> model_curve(std::size_t d, const std::vector<double>& lambda_grid,
                                       double tol = 1e-3, const GrowthRateOptions& opts = {},
                                       std::size_t workers = 0);

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// P_k through the discretized kernel (used by tests to cross-check the
// second-order Markov representation against the Monte Carlo oracle).
double path_survival_via_kernel(const WaveModel& model, int k, double alpha,
                                const GrowthRateOptions& opts = {});

} // namespace regperc
