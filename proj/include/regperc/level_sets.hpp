#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "regperc/graph.hpp"

namespace regperc {

// Exact piecewise-constant largest-level-set curve. Entry i holds the state
// just below thresholds[i], i.e. after inserting every vertex with
// f(v) >= thresholds[i]. thresholds are the distinct values of f, descending.
struct RatioCurve {
    std::vector<double> thresholds;
    std::vector<std::uint32_t> induced_sizes;
    std::vector<std::uint32_t> max_component_sizes;

    std::size_t size() const { return thresholds.size(); }
};

struct ThresholdEstimate {
    double alpha_c = 0.0;
    // Descent window of the smoothed curve: window_hi is the alpha where it
    // last sits at/above 0.8 (left of alpha_c), window_lo where it first
    // drops to/below 0.2 (right of alpha_c); window_hi <= alpha_c <= window_lo.
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::size_t n_points = 0;

    double window_width() const { return window_lo - window_hi; }
};

// Incremental union-find sweep: vertices inserted by descending f (ties by
// vertex id), unions with already-inserted neighbors only.
RatioCurve sweep_ratio_curve(const Graph& g, std::span<const double> f);

// Ratio max/induced after inserting all vertices with f(v) > alpha; 0 when no
// vertex qualifies.
double ratio_at(const RatioCurve& curve, double alpha);

inline constexpr std::size_t kSteepestGridPoints = 512;

// Empirical critical level: resample the ratio onto a uniform 512-point alpha
// grid over [min f, max f], smooth with a centered moving average, and take
// the point of steepest descent.
ThresholdEstimate steepest_point(const RatioCurve& curve, int smoothing_window = 11);

struct CriticalCurveRow {
    double lambda_bin_center = 0.0;
    double alpha_c_mean = 0.0;
    double alpha_c_stderr = 0.0;
    std::size_t count = 0;
};

struct CriticalCurveParams {
    std::size_t d = 3;
    std::size_t n = 1000;
    std::size_t realizations = 10;
    std::size_t lambda_bins = 16;
    std::uint64_t seed = 0;
    std::size_t workers = 0;      // 0 = auto
    std::size_t max_restarts = 0; // 0 = generous experiment default
};

// For each seeded graph: decompose, sweep +f and -f of every eigenpair with
// lambda strictly inside the tree spectrum, bin the steepest points by lambda.
// Deterministic for fixed seed regardless of worker count.
std::vector<CriticalCurveRow> critical_curve_experiment(const CriticalCurveParams& p);

} // namespace regperc
