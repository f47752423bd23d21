#include "regperc/level_sets.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "regperc/errors.hpp"
#include "regperc/pool.hpp"
#include "regperc/rng.hpp"
#include "regperc/spectral.hpp"

namespace regperc {

namespace {

struct UnionFind {
    std::vector<std::uint32_t> parent;
    std::vector<std::uint32_t> size;

    explicit UnionFind(std::size_t n) : parent(n), size(n, 1) {
        std::iota(parent.begin(), parent.end(), 0u);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    // returns size of merged component
    std::uint32_t unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return size[a];
        if (size[a] < size[b]) std::swap(a, b);
        parent[b] = a;
        size[a] += size[b];
        return size[a];
    }
};

} // namespace

RatioCurve sweep_ratio_curve(const Graph& g, std::span<const double> f) {
    if (f.size() != g.n)
        throw Error(ErrorCode::LengthMismatch, "f length must equal vertex count");

    std::vector<std::uint32_t> order(g.n);
    std::iota(order.begin(), order.end(), 0u);
    std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
        if (f[a] != f[b]) return f[a] > f[b];
        return a < b;
    });

    UnionFind uf(g.n);
    std::vector<char> inserted(g.n, 0);
    RatioCurve curve;
    std::uint32_t max_comp = 0;
    std::size_t i = 0;
    while (i < g.n) {
        const double value = f[order[i]];
        std::size_t j = i;
        while (j < g.n && f[order[j]] == value) {
            std::uint32_t v = order[j];
            inserted[v] = 1;
            max_comp = std::max<std::uint32_t>(max_comp, 1);
            for (std::uint32_t u : g.neighbors(v))
                if (inserted[u]) max_comp = std::max(max_comp, uf.unite(u, v));
            ++j;
        }
        curve.thresholds.push_back(value);
        curve.induced_sizes.push_back(static_cast<std::uint32_t>(j));
        curve.max_component_sizes.push_back(max_comp);
        i = j;
    }
    return curve;
}

double ratio_at(const RatioCurve& curve, double alpha) {
    if (curve.size() == 0)
        throw Error(ErrorCode::EmptyData, "empty ratio curve");
    // last index with thresholds[i] > alpha (thresholds descending)
    auto it = std::lower_bound(curve.thresholds.begin(), curve.thresholds.end(), alpha,
                               [](double th, double a) { return th > a; });
    if (it == curve.thresholds.begin()) return 0.0;
    std::size_t i = static_cast<std::size_t>(it - curve.thresholds.begin()) - 1;
    return static_cast<double>(curve.max_component_sizes[i]) /
           static_cast<double>(curve.induced_sizes[i]);
}

ThresholdEstimate steepest_point(const RatioCurve& curve, int smoothing_window) {
    if (smoothing_window < 1 || smoothing_window % 2 == 0)
        throw Error(ErrorCode::BadInput, "smoothing window must be a positive odd integer");
    if (curve.size() < 2 * static_cast<std::size_t>(smoothing_window))
        throw Error(ErrorCode::TooFewPoints,
                    "curve needs at least 2*window distinct values");

    const std::size_t m = kSteepestGridPoints;
    const double lo = curve.thresholds.back();
    const double hi = curve.thresholds.front();
    const double h = (hi - lo) / static_cast<double>(m - 1);

    std::vector<double> ratio(m);
    for (std::size_t i = 0; i < m; ++i)
        ratio[i] = ratio_at(curve, lo + h * static_cast<double>(i));

    // centered moving average, window clipped at the ends
    const int r = smoothing_window / 2;
    std::vector<double> smooth(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t a = i >= static_cast<std::size_t>(r) ? i - r : 0;
        std::size_t b = std::min(m - 1, i + static_cast<std::size_t>(r));
        double acc = 0.0;
        for (std::size_t k = a; k <= b; ++k) acc += ratio[k];
        smooth[i] = acc / static_cast<double>(b - a + 1);
    }

    double tv = 0.0;
    for (std::size_t i = 1; i < m; ++i) tv += std::fabs(smooth[i] - smooth[i - 1]);
    if (tv < 0.5)
        throw Error(ErrorCode::NoTransition, "smoothed curve is flat (total variation < 0.5)");

    // The transition of interest is the bulk one: the first (lowest-alpha)
    // downward crossing of 1/2. Searching the whole grid instead would latch
    // onto the extreme right, where the induced graph is a handful of
    // vertices and the ratio jumps between 0 and 1 within a few grid cells.
    std::size_t cross = m;
    for (std::size_t i = 0; i + 1 < m; ++i)
        if (smooth[i] >= 0.5 && smooth[i + 1] < 0.5) {
            cross = i;
            break;
        }
    std::size_t seg_lo = 1, seg_hi = m - 2;
    if (cross < m) {
        seg_lo = cross;
        while (seg_lo > 1 && smooth[seg_lo] < 0.8) --seg_lo;
        seg_hi = cross + 1;
        while (seg_hi + 1 < m - 1 && smooth[seg_hi] > 0.2) ++seg_hi;
    }
    std::size_t best = seg_lo;
    double best_slope = 0.0;
    for (std::size_t i = seg_lo; i <= seg_hi; ++i) {
        double slope = (smooth[i + 1] - smooth[i - 1]) / (2.0 * h);
        if (slope < best_slope) {
            best_slope = slope;
            best = i;
        }
    }
    if (best_slope >= 0.0)
        throw Error(ErrorCode::NoTransition, "no descending segment in smoothed curve");

    ThresholdEstimate est;
    est.alpha_c = lo + h * static_cast<double>(best);
    est.n_points = curve.size();

    // 0.8 -> 0.2 descent window around alpha_c
    std::size_t i8 = best;
    while (i8 > 0 && smooth[i8] < 0.8) --i8;
    std::size_t i2 = best;
    while (i2 + 1 < m && smooth[i2] > 0.2) ++i2;
    est.window_hi = lo + h * static_cast<double>(i8);
    est.window_lo = lo + h * static_cast<double>(i2);
    if (est.window_lo <= est.window_hi) est.window_lo = est.window_hi + h;
    return est;
}

std::vector<CriticalCurveRow> critical_curve_experiment(const CriticalCurveParams& p) {
    if (p.n == 0 || p.realizations == 0 || p.lambda_bins == 0)
        throw Error(ErrorCode::BadInput, "parameters must be positive");
    if (p.n * p.d % 2 != 0)
        throw Error(ErrorCode::OddProduct, "n*d must be even");

    const SpectrumSupport support = spectrum_support(p.d);
    const double bin_width = (support.hi - support.lo) / static_cast<double>(p.lambda_bins);

    // One task per realization; each fills its own slot.
    struct Sample {
        double lambda;
        double alpha_c;
    };
    std::vector<std::vector<Sample>> task_samples(p.realizations);
    // The whole-matching rejection sampler needs more restarts than the
    // per-call default once d grows (acceptance ~ exp(-(d^2-1)/4)).
    const std::size_t restarts =
        p.max_restarts ? p.max_restarts : std::max<std::size_t>(10 * p.d * p.d, 20000);

    parallel_tasks(p.realizations, p.workers, [&](std::size_t task) {
        Graph g = generate_regular(p.n, p.d, mix_seed(p.seed, task), restarts);
        auto pairs = eigendecompose(g);
        std::vector<double> neg(p.n);
        auto& out = task_samples[task];
        for (const auto& pair : pairs) {
            if (pair.lambda <= support.lo || pair.lambda >= support.hi) continue;
            // eigenvector sign is arbitrary and the wave model is
            // sign-symmetric; both signs enter the ensemble. The occasional
            // degenerate curve with no transition is skipped, not fatal.
            RatioCurve plus = sweep_ratio_curve(g, pair.vector);
            try {
                out.push_back({pair.lambda, steepest_point(plus).alpha_c});
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoTransition) throw;
            }
            for (std::size_t i = 0; i < p.n; ++i) neg[i] = -pair.vector[i];
            RatioCurve minus = sweep_ratio_curve(g, neg);
            try {
                out.push_back({pair.lambda, steepest_point(minus).alpha_c});
            } catch (const Error& e) {
                if (e.code() != ErrorCode::NoTransition) throw;
            }
        }
    });

    std::vector<double> sum(p.lambda_bins, 0.0), sum2(p.lambda_bins, 0.0);
    std::vector<std::size_t> count(p.lambda_bins, 0);
    for (const auto& samples : task_samples) {
        for (const Sample& s : samples) {
            auto bin = static_cast<std::size_t>((s.lambda - support.lo) / bin_width);
            bin = std::min(bin, p.lambda_bins - 1);
            sum[bin] += s.alpha_c;
            sum2[bin] += s.alpha_c * s.alpha_c;
            ++count[bin];
        }
    }

    std::vector<CriticalCurveRow> rows(p.lambda_bins);
    for (std::size_t b = 0; b < p.lambda_bins; ++b) {
        CriticalCurveRow& row = rows[b];
        row.lambda_bin_center = support.lo + bin_width * (static_cast<double>(b) + 0.5);
        row.count = count[b];
        if (count[b] > 0) {
            double mean = sum[b] / static_cast<double>(count[b]);
            row.alpha_c_mean = mean;
            if (count[b] > 1) {
                double var = (sum2[b] - static_cast<double>(count[b]) * mean * mean) /
                             static_cast<double>(count[b] - 1);
                row.alpha_c_stderr =
                    std::sqrt(std::max(var, 0.0) / static_cast<double>(count[b]));
            }
        }
    }
    return rows;
}

} // namespace regperc
