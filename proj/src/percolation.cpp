#include "regperc/percolation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "regperc/errors.hpp"
#include "regperc/kernels.hpp"
#include "regperc/pool.hpp"
#include "regperc/rng.hpp"

namespace regperc {

PathKernel path_kernel(const WaveModel& model) {
    PathKernel pk;
    pk.phi1 = phi(model, 1);
    pk.phi2 = phi(model, 2);
    const double det = 1.0 - pk.phi1 * pk.phi1;
    pk.a = (pk.phi2 - pk.phi1 * pk.phi1) / det;
    pk.b = pk.phi1 * (1.0 - pk.phi2) / det;
    pk.sigma2 = 1.0 - pk.a * pk.phi2 - pk.b * pk.phi1;
    if (pk.sigma2 <= 1e-12)
        throw Error(ErrorCode::DegenerateKernel, "conditional variance vanished");
    return pk;
}

McEstimate orthant_mc(const WaveModel& model, int k, double alpha,
                      std::size_t n_samples, std::uint64_t seed) {
    if (k < 0 || k > 32)
        throw Error(ErrorCode::TooLarge, "orthant_mc requires 0 <= k <= 32");
    if (n_samples == 0)
        throw Error(ErrorCode::BadInput, "n_samples must be positive");

    const std::size_t m = static_cast<std::size_t>(k) + 1;
    Mat cov(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            cov(i, j) = phi(model, static_cast<int>(i > j ? i - j : j - i));
    Mat L = cholesky(cov);

    std::vector<double> z(m);
    std::size_t hits = 0;
    for (std::size_t s = 0; s < n_samples; ++s) {
        Rng rng(mix_seed(seed, s));
        bool alive = true;
        for (std::size_t j = 0; j < m && alive; ++j) {
            z[j] = rng.next_normal();
            alive = kern::dot(L.row(j), z.data(), j + 1) > alpha;
        }
        hits += alive ? 1 : 0;
    }
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(n_samples))};
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(static_cast<std::size_t>(n), 0.0);
    weights.assign(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Newton from the Chebyshev-angle initial guess
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= n; ++j) {
                double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[static_cast<std::size_t>(i)] = -x;
        nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[static_cast<std::size_t>(i)] = w;
        weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
}

namespace {

struct DiscreteKernel {
    std::size_t m = 0;
    std::vector<double> nodes;   // on [alpha, alpha+T]
    std::vector<double> weights; // positive
    std::vector<double> op;      // (m*m) x m: op[(iu*m+iv)*m + iw]
    double truncation = 0.0;
};

// Discretize (Tf)(u,v) = int_alpha^inf kappa(w | u,v) f(v,w) dw on
// Gauss-Legendre nodes, auto-extending the truncation window until the
// neglected tail mass is below 1e-10 for every node pair.
DiscreteKernel build_kernel(const PathKernel& pk, double alpha, int m, double trunc) {
    const double sigma = std::sqrt(pk.sigma2);
    double T = trunc;
    for (int attempt = 0;; ++attempt) {
        // conditional mean is linear in (u,v), so its max is at a corner; the
        // surviving chain carries no mass above max(alpha,0)+7 (stationary
        // tail < 1e-12), so corners are capped there
        const double cap = std::min(alpha + T, std::max(alpha, 0.0) + 7.0);
        double mu_max = -1e300;
        for (double u : {alpha, cap})
            for (double v : {alpha, cap})
                mu_max = std::max(mu_max, pk.a * u + pk.b * v);
        if (gaussian_tail((alpha + T - mu_max) / sigma) <= 1e-10) break;
        if (attempt >= 3)
            throw Error(ErrorCode::TruncationTooTight,
                        "tail mass still above 1e-10 after 3 extensions");
        T += 4.0;
    }

    DiscreteKernel k;
    k.m = static_cast<std::size_t>(m);
    k.truncation = T;
    std::vector<double> x, w;
    gauss_legendre(m, x, w);
    k.nodes.resize(k.m);
    k.weights.resize(k.m);
    for (std::size_t i = 0; i < k.m; ++i) {
        k.nodes[i] = alpha + 0.5 * T * (x[i] + 1.0);
        k.weights[i] = 0.5 * T * w[i];
    }

    const double inv2s2 = 1.0 / (2.0 * pk.sigma2);
    const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    k.op.resize(k.m * k.m * k.m);
    for (std::size_t iu = 0; iu < k.m; ++iu) {
        for (std::size_t iv = 0; iv < k.m; ++iv) {
            const double mu = pk.a * k.nodes[iu] + pk.b * k.nodes[iv];
            double* row = k.op.data() + (iu * k.m + iv) * k.m;
            for (std::size_t iw = 0; iw < k.m; ++iw) {
                const double diff = k.nodes[iw] - mu;
                row[iw] = k.weights[iw] * norm * std::exp(-diff * diff * inv2s2);
            }
        }
    }
    return k;
}

void apply_kernel(const DiscreteKernel& k, const std::vector<double>& x,
                  std::vector<double>& y) {
    const std::size_t m = k.m;
    for (std::size_t iu = 0; iu < m; ++iu)
        for (std::size_t iv = 0; iv < m; ++iv)
            y[iu * m + iv] =
                kern::dot(k.op.data() + (iu * m + iv) * m, x.data() + iv * m, m);
}

std::vector<double> initial_measure(const DiscreteKernel& k, const PathKernel& pk) {
    // joint density of two adjacent path values, correlation phi(1)
    const std::size_t m = k.m;
    const double det = 1.0 - pk.phi1 * pk.phi1;
    const double norm = 1.0 / (2.0 * std::numbers::pi * std::sqrt(det));
    std::vector<double> mass(m * m);
    for (std::size_t iu = 0; iu < m; ++iu)
        for (std::size_t iv = 0; iv < m; ++iv) {
            double u = k.nodes[iu], v = k.nodes[iv];
            mass[iu * m + iv] = k.weights[iu] * k.weights[iv] * norm *
                                std::exp(-(u * u - 2.0 * pk.phi1 * u * v + v * v) /
                                         (2.0 * det));
        }
    return mass;
}

} // namespace

GrowthRateResult growth_rate_detail(const WaveModel& model, double alpha,
                                    const GrowthRateOptions& opts) {
    if (opts.quad_nodes < 32)
        throw Error(ErrorCode::BadInput, "quad_nodes must be at least 32");
    if (opts.truncation < 6.0)
        throw Error(ErrorCode::BadInput, "truncation must be at least 6");

    const PathKernel pk = path_kernel(model);
    const DiscreteKernel kernel = build_kernel(pk, alpha, opts.quad_nodes, opts.truncation);
    const std::size_t m2 = kernel.m * kernel.m;

    std::vector<double> x(m2, 1.0 / static_cast<double>(m2));
    std::vector<double> y(m2);
    // successive estimates can repeat in exact pairs (the kernel decouples into
    // alternating sublattices when phi(1)=0), so demand two stable differences
    double r = 0.0, r_prev = 0.0;
    for (std::size_t it = 1; it <= 10000; ++it) {
        apply_kernel(kernel, x, y);
        double r_new = kern::sum(y.data(), m2); // x is L1-normalized
        kern::scale(y.data(), m2, 1.0 / r_new);
        x.swap(y);
        if (it > 4 && std::fabs(r_new - r) <= 1e-10 * std::fabs(r_new) &&
            std::fabs(r - r_prev) <= 1e-10 * std::fabs(r_new))
            return {r_new, it, kernel.truncation};
        r_prev = r;
        r = r_new;
    }
    throw Error(ErrorCode::NoConvergence, "power iteration did not converge");
}

double growth_rate(const WaveModel& model, double alpha, const GrowthRateOptions& opts) {
    return growth_rate_detail(model, alpha, opts).r;
}

double path_survival_via_kernel(const WaveModel& model, int k, double alpha,
                                const GrowthRateOptions& opts) {
    if (k == 0) return gaussian_tail(alpha);
    const PathKernel pk = path_kernel(model);
    const DiscreteKernel kernel = build_kernel(pk, alpha, opts.quad_nodes, opts.truncation);
    std::vector<double> mass = initial_measure(kernel, pk);
    // transpose action: push the measure forward k-1 steps
    const std::size_t m = kernel.m;
    std::vector<double> next(m * m);
    for (int step = 2; step <= k; ++step) {
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t iu = 0; iu < m; ++iu)
            for (std::size_t iv = 0; iv < m; ++iv) {
                const double mval = mass[iu * m + iv];
                if (mval == 0.0) continue;
                const double* row = kernel.op.data() + (iu * m + iv) * m;
                double* out = next.data() + iv * m;
                for (std::size_t iw = 0; iw < m; ++iw) out[iw] += mval * row[iw];
            }
        mass.swap(next);
    }
    double total = 0.0;
    for (double v : mass) total += v;
    return total;
}

CriticalResult critical_alpha(const WaveModel& model, double tol,
                              const GrowthRateOptions& opts) {
    if (tol <= 0.0)
        throw Error(ErrorCode::BadInput, "tol must be positive");
    const double target = 1.0 / (static_cast<double>(model.d) - 1.0);

    double lo = supercritical_bound(model.d) - 0.01;
    double hi = subcritical_bound(model) + 0.01;
    std::size_t evals = 0;
    double trunc_used = opts.truncation;
    auto eval = [&](double a) {
        GrowthRateResult g = growth_rate_detail(model, a, opts);
        ++evals;
        trunc_used = std::max(trunc_used, g.truncation_used);
        return g.r;
    };

    double r_lo = eval(lo);
    double r_hi = eval(hi);
    if (!(r_lo >= target && target >= r_hi))
        throw Error(ErrorCode::BracketFailure,
                    "growth rate does not straddle 1/(d-1) on the analytic bracket");

    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        double r_mid = eval(mid);
        // r must be monotone nonincreasing in alpha
        if (r_mid > r_lo + 1e-9 || r_mid < r_hi - 1e-9)
            throw Error(ErrorCode::BracketFailure,
                        "growth rate not monotone across the bracket");
        if (r_mid >= target) {
            lo = mid;
            r_lo = r_mid;
        } else {
            hi = mid;
            r_hi = r_mid;
        }
    }

    // secant polish down to the eigenvalue residual
    double a0 = lo, f0 = r_lo - target;
    double a1 = hi, f1 = r_hi - target;
    double alpha_c = std::fabs(f0) < std::fabs(f1) ? a0 : a1;
    double residual = std::min(std::fabs(f0), std::fabs(f1));
    for (int it = 0; it < 60 && residual > 1e-6; ++it) {
        double a2 = (f1 != f0) ? a1 - f1 * (a1 - a0) / (f1 - f0) : 0.5 * (a0 + a1);
        if (!(a2 > lo - 1.0 && a2 < hi + 1.0)) a2 = 0.5 * (a0 + a1);
        double f2 = eval(a2) - target;
        a0 = a1;
        f0 = f1;
        a1 = a2;
        f1 = f2;
        if (std::fabs(f2) < residual) {
            residual = std::fabs(f2);
            alpha_c = a2;
        }
    }
    if (residual > 1e-6)
        throw Error(ErrorCode::NoConvergence,
                    "could not reduce growth-rate residual below 1e-6");

    CriticalResult res;
    res.alpha_c = alpha_c;
    res.r_residual = residual;
    res.quad_nodes = opts.quad_nodes;
    res.truncation = trunc_used;
    res.iterations = evals;
    return res;
}

std::vector<ModelCurveRow> model_curve(std::size_t d, const std::vector<double>& lambda_grid,
                                       double tol, const GrowthRateOptions& opts,
                                       std::size_t workers) {
    const double edge = 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
    for (double lam : lambda_grid)
        if (std::fabs(lam) >= edge)
            throw Error(ErrorCode::DomainError,
                        "model_curve grid must lie strictly inside the spectrum");
    std::vector<ModelCurveRow> rows(lambda_grid.size());
    parallel_tasks(lambda_grid.size(), workers, [&](std::size_t i) {
        WaveModel model(lambda_grid[i], d);
        CriticalResult res = critical_alpha(model, tol, opts);
        rows[i] = {lambda_grid[i], res.alpha_c, res.r_residual};
    });
    return rows;
}

} // namespace regperc
