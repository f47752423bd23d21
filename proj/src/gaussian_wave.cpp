#include "regperc/gaussian_wave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "regperc/errors.hpp"
#include "regperc/kernels.hpp"
#include "regperc/pool.hpp"
#include "regperc/rng.hpp"

namespace regperc {

WaveModel::WaveModel(double lambda_, std::size_t d_) : lambda(lambda_), d(d_) {
    if (d < 3)
        throw Error(ErrorCode::BadInput, "wave model requires d >= 3");
    const double edge = 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
    if (std::fabs(lambda) > edge * (1.0 + 1e-12))
        throw Error(ErrorCode::DomainError,
                    "lambda outside the tree spectrum [-2 sqrt(d-1), 2 sqrt(d-1)]");
}

double chebyshev_u(int k, double x) {
    if (k < -2)
        throw Error(ErrorCode::BadInput, "chebyshev_u requires k >= -2");
    if (std::fabs(x) > 1.0 + 1e-12)
        throw Error(ErrorCode::DomainError, "chebyshev_u argument outside [-1, 1]");
    x = std::clamp(x, -1.0, 1.0);
    if (k == -2) return -1.0;
    if (k == -1) return 0.0;
    double prev = 0.0; // U_{-1}
    double cur = 1.0;  // U_0
    for (int j = 1; j <= k; ++j) {
        double next = 2.0 * x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double phi(const WaveModel& model, int k) {
    if (k < 0)
        throw Error(ErrorCode::BadInput, "phi requires k >= 0");
    const double dd = static_cast<double>(model.d);
    const double x = model.lambda / (2.0 * std::sqrt(dd - 1.0));
    return std::pow(dd - 1.0, -0.5 * static_cast<double>(k)) *
           ((dd - 1.0) / dd * chebyshev_u(k, x) - chebyshev_u(k - 2, x) / dd);
}

TreeBall make_tree_ball(std::size_t d, std::size_t radius) {
    TreeBall ball;
    ball.d = d;
    ball.radius = radius;
    ball.parent.push_back(-1);
    ball.depth.push_back(0);
    std::size_t level_begin = 0, level_end = 1;
    for (std::size_t r = 1; r <= radius; ++r) {
        for (std::size_t v = level_begin; v < level_end; ++v) {
            // root spawns d children, everyone else d-1
            std::size_t c = (ball.depth[v] == 0) ? d : d - 1;
            for (std::size_t j = 0; j < c; ++j) {
                ball.parent.push_back(static_cast<std::int32_t>(v));
                ball.depth.push_back(static_cast<std::int32_t>(r));
            }
        }
        level_begin = level_end;
        level_end = ball.parent.size();
    }
    return ball;
}

std::size_t TreeBall::distance(std::size_t a, std::size_t b) const {
    auto ia = static_cast<std::int32_t>(a);
    auto ib = static_cast<std::int32_t>(b);
    std::size_t dist = 0;
    while (depth[ia] > depth[ib]) {
        ia = parent[ia];
        ++dist;
    }
    while (depth[ib] > depth[ia]) {
        ib = parent[ib];
        ++dist;
    }
    while (ia != ib) {
        ia = parent[ia];
        ib = parent[ib];
        dist += 2;
    }
    return dist;
}

Mat ball_distances(const TreeBall& ball) {
    const std::size_t m = ball.size();
    Mat dist(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            dist(i, j) = dist(j, i) = static_cast<double>(ball.distance(i, j));
    return dist;
}

Mat covariance_matrix(const WaveModel& model, const Mat& pairwise_distances) {
    const std::size_t m = pairwise_distances.rows;
    // distances on a ball are small integers; memoize phi per distance
    std::vector<double> cache;
    Mat cov(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        cov(i, i) = 1.0;
        for (std::size_t j = i + 1; j < m; ++j) {
            auto k = static_cast<std::size_t>(pairwise_distances(i, j) + 0.5);
            while (cache.size() <= k) cache.push_back(phi(model, static_cast<int>(cache.size())));
            cov(i, j) = cov(j, i) = cache[k];
        }
    }
    return cov;
}

WaveSampleBatch sample_ball(const WaveModel& model, std::size_t radius,
                            std::size_t count, std::uint64_t seed) {
    TreeBall ball = make_tree_ball(model.d, radius);
    const std::size_t m = ball.size();
    if (m > 20000)
        throw Error(ErrorCode::TooLarge, "tree ball has too many vertices (" +
                                             std::to_string(m) + ")");

    Mat cov = covariance_matrix(model, ball_distances(ball));
    PivotedCholesky fac = pivoted_cholesky(cov, 1e-10);

    WaveSampleBatch batch;
    batch.lambda = model.lambda;
    batch.d = model.d;
    batch.seed = seed;
    batch.values = Mat(count, m);

    parallel_tasks(count, 0, [&](std::size_t s) {
        Rng rng(mix_seed(seed, s));
        std::vector<double> z(fac.rank);
        for (double& zi : z) zi = rng.next_normal();
        double* row = batch.values.row(s);
        for (std::size_t i = 0; i < m; ++i)
            row[static_cast<std::size_t>(fac.perm[i])] =
                kern::dot(fac.L.row(i), z.data(), std::min(i + 1, fac.rank));
    });
    batch.ball = std::move(ball);
    return batch;
}

double phi_total(const WaveModel& model) {
    const double dd = static_cast<double>(model.d);
    const double decay = 1.0 / std::sqrt(dd - 1.0);
    double total = phi(model, 0);
    double envelope = 1.0 + 1.0 / (dd - 1.0);
    for (int k = 1;; ++k) {
        double bound = (k + 1) * std::pow(decay, k) * envelope;
        if (bound < 1e-14) {
            total += bound;
            break;
        }
        total += 2.0 * std::fabs(phi(model, k));
    }
    return total;
}

double subcritical_bound(const WaveModel& model) {
    return std::sqrt(2.0 * phi_total(model) * std::log(static_cast<double>(model.d) - 1.0));
}

double gaussian_tail(double alpha) {
    return 0.5 * std::erfc(alpha / std::sqrt(2.0));
}

double supercritical_bound(std::size_t d) {
    if (d < 3)
        throw Error(ErrorCode::BadInput, "supercritical_bound requires d >= 3");
    const double target = static_cast<double>(d) / (2.0 * (static_cast<double>(d) - 1.0));
    double lo = -10.0, hi = 0.0; // Q(lo) ~ 1 > target >= 1/2 = Q(hi)
    while (hi - lo > 1e-10) {
        double mid = 0.5 * (lo + hi);
        if (gaussian_tail(mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace regperc
