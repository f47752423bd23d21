#pragma once

#include <cstdint>
#include <vector>

#include "regperc/linalg.hpp"

namespace regperc {

// The Gaussian wave ensemble on the d-regular tree is parameterized by the
// spectral point lambda inside [-2 sqrt(d-1), 2 sqrt(d-1)] and the degree.
struct WaveModel {
    double lambda = 0.0;
    std::size_t d = 3;

    WaveModel(double lambda_, std::size_t d_);
};

// Chebyshev polynomial of the second kind, by the three-term recurrence
// (exact at the band edges, unlike the sin/arccos form). k >= -2.
double chebyshev_u(int k, double x);

// Covariance of the wave process at tree distance k.
double phi(const WaveModel& model, int k);

// Rooted ball of radius r in the d-regular tree; vertices in creation
// (breadth-first) order.
struct TreeBall {
    std::size_t d = 3;
    std::size_t radius = 0;
    std::vector<std::int32_t> parent; // -1 for the root
    std::vector<std::int32_t> depth;

    std::size_t size() const { return parent.size(); }
    std::size_t distance(std::size_t a, std::size_t b) const;
};

TreeBall make_tree_ball(std::size_t d, std::size_t radius);

// Entry (i,j) = phi(model, distances(i,j)); unit diagonal.
Mat covariance_matrix(const WaveModel& model, const Mat& pairwise_distances);

Mat ball_distances(const TreeBall& ball);

struct WaveSampleBatch {
    TreeBall ball;
    Mat values; // count x ball.size()
    double lambda = 0.0;
    std::size_t d = 3;
    std::uint64_t seed = 0;
};

// Exact joint sampling on the ball via pivoted Cholesky of the covariance
// (tolerance 1e-10; the matrix is genuinely rank-deficient because interior
// vertices satisfy the eigenfunction identity).
WaveSampleBatch sample_ball(const WaveModel& model, std::size_t radius,
                            std::size_t count, std::uint64_t seed);

// Phi = phi(0) + 2 sum_{j>=1} |phi(j)|, with a geometric tail bound.
double phi_total(const WaveModel& model);

// Level sets are subcritical above sqrt(2 Phi ln(d-1)).
double subcritical_bound(const WaveModel& model);

// Level sets are supercritical below the alpha solving Q(alpha) = d/(2(d-1)).
double supercritical_bound(std::size_t d);

// Standard normal upper tail Q(alpha).
double gaussian_tail(double alpha);

} // namespace regperc
