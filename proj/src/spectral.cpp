#include "regperc/spectral.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "regperc/errors.hpp"
#include "regperc/kernels.hpp"
#include "regperc/linalg.hpp"

namespace regperc {

SpectrumSupport spectrum_support(std::size_t d) {
    double edge = 2.0 * std::sqrt(static_cast<double>(d) - 1.0);
    return {-edge, edge};
}

std::vector<EigenPair> eigendecompose(const Graph& g, std::size_t cap) {
    if (g.n > cap)
        throw Error(ErrorCode::TooLarge,
                    "dense decomposition capped at n=" + std::to_string(cap));

    Mat a(g.n, g.n);
    for (std::uint32_t v = 0; v < g.n; ++v)
        for (std::uint32_t u : g.neighbors(v)) a(v, u) = 1.0;

    std::vector<double> w;
    Mat vecs;
    symmetric_eigen(a, w, vecs);

    const double root_n = std::sqrt(static_cast<double>(g.n));
    std::vector<EigenPair> pairs(g.n);
    std::vector<double> resid(g.n);
    for (std::size_t j = 0; j < g.n; ++j) {
        EigenPair& p = pairs[j];
        p.lambda = w[j];
        p.vector.resize(g.n);
        for (std::size_t i = 0; i < g.n; ++i) p.vector[i] = vecs(i, j);
        double norm2 = kern::dot(p.vector.data(), p.vector.data(), g.n);
        kern::scale(p.vector.data(), g.n, root_n / std::sqrt(norm2));
        for (std::uint32_t v = 0; v < g.n; ++v) {
            double acc = -p.lambda * p.vector[v];
            for (std::uint32_t u : g.neighbors(v)) acc += p.vector[u];
            resid[v] = acc;
        }
        p.residual = kern::max_abs(resid.data(), g.n);
    }
    return pairs;
}

double mckay_density(double lambda, std::size_t d) {
    if (d < 3)
        throw Error(ErrorCode::BadInput, "mckay_density requires d >= 3");
    const double dd = static_cast<double>(d);
    const double disc = 4.0 * (dd - 1.0) - lambda * lambda;
    if (disc <= 0.0) return 0.0;
    return dd / (2.0 * std::numbers::pi) * std::sqrt(disc) / (dd * dd - lambda * lambda);
}

double mixing_exponent(std::size_t d) {
    if (d < 3)
        throw Error(ErrorCode::BadInput, "mixing_exponent requires d >= 3");
    const double dd = static_cast<double>(d);
    return 1.0 - 2.0 * std::sqrt(dd - 1.0) / dd;
}

const EigenPair& nearest_eigenpair(const std::vector<EigenPair>& pairs, double target) {
    if (pairs.empty())
        throw Error(ErrorCode::EmptySpectrum, "no eigenpairs");
    const EigenPair* best = &pairs.front();
    for (const EigenPair& p : pairs) {
        double dp = std::fabs(p.lambda - target);
        double db = std::fabs(best->lambda - target);
        if (dp < db || (dp == db && p.lambda < best->lambda)) best = &p;
    }
    return *best;
}

} // namespace regperc
