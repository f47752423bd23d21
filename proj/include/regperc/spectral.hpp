#pragma once

#include <vector>

#include "regperc/graph.hpp"

namespace regperc {

// Eigenpair of the adjacency operator, with the vector renormalized so that
// sum_v f(v)^2 = n. residual is the max-norm of A f - lambda f.
struct EigenPair {
    double lambda = 0.0;
    std::vector<double> vector;
    double residual = 0.0;
};

struct SpectrumSupport {
    double lo = 0.0;
    double hi = 0.0;
};

// [-2 sqrt(d-1), 2 sqrt(d-1)]
SpectrumSupport spectrum_support(std::size_t d);

// All n eigenpairs, ascending by eigenvalue. Dense solve; n is capped.
std::vector<EigenPair> eigendecompose(const Graph& g, std::size_t cap = 4000);

// Kesten-McKay density; zero outside the support.
double mckay_density(double lambda, std::size_t d);

// Lyapunov exponent of random-walk mixing, 1 - 2 sqrt(d-1)/d.
double mixing_exponent(std::size_t d);

// Pair minimizing |lambda - target|; ties broken toward smaller lambda.
const EigenPair& nearest_eigenpair(const std::vector<EigenPair>& pairs, double target);

} // namespace regperc
