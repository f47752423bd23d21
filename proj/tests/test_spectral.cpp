#include <doctest.h>

#include <cmath>

#include "regperc/errors.hpp"
#include "regperc/spectral.hpp"

#include "oracles.hpp"

using namespace regperc;

TEST_CASE("K4 spectrum is {-1,-1,-1,3}") {
    Graph k4 = generate_regular(4, 3, 1);
    auto pairs = eigendecompose(k4);
    REQUIRE(pairs.size() == 4);
    for (int i = 0; i < 3; ++i) CHECK(pairs[i].lambda == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(pairs[3].lambda == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigenpairs: normalization, residual, trace identities") {
    Graph g = generate_regular(100, 3, 202);
    auto pairs = eigendecompose(g);
    REQUIRE(pairs.size() == g.n);

    double trace = 0, trace2 = 0;
    for (std::size_t i = 0; i + 1 < pairs.size(); ++i)
        CHECK(pairs[i].lambda <= pairs[i + 1].lambda); // ascending

    for (const auto& p : pairs) {
        double sq = 0;
        for (double v : p.vector) sq += v * v;
        CHECK(sq == doctest::Approx(static_cast<double>(g.n)).epsilon(1e-10));
        CHECK(p.residual <= 1e-8);
        trace += p.lambda;
        trace2 += p.lambda * p.lambda;
    }
    CHECK(std::fabs(trace) <= 1e-6);
    // trace of A^2 equals n*d
    CHECK(std::fabs(trace2 - static_cast<double>(g.n * g.d)) <= 1e-6 * g.n * g.d);
    // top eigenpair of a connected regular graph: lambda=d, flat vector
    CHECK(pairs.back().lambda == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("eigendecompose rejects graphs over the dense cap") {
    Graph g = generate_regular(100, 3, 7);
    try {
        eigendecompose(g, 50);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
}

TEST_CASE("spectral density: closed point value and unit mass") {
    CHECK(mckay_density(0.0, 3) ==
          doctest::Approx(std::sqrt(2.0) / (3.0 * M_PI)).epsilon(1e-12));
    CHECK(mckay_density(0.0, 3) == doctest::Approx(0.150053).epsilon(1e-4));

    for (std::size_t d : {3ul, 5ul, 12ul}) {
        auto sup = spectrum_support(d);
        CHECK(sup.hi == doctest::Approx(2.0 * std::sqrt(d - 1.0)).epsilon(1e-15));
        CHECK(sup.lo == -sup.hi);
        double mass = oracles::integrate([d](double x) { return mckay_density(x, d); },
                                         sup.lo, sup.hi, 1e-10);
        CHECK(std::fabs(mass - 1.0) <= 1e-6);
        // zero outside the support
        CHECK(mckay_density(sup.hi + 1e-9, d) == 0.0);
        CHECK(mckay_density(sup.lo - 1e-9, d) == 0.0);
    }
}

TEST_CASE("mixing exponent value and monotonicity") {
    CHECK(mixing_exponent(3) == doctest::Approx(1.0 - 2.0 * std::sqrt(2.0) / 3.0).epsilon(1e-15));
    CHECK(mixing_exponent(3) == doctest::Approx(0.057191).epsilon(1e-4));
    for (std::size_t d = 3; d < 40; ++d)
        CHECK(mixing_exponent(d + 1) > mixing_exponent(d));
}

TEST_CASE("nearest eigenpair selection and ties") {
    Graph k4 = generate_regular(4, 3, 1);
    auto pairs = eigendecompose(k4);
    CHECK(nearest_eigenpair(pairs, 0.0).lambda == doctest::Approx(-1.0));
    CHECK(nearest_eigenpair(pairs, -50.0).lambda == doctest::Approx(-1.0));
    CHECK(nearest_eigenpair(pairs, 50.0).lambda == doctest::Approx(3.0));
    // equidistant between -1 and 3: tie goes to the smaller eigenvalue
    CHECK(nearest_eigenpair(pairs, 1.0).lambda == doctest::Approx(-1.0));

    try {
        nearest_eigenpair({}, 0.0);
        FAIL("expected EmptySpectrum");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptySpectrum);
    }
}
