#include <doctest.h>

#include <cmath>
#include <functional>

#include "regperc/errors.hpp"
#include "regperc/graph.hpp"
#include "regperc/rng.hpp"

using namespace regperc;

namespace {

void check_error(ErrorCode expected, const std::function<void()>& fn) {
    try {
        fn();
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.code() == expected);
    }
}

// 6-cycle, 2-regular
const char* kHexagonJson =
    R"({"n":6,"d":2,"seed":0,"edges":[[0,1],[0,5],[1,2],[2,3],[3,4],[4,5]]})";

} // namespace

TEST_CASE("generator rejects invalid parameters") {
    check_error(ErrorCode::OddProduct, [] { generate_regular(5, 3, 1); });
    check_error(ErrorCode::DegreeTooLarge, [] { generate_regular(4, 5, 1); });
    check_error(ErrorCode::DegreeTooLarge, [] { generate_regular(4, 4, 1); });
}

TEST_CASE("the only simple 3-regular graph on 4 vertices is K4") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
        Graph g = generate_regular(4, 3, seed);
        validate_graph(g);
        for (std::uint32_t v = 0; v < 4; ++v)
            for (std::uint32_t u = 0; u < 4; ++u)
                CHECK(g.adjacent(v, u) == (v != u));
    }
}

TEST_CASE("generated graphs satisfy all structural invariants") {
    for (auto [n, d] : {std::pair<std::size_t, std::size_t>{100, 3}, {100, 4}, {50, 5}}) {
        // d=5 whole-matching acceptance is ~exp(-6); give it headroom
        Graph g = generate_regular(n, d, 12345, 100000);
        validate_graph(g); // regularity, symmetry, simplicity, sorted lists
        CHECK(g.n == n);
        CHECK(g.d == d);
    }
}

TEST_CASE("generation is deterministic in the seed") {
    Graph a = generate_regular(200, 3, 777);
    Graph b = generate_regular(200, 3, 777);
    CHECK(a.targets == b.targets);
    CHECK(a.offsets == b.offsets);
    Graph c = generate_regular(200, 3, 778);
    CHECK(a.targets != c.targets);
}

TEST_CASE("cycle counts: small closed forms") {
    Graph k4 = generate_regular(4, 3, 1);
    auto counts = count_cycles(k4, 5);
    CHECK(counts[3] == 4); // C(4,3) triangles
    CHECK(counts[4] == 3);

    Graph hex = graph_from_json(kHexagonJson);
    auto hex_counts = count_cycles(hex, 5);
    CHECK(hex_counts[3] == 0);
    CHECK(hex_counts[4] == 0);
    CHECK(hex_counts[5] == 0);

    check_error(ErrorCode::KTooLarge, [&] { count_cycles(k4, 6); });
}

TEST_CASE("ensemble cycle law: Poisson mean and variance (d=3, k=3,4)") {
    const std::size_t trials = 200;
    double sum3 = 0, sum3_sq = 0, sum4 = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        Graph g = generate_regular(200, 3, mix_seed(5150, t));
        auto counts = count_cycles(g, 4);
        sum3 += static_cast<double>(counts[3]);
        sum3_sq += static_cast<double>(counts[3]) * static_cast<double>(counts[3]);
        sum4 += static_cast<double>(counts[4]);
    }
    const double mean3 = sum3 / trials;
    const double var3 = (sum3_sq - trials * mean3 * mean3) / (trials - 1);
    // C_3 ~ Poisson((d-1)^3/6) = Poisson(4/3): mean within 3 SE of 4/3
    const double se_mean = std::sqrt(4.0 / 3.0 / trials);
    CHECK(std::fabs(mean3 - 4.0 / 3.0) <= 3.0 * se_mean);
    // Poisson: variance equals the mean; SE of the sample variance uses the
    // Poisson fourth central moment lambda + 3 lambda^2
    const double lam = 4.0 / 3.0;
    const double se_var = std::sqrt((lam + 3.0 * lam * lam - lam * lam) / trials);
    CHECK(std::fabs(var3 - lam) <= 3.0 * se_var);
    // C_4 ~ Poisson((d-1)^4/8) = Poisson(2)
    CHECK(std::fabs(sum4 / trials - 2.0) <= 0.4);
}

TEST_CASE("diameter: exact small cases and the (1000,3) scaling law") {
    Graph k4 = generate_regular(4, 3, 1);
    CHECK(diameter(k4) == std::size_t{1});

    Graph hex = graph_from_json(kHexagonJson);
    CHECK(diameter(hex) == std::size_t{3});

    // diam ~ log_{d-1}(n ln n) + O(1)
    Graph g = generate_regular(1000, 3, 2024);
    auto diam = diameter(g);
    REQUIRE(diam.has_value());
    const double expected = std::log(1000.0 * std::log(1000.0)) / std::log(2.0);
    CHECK(std::fabs(static_cast<double>(*diam) - expected) <= 3.0);
}

TEST_CASE("disconnected graph reports no diameter") {
    // two disjoint triangles (2-regular)
    Graph g = graph_from_json(
        R"({"n":6,"d":2,"seed":0,"edges":[[0,1],[0,2],[1,2],[3,4],[3,5],[4,5]]})");
    CHECK(!diameter(g).has_value());
    CHECK(component_count(g) == 2);
    auto stats = compute_stats(g);
    CHECK(!stats.diameter.has_value());
    CHECK(stats.component_count == 2);
    CHECK(stats.cycle_counts[3] == 2);
}

TEST_CASE("graph json round-trips bit-exactly") {
    Graph g = generate_regular(50, 3, 31337);
    std::string text = graph_to_json(g);
    Graph loaded = graph_from_json(text);
    CHECK(graph_to_json(loaded) == text);
    CHECK(loaded.targets == g.targets);
    CHECK(loaded.seed == g.seed);

    Graph k4 = generate_regular(4, 3, 9);
    CHECK(graph_to_json(k4) ==
          R"({"n":4,"d":3,"seed":9,"edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]})");
}

TEST_CASE("rejection limit signals parameters outside desk scale") {
    check_error(ErrorCode::RejectionLimit, [] { generate_regular(40, 8, 3, 2); });
}
