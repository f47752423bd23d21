#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "regperc/kernels.hpp"
#include "regperc/rng.hpp"

using namespace regperc;

TEST_CASE("simd and scalar kernels agree") {
    const kern::KernelTable& scalar = kern::scalar_table();
    const kern::KernelTable* simd = kern::avx2_table();
    if (!simd) {
        MESSAGE("avx2 not available; dispatch falls back to scalar");
        CHECK(std::string(kern::active().name) == "scalar");
        return;
    }

    Rng rng(42);
    for (std::size_t n : {0ul, 1ul, 3ul, 4ul, 7ul, 8ul, 17ul, 64ul, 1001ul}) {
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) {
            a[i] = rng.next_normal();
            b[i] = rng.next_normal();
        }
        double ds = scalar.dot(a.data(), b.data(), n);
        double dv = simd->dot(a.data(), b.data(), n);
        CHECK(std::fabs(ds - dv) <= 1e-12 * (1.0 + std::fabs(ds)));

        CHECK(std::fabs(scalar.sum(a.data(), n) - simd->sum(a.data(), n)) <=
              1e-12 * (1.0 + std::fabs(scalar.sum(a.data(), n))));
        CHECK(scalar.max_abs(a.data(), n) == simd->max_abs(a.data(), n));
        CHECK(scalar.count_above(a.data(), n, 0.25) == simd->count_above(a.data(), n, 0.25));

        std::vector<double> c1 = a, c2 = a;
        scalar.scale(c1.data(), n, 1.7);
        simd->scale(c2.data(), n, 1.7);
        CHECK(c1 == c2);
    }
}

TEST_CASE("force_scalar toggles the active table") {
    bool prev = kern::force_scalar(true);
    CHECK(std::string(kern::active().name) == "scalar");
    kern::force_scalar(prev);
}
