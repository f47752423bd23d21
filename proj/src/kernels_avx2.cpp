#include "regperc/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define REGPERC_HAVE_AVX2_BUILD 1
#include <immintrin.h>
#else
#define REGPERC_HAVE_AVX2_BUILD 0
#endif

#include <cmath>

namespace regperc::kern {

#if REGPERC_HAVE_AVX2_BUILD
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double acc = hsum(_mm256_add_pd(acc0, acc1));
    for (; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_avx2(const double* a, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(a + i));
    double s = hsum(acc);
    for (; i < n; ++i) s += a[i];
    return s;
}

double max_abs_avx2(const double* a, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        m = _mm256_max_pd(m, _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(a + i)));
    __m128d lo = _mm256_castpd256_pd128(m);
    __m128d hi = _mm256_extractf128_pd(m, 1);
    lo = _mm_max_pd(lo, hi);
    double r = _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
    for (; i < n; ++i) r = std::max(r, std::fabs(a[i]));
    return r;
}

void scale_avx2(double* a, std::size_t n, double s) {
    const __m256d vs = _mm256_set1_pd(s);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(a + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), vs));
    for (; i < n; ++i) a[i] *= s;
}

std::size_t count_above_avx2(const double* a, std::size_t n, double alpha) {
    const __m256d va = _mm256_set1_pd(alpha);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d cmp = _mm256_cmp_pd(_mm256_loadu_pd(a + i), va, _CMP_GT_OQ);
        c += static_cast<std::size_t>(__builtin_popcount(
            static_cast<unsigned>(_mm256_movemask_pd(cmp))));
    }
    for (; i < n; ++i) c += (a[i] > alpha) ? 1 : 0;
    return c;
}

const KernelTable avx2_impl{"avx2",     dot_avx2,   sum_avx2,
                            max_abs_avx2, scale_avx2, count_above_avx2};

} // namespace

const KernelTable* avx2_table() {
    return __builtin_cpu_supports("avx2") ? &avx2_impl : nullptr;
}

#else

const KernelTable* avx2_table() { return nullptr; }

#endif

} // namespace regperc::kern
