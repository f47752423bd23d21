#pragma once

#include <cstddef>

// Hot arithmetic loops (power iteration, Monte Carlo transforms, residual
// norms) go through this table. A scalar reference implementation is always
// available; an AVX2 variant is selected at runtime when the CPU supports it.
// The two are equivalence-tested against each other.

namespace regperc::kern {

struct KernelTable {
    const char* name;
    double (*dot)(const double* a, const double* b, std::size_t n);
    double (*sum)(const double* a, std::size_t n);
    double (*max_abs)(const double* a, std::size_t n);
    void (*scale)(double* a, std::size_t n, double s);
    // number of entries strictly greater than alpha
    std::size_t (*count_above)(const double* a, std::size_t n, double alpha);
};

const KernelTable& scalar_table();
const KernelTable* avx2_table(); // nullptr when unsupported at runtime

// Active table: AVX2 when available, scalar otherwise.
const KernelTable& active();

// Test hook: force the scalar path (returns previous setting).
bool force_scalar(bool on);

inline double dot(const double* a, const double* b, std::size_t n) {
    return active().dot(a, b, n);
}
inline double sum(const double* a, std::size_t n) { return active().sum(a, n); }
inline double max_abs(const double* a, std::size_t n) {
    return active().max_abs(a, n);
}
inline void scale(double* a, std::size_t n, double s) { active().scale(a, n, s); }
inline std::size_t count_above(const double* a, std::size_t n, double alpha) {
    return active().count_above(a, n, alpha);
}

} // namespace regperc::kern
