#include "regperc/kernels.hpp"

#include <cmath>

namespace regperc::kern {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

double sum_scalar(const double* a, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i];
    return acc;
}

double max_abs_scalar(const double* a, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i]));
    return m;
}

void scale_scalar(double* a, std::size_t n, double s) {
    for (std::size_t i = 0; i < n; ++i) a[i] *= s;
}

std::size_t count_above_scalar(const double* a, std::size_t n, double alpha) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) c += (a[i] > alpha) ? 1 : 0;
    return c;
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable t{"scalar",    dot_scalar,   sum_scalar,
                               max_abs_scalar, scale_scalar, count_above_scalar};
    return t;
}

} // namespace regperc::kern
