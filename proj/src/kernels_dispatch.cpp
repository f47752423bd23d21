#include "regperc/kernels.hpp"

namespace regperc::kern {
namespace {
bool g_force_scalar = false;
} // namespace

const KernelTable& active() {
    if (g_force_scalar) return scalar_table();
    const KernelTable* simd = avx2_table();
    return simd ? *simd : scalar_table();
}

bool force_scalar(bool on) {
    bool prev = g_force_scalar;
    g_force_scalar = on;
    return prev;
}

} // namespace regperc::kern
