#pragma once

#include "qcheat/heisenberg_model.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace qcheat {

// Source slab paired with the cyclic vertical shift at which it is read.
struct NeighborRef {
    const double* slab;
    Shift3 shift;
};

// All slab kernels work on an m^3 cyclic block; reading "src at j + shift" wraps per axis.
struct KernelTable {
    const char* name;
    // out[j] = scale * (p[j + sp] - q[j + sq])
    void (*shift_diff)(double* out, const double* p, Shift3 sp, const double* q, Shift3 sq, int m, double scale);
    // out[j] = keep * c[j] + scale * sum_k (nb_k[j + s_k] - c[j]), summed in k order
    void (*neighbor_sum)(double* out, const double* c, const NeighborRef* nb, int count, int m, double keep,
                         double scale);
    // Compensated (Neumaier) reductions.
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_kernels();
#if defined(QCHEAT_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

// Active table: best supported ISA, overridable with QCHEAT_SIMD=scalar|avx2.
const KernelTable& kernels();
// nullptr if the named table is not built or not supported by this CPU.
const KernelTable* kernel_table(const std::string& name);
std::vector<std::string> available_kernels();

}  // namespace qcheat
