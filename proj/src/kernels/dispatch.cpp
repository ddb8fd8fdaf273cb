#include "qcheat/kernels/kernels.hpp"

#include <cstdlib>
#include <stdexcept>

namespace qcheat {

namespace {

bool cpu_has_avx2() {
#if defined(QCHEAT_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const KernelTable& select() {
    const char* env = std::getenv("QCHEAT_SIMD");
    if (env && *env) {
        const KernelTable* t = kernel_table(env);
        if (!t) throw std::runtime_error(std::string("QCHEAT_SIMD requests unavailable kernels: ") + env);
        return *t;
    }
#if defined(QCHEAT_HAVE_AVX2)
    if (cpu_has_avx2()) return avx2_kernels();
#endif
    return scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
    static const KernelTable& active = select();
    return active;
}

const KernelTable* kernel_table(const std::string& name) {
    if (name == "scalar") return &scalar_kernels();
#if defined(QCHEAT_HAVE_AVX2)
    if (name == "avx2" && cpu_has_avx2()) return &avx2_kernels();
#endif
    return nullptr;
}

std::vector<std::string> available_kernels() {
    std::vector<std::string> out{"scalar"};
    if (cpu_has_avx2()) out.push_back("avx2");
    return out;
}

}  // namespace qcheat
