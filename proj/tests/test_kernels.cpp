#include "qcheat/kernels/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <vector>

using namespace qcheat;

namespace {

std::vector<double> random_block(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng);
    return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("kernel selection") {
    CHECK(kernel_table("scalar") != nullptr);
    CHECK(kernel_table("nonsense") == nullptr);
    CHECK(kernel_table(kernels().name) == &kernels());
    bool has_scalar = false;
    for (const auto& k : available_kernels()) has_scalar = has_scalar || k == "scalar";
    CHECK(has_scalar);
}

TEST_CASE("simd kernels match the scalar reference bit for bit") {
    const KernelTable* simd = kernel_table("avx2");
    if (!simd) {
        MESSAGE("avx2 kernels unavailable on this build or CPU; skipped");
        return;
    }
    const KernelTable& ref = scalar_kernels();
    std::mt19937_64 rng(11);
    const Shift3 shifts[] = {{{0, 0, 0}}, {{1, 0, 0}}, {{0, 2, 0}}, {{0, 0, 3}}, {{4, 1, 7}}, {{2, 3, 1}}};
    for (int m : {3, 5, 8}) {
        const std::size_t sz = static_cast<std::size_t>(m) * m * m;
        const auto p = random_block(rng, sz), q = random_block(rng, sz), c = random_block(rng, sz);
        for (const Shift3& sp0 : shifts)
            for (const Shift3& sq0 : shifts) {
                Shift3 sp = sp0, sq = sq0;
                for (int k = 0; k < 3; ++k) {
                    sp.s[k] %= m;
                    sq.s[k] %= m;
                }
                std::vector<double> a(sz), b(sz);
                ref.shift_diff(a.data(), p.data(), sp, q.data(), sq, m, 0.37);
                simd->shift_diff(b.data(), p.data(), sp, q.data(), sq, m, 0.37);
                CHECK(same_bits(a, b));
            }
        for (int count : {8, 16}) {
            std::vector<std::vector<double>> blocks;
            std::vector<NeighborRef> nb;
            for (int k = 0; k < count; ++k) blocks.push_back(random_block(rng, sz));
            for (int k = 0; k < count; ++k) {
                Shift3 s = shifts[k % 6];
                for (int& v : s.s) v %= m;
                nb.push_back({blocks[k].data(), s});
            }
            std::vector<double> a(sz), b(sz);
            ref.neighbor_sum(a.data(), c.data(), nb.data(), count, m, 1.0, -0.125);
            simd->neighbor_sum(b.data(), c.data(), nb.data(), count, m, 1.0, -0.125);
            CHECK(same_bits(a, b));
            ref.neighbor_sum(a.data(), c.data(), nb.data(), count, m, 0.0, 2.5);
            simd->neighbor_sum(b.data(), c.data(), nb.data(), count, m, 0.0, 2.5);
            CHECK(same_bits(a, b));
        }
    }
    for (std::size_t n : {std::size_t(1), std::size_t(7), std::size_t(1000), std::size_t(4099)}) {
        const auto x = random_block(rng, n), y = random_block(rng, n);
        double abs_sum = 0.0, abs_dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            abs_sum += std::abs(x[i]);
            abs_dot += std::abs(x[i] * y[i]);
        }
        CHECK(std::abs(ref.sum(x.data(), n) - simd->sum(x.data(), n)) <= 1e-14 * abs_sum);
        CHECK(std::abs(ref.dot(x.data(), y.data(), n) - simd->dot(x.data(), y.data(), n)) <= 1e-14 * abs_dot);
    }
}

TEST_CASE("compensated sum recovers cancelling terms") {
    const std::vector<double> x = {1e16, 1.0, -1e16, 1.0};
    CHECK(scalar_kernels().sum(x.data(), x.size()) == 2.0);
    const std::vector<double> y(4, 1.0);
    CHECK(scalar_kernels().dot(x.data(), y.data(), x.size()) == 2.0);
}

TEST_CASE("shift_diff semantics") {
    const int m = 3;
    std::vector<double> p(27), q(27, 0.0), out(27);
    for (int i = 0; i < 27; ++i) p[i] = i;
    scalar_kernels().shift_diff(out.data(), p.data(), Shift3{{1, 0, 0}}, q.data(), Shift3{}, m, 1.0);
    // j = (0,0,0) reads p at (1,0,0) -> flat 9; j = (2,0,0) wraps to (0,0,0).
    CHECK(out[0] == 9.0);
    CHECK(out[18] == 0.0);
    scalar_kernels().shift_diff(out.data(), p.data(), Shift3{{0, 0, 2}}, q.data(), Shift3{}, m, 1.0);
    CHECK(out[0] == 2.0);
    CHECK(out[1] == 0.0);
}
