#include "qcheat/kernels/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace qcheat {

namespace {

constexpr int kMaxSources = 64;

inline int add_mod(int i, int s, int m) {
    int r = i + s;
    return r >= m ? r - m : r;
}

inline const double* line_of(const double* slab, const Shift3& s, int i, int j, int m) {
    return slab + (static_cast<std::size_t>(add_mod(i, s.s[0], m)) * m + add_mod(j, s.s[1], m)) * m;
}

// Splits [0, m) at every point where one of the shifted reads wraps.
int segment_bounds(const int* kshift, int count, int m, int* bounds) {
    int nb = 0;
    bounds[nb++] = 0;
    for (int r = 0; r < count; ++r)
        if (kshift[r] > 0) bounds[nb++] = m - kshift[r];
    bounds[nb++] = m;
    std::sort(bounds, bounds + nb);
    return static_cast<int>(std::unique(bounds, bounds + nb) - bounds);
}

inline int offset_at(int k0, int s, int m) { return k0 + s >= m ? s - m : s; }

void shift_diff(double* out, const double* p, Shift3 sp, const double* q, Shift3 sq, int m, double scale) {
    const int ks[2] = {sp.s[2], sq.s[2]};
    int bounds[4];
    const int nb = segment_bounds(ks, 2, m, bounds);
    const __m256d vs = _mm256_set1_pd(scale);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double* pl = line_of(p, sp, i, j, m);
            const double* ql = line_of(q, sq, i, j, m);
            double* ol = out + (static_cast<std::size_t>(i) * m + j) * m;
            for (int g = 0; g + 1 < nb; ++g) {
                const int k0 = bounds[g], k1 = bounds[g + 1];
                const double* pa = pl + offset_at(k0, ks[0], m);
                const double* qa = ql + offset_at(k0, ks[1], m);
                int k = k0;
                for (; k + 4 <= k1; k += 4) {
                    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(pa + k), _mm256_loadu_pd(qa + k));
                    _mm256_storeu_pd(ol + k, _mm256_mul_pd(vs, d));
                }
                for (; k < k1; ++k) ol[k] = scale * (pa[k] - qa[k]);
            }
        }
}

void neighbor_sum(double* out, const double* c, const NeighborRef* nb, int count, int m, double keep, double scale) {
    if (count > kMaxSources) {
        scalar_kernels().neighbor_sum(out, c, nb, count, m, keep, scale);
        return;
    }
    int ks[kMaxSources];
    for (int r = 0; r < count; ++r) ks[r] = nb[r].shift.s[2];
    int bounds[kMaxSources + 2];
    const int nbnd = segment_bounds(ks, count, m, bounds);
    const double* lines[kMaxSources];
    const __m256d vkeep = _mm256_set1_pd(keep), vscale = _mm256_set1_pd(scale);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const std::size_t base = (static_cast<std::size_t>(i) * m + j) * m;
            const double* cl = c + base;
            double* ol = out + base;
            for (int g = 0; g + 1 < nbnd; ++g) {
                const int k0 = bounds[g], k1 = bounds[g + 1];
                for (int r = 0; r < count; ++r)
                    lines[r] = line_of(nb[r].slab, nb[r].shift, i, j, m) + offset_at(k0, ks[r], m);
                int k = k0;
                for (; k + 4 <= k1; k += 4) {
                    const __m256d cv = _mm256_loadu_pd(cl + k);
                    __m256d acc = _mm256_setzero_pd();
                    for (int r = 0; r < count; ++r) acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_loadu_pd(lines[r] + k), cv));
                    _mm256_storeu_pd(ol + k, _mm256_add_pd(_mm256_mul_pd(vkeep, cv), _mm256_mul_pd(vscale, acc)));
                }
                for (; k < k1; ++k) {
                    const double cv = cl[k];
                    double acc = 0.0;
                    for (int r = 0; r < count; ++r) acc += lines[r][k] - cv;
                    ol[k] = keep * cv + scale * acc;
                }
            }
        }
}

inline void neumaier(double& s, double& c, double v) {
    const double t = s + v;
    if (std::abs(s) >= std::abs(v))
        c += (s - t) + v;
    else
        c += (v - t) + s;
    s = t;
}

inline void neumaier4(__m256d& s, __m256d& c, __m256d v) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    const __m256d t = _mm256_add_pd(s, v);
    const __m256d big_s = _mm256_cmp_pd(_mm256_and_pd(s, absmask), _mm256_and_pd(v, absmask), _CMP_GE_OQ);
    const __m256d a = _mm256_add_pd(_mm256_sub_pd(s, t), v);
    const __m256d b = _mm256_add_pd(_mm256_sub_pd(v, t), s);
    c = _mm256_add_pd(c, _mm256_blendv_pd(b, a, big_s));
    s = t;
}

double finish(__m256d vs, __m256d vc, double s, double c) {
    alignas(32) double ls[4], lc[4];
    _mm256_store_pd(ls, vs);
    _mm256_store_pd(lc, vc);
    double rs = 0.0, rc = 0.0;
    for (int l = 0; l < 4; ++l) neumaier(rs, rc, ls[l]);
    neumaier(rs, rc, s);
    for (int l = 0; l < 4; ++l) rc += lc[l];
    rc += c;
    return rs + rc;
}

double sum(const double* x, std::size_t n) {
    __m256d vs = _mm256_setzero_pd(), vc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) neumaier4(vs, vc, _mm256_loadu_pd(x + i));
    double s = 0.0, c = 0.0;
    for (; i < n; ++i) neumaier(s, c, x[i]);
    return finish(vs, vc, s, c);
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d vs = _mm256_setzero_pd(), vc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) neumaier4(vs, vc, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    double s = 0.0, c = 0.0;
    for (; i < n; ++i) neumaier(s, c, x[i] * y[i]);
    return finish(vs, vc, s, c);
}

const KernelTable table{"avx2", shift_diff, neighbor_sum, sum, dot};

}  // namespace

const KernelTable& avx2_kernels() { return table; }

}  // namespace qcheat
