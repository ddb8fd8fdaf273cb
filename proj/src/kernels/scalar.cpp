#include "qcheat/kernels/kernels.hpp"

#include <cmath>

namespace qcheat {

namespace {

inline std::size_t at(int i, int j, int k, int m) { return (static_cast<std::size_t>(i) * m + j) * m + k; }

inline int add_mod(int i, int s, int m) {
    int r = i + s;
    return r >= m ? r - m : r;
}

void shift_diff(double* out, const double* p, Shift3 sp, const double* q, Shift3 sq, int m, double scale) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double a = p[at(add_mod(i, sp.s[0], m), add_mod(j, sp.s[1], m), add_mod(k, sp.s[2], m), m)];
                const double b = q[at(add_mod(i, sq.s[0], m), add_mod(j, sq.s[1], m), add_mod(k, sq.s[2], m), m)];
                out[at(i, j, k, m)] = scale * (a - b);
            }
}

void neighbor_sum(double* out, const double* c, const NeighborRef* nb, int count, int m, double keep, double scale) {
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const double cv = c[at(i, j, k, m)];
                double acc = 0.0;
                for (int r = 0; r < count; ++r) {
                    const Shift3& s = nb[r].shift;
                    acc += nb[r].slab[at(add_mod(i, s.s[0], m), add_mod(j, s.s[1], m), add_mod(k, s.s[2], m), m)] - cv;
                }
                out[at(i, j, k, m)] = keep * cv + scale * acc;
            }
}

double sum(const double* x, std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i];
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    return s + c;
}

double dot(const double* x, const double* y, std::size_t n) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = x[i] * y[i];
        const double t = s + v;
        if (std::abs(s) >= std::abs(v))
            c += (s - t) + v;
        else
            c += (v - t) + s;
        s = t;
    }
    return s + c;
}

const KernelTable table{"scalar", shift_diff, neighbor_sum, sum, dot};

}  // namespace

const KernelTable& scalar_kernels() { return table; }

}  // namespace qcheat
