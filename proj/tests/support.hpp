#pragma once

#include "qcheat/heisenberg_model.hpp"
#include "qcheat/invariant_algebra.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace qtest {

using namespace qcheat;

// Samples a function of the horizontal coordinates only.
inline ScalarField sample_x(GridPtr g, const std::function<double(const std::vector<double>&)>& fn) {
    ScalarField f(g, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = fn(g->point(i).x);
    return f;
}

inline ScalarField random_field(GridPtr g, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    ScalarField f(g, 0.0);
    for (double& v : f.values) v = u(rng);
    return f;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

inline double max_diff(const ScalarField& a, const ScalarField& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

// Plain periodic arrays on the Euclidean torus (Z/m)^d with centred differences.
struct Torus {
    int d, m;
    double h;
    std::size_t size() const {
        std::size_t s = 1;
        for (int i = 0; i < d; ++i) s *= m;
        return s;
    }
    std::size_t stride(int a) const {
        std::size_t s = 1;
        for (int i = d - 1; i > a; --i) s *= m;
        return s;
    }
    std::vector<double> D(const std::vector<double>& f, int a) const {
        std::vector<double> out(f.size());
        const std::size_t st = stride(a);
        for (std::size_t i = 0; i < f.size(); ++i) {
            const int c = static_cast<int>((i / st) % m);
            const std::size_t base = i - c * st;
            out[i] = (f[base + ((c + 1) % m) * st] - f[base + ((c + m - 1) % m) * st]) / (2.0 * h);
        }
        return out;
    }
    std::vector<double> sample(const std::function<double(const std::vector<double>&)>& fn) const {
        std::vector<double> out(size());
        std::vector<double> x(d);
        for (std::size_t i = 0; i < out.size(); ++i) {
            for (int a = 0; a < d; ++a) x[a] = static_cast<double>((i / stride(a)) % m) * h;
            out[i] = fn(x);
        }
        return out;
    }
    // Value of a 7-d field at the torus point i (any vertical index; the field is x-only).
    std::size_t lift(const LatticeGrid& g, std::size_t i) const { return i * g.slab_size(); }
};

inline double trig_x(const std::vector<double>& x) {
    const double tau = 2.0 * M_PI;
    return 1.0 + 0.3 * std::sin(tau * x[0]) * std::cos(tau * x[1]) + 0.2 * std::cos(tau * (x[2] - x[3])) +
           0.1 * std::sin(tau * (x[0] + x[2]));
}

}  // namespace qtest
