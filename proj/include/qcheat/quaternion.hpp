#pragma once

#include <array>

namespace qcheat {

// Quaternion w + x i + y j + z k.
struct Quat {
    double w = 0, x = 0, y = 0, z = 0;

    double operator[](int c) const { return c == 0 ? w : c == 1 ? x : c == 2 ? y : z; }
};

Quat operator*(const Quat& p, const Quat& q);
Quat operator+(const Quat& p, const Quat& q);
Quat conj(const Quat& q);

// Basis unit e_c, c in 0..3 (1, i, j, k).
Quat unit(int c);

// Imaginary components s = 0..2 of conj(e_b) * e_a for basis units; values in {-1,0,1}.
int im_conj_product(int b, int a, int s);

}  // namespace qcheat
