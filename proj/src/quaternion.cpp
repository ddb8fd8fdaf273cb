#include "qcheat/quaternion.hpp"

#include <stdexcept>

namespace qcheat {

Quat operator*(const Quat& p, const Quat& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

Quat operator+(const Quat& p, const Quat& q) { return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z}; }

Quat conj(const Quat& q) { return {q.w, -q.x, -q.y, -q.z}; }

Quat unit(int c) {
    switch (c) {
        case 0: return {1, 0, 0, 0};
        case 1: return {0, 1, 0, 0};
        case 2: return {0, 0, 1, 0};
        case 3: return {0, 0, 0, 1};
    }
    throw std::out_of_range("quaternion unit index must be 0..3");
}

int im_conj_product(int b, int a, int s) {
    Quat q = conj(unit(b)) * unit(a);
    return static_cast<int>(q[s + 1]);
}

}  // namespace qcheat
