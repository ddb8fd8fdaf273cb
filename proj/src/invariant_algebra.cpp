#include "qcheat/invariant_algebra.hpp"

#include "qcheat/quaternion.hpp"

#include <cmath>
#include <stdexcept>

namespace qcheat {

namespace {

void check_shape(const Mat& psi, const QuaternionicStructure& q) {
    if (psi.rows() != q.dim() || psi.cols() != q.dim())
        throw std::invalid_argument("endomorphism shape does not match the quaternionic structure");
}

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

QuaternionicStructure make_quaternionic_structure(int n) {
    if (n < 1) throw std::invalid_argument("quaternionic dimension must be >= 1");
    QuaternionicStructure q;
    q.n = n;
    const int d = 4 * n;
    q.g = Mat::Identity(d, d);
    for (int s = 0; s < 3; ++s) {
        Mat I = Mat::Zero(d, d);
        const Quat qs_bar = conj(unit(s + 1));
        for (int blk = 0; blk < n; ++blk)
            for (int a = 0; a < 4; ++a) {
                const Quat img = unit(a) * qs_bar;
                for (int c = 0; c < 4; ++c) I(4 * blk + c, 4 * blk + a) = img[c];
            }
        q.I[s] = I;
    }
    return q;
}

Mat casimir_apply(const Mat& psi, const QuaternionicStructure& q) {
    check_shape(psi, q);
    Mat out = Mat::Zero(psi.rows(), psi.cols());
    for (int s = 0; s < 3; ++s) out -= q.I[s] * psi * q.I[s];
    return out;
}

CasimirParts casimir_decompose(const Mat& psi, const QuaternionicStructure& q) {
    const Mat ups = casimir_apply(psi, q);
    return {0.25 * (psi + ups), 0.25 * (3.0 * psi - ups)};
}

FourParts four_part_decompose(const Mat& psi, const QuaternionicStructure& q) {
    check_shape(psi, q);
    // C_s(Psi) = I_s Psi I_s^{-1} = -I_s Psi I_s; C_1 C_2 = C_3.
    auto conj_by = [&](int s, const Mat& m) -> Mat { return -(q.I[s] * m * q.I[s]); };
    const Mat c1 = conj_by(0, psi);
    const Mat c2 = conj_by(1, psi);
    const Mat c12 = conj_by(0, c2);
    FourParts p;
    p.ppp = 0.25 * (psi + c1 + c2 + c12);
    p.pmm = 0.25 * (psi + c1 - c2 - c12);
    p.mpm = 0.25 * (psi - c1 + c2 - c12);
    p.mmp = 0.25 * (psi - c1 - c2 + c12);
    return p;
}

TorsionData zero_torsion(int n) {
    TorsionData td;
    td.n = n;
    td.T0 = Mat::Zero(4 * n, 4 * n);
    td.U = Mat::Zero(4 * n, 4 * n);
    td.S = 0.0;
    return td;
}

Mat random_matrix(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = u(rng);
    return m;
}

Mat random_symmetric(int dim, std::mt19937_64& rng) {
    Mat m = random_matrix(dim, rng);
    return 0.5 * (m + m.transpose());
}

Vec random_vector(int dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vec v(dim);
    for (int i = 0; i < dim; ++i) v(i) = u(rng);
    return v;
}

std::array<Mat, 3> reeb_components(const Mat& T0, const QuaternionicStructure& q) {
    std::array<Mat, 3> out;
    for (int s = 0; s < 3; ++s) out[s] = q.I[s] * (0.25 * (T0 + q.I[s] * T0 * q.I[s]));
    return out;
}

TorsionData random_torsion(const QuaternionicStructure& q, std::mt19937_64& rng, bool with_components) {
    const int d = q.dim();
    TorsionData td;
    td.n = q.n;
    td.T0 = casimir_decompose(random_symmetric(d, rng), q).minus_one;
    if (q.n == 1) {
        td.U = Mat::Zero(d, d);
    } else {
        Mat u3 = casimir_decompose(random_symmetric(d, rng), q).three;
        td.U = u3 - (u3.trace() / d) * Mat::Identity(d, d);
    }
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    td.S = u(rng);
    if (with_components) td.T0_xi = reeb_components(td.T0, q);
    return td;
}

void validate_torsion(const TorsionData& td, const QuaternionicStructure& q, double tol) {
    check_shape(td.T0, q);
    check_shape(td.U, q);
    auto fail = [](const char* what) { throw std::invalid_argument(std::string("invalid torsion data: ") + what); };
    if (max_abs(td.T0 - td.T0.transpose()) > tol) fail("T0 not symmetric");
    if (max_abs(td.U - td.U.transpose()) > tol) fail("U not symmetric");
    if (std::abs(td.T0.trace()) > tol) fail("T0 not trace-free");
    if (std::abs(td.U.trace()) > tol) fail("U not trace-free");
    Mat four = td.T0;
    for (int s = 0; s < 3; ++s) four += q.I[s].transpose() * td.T0 * q.I[s];
    if (max_abs(four) > tol) fail("T0 four-term identity");
    for (int s = 0; s < 3; ++s)
        if (max_abs(q.I[s].transpose() * td.U * q.I[s] - td.U) > tol) fail("U not I_s-invariant");
    if (q.n == 1 && max_abs(td.U) > tol) fail("U must vanish for n = 1");
    if (td.T0_xi) {
        Mat sum = Mat::Zero(q.dim(), q.dim());
        for (int s = 0; s < 3; ++s) {
            const Mat& c = (*td.T0_xi)[s];
            if (max_abs(c - c.transpose()) > tol) fail("per-Reeb component not symmetric");
            if (max_abs(c * q.I[s] + q.I[s] * c) > tol) fail("per-Reeb component does not anticommute");
            if (std::abs(c.trace()) > tol) fail("per-Reeb component not trace-free");
            for (int t = 0; t < 3; ++t)
                if (std::abs((c * q.I[t]).trace()) > tol) fail("per-Reeb component trace against I_t");
            sum += (c * q.I[s]).transpose();
        }
        if (max_abs(sum - td.T0) > tol) fail("per-Reeb components do not reassemble T0");
    }
}

Mat torsion_contraction_matrix(const TorsionData& td, const QuaternionicStructure& q, int s) {
    if (s < 0 || s > 2) throw std::out_of_range("Reeb index must be 0..2");
    const Mat& I = q.I[s];
    return 0.25 * (td.T0 - I.transpose() * td.T0 * I) - td.U;
}

double torsion_contraction(const TorsionData& td, const QuaternionicStructure& q, int s, const Vec& X, const Vec& Y) {
    return X.dot(torsion_contraction_matrix(td, q, s) * Y);
}

Mat ricci_matrix(const TorsionData& td, const QuaternionicStructure& q) {
    const int n = q.n;
    return (2.0 * n + 2.0) * td.T0 + (4.0 * n + 10.0) * td.U + (2.0 * (n + 2) * td.S) * q.g;
}

double ricci_from_torsion(const TorsionData& td, const QuaternionicStructure& q, const Vec& X, const Vec& Y) {
    return X.dot(ricci_matrix(td, q) * Y);
}

Mat lichnerowicz_matrix(const TorsionData& td, const QuaternionicStructure& q) {
    const double n = q.n;
    Mat L = (2.0 * (n + 2) * td.S) * q.g + ((4 * n * n + 14 * n + 12) / (2 * n + 1)) * td.T0;
    if (q.n > 1) L += (4 * (n + 2) * (n + 2) * (2 * n - 1) / ((n - 1) * (2 * n + 1))) * td.U;
    return L;
}

Mat lichnerowicz_matrix_via_ricci(const TorsionData& td, const QuaternionicStructure& q) {
    const double n = q.n;
    Mat L = ricci_matrix(td, q) + (2 * (4 * n + 5) / (2 * n + 1)) * td.T0;
    if (q.n > 1) L += (6 * (2 * n * n + 5 * n - 1) / ((n - 1) * (2 * n + 1))) * td.U;
    return L;
}

double lichnerowicz_form(const TorsionData& td, const QuaternionicStructure& q, const Vec& X) {
    return X.dot(lichnerowicz_matrix(td, q) * X);
}

SidePair represtor_combination(const TorsionData& td, const QuaternionicStructure& q, const Vec& X) {
    const double n = q.n;
    const double xx = X.squaredNorm();
    const double t0 = X.dot(td.T0 * X);
    const double uu = q.n > 1 ? X.dot(td.U * X) : 0.0;
    SidePair r;
    r.lhs = 2 * n * td.S * xx + 2 * (n + 2) * t0;
    r.rhs = -td.S * xx + t0 + ((2 * n + 1) / (2 * (n + 2))) * lichnerowicz_form(td, q, X);
    if (q.n > 1) {
        r.lhs += (4 * n * (n + 1) / (n - 1)) * uu;
        r.rhs -= (2 * (n - 2) / (n - 1)) * uu;
    }
    return r;
}

double h_polynomial(int n, double alpha) {
    if (n < 1) throw std::invalid_argument("quaternionic dimension must be >= 1");
    return 48.0 * n * alpha * alpha - 2.0 * (16.0 * n - 3.0) * alpha - 3.0;
}

std::pair<double, double> alpha_interval(int n) {
    if (n < 1) throw std::invalid_argument("quaternionic dimension must be >= 1");
    const double nn = n;
    const double lo = (16 * nn - 3 - std::sqrt(256 * nn * nn + 48 * nn + 9)) / (48 * nn);
    return {lo, 0.0};
}

}  // namespace qcheat
