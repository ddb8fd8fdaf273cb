#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <random>
#include <utility>

namespace qcheat {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Complex structures on R^{4n}. Reeb/structure indices are 0-based: s = 0,1,2 stands for 1,2,3.
// I[s] acts on a quaternionic block x as x -> x * conj(q_s) with q = (i, j, k), which keeps the
// triple compatible with the group law used by the lattice model (I1 I2 = I3, I1 I2 I3 = -Id).
struct QuaternionicStructure {
    int n = 0;
    std::array<Mat, 3> I;
    Mat g;

    int dim() const { return 4 * n; }
    // omega_s(a, b) = g(I_s e_a, e_b).
    Mat omega(int s) const { return I[s].transpose(); }
};

QuaternionicStructure make_quaternionic_structure(int n);

// Casimir action  Psi -> -sum_s I_s Psi I_s, eigenvalues 3 and -1.
Mat casimir_apply(const Mat& psi, const QuaternionicStructure& q);

struct CasimirParts {
    Mat three;
    Mat minus_one;
};
CasimirParts casimir_decompose(const Mat& psi, const QuaternionicStructure& q);

// Parts labelled by commutation (+) or anticommutation (-) with I1, I2, I3.
struct FourParts {
    Mat ppp, pmm, mpm, mmp;
};
FourParts four_part_decompose(const Mat& psi, const QuaternionicStructure& q);

struct TorsionData {
    int n = 0;
    Mat T0;
    Mat U;
    double S = 0.0;
    std::optional<std::array<Mat, 3>> T0_xi;
};

TorsionData zero_torsion(int n);
// Random admissible instance. U is zero for n = 1.
TorsionData random_torsion(const QuaternionicStructure& q, std::mt19937_64& rng, bool with_components = true);
std::array<Mat, 3> reeb_components(const Mat& T0, const QuaternionicStructure& q);
// Throws std::invalid_argument on any violated invariant.
void validate_torsion(const TorsionData& td, const QuaternionicStructure& q, double tol = 1e-10);

// T(xi_s, I_s X, Y) as the bilinear matrix K_s with value X^T K_s Y.
Mat torsion_contraction_matrix(const TorsionData& td, const QuaternionicStructure& q, int s);
double torsion_contraction(const TorsionData& td, const QuaternionicStructure& q, int s, const Vec& X, const Vec& Y);

Mat ricci_matrix(const TorsionData& td, const QuaternionicStructure& q);
double ricci_from_torsion(const TorsionData& td, const QuaternionicStructure& q, const Vec& X, const Vec& Y);

// Lichnerowicz tensor in closed coefficient form; the U term is dropped for n = 1.
Mat lichnerowicz_matrix(const TorsionData& td, const QuaternionicStructure& q);
// Same tensor written as Ricci plus corrections.
Mat lichnerowicz_matrix_via_ricci(const TorsionData& td, const QuaternionicStructure& q);
double lichnerowicz_form(const TorsionData& td, const QuaternionicStructure& q, const Vec& X);

struct SidePair {
    double lhs = 0.0;
    double rhs = 0.0;
};
SidePair represtor_combination(const TorsionData& td, const QuaternionicStructure& q, const Vec& X);

double h_polynomial(int n, double alpha);
// Admissible exponent interval [lo, hi) with hi = 0.
std::pair<double, double> alpha_interval(int n);

Mat random_matrix(int dim, std::mt19937_64& rng);
Mat random_symmetric(int dim, std::mt19937_64& rng);
Vec random_vector(int dim, std::mt19937_64& rng);

}  // namespace qcheat
