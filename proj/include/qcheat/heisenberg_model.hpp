#pragma once

#include "qcheat/invariant_algebra.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace qcheat {

// Point (x, t) of the quaternionic Heisenberg group; x holds n quaternions as 4n reals.
struct GroupPoint {
    std::vector<double> x;
    std::array<double, 3> t{0.0, 0.0, 0.0};
};

// (x,t)(x',t') = (x + x', t + t' + 2 Im(conj(x) x')), summed over quaternionic blocks.
GroupPoint group_multiply(const GroupPoint& p, const GroupPoint& q, int n);
GroupPoint group_inverse(const GroupPoint& p);
GroupPoint group_identity(int n);

// Cyclic shift of the three vertical indices, each in [0, m_t).
struct Shift3 {
    std::array<int, 3> s{0, 0, 0};
};

// Target of a horizontal step: the destination slab and the shift applied to vertical indices.
struct StepTarget {
    std::uint32_t slab = 0;
    Shift3 shift;
};

// Uniform grid on the lattice quotient. Row-major index order: the 4n horizontal axes first,
// then the 3 vertical axes. A "slab" is the contiguous block of m_t^3 values with fixed x index.
class LatticeGrid {
public:
    LatticeGrid(int n, int m_x);

    int n() const { return n_; }
    int m_x() const { return m_; }
    int m_t() const { return m_; }
    int x_axes() const { return 4 * n_; }
    double L_x() const { return 1.0; }
    double h_x() const { return h_x_; }
    double h_t() const { return h_t_; }
    double L_t() const { return L_t_; }
    double cell_volume() const { return cell_volume_; }
    double total_volume() const;

    std::size_t slab_size() const { return slab_size_; }
    std::size_t num_slabs() const { return num_slabs_; }
    std::size_t size() const { return slab_size_ * num_slabs_; }

    // Multi-index has 4n + 3 entries.
    std::size_t flat_index(const std::vector<int>& idx) const;
    std::vector<int> multi_index(std::size_t flat) const;
    GroupPoint point(std::size_t flat) const;

    // Horizontal step by dir * len * h_x along e_a (len in {1, 2}).
    const StepTarget& step(std::size_t slab, int a, int dir, int len) const;
    std::vector<int> horizontal_step_index(const std::vector<int>& idx, int a, int dir) const;

    std::string describe() const;

private:
    int n_;
    int m_;
    double h_x_, h_t_, L_t_, cell_volume_;
    std::size_t slab_size_, num_slabs_;
    std::vector<StepTarget> steps_;  // [slab][a][dir][len]
};

using GridPtr = std::shared_ptr<const LatticeGrid>;
GridPtr make_grid(int n, int m_x);

struct ScalarField {
    GridPtr grid;
    std::vector<double> values;

    ScalarField() = default;
    explicit ScalarField(GridPtr g, double fill = 0.0);
    ScalarField(GridPtr g, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    double* data() { return values.data(); }
    const double* data() const { return values.data(); }
    double operator[](std::size_t i) const { return values[i]; }
    double& operator[](std::size_t i) { return values[i]; }
    double min() const;
    double max() const;
};

struct HorizontalField {
    GridPtr grid;
    std::vector<ScalarField> comp;  // 4n frame components

    HorizontalField() = default;
    explicit HorizontalField(GridPtr g);
};

struct FrameData {
    std::array<Mat, 3> omega;
    double xi_scale = 2.0;  // xi_s = xi_scale * d/dt_s
};
FrameData frame_data(const LatticeGrid& grid);

// Torsion and curvature of the flat model: all zero.
TorsionData model_torsion(const LatticeGrid& grid);

// Smooth bump offset + amplitude * sum over lattice translates of psi(center^{-1} * gamma * g).
// vertical_width <= 0 gives a profile constant in t.
struct BumpParams {
    std::vector<double> center_x;
    std::array<double, 3> center_t{0.0, 0.0, 0.0};
    double width = 0.45;
    double vertical_width = 0.3;
    double amplitude = 0.5;
    double offset = 1.0;
};
BumpParams default_bump(int n);
void validate_bump(const BumpParams& b, const LatticeGrid& grid);
double bump_value(const BumpParams& b, const LatticeGrid& grid, const GroupPoint& g);
ScalarField periodized_bump(GridPtr grid, const BumpParams& b);

// Compensated sum times the cell volume.
double integrate(const ScalarField& f);
double integrate_product(const ScalarField& f, const ScalarField& g);

// Raw little-endian doubles in `<stem>.bin`, JSON header in `<stem>.json`.
void write_snapshot(const ScalarField& f, const std::string& stem, double time);
ScalarField read_snapshot(const std::string& stem);

}  // namespace qcheat
