#include "qcheat/heisenberg_model.hpp"

#include "qcheat/kernels/kernels.hpp"
#include "qcheat/quaternion.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qcheat {

namespace {

int wrap(long v, int m) {
    long r = v % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

// 2 Im(conj(x) y) over quaternionic blocks.
std::array<double, 3> im_twist(const std::vector<double>& x, const std::vector<double>& y) {
    std::array<double, 3> out{0, 0, 0};
    for (std::size_t blk = 0; blk * 4 < x.size(); ++blk) {
        Quat p{x[4 * blk], x[4 * blk + 1], x[4 * blk + 2], x[4 * blk + 3]};
        Quat q{y[4 * blk], y[4 * blk + 1], y[4 * blk + 2], y[4 * blk + 3]};
        Quat r = conj(p) * q;
        out[0] += 2 * r.x;
        out[1] += 2 * r.y;
        out[2] += 2 * r.z;
    }
    return out;
}

// exp(1 - 1/(1 - r)) for r < 1, else 0.
double profile(double r) { return r < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - r)) : 0.0; }

}  // namespace

GroupPoint group_multiply(const GroupPoint& p, const GroupPoint& q, int n) {
    if (p.x.size() != static_cast<std::size_t>(4 * n) || q.x.size() != p.x.size())
        throw std::invalid_argument("group points do not match the quaternionic dimension");
    GroupPoint r;
    r.x.resize(p.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) r.x[i] = p.x[i] + q.x[i];
    auto tw = im_twist(p.x, q.x);
    for (int s = 0; s < 3; ++s) r.t[s] = p.t[s] + q.t[s] + tw[s];
    return r;
}

GroupPoint group_inverse(const GroupPoint& p) {
    GroupPoint r;
    r.x.resize(p.x.size());
    for (std::size_t i = 0; i < p.x.size(); ++i) r.x[i] = -p.x[i];
    for (int s = 0; s < 3; ++s) r.t[s] = -p.t[s];
    return r;
}

GroupPoint group_identity(int n) {
    GroupPoint r;
    r.x.assign(4 * n, 0.0);
    return r;
}

LatticeGrid::LatticeGrid(int n, int m_x) : n_(n), m_(m_x) {
    if (n < 1) throw std::invalid_argument("quaternionic dimension must be >= 1");
    if (m_x < 3) throw std::invalid_argument("m_x must be >= 3");
    const double total = std::pow(static_cast<double>(m_x), 4 * n + 3);
    if (total > 1.5e8) throw std::invalid_argument("grid too large: " + std::to_string(total) + " points");
    h_x_ = 1.0 / m_x;
    h_t_ = 2.0 * h_x_ * h_x_;
    L_t_ = 2.0 * h_x_;
    cell_volume_ = std::pow(h_x_, 4 * n) * h_t_ * h_t_ * h_t_;
    slab_size_ = static_cast<std::size_t>(m_) * m_ * m_;
    num_slabs_ = 1;
    for (int i = 0; i < 4 * n; ++i) num_slabs_ *= static_cast<std::size_t>(m_);

    const int d = 4 * n;
    // Integer structure constants Im(conj(e_b) e_a)_s within one block.
    int M[3][4][4];
    for (int s = 0; s < 3; ++s)
        for (int b = 0; b < 4; ++b)
            for (int a = 0; a < 4; ++a) M[s][b][a] = im_conj_product(b, a, s);

    steps_.resize(num_slabs_ * d * 4);
    std::vector<int> xi(d);
    for (std::size_t slab = 0; slab < num_slabs_; ++slab) {
        std::size_t rem = slab;
        for (int k = d - 1; k >= 0; --k) {
            xi[k] = static_cast<int>(rem % m_);
            rem /= m_;
        }
        for (int a = 0; a < d; ++a) {
            const int blk = a / 4, la = a % 4;
            long base[3] = {0, 0, 0};
            for (int s = 0; s < 3; ++s)
                for (int b = 0; b < 4; ++b) base[s] += static_cast<long>(xi[4 * blk + b]) * M[s][b][la];
            for (int di = 0; di < 2; ++di) {
                const int dir = di == 0 ? 1 : -1;
                for (int li = 0; li < 2; ++li) {
                    const int len = li + 1;
                    StepTarget st;
                    std::size_t stride = 1;
                    for (int k = d - 1; k > a; --k) stride *= m_;
                    const int na = wrap(xi[a] + dir * len, m_);
                    st.slab = static_cast<std::uint32_t>(slab + (static_cast<long>(na) - xi[a]) * static_cast<long>(stride));
                    for (int s = 0; s < 3; ++s) st.shift.s[s] = wrap(dir * len * base[s], m_);
                    steps_[((slab * d + a) * 2 + di) * 2 + li] = st;
                }
            }
        }
    }
}

double LatticeGrid::total_volume() const { return std::pow(L_x(), 4 * n_) * L_t_ * L_t_ * L_t_; }

std::size_t LatticeGrid::flat_index(const std::vector<int>& idx) const {
    if (idx.size() != static_cast<std::size_t>(4 * n_ + 3)) throw std::invalid_argument("multi-index has wrong length");
    std::size_t f = 0;
    for (int v : idx) {
        if (v < 0 || v >= m_) throw std::out_of_range("multi-index entry out of range");
        f = f * m_ + v;
    }
    return f;
}

std::vector<int> LatticeGrid::multi_index(std::size_t flat) const {
    std::vector<int> idx(4 * n_ + 3);
    for (int k = 4 * n_ + 2; k >= 0; --k) {
        idx[k] = static_cast<int>(flat % m_);
        flat /= m_;
    }
    return idx;
}

GroupPoint LatticeGrid::point(std::size_t flat) const {
    auto idx = multi_index(flat);
    GroupPoint p;
    p.x.resize(4 * n_);
    for (int a = 0; a < 4 * n_; ++a) p.x[a] = idx[a] * h_x_;
    for (int s = 0; s < 3; ++s) p.t[s] = idx[4 * n_ + s] * h_t_;
    return p;
}

const StepTarget& LatticeGrid::step(std::size_t slab, int a, int dir, int len) const {
    return steps_[((slab * (4 * n_) + a) * 2 + (dir > 0 ? 0 : 1)) * 2 + (len - 1)];
}

std::vector<int> LatticeGrid::horizontal_step_index(const std::vector<int>& idx, int a, int dir) const {
    if (a < 0 || a >= 4 * n_) throw std::out_of_range("horizontal direction out of range");
    if (dir != 1 && dir != -1) throw std::invalid_argument("direction must be +1 or -1");
    const std::size_t flat = flat_index(idx);
    const std::size_t slab = flat / slab_size_;
    const StepTarget& st = step(slab, a, dir, 1);
    std::vector<int> out = multi_index(st.slab * slab_size_);
    for (int s = 0; s < 3; ++s) out[4 * n_ + s] = (idx[4 * n_ + s] + st.shift.s[s]) % m_;
    return out;
}

std::string LatticeGrid::describe() const {
    std::ostringstream os;
    os << "n=" << n_ << " m_x=" << m_ << " m_t=" << m_ << " h_x=" << h_x_ << " h_t=" << h_t_ << " L_t=" << L_t_;
    return os.str();
}

GridPtr make_grid(int n, int m_x) { return std::make_shared<const LatticeGrid>(n, m_x); }

ScalarField::ScalarField(GridPtr g, double fill) : grid(std::move(g)) { values.assign(grid->size(), fill); }

ScalarField::ScalarField(GridPtr g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
    if (values.size() != grid->size()) throw std::invalid_argument("field size does not match grid");
}

double ScalarField::min() const { return *std::min_element(values.begin(), values.end()); }
double ScalarField::max() const { return *std::max_element(values.begin(), values.end()); }

HorizontalField::HorizontalField(GridPtr g) : grid(std::move(g)) {
    comp.reserve(grid->x_axes());
    for (int a = 0; a < grid->x_axes(); ++a) comp.emplace_back(grid, 0.0);
}

FrameData frame_data(const LatticeGrid& grid) {
    const auto q = make_quaternionic_structure(grid.n());
    FrameData fd;
    for (int s = 0; s < 3; ++s) fd.omega[s] = q.omega(s);
    fd.xi_scale = 2.0;
    return fd;
}

TorsionData model_torsion(const LatticeGrid& grid) { return zero_torsion(grid.n()); }

BumpParams default_bump(int n) {
    BumpParams b;
    b.center_x.assign(4 * n, 0.5);
    return b;
}

void validate_bump(const BumpParams& b, const LatticeGrid& grid) {
    if (b.center_x.size() != static_cast<std::size_t>(grid.x_axes()))
        throw std::invalid_argument("bump centre has wrong horizontal dimension");
    if (!(b.width > 0.0) || !(b.width < 0.5 * grid.L_x()))
        throw std::invalid_argument("bump width must lie in (0, L_x/2)");
    if (!(b.amplitude >= 0.0)) throw std::invalid_argument("bump amplitude must be >= 0");
    if (!std::isfinite(b.offset) || !std::isfinite(b.vertical_width)) throw std::invalid_argument("bump parameters must be finite");
}

double bump_value(const BumpParams& b, const LatticeGrid& grid, const GroupPoint& g) {
    const int d = grid.x_axes();
    if (b.amplitude == 0.0) return b.offset;
    // Only one horizontal translate can meet the support since width < 1/2.
    GroupPoint k = group_identity(grid.n());
    for (int a = 0; a < d; ++a) k.x[a] = std::nearbyint(b.center_x[a] - g.x[a]);
    GroupPoint kg = group_multiply(k, g, grid.n());
    GroupPoint cinv;
    cinv.x.resize(d);
    for (int a = 0; a < d; ++a) cinv.x[a] = -b.center_x[a];
    for (int s = 0; s < 3; ++s) cinv.t[s] = -b.center_t[s];
    GroupPoint p = group_multiply(cinv, kg, grid.n());
    double r = 0.0;
    for (int a = 0; a < d; ++a) r += p.x[a] * p.x[a];
    const double hx = profile(r / (b.width * b.width));
    if (hx == 0.0) return b.offset;
    if (b.vertical_width <= 0.0) return b.offset + b.amplitude * hx;

    // Vertical translates tau in L_t Z^3 shift p.t directly (central elements).
    const double Lt = grid.L_t(), wt = b.vertical_width;
    std::array<long, 3> lo, hi;
    for (int s = 0; s < 3; ++s) {
        lo[s] = static_cast<long>(std::ceil((-wt - p.t[s]) / Lt));
        hi[s] = static_cast<long>(std::floor((wt - p.t[s]) / Lt));
    }
    double sum = 0.0;
    for (long i = lo[0]; i <= hi[0]; ++i)
        for (long j = lo[1]; j <= hi[1]; ++j)
            for (long l = lo[2]; l <= hi[2]; ++l) {
                const double t0 = p.t[0] + i * Lt, t1 = p.t[1] + j * Lt, t2 = p.t[2] + l * Lt;
                sum += profile((t0 * t0 + t1 * t1 + t2 * t2) / (wt * wt));
            }
    return b.offset + b.amplitude * hx * sum;
}

ScalarField periodized_bump(GridPtr grid, const BumpParams& b) {
    validate_bump(b, *grid);
    ScalarField f(grid, 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = bump_value(b, *grid, grid->point(i));
    return f;
}

double integrate(const ScalarField& f) { return f.grid->cell_volume() * kernels().sum(f.data(), f.size()); }

double integrate_product(const ScalarField& f, const ScalarField& g) {
    if (f.size() != g.size()) throw std::invalid_argument("fields live on different grids");
    return f.grid->cell_volume() * kernels().dot(f.data(), g.data(), f.size());
}

}  // namespace qcheat
