#ifndef MIXKIN_RECONSTRUCT_HPP
#define MIXKIN_RECONSTRUCT_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mixkin/grid.hpp"

namespace mixkin {

inline constexpr int kMaxRecDegree = 4;

/// Sliding-average weights for a fractional shift theta in [0,1):
///   alpha_l(theta) = (1 - (2 theta - 1)^(l+1)) / (2^(l+1) (l+1)!)
///   beta_l(theta)  = ((2 theta - 1)^(l+1) - (-1)^(l+1)) / (2^(l+1) (l+1)!)
/// applied to the derivative coefficients of the cell polynomials left and
/// right of the evaluation window. alpha_0 + beta_0 == 1 for every theta.
struct ShiftKernel {
    double theta = 0.0;
    int degree = 0;
    std::array<double, kMaxRecDegree + 1> alpha{};
    std::array<double, kMaxRecDegree + 1> beta{};
};

ShiftKernel make_shift_kernel(double theta, int degree);

/// Piecewise polynomial reconstruction, one polynomial per cell. Stored as
/// scaled monomial coefficients about the cell center:
///   R_i(x_i + s dx) = sum_l coef(i, l) s^l,  s in [-1/2, 1/2],
/// so coef(i, l) = R_i^(l) dx^l / l!. Freeflow fields carry one extra
/// polynomial on each side built from constant-extrapolated values.
class PolyField {
public:
    PolyField() = default;

    int degree() const { return degree_; }
    int cells() const { return cells_; }
    Boundary bc() const { return bc_; }

    /// Valid cell range: [lo, hi). Periodic fields wrap outside callers'
    /// indices themselves; freeflow fields expose cells [-1, cells].
    std::int64_t lo() const { return bc_ == Boundary::freeflow ? -1 : 0; }
    std::int64_t hi() const { return bc_ == Boundary::freeflow ? cells_ + 1 : cells_; }

    const double* poly(std::int64_t cell) const {
        return coef_.data() + static_cast<std::size_t>(cell - lo()) * stride();
    }

    /// Exact average of the stored polynomial over its own cell.
    double cell_average(std::int64_t cell) const;

    /// Point value of the stored polynomial at x_cell + s dx.
    double point_eval(std::int64_t cell, double s) const;

private:
    std::size_t stride() const { return static_cast<std::size_t>(degree_ + 1); }

    int degree_ = 0;
    int cells_ = 0;
    Boundary bc_ = Boundary::periodic;
    std::vector<double> coef_;

    friend PolyField cweno_reconstruct(std::span<const double>, int, Boundary);
};

/// CWENO reconstruction of degree 2 (three-point) or 4 (five-point) from
/// nodal values treated as cell averages. Conserves the cell average of
/// every cell regardless of the nonlinear weights.
PolyField cweno_reconstruct(std::span<const double> values, int degree, Boundary bc);

/// Sliding average of the reconstruction over the window centered at
/// x_cell + theta dx. q_eval(field, i, 0) returns the cell average of
/// cell i, i.e. the input nodal value.
double q_eval(const PolyField& field, std::int64_t cell, double theta);

/// Conservative evaluation of a whole row at feet x_i + displacement.
/// Freeflow rows use constant extrapolation for stencils past the edge and
/// return the edge value for feet outside [x_min, x_max].
void shift_field(std::span<const double> values, double displacement, double dx,
                 int degree, Boundary bc, std::span<double> out);

std::vector<double> shift_field(std::span<const double> values, double displacement,
                                double dx, int degree, Boundary bc);

} // namespace mixkin

#endif
