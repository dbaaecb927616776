#ifndef MIXKIN_GRID_HPP
#define MIXKIN_GRID_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

namespace mixkin {

enum class Boundary { periodic, freeflow };

/// Uniform phase-space discretization. Spatial nodes sit at
///   x_i = x_min + i dx          (periodic)
///   x_i = x_min + (i + 1/2) dx  (freeflow, cell-centered)
/// and velocity nodes at v_j = v_min + j dv for j = 0..nv_intervals,
/// i.e. nv_intervals + 1 points covering [v_min, v_max].
struct PhaseGrid {
    Boundary bc = Boundary::periodic;
    double x_min = 0.0, x_max = 0.0;
    double v_min = 0.0, v_max = 0.0;
    double dx = 0.0, dv = 0.0;
    std::vector<double> x_nodes;
    std::vector<double> v_nodes;

    int nx() const { return static_cast<int>(x_nodes.size()); }
    int nv() const { return static_cast<int>(v_nodes.size()); }
    double vmax_abs() const;
};

PhaseGrid build_grid(std::array<double, 2> x_domain, int nx, Boundary bc,
                     std::array<double, 2> v_domain, int nv_intervals);

/// Decomposition of a displacement into whole cells plus a fraction:
/// displacement = (base + theta) * dx with theta in [0, 1).
struct FootIndex {
    std::int64_t base = 0;
    double theta = 0.0;
};

FootIndex shift_decompose(const PhaseGrid& grid, double displacement);

struct CflSegment {
    double t_end = 0.0;
    double cfl = 0.0;
};

/// Piecewise CFL schedule. Each segment (t_prev, t_end] runs at a fixed
/// CFL; the nominal step is cfl * dx / max_j |v_j|, optionally capped.
struct TimeControl {
    std::vector<CflSegment> schedule;
    double t_final = 0.0;
    std::optional<double> dt_cap;

    void validate() const;

    static TimeControl single(double t_final, double cfl);
};

/// One realized schedule segment: `steps` equal steps of size `dt`
/// starting at t_begin. Steps shrink so every segment lands exactly on
/// its end time.
struct StepPlan {
    double t_begin = 0.0;
    double dt = 0.0;
    int steps = 0;
};

std::vector<StepPlan> plan_steps(const TimeControl& control, const PhaseGrid& grid);

} // namespace mixkin

#endif
