#include "mixkin/grid.hpp"

#include <cmath>
#include <string>

#include "mixkin/errors.hpp"

namespace mixkin {

double PhaseGrid::vmax_abs() const {
    double m = 0.0;
    for (double v : v_nodes) m = std::max(m, std::fabs(v));
    return m;
}

PhaseGrid build_grid(std::array<double, 2> x_domain, int nx, Boundary bc,
                     std::array<double, 2> v_domain, int nv_intervals) {
    const double x_min = x_domain[0], x_max = x_domain[1];
    const double v_min = v_domain[0], v_max = v_domain[1];
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !std::isfinite(v_min) ||
        !std::isfinite(v_max)) {
        throw ConfigError("build_grid: domain bounds must be finite");
    }
    if (!(x_min < x_max) || !(v_min < v_max)) {
        throw ConfigError("build_grid: empty domain");
    }
    if (nx < 4) {
        throw ConfigError("build_grid: nx = " + std::to_string(nx) +
                          " below the minimum reconstruction stencil (4)");
    }
    if (nv_intervals < 2) {
        throw ConfigError("build_grid: nv = " + std::to_string(nv_intervals) + " too small");
    }

    PhaseGrid g;
    g.bc = bc;
    g.x_min = x_min;
    g.x_max = x_max;
    g.v_min = v_min;
    g.v_max = v_max;
    g.dx = (x_max - x_min) / nx;
    g.dv = (v_max - v_min) / nv_intervals;

    g.x_nodes.resize(static_cast<std::size_t>(nx));
    const double offset = (bc == Boundary::freeflow) ? 0.5 : 0.0;
    for (int i = 0; i < nx; ++i) {
        g.x_nodes[static_cast<std::size_t>(i)] = x_min + (i + offset) * g.dx;
    }

    g.v_nodes.resize(static_cast<std::size_t>(nv_intervals) + 1);
    for (int j = 0; j <= nv_intervals; ++j) {
        g.v_nodes[static_cast<std::size_t>(j)] = v_min + j * g.dv;
    }
    return g;
}

FootIndex shift_decompose(const PhaseGrid& grid, double displacement) {
    const double t = displacement / grid.dx;
    double base = std::floor(t);
    double theta = t - base;
    if (theta >= 1.0) { // rounding at exact integers
        base += 1.0;
        theta = 0.0;
    }
    return FootIndex{static_cast<std::int64_t>(base), theta};
}

void TimeControl::validate() const {
    if (!(t_final >= 0.0) || !std::isfinite(t_final)) {
        throw ConfigError("TimeControl: t_final must be finite and nonnegative");
    }
    if (schedule.empty()) throw ConfigError("TimeControl: empty CFL schedule");
    if (t_final == 0.0) { // degenerate zero-length run
        for (const auto& seg : schedule) {
            if (!(seg.cfl > 0.0)) throw ConfigError("TimeControl: CFL values must be positive");
        }
        return;
    }
    double prev = 0.0;
    for (const auto& seg : schedule) {
        if (!(seg.cfl > 0.0)) throw ConfigError("TimeControl: CFL values must be positive");
        if (!(seg.t_end > prev)) {
            throw ConfigError("TimeControl: schedule times must be strictly increasing");
        }
        prev = seg.t_end;
    }
    const double rel = std::fabs(prev - t_final) / std::max(1.0, std::fabs(t_final));
    if (t_final > 0.0 && rel > 1e-12) {
        throw ConfigError("TimeControl: schedule must cover (0, t_final]");
    }
    if (dt_cap && !(*dt_cap > 0.0)) throw ConfigError("TimeControl: dt_cap must be positive");
}

TimeControl TimeControl::single(double t_final, double cfl) {
    TimeControl tc;
    tc.t_final = t_final;
    tc.schedule = {CflSegment{t_final, cfl}};
    return tc;
}

std::vector<StepPlan> plan_steps(const TimeControl& control, const PhaseGrid& grid) {
    control.validate();
    const double vmax = grid.vmax_abs();
    if (!(vmax > 0.0)) throw ConfigError("plan_steps: velocity grid has zero extent");

    std::vector<StepPlan> plans;
    double t_begin = 0.0;
    for (const auto& seg : control.schedule) {
        const double t_end = (&seg == &control.schedule.back()) ? control.t_final : seg.t_end;
        const double len = t_end - t_begin;
        if (len <= 0.0) continue;
        double dt_nom = seg.cfl * grid.dx / vmax;
        if (control.dt_cap) dt_nom = std::min(dt_nom, *control.dt_cap);
        // the (1 - 1e-12) guard keeps an exact multiple from gaining a step
        const int steps = std::max(1, static_cast<int>(std::ceil(len / dt_nom * (1.0 - 1e-12))));
        plans.push_back(StepPlan{t_begin, len / steps, steps});
        t_begin = t_end;
    }
    return plans;
}

} // namespace mixkin
