#include "mixkin/stepper.hpp"

#include <cmath>
#include <string>

#include "mixkin/errors.hpp"
#include "mixkin/parallel.hpp"
#include "mixkin/reconstruct.hpp"

namespace mixkin {

void Tableau::validate() const {
    if (stages < 1 || stages > 3) throw ConfigError("Tableau: 1 to 3 stages supported");
    for (int m = 0; m < stages; ++m) {
        if (a[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)] == 0.0) {
            throw ConfigError("Tableau: zero diagonal entry");
        }
        double row = 0.0;
        for (int l = 0; l <= m; ++l) row += a[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)];
        if (std::fabs(row - c[static_cast<std::size_t>(m)]) > 1e-12) {
            throw ConfigError("Tableau: abscissae inconsistent with matrix rows");
        }
        if (std::fabs(a[static_cast<std::size_t>(stages - 1)][static_cast<std::size_t>(m)] -
                      b[static_cast<std::size_t>(m)]) > 1e-12) {
            throw ConfigError("Tableau: not stiffly accurate");
        }
    }
}

Tableau tableau_implicit_euler() {
    Tableau t;
    t.stages = 1;
    t.a[0][0] = 1.0;
    t.b[0] = 1.0;
    t.c[0] = 1.0;
    return t;
}

Tableau tableau_dirk2() {
    const double alpha = 1.0 - std::sqrt(2.0) / 2.0;
    Tableau t;
    t.stages = 2;
    t.a[0][0] = alpha;
    t.a[1][0] = 1.0 - alpha;
    t.a[1][1] = alpha;
    t.b = {1.0 - alpha, alpha, 0.0};
    t.c = {alpha, 1.0, 0.0};
    return t;
}

Tableau tableau_dirk3() {
    const double g = 0.4358665215;
    const double d = -0.644363171;
    Tableau t;
    t.stages = 3;
    t.a[0][0] = g;
    t.a[1][0] = (1.0 - g) / 2.0;
    t.a[1][1] = g;
    t.a[2][0] = 1.0 - d - g;
    t.a[2][1] = d;
    t.a[2][2] = g;
    t.b = {1.0 - d - g, d, g};
    t.c = {g, (1.0 + g) / 2.0, 1.0};
    return t;
}

BdfCoeffs bdf2_coeffs() {
    return BdfCoeffs{2, {4.0 / 3.0, -1.0 / 3.0, 0.0}, 2.0 / 3.0};
}

BdfCoeffs bdf3_coeffs() {
    return BdfCoeffs{3, {18.0 / 11.0, -9.0 / 11.0, 2.0 / 11.0}, 6.0 / 11.0};
}

Scheme scheme_from_name(std::string_view name) {
    if (name == "BE") return Scheme::backward_euler;
    if (name == "RK2-QCW23") return Scheme::rk2_qcw23;
    if (name == "RK3-QCW35") return Scheme::rk3_qcw35;
    if (name == "BDF2-QCW23") return Scheme::bdf2_qcw23;
    if (name == "BDF3-QCW35") return Scheme::bdf3_qcw35;
    throw ConfigError("unknown scheme '" + std::string(name) +
                      "' (expected BE, RK2-QCW23, RK3-QCW35, BDF2-QCW23 or BDF3-QCW35)");
}

std::string_view scheme_name(Scheme scheme) {
    switch (scheme) {
        case Scheme::backward_euler: return "BE";
        case Scheme::rk2_qcw23: return "RK2-QCW23";
        case Scheme::rk3_qcw35: return "RK3-QCW35";
        case Scheme::bdf2_qcw23: return "BDF2-QCW23";
        case Scheme::bdf3_qcw35: return "BDF3-QCW35";
    }
    throw ConfigError("unknown scheme");
}

int scheme_degree(Scheme scheme) {
    switch (scheme) {
        case Scheme::backward_euler:
        case Scheme::rk2_qcw23:
        case Scheme::bdf2_qcw23: return 2;
        case Scheme::rk3_qcw35:
        case Scheme::bdf3_qcw35: return 4;
    }
    throw ConfigError("unknown scheme");
}

namespace {

// shift every (s, p, j) row of src by -v_j * tau and write into dst
void shift_state(const MixtureState& src, double tau, const PhaseGrid& grid, int degree,
                 MixtureState& dst) {
    const int nv = src.nv, nx = src.nx;
    parallel_for(static_cast<std::int64_t>(src.rows()), [&](std::int64_t rb, std::int64_t re) {
        for (std::int64_t r = rb; r < re; ++r) {
            const int j = static_cast<int>(r % nv);
            const double delta = -grid.v_nodes[static_cast<std::size_t>(j)] * tau;
            const double* in = src.data.data() + static_cast<std::size_t>(r) * nx;
            double* out = dst.data.data() + static_cast<std::size_t>(r) * nx;
            shift_field({in, static_cast<std::size_t>(nx)}, delta, grid.dx, degree, grid.bc,
                        {out, static_cast<std::size_t>(nx)});
        }
    });
}

// dst += w * shift(src, -v_j * tau)
void shift_state_accumulate(const MixtureState& src, double tau, double w,
                            const PhaseGrid& grid, int degree, MixtureState& dst) {
    const int nv = src.nv, nx = src.nx;
    parallel_for(static_cast<std::int64_t>(src.rows()), [&](std::int64_t rb, std::int64_t re) {
        std::vector<double> tmp(static_cast<std::size_t>(nx));
        for (std::int64_t r = rb; r < re; ++r) {
            const int j = static_cast<int>(r % nv);
            const double delta = -grid.v_nodes[static_cast<std::size_t>(j)] * tau;
            const double* in = src.data.data() + static_cast<std::size_t>(r) * nx;
            double* out = dst.data.data() + static_cast<std::size_t>(r) * nx;
            shift_field({in, static_cast<std::size_t>(nx)}, delta, grid.dx, degree, grid.bc, tmp);
            for (int i = 0; i < nx; ++i) out[static_cast<std::size_t>(i)] += w * tmp[static_cast<std::size_t>(i)];
        }
    });
}

// first-order relaxation algebra shared by every scheme and stage: moments
// of gtilde, frozen coefficients, implicit moment solves with weight
// dt_eff, Maxwellian targets and the pointwise closure. out may alias
// gtilde.
void relax_stage(const MixtureState& gtilde, double dt_eff, const PhaseGrid& grid,
                 const SpeciesTable& species, const RegimeParams& regime, MixtureState& out) {
    const int L = gtilde.L, nv = gtilde.nv, nx = gtilde.nx;

    MomentField mom = compute_moments(gtilde, grid, species);
    InteractionField field = interaction_params(mom, species);
    solve_moment_update(mom, field, dt_eff / regime.kappa, species);
    mixing_targets(field, mom, species);

    const double dt_over_eps = dt_eff / regime.epsilon;
    const double dt_over_kappa = dt_eff / regime.kappa;

    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        parallel_for(nx, [&](std::int64_t ib, std::int64_t ie) {
            std::vector<double> m1(static_cast<std::size_t>(L) * static_cast<std::size_t>(nv));
            std::vector<double> m2(static_cast<std::size_t>(nv));
            std::vector<double> nu_node(static_cast<std::size_t>(L));
            std::vector<double> b_node(static_cast<std::size_t>(L));
            std::vector<double> g1t(static_cast<std::size_t>(nv)), g2t(static_cast<std::size_t>(nv));
            std::vector<double> g1o(static_cast<std::size_t>(nv)), g2o(static_cast<std::size_t>(nv));

            for (std::int64_t ii = ib; ii < ie; ++ii) {
                const int i = static_cast<int>(ii);
                for (int k = 0; k < L; ++k) {
                    const std::size_t id = field.idx(s, k, i);
                    nu_node[static_cast<std::size_t>(k)] = field.nu[id];
                    b_node[static_cast<std::size_t>(k)] = species.k_b * field.T_mix[id] / m_s;
                    std::span<double> m1_k{m1.data() + static_cast<std::size_t>(k) * nv,
                                           static_cast<std::size_t>(nv)};
                    maxwellian_pair(field.u_mix[id], field.T_mix[id], m_s, species.k_b,
                                    grid.v_nodes, m1_k, m2);
                }
                for (int j = 0; j < nv; ++j) {
                    g1t[static_cast<std::size_t>(j)] = gtilde.at(s, 0, j, i);
                    g2t[static_cast<std::size_t>(j)] = gtilde.at(s, 1, j, i);
                }
                relax_update(g1t, g2t, mom.n[mom.idx(s, i)], s, nu_node, m1, b_node,
                             dt_over_eps, dt_over_kappa, g1o, g2o);
                for (int j = 0; j < nv; ++j) {
                    out.at(s, 0, j, i) = g1o[static_cast<std::size_t>(j)];
                    out.at(s, 1, j, i) = g2o[static_cast<std::size_t>(j)];
                }
            }
        });
    }
}

} // namespace

MixtureState step_dirk(const MixtureState& state, const Tableau& tableau, double dt,
                       const PhaseGrid& grid, const SpeciesTable& species,
                       const RegimeParams& regime, int degree) {
    tableau.validate();
    const int stages = tableau.stages;

    MixtureState gtilde = state;
    MixtureState gnew = state;
    std::vector<StageField> K;
    K.reserve(static_cast<std::size_t>(stages > 1 ? stages - 1 : 0));

    for (int m = 0; m < stages; ++m) {
        const double cm = tableau.c[static_cast<std::size_t>(m)];
        const double amm = tableau.a[static_cast<std::size_t>(m)][static_cast<std::size_t>(m)];

        shift_state(state, cm * dt, grid, degree, gtilde);
        for (int l = 0; l < m; ++l) {
            const double aml = tableau.a[static_cast<std::size_t>(m)][static_cast<std::size_t>(l)];
            if (aml == 0.0) continue;
            shift_state_accumulate(K[static_cast<std::size_t>(l)],
                                   (cm - tableau.c[static_cast<std::size_t>(l)]) * dt, dt * aml,
                                   grid, degree, gtilde);
        }

        relax_stage(gtilde, amm * dt, grid, species, regime, gnew);

        if (m < stages - 1) {
            StageField k_m = MixtureState::zeros(state.L, state.nv, state.nx);
            const double inv = 1.0 / (amm * dt);
            for (std::size_t q = 0; q < k_m.data.size(); ++q) {
                k_m.data[q] = (gnew.data[q] - gtilde.data[q]) * inv;
            }
            K.push_back(std::move(k_m));
        }
    }

    gnew.time = state.time + dt;
    return gnew;
}

MixtureState step_backward_euler(const MixtureState& state, double dt, const PhaseGrid& grid,
                                 const SpeciesTable& species, const RegimeParams& regime,
                                 int degree) {
    return step_dirk(state, tableau_implicit_euler(), dt, grid, species, regime, degree);
}

MixtureState step_bdf(std::span<const MixtureState> history, const BdfCoeffs& coeffs,
                      double dt, const PhaseGrid& grid, const SpeciesTable& species,
                      const RegimeParams& regime, int degree) {
    const int s_ord = coeffs.order;
    if (static_cast<int>(history.size()) != s_ord) {
        throw NumericalError("HistoryMismatch: BDF" + std::to_string(s_ord) + " needs " +
                             std::to_string(s_ord) + " states, got " +
                             std::to_string(history.size()));
    }
    for (int k = 1; k < s_ord; ++k) {
        const double gap = history[static_cast<std::size_t>(k - 1)].time -
                           history[static_cast<std::size_t>(k)].time;
        if (std::fabs(gap - dt) > 1e-9 * std::max(1.0, std::fabs(dt))) {
            throw NumericalError("HistoryMismatch: history spacing " + std::to_string(gap) +
                                 " differs from dt " + std::to_string(dt));
        }
    }

    MixtureState gtilde = MixtureState::zeros(history[0].L, history[0].nv, history[0].nx);
    for (int k = 1; k <= s_ord; ++k) {
        shift_state_accumulate(history[static_cast<std::size_t>(k - 1)], k * dt,
                               coeffs.alpha[static_cast<std::size_t>(k - 1)], grid, degree,
                               gtilde);
    }

    relax_stage(gtilde, coeffs.beta * dt, grid, species, regime, gtilde);
    gtilde.time = history[0].time + dt;
    return gtilde;
}

StepDiagnostics state_diagnostics(const MixtureState& state, const PhaseGrid& grid,
                                  const SpeciesTable& species) {
    StepDiagnostics d;
    d.t = state.time;
    MomentField mom = compute_moments(state, grid, species);
    d.mass.resize(static_cast<std::size_t>(state.L));
    double momentum = 0.0, energy = 0.0;
    for (int s = 0; s < state.L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        double mass = 0.0;
        for (int i = 0; i < state.nx; ++i) {
            const double ns = mom.n[mom.idx(s, i)];
            const double us = mom.u[mom.idx(s, i)];
            mass += ns;
            momentum += m_s * ns * us;
            energy += 0.5 * m_s * ns * us * us + 1.5 * ns * species.k_b * mom.T[mom.idx(s, i)];
        }
        d.mass[static_cast<std::size_t>(s)] = mass * grid.dx;
    }
    d.momentum = momentum * grid.dx;
    d.energy = energy * grid.dx;

    double mn = state.data[0];
    for (int s = 0; s < state.L; ++s) {
        for (int j = 0; j < state.nv; ++j) {
            const double* g1 = state.row(s, 0, j);
            for (int i = 0; i < state.nx; ++i) mn = std::min(mn, g1[static_cast<std::size_t>(i)]);
        }
    }
    d.min_g1 = mn;
    return d;
}

AdvanceResult advance(MixtureState state, const TimeControl& control, Scheme scheme,
                      const PhaseGrid& grid, const SpeciesTable& species,
                      const RegimeParams& regime) {
    species.validate();
    regime.validate();
    const int degree = scheme_degree(scheme);
    const auto plans = plan_steps(control, grid);

    AdvanceResult result;
    int step_index = 0;

    const bool is_bdf = scheme == Scheme::bdf2_qcw23 || scheme == Scheme::bdf3_qcw35;
    const BdfCoeffs bdf = scheme == Scheme::bdf2_qcw23 ? bdf2_coeffs() : bdf3_coeffs();
    const Tableau dirk = [&] {
        switch (scheme) {
            case Scheme::backward_euler: return tableau_implicit_euler();
            case Scheme::rk2_qcw23: return tableau_dirk2();
            case Scheme::bdf2_qcw23: return tableau_dirk2(); // BDF bootstrap
            case Scheme::rk3_qcw35:
            case Scheme::bdf3_qcw35: return tableau_dirk3();
        }
        return tableau_implicit_euler();
    }();

    for (const auto& plan : plans) {
        // step size changes at segment boundaries, so multistep history
        // restarts with same-order DIRK steps
        std::vector<MixtureState> history; // newest first
        history.push_back(std::move(state));

        for (int n = 0; n < plan.steps; ++n) {
            MixtureState next =
                (is_bdf && static_cast<int>(history.size()) >= bdf.order)
                    ? step_bdf(history, bdf, plan.dt, grid, species, regime, degree)
                    : step_dirk(history.front(), dirk, plan.dt, grid, species, regime, degree);

            ++step_index;
            StepDiagnostics diag = state_diagnostics(next, grid, species);
            diag.step = step_index;
            diag.dt = plan.dt;
            if (!std::isfinite(diag.energy) || !std::isfinite(diag.min_g1)) {
                throw NumericalError("NonFiniteState: aborting at step " +
                                     std::to_string(step_index));
            }
            result.diagnostics.push_back(std::move(diag));

            history.insert(history.begin(), std::move(next));
            const std::size_t keep = is_bdf ? static_cast<std::size_t>(bdf.order) : 1;
            while (history.size() > keep) history.pop_back();
        }

        state = std::move(history.front());
    }

    result.state = std::move(state);
    return result;
}

} // namespace mixkin
