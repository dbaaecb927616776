#include "mixkin/euler.hpp"

#include <cmath>
#include <string>

#include "mixkin/errors.hpp"
#include "mixkin/reconstruct.hpp"

namespace mixkin {

EulerStateSingle EulerStateSingle::zeros(int L, int nx) {
    EulerStateSingle s;
    s.L = L;
    s.nx = nx;
    s.data.assign(static_cast<std::size_t>(L + 2) * static_cast<std::size_t>(nx), 0.0);
    return s;
}

EulerStateMulti EulerStateMulti::zeros(int L, int nx) {
    EulerStateMulti s;
    s.L = L;
    s.nx = nx;
    s.data.assign(static_cast<std::size_t>(3 * L) * static_cast<std::size_t>(nx), 0.0);
    return s;
}

namespace {

struct PrimSingle {
    std::vector<double> rho, u, p;
};

PrimSingle primitives(const EulerStateSingle& st, const SpeciesTable& species) {
    const int L = st.L, nx = st.nx;
    PrimSingle pr;
    pr.rho.assign(static_cast<std::size_t>(nx), 0.0);
    pr.u.resize(static_cast<std::size_t>(nx));
    pr.p.resize(static_cast<std::size_t>(nx));
    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        const double* ns = st.n(s);
        for (int i = 0; i < nx; ++i) {
            if (!(ns[i] > 0.0)) {
                throw NumericalError("VacuumState: n_" + std::to_string(s + 1) + " <= 0 at node " +
                                     std::to_string(i));
            }
            pr.rho[static_cast<std::size_t>(i)] += m_s * ns[i];
        }
    }
    const double* mom = st.momentum();
    const double* en = st.energy();
    for (int i = 0; i < nx; ++i) {
        const double u = mom[i] / pr.rho[static_cast<std::size_t>(i)];
        const double p = (2.0 / 3.0) * (en[i] - 0.5 * mom[i] * u);
        if (!(p > 0.0)) {
            throw NumericalError("VacuumState: nonpositive pressure at node " + std::to_string(i));
        }
        pr.u[static_cast<std::size_t>(i)] = u;
        pr.p[static_cast<std::size_t>(i)] = p;
    }
    return pr;
}

// conservative finite-difference divergence of one component with local
// Lax-Friedrichs splitting: rhs_i -= (Fhat_{i+1/2} - Fhat_{i-1/2})/dx
void llf_divergence(std::span<const double> w, std::span<const double> flux, double alpha,
                    const PhaseGrid& grid, std::span<double> rhs) {
    const int n = static_cast<int>(w.size());
    std::vector<double> fp(static_cast<std::size_t>(n)), fm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        fp[static_cast<std::size_t>(i)] = 0.5 * (flux[static_cast<std::size_t>(i)] + alpha * w[static_cast<std::size_t>(i)]);
        fm[static_cast<std::size_t>(i)] = 0.5 * (flux[static_cast<std::size_t>(i)] - alpha * w[static_cast<std::size_t>(i)]);
    }
    const PolyField rp = cweno_reconstruct(fp, 2, grid.bc);
    const PolyField rm = cweno_reconstruct(fm, 2, grid.bc);

    // interface values indexed by the left cell + 1
    std::vector<double> fhat(static_cast<std::size_t>(n) + 1);
    if (grid.bc == Boundary::periodic) {
        for (int i = 0; i < n; ++i) {
            const int right = (i + 1 == n) ? 0 : i + 1;
            fhat[static_cast<std::size_t>(i) + 1] = rp.point_eval(i, 0.5) + rm.point_eval(right, -0.5);
        }
        fhat[0] = fhat[static_cast<std::size_t>(n)];
    } else {
        for (int i = -1; i < n; ++i) {
            fhat[static_cast<std::size_t>(i + 1)] = rp.point_eval(i, 0.5) + rm.point_eval(i + 1, -0.5);
        }
    }
    const double inv_dx = 1.0 / grid.dx;
    for (int i = 0; i < n; ++i) {
        rhs[static_cast<std::size_t>(i)] -=
            (fhat[static_cast<std::size_t>(i) + 1] - fhat[static_cast<std::size_t>(i)]) * inv_dx;
    }
}

} // namespace

double max_wave_speed(const EulerStateSingle& state, const SpeciesTable& species) {
    const PrimSingle pr = primitives(state, species);
    double a = 0.0;
    for (int i = 0; i < state.nx; ++i) {
        const std::size_t iu = static_cast<std::size_t>(i);
        a = std::max(a, std::fabs(pr.u[iu]) + std::sqrt(5.0 * pr.p[iu] / (3.0 * pr.rho[iu])));
    }
    return a;
}

double max_wave_speed(const EulerStateMulti& state, const SpeciesTable& species) {
    double a = 0.0;
    for (int s = 0; s < state.L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        const double* n = state.n(s);
        const double* mom = state.momentum(s);
        const double* en = state.energy(s);
        for (int i = 0; i < state.nx; ++i) {
            if (!(n[i] > 0.0)) {
                throw NumericalError("VacuumState: n_" + std::to_string(s + 1) + " <= 0 at node " +
                                     std::to_string(i));
            }
            const double rho = m_s * n[i];
            const double u = mom[i] / rho;
            const double p = (2.0 / 3.0) * (en[i] - 0.5 * mom[i] * u);
            if (!(p > 0.0)) {
                throw NumericalError("VacuumState: nonpositive pressure of species " +
                                     std::to_string(s + 1) + " at node " + std::to_string(i));
            }
            a = std::max(a, std::fabs(u) + std::sqrt(5.0 * p / (3.0 * rho)));
        }
    }
    return a;
}

double source_rate(const EulerStateMulti& state, const SpeciesTable& species) {
    double rate = 0.0;
    for (int s = 0; s < state.L; ++s) {
        for (int i = 0; i < state.nx; ++i) {
            double r = 0.0;
            for (int k = 0; k < state.L; ++k) {
                if (k == s) continue;
                r += species.lam(s, k) * state.n(k)[i];
            }
            rate = std::max(rate, r);
        }
    }
    return rate;
}

EulerStateSingle single_euler_rhs(const EulerStateSingle& state, const PhaseGrid& grid,
                                  const SpeciesTable& species) {
    const int L = state.L, nx = state.nx;
    const PrimSingle pr = primitives(state, species);
    double alpha = 0.0;
    for (int i = 0; i < nx; ++i) {
        const std::size_t iu = static_cast<std::size_t>(i);
        alpha = std::max(alpha, std::fabs(pr.u[iu]) + std::sqrt(5.0 * pr.p[iu] / (3.0 * pr.rho[iu])));
    }

    EulerStateSingle rhs = EulerStateSingle::zeros(L, nx);
    std::vector<double> flux(static_cast<std::size_t>(nx));

    for (int s = 0; s < L; ++s) {
        const double* ns = state.n(s);
        for (int i = 0; i < nx; ++i) flux[static_cast<std::size_t>(i)] = ns[i] * pr.u[static_cast<std::size_t>(i)];
        llf_divergence({ns, static_cast<std::size_t>(nx)}, flux, alpha, grid,
                       {rhs.n(s), static_cast<std::size_t>(nx)});
    }
    const double* mom = state.momentum();
    for (int i = 0; i < nx; ++i) {
        flux[static_cast<std::size_t>(i)] = mom[i] * pr.u[static_cast<std::size_t>(i)] + pr.p[static_cast<std::size_t>(i)];
    }
    llf_divergence({mom, static_cast<std::size_t>(nx)}, flux, alpha, grid,
                   {rhs.momentum(), static_cast<std::size_t>(nx)});
    const double* en = state.energy();
    for (int i = 0; i < nx; ++i) {
        flux[static_cast<std::size_t>(i)] =
            (en[i] + pr.p[static_cast<std::size_t>(i)]) * pr.u[static_cast<std::size_t>(i)];
    }
    llf_divergence({en, static_cast<std::size_t>(nx)}, flux, alpha, grid,
                   {rhs.energy(), static_cast<std::size_t>(nx)});
    return rhs;
}

EulerStateMulti multi_euler_rhs(const EulerStateMulti& state, const PhaseGrid& grid,
                                const SpeciesTable& species, double kappa) {
    if (!(kappa > 0.0)) throw ConfigError("multi_euler_rhs: kappa must be positive");
    const int L = state.L, nx = state.nx;
    const double k_b = species.k_b;
    const double alpha = max_wave_speed(state, species);

    EulerStateMulti rhs = EulerStateMulti::zeros(L, nx);
    std::vector<double> flux(static_cast<std::size_t>(nx));
    std::vector<double> u(static_cast<std::size_t>(nx)), p(static_cast<std::size_t>(nx));

    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        const double* n = state.n(s);
        const double* mom = state.momentum(s);
        const double* en = state.energy(s);
        for (int i = 0; i < nx; ++i) {
            const double rho = m_s * n[i];
            u[static_cast<std::size_t>(i)] = mom[i] / rho;
            p[static_cast<std::size_t>(i)] = (2.0 / 3.0) * (en[i] - 0.5 * mom[i] * u[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < nx; ++i) flux[static_cast<std::size_t>(i)] = n[i] * u[static_cast<std::size_t>(i)];
        llf_divergence({n, static_cast<std::size_t>(nx)}, flux, alpha, grid,
                       {rhs.n(s), static_cast<std::size_t>(nx)});
        for (int i = 0; i < nx; ++i) {
            flux[static_cast<std::size_t>(i)] = mom[i] * u[static_cast<std::size_t>(i)] + p[static_cast<std::size_t>(i)];
        }
        llf_divergence({mom, static_cast<std::size_t>(nx)}, flux, alpha, grid,
                       {rhs.momentum(s), static_cast<std::size_t>(nx)});
        for (int i = 0; i < nx; ++i) {
            flux[static_cast<std::size_t>(i)] =
                (en[i] + p[static_cast<std::size_t>(i)]) * u[static_cast<std::size_t>(i)];
        }
        llf_divergence({en, static_cast<std::size_t>(nx)}, flux, alpha, grid,
                       {rhs.energy(s), static_cast<std::size_t>(nx)});
    }

    // pairwise exchange sources, accumulated antisymmetrically
    const double inv_kappa = 1.0 / kappa;
    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        for (int k = s + 1; k < L; ++k) {
            const double m_k = species.mass[static_cast<std::size_t>(k)];
            const double lam = species.lam(s, k);
            if (lam == 0.0) continue;
            const double m_sk = m_s * m_k / (m_s + m_k);
            for (int i = 0; i < nx; ++i) {
                const double n_s = state.n(s)[i], n_k = state.n(k)[i];
                const double u_s = state.momentum(s)[i] / (m_s * n_s);
                const double u_k = state.momentum(k)[i] / (m_k * n_k);
                const double T_s =
                    (2.0 / 3.0) * (state.energy(s)[i] - 0.5 * state.momentum(s)[i] * u_s) / (n_s * k_b);
                const double T_k =
                    (2.0 / 3.0) * (state.energy(k)[i] - 0.5 * state.momentum(k)[i] * u_k) / (n_k * k_b);
                const double du = u_k - u_s;
                const double R = lam * m_sk * n_s * n_k * du;
                const double S = lam * m_sk / (m_s + m_k) * n_s * n_k *
                                 ((m_s * u_s + m_k * u_k) * du + 3.0 * k_b * (T_k - T_s));
                rhs.momentum(s)[i] += inv_kappa * R;
                rhs.momentum(k)[i] -= inv_kappa * R;
                rhs.energy(s)[i] += inv_kappa * S;
                rhs.energy(k)[i] -= inv_kappa * S;
            }
        }
    }
    return rhs;
}

namespace {

template <class State, class RhsFn>
State ssp_rk3_generic(const State& u0, double dt, const RhsFn& rhs_of) {
    State u1 = u0;
    {
        const State r = rhs_of(u0);
        for (std::size_t q = 0; q < u1.data.size(); ++q) u1.data[q] += dt * r.data[q];
    }
    State u2 = u1;
    {
        const State r = rhs_of(u1);
        for (std::size_t q = 0; q < u2.data.size(); ++q) {
            u2.data[q] = 0.75 * u0.data[q] + 0.25 * (u1.data[q] + dt * r.data[q]);
        }
    }
    State out = u2;
    {
        const State r = rhs_of(u2);
        for (std::size_t q = 0; q < out.data.size(); ++q) {
            out.data[q] = (1.0 / 3.0) * u0.data[q] + (2.0 / 3.0) * (u2.data[q] + dt * r.data[q]);
        }
    }
    out.time = u0.time + dt;
    return out;
}

} // namespace

EulerStateSingle step_ssp_rk3(const EulerStateSingle& state, double dt, const PhaseGrid& grid,
                              const SpeciesTable& species) {
    const double limit = 0.5 * grid.dx / max_wave_speed(state, species);
    if (dt > limit * (1.0 + 1e-12)) {
        throw NumericalError("StepTooLarge: dt " + std::to_string(dt) + " exceeds " +
                             std::to_string(limit));
    }
    return ssp_rk3_generic(state, dt,
                           [&](const EulerStateSingle& s) { return single_euler_rhs(s, grid, species); });
}

EulerStateMulti step_ssp_rk3(const EulerStateMulti& state, double dt, const PhaseGrid& grid,
                             const SpeciesTable& species, double kappa) {
    const double conv = 0.5 * grid.dx / max_wave_speed(state, species);
    if (dt > conv * (1.0 + 1e-12)) {
        throw NumericalError("StepTooLarge: dt " + std::to_string(dt) + " exceeds " +
                             std::to_string(conv));
    }
    const double rate = source_rate(state, species);
    if (rate > 0.0 && dt > 0.5 * kappa / rate * (1.0 + 1e-12)) {
        throw NumericalError("StepTooLarge: dt " + std::to_string(dt) +
                             " exceeds the source restriction " + std::to_string(0.5 * kappa / rate));
    }
    return ssp_rk3_generic(state, dt, [&](const EulerStateMulti& s) {
        return multi_euler_rhs(s, grid, species, kappa);
    });
}

namespace {

double schedule_cfl(const TimeControl& control, double t) {
    for (const auto& seg : control.schedule) {
        if (t < seg.t_end * (1.0 - 1e-14)) return seg.cfl;
    }
    return control.schedule.back().cfl;
}

} // namespace

EulerStateSingle ssp_rk3_advance(EulerStateSingle state, const PhaseGrid& grid,
                                 const SpeciesTable& species, const TimeControl& control) {
    control.validate();
    const double t_final = control.t_final;
    while (state.time < t_final * (1.0 - 1e-14)) {
        const double cfl = std::min(schedule_cfl(control, state.time), 0.5);
        double dt = cfl * grid.dx / max_wave_speed(state, species);
        if (control.dt_cap) dt = std::min(dt, *control.dt_cap);
        dt = std::min(dt, t_final - state.time);
        state = step_ssp_rk3(state, dt, grid, species);
    }
    return state;
}

EulerStateMulti ssp_rk3_advance(EulerStateMulti state, const PhaseGrid& grid,
                                const SpeciesTable& species, const TimeControl& control,
                                double kappa) {
    control.validate();
    const double t_final = control.t_final;
    while (state.time < t_final * (1.0 - 1e-14)) {
        const double cfl = std::min(schedule_cfl(control, state.time), 0.5);
        double dt = cfl * grid.dx / max_wave_speed(state, species);
        const double rate = source_rate(state, species);
        if (rate > 0.0) dt = std::min(dt, 0.5 * kappa / rate);
        if (control.dt_cap) dt = std::min(dt, *control.dt_cap);
        dt = std::min(dt, t_final - state.time);
        state = step_ssp_rk3(state, dt, grid, species, kappa);
    }
    return state;
}

MomentField euler_moments(const EulerStateSingle& state, const SpeciesTable& species) {
    const int L = state.L, nx = state.nx;
    MomentField mom = MomentField::zeros(L, nx);
    const PrimSingle pr = primitives(state, species);
    for (int i = 0; i < nx; ++i) {
        const std::size_t iu = static_cast<std::size_t>(i);
        double n_tot = 0.0;
        for (int s = 0; s < L; ++s) n_tot += state.n(s)[i];
        const double T = pr.p[iu] / (n_tot * species.k_b);
        for (int s = 0; s < L; ++s) {
            mom.n[mom.idx(s, i)] = state.n(s)[i];
            mom.u[mom.idx(s, i)] = pr.u[iu];
            mom.T[mom.idx(s, i)] = T;
        }
    }
    mom.update_globals(species);
    return mom;
}

MomentField euler_moments(const EulerStateMulti& state, const SpeciesTable& species) {
    const int L = state.L, nx = state.nx;
    MomentField mom = MomentField::zeros(L, nx);
    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        for (int i = 0; i < nx; ++i) {
            const double n = state.n(s)[i];
            const double u = state.momentum(s)[i] / (m_s * n);
            const double T =
                (2.0 / 3.0) * (state.energy(s)[i] - 0.5 * state.momentum(s)[i] * u) / (n * species.k_b);
            mom.n[mom.idx(s, i)] = n;
            mom.u[mom.idx(s, i)] = u;
            mom.T[mom.idx(s, i)] = T;
        }
    }
    mom.update_globals(species);
    return mom;
}

} // namespace mixkin
