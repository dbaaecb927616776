#ifndef MIXKIN_EULER_HPP
#define MIXKIN_EULER_HPP

#include <vector>

#include "mixkin/grid.hpp"
#include "mixkin/moments.hpp"

namespace mixkin {

/// Single velocity and temperature Euler system: per-species number
/// densities advected by a common flow. Components are stored as rows of
/// nx: [0..L-1] n_s, [L] momentum rho u, [L+1] total energy
/// E = rho u^2 / 2 + 3/2 n k_B T.
struct EulerStateSingle {
    int L = 0, nx = 0;
    double time = 0.0;
    std::vector<double> data;

    static EulerStateSingle zeros(int L, int nx);
    int ncomp() const { return L + 2; }
    double* comp(int c) { return data.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(nx); }
    const double* comp(int c) const { return data.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(nx); }
    double* n(int s) { return comp(s); }
    const double* n(int s) const { return comp(s); }
    double* momentum() { return comp(L); }
    const double* momentum() const { return comp(L); }
    double* energy() { return comp(L + 1); }
    const double* energy() const { return comp(L + 1); }
};

/// Multi velocity and temperature Euler system with pairwise relaxation
/// sources. Components per species s: [3s] n_s, [3s+1] rho_s u_s,
/// [3s+2] E_s.
struct EulerStateMulti {
    int L = 0, nx = 0;
    double time = 0.0;
    std::vector<double> data;

    static EulerStateMulti zeros(int L, int nx);
    int ncomp() const { return 3 * L; }
    double* comp(int c) { return data.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(nx); }
    const double* comp(int c) const { return data.data() + static_cast<std::size_t>(c) * static_cast<std::size_t>(nx); }
    double* n(int s) { return comp(3 * s); }
    const double* n(int s) const { return comp(3 * s); }
    double* momentum(int s) { return comp(3 * s + 1); }
    const double* momentum(int s) const { return comp(3 * s + 1); }
    double* energy(int s) { return comp(3 * s + 2); }
    const double* energy(int s) const { return comp(3 * s + 2); }
};

/// Conservative flux divergence with component-wise local Lax-Friedrichs
/// splitting and third-order central WENO reconstruction of the split
/// fluxes. Throws NumericalError("VacuumState ...") on positivity loss.
EulerStateSingle single_euler_rhs(const EulerStateSingle& state, const PhaseGrid& grid,
                                  const SpeciesTable& species);

/// As above plus the interspecies relaxation sources
///   R_sk = lambda_sk m_sk n_s n_k (u_k - u_s),
///   S_sk = lambda_sk m_sk / (m_s + m_k) n_s n_k
///          [(m_s u_s + m_k u_k)(u_k - u_s) + 3 k_B (T_k - T_s)],
/// m_sk = m_s m_k / (m_s + m_k), scaled by 1/kappa.
EulerStateMulti multi_euler_rhs(const EulerStateMulti& state, const PhaseGrid& grid,
                                const SpeciesTable& species, double kappa);

/// Fastest signal speed |u| + sqrt(5 k_B T / (3 rho/n)), maximized over
/// the grid (and species for the multi system).
double max_wave_speed(const EulerStateSingle& state, const SpeciesTable& species);
double max_wave_speed(const EulerStateMulti& state, const SpeciesTable& species);

/// Largest admissible explicit source rate max_s sum_{k != s} lambda_sk n_k.
double source_rate(const EulerStateMulti& state, const SpeciesTable& species);

/// One strong-stability-preserving RK3 step. Throws
/// NumericalError("StepTooLarge ...") if dt violates the convective
/// restriction dt <= 0.5 dx / wavespeed or (multi) the source restriction
/// dt <= 0.5 kappa / source_rate.
EulerStateSingle step_ssp_rk3(const EulerStateSingle& state, double dt, const PhaseGrid& grid,
                              const SpeciesTable& species);
EulerStateMulti step_ssp_rk3(const EulerStateMulti& state, double dt, const PhaseGrid& grid,
                             const SpeciesTable& species, double kappa);

/// March to time_control.t_final with adaptive steps obeying both
/// restrictions; the schedule's CFL multiplies dx / wavespeed.
EulerStateSingle ssp_rk3_advance(EulerStateSingle state, const PhaseGrid& grid,
                                 const SpeciesTable& species, const TimeControl& control);
EulerStateMulti ssp_rk3_advance(EulerStateMulti state, const PhaseGrid& grid,
                                const SpeciesTable& species, const TimeControl& control,
                                double kappa);

/// Macroscopic fields in the same shape the kinetic solver reports.
MomentField euler_moments(const EulerStateSingle& state, const SpeciesTable& species);
MomentField euler_moments(const EulerStateMulti& state, const SpeciesTable& species);

} // namespace mixkin

#endif
