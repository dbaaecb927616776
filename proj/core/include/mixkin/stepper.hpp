#ifndef MIXKIN_STEPPER_HPP
#define MIXKIN_STEPPER_HPP

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include "mixkin/grid.hpp"
#include "mixkin/moments.hpp"
#include "mixkin/relax.hpp"

namespace mixkin {

/// Butcher table of a stiffly accurate diagonally implicit method
/// (last row of a equals b, nonzero diagonal, c_m = sum_l a_ml).
struct Tableau {
    int stages = 0;
    std::array<std::array<double, 3>, 3> a{};
    std::array<double, 3> b{};
    std::array<double, 3> c{};
    void validate() const;
};

Tableau tableau_implicit_euler();
Tableau tableau_dirk2(); // alpha = 1 - sqrt(2)/2
Tableau tableau_dirk3(); // gamma = 0.4358665215, delta = -0.644363171

/// Backward differentiation formula
///   g^{n+1} = sum_k alpha_k g~^{n+1-k} + beta dt K(g^{n+1}).
struct BdfCoeffs {
    int order = 0;
    std::array<double, 3> alpha{};
    double beta = 0.0;
};

BdfCoeffs bdf2_coeffs(); // (4/3, -1/3; 2/3)
BdfCoeffs bdf3_coeffs(); // (18/11, -9/11, 2/11; 6/11)

/// Grid values of the relaxation operator
///   K_p^s = nu_ss (n M_ss,p - g_p)/eps + sum_{k!=s} nu_sk (n M_sk,p - g_p)/kappa
/// for one stage; same shape as the state it was computed from.
using StageField = MixtureState;

enum class Scheme {
    backward_euler, // QCW23 shifts
    rk2_qcw23,
    rk3_qcw35,
    bdf2_qcw23,
    bdf3_qcw35,
};

Scheme scheme_from_name(std::string_view name); // "BE", "RK2-QCW23", ...
std::string_view scheme_name(Scheme scheme);
int scheme_degree(Scheme scheme);

MixtureState step_backward_euler(const MixtureState& state, double dt, const PhaseGrid& grid,
                                 const SpeciesTable& species, const RegimeParams& regime,
                                 int degree = 2);

MixtureState step_dirk(const MixtureState& state, const Tableau& tableau, double dt,
                       const PhaseGrid& grid, const SpeciesTable& species,
                       const RegimeParams& regime, int degree);

/// history[0] is g^n, history[1] is g^{n-1}, ... All entries must be dt
/// apart; throws NumericalError("HistoryMismatch ...") otherwise.
MixtureState step_bdf(std::span<const MixtureState> history, const BdfCoeffs& coeffs,
                      double dt, const PhaseGrid& grid, const SpeciesTable& species,
                      const RegimeParams& regime, int degree);

struct StepDiagnostics {
    int step = 0;
    double t = 0.0;
    double dt = 0.0;
    std::vector<double> mass; // per species, dx-weighted
    double momentum = 0.0;
    double energy = 0.0;
    double min_g1 = 0.0;
};

struct AdvanceResult {
    MixtureState state;
    std::vector<StepDiagnostics> diagnostics;
};

/// March to t_final along the CFL schedule. BDF schemes bootstrap their
/// history with the matching-order DIRK scheme at the start of every
/// schedule segment (the step size changes there).
AdvanceResult advance(MixtureState state, const TimeControl& control, Scheme scheme,
                      const PhaseGrid& grid, const SpeciesTable& species,
                      const RegimeParams& regime);

StepDiagnostics state_diagnostics(const MixtureState& state, const PhaseGrid& grid,
                                  const SpeciesTable& species);

} // namespace mixkin

#endif
