#ifndef MIXKIN_CSV_HPP
#define MIXKIN_CSV_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixkin/moments.hpp"
#include "mixkin/stepper.hpp"

namespace mixkin {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Header: x,n_1..n_L,u_1..u_L,T_1..T_L,n,rho,u,T,E
void write_moments_csv(const std::string& path, std::span<const double> x_nodes,
                       const MomentField& moments, const SpeciesTable& species);

/// Header: step,t,dt,mass_1..mass_L,momentum,energy,min_g1
void write_diagnostics_csv(const std::string& path, std::span<const StepDiagnostics> rows);

struct ConvergenceRow {
    int nx = 0;
    double error = 0.0;
    std::optional<double> rate;
};

/// Header: Nx,error,rate (rate empty on the last row)
void write_convergence_csv(const std::string& path, std::span<const ConvergenceRow> rows);

} // namespace mixkin

#endif
