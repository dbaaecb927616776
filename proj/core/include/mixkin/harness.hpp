#ifndef MIXKIN_HARNESS_HPP
#define MIXKIN_HARNESS_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include "mixkin/csv.hpp"
#include "mixkin/euler.hpp"
#include "mixkin/grid.hpp"
#include "mixkin/moments.hpp"
#include "mixkin/relax.hpp"
#include "mixkin/stepper.hpp"

namespace mixkin {

enum class Preset {
    accuracy,            // four-gas smooth periodic bump
    indiff_single,       // one gas, indifferentiability reference
    indiff_four,         // four identical gases, same total density
    riemann_kinetic,     // four-gas Riemann problem, kinetic solver
    riemann_euler_single, // Riemann reference, common-(u,T) Euler system
    riemann_euler_multi, // Riemann reference, per-species Euler system
    custom,              // user supplied piecewise-constant Maxwellians
};

Preset preset_from_name(std::string_view name);
std::string_view preset_name(Preset preset);

struct GridParams {
    std::array<double, 2> x_domain{-1.0, 1.0};
    int nx = 200;
    Boundary bc = Boundary::periodic;
    std::array<double, 2> v_domain{-15.0, 15.0};
    int nv = 60;

    PhaseGrid build() const { return build_grid(x_domain, nx, bc, v_domain, nv); }
};

/// One constant-state region per species: Maxwellian data (n, u, T) on
/// x < x_end, regions ordered left to right, the last x_end covering the
/// whole domain.
struct MaxwellianPiece {
    double x_end = 0.0;
    double n = 1.0;
    double u = 0.0;
    double T = 1.0;
};

struct ExperimentConfig {
    Preset preset = Preset::accuracy;
    Scheme scheme = Scheme::bdf3_qcw35;
    RegimeParams regime{1e-2, 1e-2};
    GridParams grid;
    TimeControl time;
    SpeciesTable species;
    std::string output_dir = "out";
    bool serial = false;
    bool plots = false;
    std::vector<std::vector<MaxwellianPiece>> custom_pieces; // per species

    void validate() const;
};

/// Fully populated defaults for a preset (grid, schedule, species, regime).
ExperimentConfig preset_config(Preset preset);

/// Parse a JSON config document. Keys absent fall back to the preset
/// defaults; unknown keys are rejected with their path.
ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config_file(const std::string& path);

/// Serialized resolved configuration (written as run_meta.json).
std::string describe_config(const ExperimentConfig& config);

/// Maxwellian initial data of the preset on the given grid.
MixtureState initial_state(const ExperimentConfig& config, const PhaseGrid& grid);

/// Riemann initial data for the Euler reference solvers (all species at
/// rest at the common temperature T = p / (n k_B)).
EulerStateSingle initial_euler_single(const ExperimentConfig& config, const PhaseGrid& grid);
EulerStateMulti initial_euler_multi(const ExperimentConfig& config, const PhaseGrid& grid);

struct KineticRun {
    PhaseGrid grid;
    MixtureState state;
    MomentField moments;
    std::vector<StepDiagnostics> diagnostics;
};

KineticRun run_kinetic(const ExperimentConfig& config);

struct EulerRun {
    PhaseGrid grid;
    MomentField moments;
};

EulerRun run_euler(const ExperimentConfig& config);

struct RunArtifacts {
    std::string dir;
    std::vector<std::string> files;
};

/// Execute a config end to end and write its artifacts (moments.csv,
/// diagnostics.csv for kinetic runs, run_meta.json, optional SVG charts).
RunArtifacts run_preset(const ExperimentConfig& config);

/// Relative L1 distance sum|a - b| / sum|b|.
double l1_rel(std::span<const double> a, std::span<const double> b);

/// Self-convergence table on the global number density: the error at Nx
/// compares the run at the next resolution restricted to the Nx grid
/// against the run at Nx; rate_r = log2(err_r / err_{r+1}).
std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& base, Scheme scheme,
                                              const std::vector<int>& resolutions,
                                              const RegimeParams& regime);

/// Restriction of a nodal field on a doubled grid to the coarse one
/// (identity when sizes match). Periodic node layouts nest exactly.
std::vector<double> restrict_to_coarse(std::span<const double> fine, int coarse_nx);

/// Discrepancy rows (n, u, T) between the four-identical-gas mixture and
/// the single-gas reference; written by the indiff subcommand.
struct IndiffResult {
    double n_discrepancy = 0.0;
    double u_discrepancy = 0.0;
    double T_discrepancy = 0.0;
};

IndiffResult indiff_discrepancy(const KineticRun& four, const KineticRun& single);

} // namespace mixkin

#endif
