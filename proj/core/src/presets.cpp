#include <cmath>
#include <string>

#include "mixkin/errors.hpp"
#include "mixkin/harness.hpp"

namespace mixkin {

Preset preset_from_name(std::string_view name) {
    if (name == "accuracy") return Preset::accuracy;
    if (name == "indiff_single") return Preset::indiff_single;
    if (name == "indiff_four") return Preset::indiff_four;
    if (name == "riemann_kinetic") return Preset::riemann_kinetic;
    if (name == "riemann_euler_single") return Preset::riemann_euler_single;
    if (name == "riemann_euler_multi") return Preset::riemann_euler_multi;
    if (name == "custom") return Preset::custom;
    throw ConfigError("unknown preset '" + std::string(name) + "'");
}

std::string_view preset_name(Preset preset) {
    switch (preset) {
        case Preset::accuracy: return "accuracy";
        case Preset::indiff_single: return "indiff_single";
        case Preset::indiff_four: return "indiff_four";
        case Preset::riemann_kinetic: return "riemann_kinetic";
        case Preset::riemann_euler_single: return "riemann_euler_single";
        case Preset::riemann_euler_multi: return "riemann_euler_multi";
        case Preset::custom: return "custom";
    }
    throw ConfigError("unknown preset");
}

namespace {

SpeciesTable four_gas_species() {
    SpeciesTable t;
    t.mass = {58.5, 18.0, 40.0, 36.5};
    t.lambda = {5.0, 6.0, 2.0, 7.0, //
                6.0, 4.0, 5.0, 8.0, //
                2.0, 5.0, 4.0, 3.0, //
                7.0, 8.0, 3.0, 6.0};
    return t;
}

SpeciesTable indiff_single_species() {
    SpeciesTable t;
    t.mass = {58.5};
    t.lambda = {5.0};
    return t;
}

SpeciesTable indiff_four_species() {
    SpeciesTable t;
    t.mass = {58.5, 58.5, 58.5, 58.5};
    t.lambda.assign(16, 5.0);
    return t;
}

TimeControl staged_schedule(double t_final) {
    TimeControl tc;
    tc.t_final = t_final;
    // gentle start for not-well-prepared initial data, then large steps
    tc.schedule = {CflSegment{0.02, 0.2}, CflSegment{t_final, 2.0}};
    return tc;
}

double indiff_velocity(double x) {
    const double a = 10.0 * x - 1.0 + 1.0 / 3.0;
    const double b = 10.0 * x + 3.0 - 1.0 / 10.0;
    return 0.1 * (std::exp(-a * a) - 2.0 * std::exp(-b * b));
}

// the four-species RHS of the smooth accuracy data; s is 1-based
double accuracy_velocity(int s, double x) {
    static const double sigma[4] = {10.0, 13.0, 16.0, 19.0};
    const double sg = sigma[s - 1];
    const double a = sg * x - 1.0 + s / 3.0;
    const double b = sg * x + 3.0 - s / 10.0;
    return s / sg * (std::exp(-a * a) + std::exp(-b * b));
}

struct RiemannInit {
    // global (rho, u, p) and the species mass-density split on each side
    static constexpr double p_left = 5.0 / 3.0;
    static constexpr double p_right = 1.0 / 6.0;
    static constexpr double rho_frac[4] = {0.1, 0.2, 0.3, 0.4};
    static constexpr double right_scale = 1.0 / 8.0;
    static constexpr double x_jump = 0.5;
};

} // namespace

ExperimentConfig preset_config(Preset preset) {
    ExperimentConfig c;
    c.preset = preset;
    switch (preset) {
        case Preset::accuracy:
            c.species = four_gas_species();
            c.scheme = Scheme::bdf3_qcw35;
            c.regime = {1e-2, 1e-2};
            c.grid.nx = 80;
            c.grid.bc = Boundary::periodic;
            c.time = TimeControl::single(0.2, 2.0);
            break;
        case Preset::indiff_single:
            c.species = indiff_single_species();
            c.scheme = Scheme::bdf3_qcw35;
            c.regime = {1e-2, 1e-2};
            c.grid.nx = 200;
            c.grid.bc = Boundary::periodic;
            c.time = staged_schedule(0.2);
            break;
        case Preset::indiff_four:
            c.species = indiff_four_species();
            c.scheme = Scheme::bdf3_qcw35;
            c.regime = {1e-2, 1e-2};
            c.grid.nx = 200;
            c.grid.bc = Boundary::periodic;
            c.time = staged_schedule(0.2);
            break;
        case Preset::riemann_kinetic:
            c.species = four_gas_species();
            c.scheme = Scheme::bdf3_qcw35;
            c.regime = {1e-6, 1e-6};
            c.grid.nx = 200;
            c.grid.bc = Boundary::freeflow;
            c.time = staged_schedule(0.2);
            break;
        case Preset::riemann_euler_single:
        case Preset::riemann_euler_multi:
            c.species = four_gas_species();
            c.regime = {1e-6, 1e-2};
            c.grid.nx = 2000;
            c.grid.bc = Boundary::freeflow;
            c.time = TimeControl::single(0.2, 0.5);
            break;
        case Preset::custom:
            c.species = indiff_single_species();
            c.regime = {1e-2, 1e-2};
            c.grid.nx = 200;
            c.time = TimeControl::single(0.1, 2.0);
            break;
    }
    c.species.k_b = 1.0;
    return c;
}

namespace {

void fill_maxwellian_column(MixtureState& st, const PhaseGrid& grid, int s, int i, double n,
                            double u, double T, double mass, double k_b) {
    const int nv = st.nv;
    std::vector<double> m1(static_cast<std::size_t>(nv)), m2(static_cast<std::size_t>(nv));
    maxwellian_pair(u, T, mass, k_b, grid.v_nodes, m1, m2);
    for (int j = 0; j < nv; ++j) {
        st.at(s, 0, j, i) = n * m1[static_cast<std::size_t>(j)];
        st.at(s, 1, j, i) = n * m2[static_cast<std::size_t>(j)];
    }
}

void riemann_macros(const SpeciesTable& species, double x, std::vector<double>& n_s, double& T) {
    const int L = species.count();
    const bool left = x < RiemannInit::x_jump;
    const double scale = left ? 1.0 : RiemannInit::right_scale;
    const double p = left ? RiemannInit::p_left : RiemannInit::p_right;
    n_s.resize(static_cast<std::size_t>(L));
    double n_tot = 0.0;
    for (int s = 0; s < L; ++s) {
        n_s[static_cast<std::size_t>(s)] =
            scale * RiemannInit::rho_frac[s] / species.mass[static_cast<std::size_t>(s)];
        n_tot += n_s[static_cast<std::size_t>(s)];
    }
    T = p / (n_tot * species.k_b);
}

} // namespace

MixtureState initial_state(const ExperimentConfig& config, const PhaseGrid& grid) {
    const SpeciesTable& species = config.species;
    const int L = species.count();
    MixtureState st = MixtureState::zeros(L, grid.nv(), grid.nx());

    switch (config.preset) {
        case Preset::accuracy: {
            double n_sum = 0.0;
            for (int s = 0; s < L; ++s) n_sum += 1.0 / species.mass[static_cast<std::size_t>(s)];
            const double T0 = 4.0 / n_sum;
            for (int s = 0; s < L; ++s) {
                const double m_s = species.mass[static_cast<std::size_t>(s)];
                for (int i = 0; i < grid.nx(); ++i) {
                    const double x = grid.x_nodes[static_cast<std::size_t>(i)];
                    fill_maxwellian_column(st, grid, s, i, 1.0 / m_s, accuracy_velocity(s + 1, x),
                                           T0, m_s, species.k_b);
                }
            }
            break;
        }
        case Preset::indiff_single: {
            const double m = species.mass[0];
            const double n0 = 4.0 / m;
            const double T0 = 4.0 / n0;
            for (int i = 0; i < grid.nx(); ++i) {
                const double x = grid.x_nodes[static_cast<std::size_t>(i)];
                fill_maxwellian_column(st, grid, 0, i, n0, indiff_velocity(x), T0, m, species.k_b);
            }
            break;
        }
        case Preset::indiff_four: {
            const double m = species.mass[0];
            const double n0 = 1.0 / m;
            const double T0 = 4.0 / (4.0 * n0);
            for (int s = 0; s < L; ++s) {
                for (int i = 0; i < grid.nx(); ++i) {
                    const double x = grid.x_nodes[static_cast<std::size_t>(i)];
                    fill_maxwellian_column(st, grid, s, i, n0, indiff_velocity(x), T0, m,
                                           species.k_b);
                }
            }
            break;
        }
        case Preset::riemann_kinetic: {
            std::vector<double> n_s;
            double T = 0.0;
            for (int i = 0; i < grid.nx(); ++i) {
                const double x = grid.x_nodes[static_cast<std::size_t>(i)];
                riemann_macros(species, x, n_s, T);
                for (int s = 0; s < L; ++s) {
                    fill_maxwellian_column(st, grid, s, i, n_s[static_cast<std::size_t>(s)], 0.0, T,
                                           species.mass[static_cast<std::size_t>(s)], species.k_b);
                }
            }
            break;
        }
        case Preset::custom: {
            if (static_cast<int>(config.custom_pieces.size()) != L) {
                throw ConfigError("custom preset: pieces must list every species");
            }
            for (int s = 0; s < L; ++s) {
                const auto& pieces = config.custom_pieces[static_cast<std::size_t>(s)];
                if (pieces.empty()) throw ConfigError("custom preset: empty piece list");
                for (int i = 0; i < grid.nx(); ++i) {
                    const double x = grid.x_nodes[static_cast<std::size_t>(i)];
                    const MaxwellianPiece* piece = &pieces.back();
                    for (const auto& p : pieces) {
                        if (x < p.x_end) {
                            piece = &p;
                            break;
                        }
                    }
                    fill_maxwellian_column(st, grid, s, i, piece->n, piece->u, piece->T,
                                           species.mass[static_cast<std::size_t>(s)], species.k_b);
                }
            }
            break;
        }
        case Preset::riemann_euler_single:
        case Preset::riemann_euler_multi:
            throw ConfigError("initial_state: Euler presets have no kinetic state");
    }
    return st;
}

EulerStateSingle initial_euler_single(const ExperimentConfig& config, const PhaseGrid& grid) {
    const SpeciesTable& species = config.species;
    const int L = species.count();
    EulerStateSingle st = EulerStateSingle::zeros(L, grid.nx());
    std::vector<double> n_s;
    double T = 0.0;
    for (int i = 0; i < grid.nx(); ++i) {
        const double x = grid.x_nodes[static_cast<std::size_t>(i)];
        riemann_macros(species, x, n_s, T);
        double n_tot = 0.0;
        for (int s = 0; s < L; ++s) {
            st.n(s)[i] = n_s[static_cast<std::size_t>(s)];
            n_tot += n_s[static_cast<std::size_t>(s)];
        }
        st.momentum()[i] = 0.0;
        st.energy()[i] = 1.5 * n_tot * species.k_b * T;
    }
    return st;
}

EulerStateMulti initial_euler_multi(const ExperimentConfig& config, const PhaseGrid& grid) {
    const SpeciesTable& species = config.species;
    const int L = species.count();
    EulerStateMulti st = EulerStateMulti::zeros(L, grid.nx());
    std::vector<double> n_s;
    double T = 0.0;
    for (int i = 0; i < grid.nx(); ++i) {
        const double x = grid.x_nodes[static_cast<std::size_t>(i)];
        riemann_macros(species, x, n_s, T);
        for (int s = 0; s < L; ++s) {
            st.n(s)[i] = n_s[static_cast<std::size_t>(s)];
            st.momentum(s)[i] = 0.0;
            st.energy(s)[i] = 1.5 * n_s[static_cast<std::size_t>(s)] * species.k_b * T;
        }
    }
    return st;
}

} // namespace mixkin
