#include "mixkin/harness.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mixkin/errors.hpp"
#include "mixkin/parallel.hpp"
#include "mixkin/svg.hpp"

namespace mixkin {

using nlohmann::json;

void ExperimentConfig::validate() const {
    species.validate();
    regime.validate();
    time.validate();
    if (preset == Preset::custom && custom_pieces.empty()) {
        throw ConfigError("custom preset requires the 'custom' section");
    }
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& path) {
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError("unknown config key '" + path + item.key() + "'");
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
    return obj[key].get<double>();
}

int get_int(const json& obj, const char* key, int fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_integer()) throw ConfigError(std::string("config key '") + key + "' must be an integer");
    return obj[key].get<int>();
}

void parse_grid(const json& g, GridParams& out) {
    reject_unknown_keys(g, {"x_min", "x_max", "nx", "bc", "v_min", "v_max", "nv"}, "grid.");
    out.x_domain[0] = get_number(g, "x_min", out.x_domain[0]);
    out.x_domain[1] = get_number(g, "x_max", out.x_domain[1]);
    out.nx = get_int(g, "nx", out.nx);
    out.v_domain[0] = get_number(g, "v_min", out.v_domain[0]);
    out.v_domain[1] = get_number(g, "v_max", out.v_domain[1]);
    out.nv = get_int(g, "nv", out.nv);
    if (g.contains("bc")) {
        const std::string bc = g["bc"].get<std::string>();
        if (bc == "periodic") {
            out.bc = Boundary::periodic;
        } else if (bc == "freeflow") {
            out.bc = Boundary::freeflow;
        } else {
            throw ConfigError("grid.bc must be 'periodic' or 'freeflow', got '" + bc + "'");
        }
    }
}

void parse_time(const json& t, TimeControl& out) {
    reject_unknown_keys(t, {"t_final", "cfl_schedule", "dt_cap"}, "time.");
    out.t_final = get_number(t, "t_final", out.t_final);
    if (t.contains("cfl_schedule")) {
        if (!t["cfl_schedule"].is_array()) throw ConfigError("time.cfl_schedule must be an array");
        out.schedule.clear();
        for (const auto& seg : t["cfl_schedule"]) {
            reject_unknown_keys(seg, {"t_end", "cfl"}, "time.cfl_schedule.");
            if (!seg.contains("t_end") || !seg.contains("cfl")) {
                throw ConfigError("time.cfl_schedule entries need t_end and cfl");
            }
            out.schedule.push_back(CflSegment{seg["t_end"].get<double>(), seg["cfl"].get<double>()});
        }
    } else if (!out.schedule.empty()) {
        // keep the preset's schedule shape but follow a changed t_final
        out.schedule.back().t_end = out.t_final;
    }
    if (t.contains("dt_cap")) {
        if (t["dt_cap"].is_null()) {
            out.dt_cap.reset();
        } else {
            out.dt_cap = t["dt_cap"].get<double>();
        }
    }
}

void parse_species(const json& s, SpeciesTable& out) {
    reject_unknown_keys(s, {"masses", "lambda", "k_b"}, "species.");
    if (s.contains("masses")) out.mass = s["masses"].get<std::vector<double>>();
    if (s.contains("lambda")) {
        const auto rows = s["lambda"].get<std::vector<std::vector<double>>>();
        out.lambda.clear();
        for (const auto& row : rows) {
            if (row.size() != rows.size()) throw ConfigError("species.lambda must be square");
            out.lambda.insert(out.lambda.end(), row.begin(), row.end());
        }
    }
    out.k_b = get_number(s, "k_b", out.k_b);
}

void parse_custom(const json& c, ExperimentConfig& out) {
    reject_unknown_keys(c, {"pieces"}, "custom.");
    if (!c.contains("pieces") || !c["pieces"].is_array()) {
        throw ConfigError("custom.pieces must be an array of per-species piece lists");
    }
    out.custom_pieces.clear();
    for (const auto& plist : c["pieces"]) {
        std::vector<MaxwellianPiece> pieces;
        for (const auto& p : plist) {
            reject_unknown_keys(p, {"x_end", "n", "u", "T"}, "custom.pieces.");
            MaxwellianPiece piece;
            piece.x_end = get_number(p, "x_end", piece.x_end);
            piece.n = get_number(p, "n", piece.n);
            piece.u = get_number(p, "u", piece.u);
            piece.T = get_number(p, "T", piece.T);
            pieces.push_back(piece);
        }
        out.custom_pieces.push_back(std::move(pieces));
    }
}

} // namespace

ExperimentConfig parse_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    reject_unknown_keys(j,
                        {"preset", "scheme", "epsilon", "kappa", "grid", "time", "species",
                         "output_dir", "serial", "plots", "custom"},
                        "");
    if (!j.contains("preset")) throw ConfigError("config requires a 'preset'");

    ExperimentConfig cfg = preset_config(preset_from_name(j["preset"].get<std::string>()));
    if (j.contains("scheme")) cfg.scheme = scheme_from_name(j["scheme"].get<std::string>());
    cfg.regime.epsilon = get_number(j, "epsilon", cfg.regime.epsilon);
    cfg.regime.kappa = get_number(j, "kappa", cfg.regime.kappa);
    if (j.contains("grid")) parse_grid(j["grid"], cfg.grid);
    if (j.contains("time")) parse_time(j["time"], cfg.time);
    if (j.contains("species")) parse_species(j["species"], cfg.species);
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("serial")) cfg.serial = j["serial"].get<bool>();
    if (j.contains("plots")) cfg.plots = j["plots"].get<bool>();
    if (j.contains("custom")) parse_custom(j["custom"], cfg);

    cfg.validate();
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string describe_config(const ExperimentConfig& config) {
    json j;
    j["preset"] = std::string(preset_name(config.preset));
    j["scheme"] = std::string(scheme_name(config.scheme));
    j["epsilon"] = config.regime.epsilon;
    j["kappa"] = config.regime.kappa;
    j["grid"] = {{"x_min", config.grid.x_domain[0]}, {"x_max", config.grid.x_domain[1]},
                 {"nx", config.grid.nx},
                 {"bc", config.grid.bc == Boundary::periodic ? "periodic" : "freeflow"},
                 {"v_min", config.grid.v_domain[0]}, {"v_max", config.grid.v_domain[1]},
                 {"nv", config.grid.nv}};
    json sched = json::array();
    for (const auto& seg : config.time.schedule) {
        sched.push_back({{"t_end", seg.t_end}, {"cfl", seg.cfl}});
    }
    j["time"] = {{"t_final", config.time.t_final}, {"cfl_schedule", sched}};
    if (config.time.dt_cap) j["time"]["dt_cap"] = *config.time.dt_cap;
    json lam = json::array();
    const int L = config.species.count();
    for (int s = 0; s < L; ++s) {
        json row = json::array();
        for (int k = 0; k < L; ++k) row.push_back(config.species.lam(s, k));
        lam.push_back(row);
    }
    j["species"] = {{"masses", config.species.mass}, {"lambda", lam}, {"k_b", config.species.k_b}};
    j["serial"] = config.serial;
    return j.dump(2) + "\n";
}

KineticRun run_kinetic(const ExperimentConfig& config) {
    config.validate();
    if (config.preset == Preset::riemann_euler_single ||
        config.preset == Preset::riemann_euler_multi) {
        throw ConfigError("run_kinetic: Euler presets run through run_euler");
    }
    KineticRun run;
    run.grid = config.grid.build();
    MixtureState init = initial_state(config, run.grid);
    AdvanceResult res =
        advance(std::move(init), config.time, config.scheme, run.grid, config.species, config.regime);
    run.moments = compute_moments(res.state, run.grid, config.species);
    run.state = std::move(res.state);
    run.diagnostics = std::move(res.diagnostics);
    return run;
}

EulerRun run_euler(const ExperimentConfig& config) {
    config.validate();
    EulerRun run;
    run.grid = config.grid.build();
    if (config.preset == Preset::riemann_euler_single) {
        EulerStateSingle st = initial_euler_single(config, run.grid);
        st = ssp_rk3_advance(std::move(st), run.grid, config.species, config.time);
        run.moments = euler_moments(st, config.species);
    } else if (config.preset == Preset::riemann_euler_multi) {
        EulerStateMulti st = initial_euler_multi(config, run.grid);
        st = ssp_rk3_advance(std::move(st), run.grid, config.species, config.time,
                             config.regime.kappa);
        run.moments = euler_moments(st, config.species);
    } else {
        throw ConfigError("run_euler: preset is not an Euler reference");
    }
    return run;
}

namespace {

void emit_moment_plots(const std::string& dir, const PhaseGrid& grid, const MomentField& mom,
                       RunArtifacts& artifacts) {
    std::vector<double> x(grid.x_nodes.begin(), grid.x_nodes.end());
    const int L = mom.L;
    std::vector<SvgSeries> nser, user, tser;
    for (int s = 0; s < L; ++s) {
        SvgSeries sn{"n_" + std::to_string(s + 1), {}};
        SvgSeries su{"u_" + std::to_string(s + 1), {}};
        SvgSeries st{"T_" + std::to_string(s + 1), {}};
        for (int i = 0; i < mom.nx; ++i) {
            sn.y.push_back(mom.n[mom.idx(s, i)]);
            su.y.push_back(mom.u[mom.idx(s, i)]);
            st.y.push_back(mom.T[mom.idx(s, i)]);
        }
        nser.push_back(std::move(sn));
        user.push_back(std::move(su));
        tser.push_back(std::move(st));
    }
    const std::string fn = dir + "/density.svg";
    write_svg_chart(fn, "number density", x, nser);
    artifacts.files.push_back(fn);
    const std::string fu = dir + "/velocity.svg";
    write_svg_chart(fu, "velocity", x, user);
    artifacts.files.push_back(fu);
    const std::string ft = dir + "/temperature.svg";
    write_svg_chart(ft, "temperature", x, tser);
    artifacts.files.push_back(ft);
}

} // namespace

RunArtifacts run_preset(const ExperimentConfig& config) {
    config.validate();
    set_thread_count(config.serial ? 1 : 0);
    std::filesystem::create_directories(config.output_dir);

    RunArtifacts artifacts;
    artifacts.dir = config.output_dir;

    const std::string meta = config.output_dir + "/run_meta.json";
    {
        std::ofstream out(meta, std::ios::binary);
        if (!out) throw ConfigError("cannot open '" + meta + "' for writing");
        out << describe_config(config);
    }
    artifacts.files.push_back(meta);

    if (config.preset == Preset::riemann_euler_single ||
        config.preset == Preset::riemann_euler_multi) {
        EulerRun run = run_euler(config);
        const std::string mpath = config.output_dir + "/moments.csv";
        write_moments_csv(mpath, run.grid.x_nodes, run.moments, config.species);
        artifacts.files.push_back(mpath);
        if (config.plots) emit_moment_plots(config.output_dir, run.grid, run.moments, artifacts);
        return artifacts;
    }

    KineticRun run = run_kinetic(config);
    const std::string mpath = config.output_dir + "/moments.csv";
    write_moments_csv(mpath, run.grid.x_nodes, run.moments, config.species);
    artifacts.files.push_back(mpath);
    const std::string dpath = config.output_dir + "/diagnostics.csv";
    write_diagnostics_csv(dpath, run.diagnostics);
    artifacts.files.push_back(dpath);
    if (config.plots) emit_moment_plots(config.output_dir, run.grid, run.moments, artifacts);
    return artifacts;
}

double l1_rel(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ConfigError("LengthMismatch: l1_rel over rows of length " + std::to_string(a.size()) +
                          " and " + std::to_string(b.size()));
    }
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        num += std::fabs(a[i] - b[i]);
        den += std::fabs(b[i]);
    }
    if (den == 0.0) throw ConfigError("ZeroReference: l1_rel reference row is zero");
    return num / den;
}

std::vector<double> restrict_to_coarse(std::span<const double> fine, int coarse_nx) {
    const int fn = static_cast<int>(fine.size());
    if (fn == coarse_nx) return std::vector<double>(fine.begin(), fine.end());
    if (fn != 2 * coarse_nx) {
        throw ConfigError("restrict_to_coarse: " + std::to_string(fn) + " does not refine " +
                          std::to_string(coarse_nx));
    }
    std::vector<double> out(static_cast<std::size_t>(coarse_nx));
    for (int i = 0; i < coarse_nx; ++i) out[static_cast<std::size_t>(i)] = fine[static_cast<std::size_t>(2 * i)];
    return out;
}

std::vector<ConvergenceRow> convergence_table(const ExperimentConfig& base, Scheme scheme,
                                              const std::vector<int>& resolutions,
                                              const RegimeParams& regime) {
    if (resolutions.size() < 2) throw ConfigError("convergence_table: need at least two resolutions");
    if (base.grid.bc != Boundary::periodic) {
        throw ConfigError("convergence_table: only periodic node layouts nest under refinement");
    }

    std::vector<std::vector<double>> n_fields;
    for (int nx : resolutions) {
        ExperimentConfig cfg = base;
        cfg.scheme = scheme;
        cfg.regime = regime;
        cfg.grid.nx = nx;
        KineticRun run = run_kinetic(cfg);
        n_fields.push_back(run.moments.n_tot);
    }

    std::vector<ConvergenceRow> rows;
    for (std::size_t r = 0; r + 1 < resolutions.size(); ++r) {
        const std::vector<double> fine =
            restrict_to_coarse(n_fields[r + 1], resolutions[r]);
        rows.push_back(ConvergenceRow{resolutions[r], l1_rel(fine, n_fields[r]), {}});
    }
    for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
        rows[r].rate = std::log2(rows[r].error / rows[r + 1].error);
    }
    return rows;
}

IndiffResult indiff_discrepancy(const KineticRun& four, const KineticRun& single) {
    IndiffResult res;
    res.n_discrepancy = l1_rel(four.moments.n_tot, single.moments.n_tot);
    res.u_discrepancy = l1_rel(four.moments.u_bulk, single.moments.u_bulk);
    res.T_discrepancy = l1_rel(four.moments.T_bulk, single.moments.T_bulk);
    return res;
}

} // namespace mixkin
