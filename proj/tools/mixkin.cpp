// Command-line front end for the semi-Lagrangian BGK mixture solver and
// its Euler reference solvers.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixkin/csv.hpp"
#include "mixkin/errors.hpp"
#include "mixkin/harness.hpp"
#include "mixkin/parallel.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct CommonOpts {
    std::string out = "out";
    bool serial = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--out", opts.out, "Output directory");
    cmd->add_flag("--serial", opts.serial, "Force single-threaded, deterministic reductions");
}

int cmd_run(const std::string& config_path, const CommonOpts& opts, bool out_given) {
    mixkin::ExperimentConfig cfg = mixkin::load_config_file(config_path);
    if (out_given) cfg.output_dir = opts.out;
    if (opts.serial) cfg.serial = true;
    const mixkin::RunArtifacts artifacts = mixkin::run_preset(cfg);
    for (const auto& f : artifacts.files) std::cout << f << "\n";
    return 0;
}

int cmd_accuracy(const std::string& scheme_name, double eps, double kappa,
                 const std::vector<int>& nx_list, const CommonOpts& opts) {
    mixkin::set_thread_count(opts.serial ? 1 : 0);
    mixkin::ExperimentConfig base = mixkin::preset_config(mixkin::Preset::accuracy);
    base.serial = opts.serial;
    const mixkin::Scheme scheme = mixkin::scheme_from_name(scheme_name);
    const mixkin::RegimeParams regime{eps, kappa > 0.0 ? kappa : eps};

    const auto rows = mixkin::convergence_table(base, scheme, nx_list, regime);
    std::filesystem::create_directories(opts.out);
    const std::string path = opts.out + "/convergence.csv";
    mixkin::write_convergence_csv(path, rows);

    std::printf("# %s, eps=%g, kappa=%g\n", scheme_name.c_str(), regime.epsilon, regime.kappa);
    std::printf("%6s  %12s  %6s\n", "Nx", "error", "rate");
    for (const auto& r : rows) {
        if (r.rate) {
            std::printf("%6d  %12.4e  %6.2f\n", r.nx, r.error, *r.rate);
        } else {
            std::printf("%6d  %12.4e  %6s\n", r.nx, r.error, "");
        }
    }
    std::cout << path << "\n";
    return 0;
}

int cmd_indiff(double eps, int nx, const CommonOpts& opts) {
    mixkin::set_thread_count(opts.serial ? 1 : 0);
    std::filesystem::create_directories(opts.out);

    auto make = [&](mixkin::Preset preset) {
        mixkin::ExperimentConfig cfg = mixkin::preset_config(preset);
        cfg.regime = {eps, eps};
        cfg.grid.nx = nx;
        cfg.serial = opts.serial;
        return cfg;
    };
    const mixkin::KineticRun single = mixkin::run_kinetic(make(mixkin::Preset::indiff_single));
    const mixkin::KineticRun four = mixkin::run_kinetic(make(mixkin::Preset::indiff_four));

    mixkin::write_moments_csv(opts.out + "/moments_single.csv", single.grid.x_nodes,
                              single.moments, make(mixkin::Preset::indiff_single).species);
    mixkin::write_moments_csv(opts.out + "/moments_four.csv", four.grid.x_nodes, four.moments,
                              make(mixkin::Preset::indiff_four).species);

    const mixkin::IndiffResult res = mixkin::indiff_discrepancy(four, single);
    const std::string path = opts.out + "/discrepancy.csv";
    {
        std::ofstream outf(path, std::ios::binary);
        if (!outf) throw mixkin::ConfigError("cannot open '" + path + "'");
        outf << "quantity,discrepancy\n";
        outf << "n," << mixkin::format_double(res.n_discrepancy) << "\n";
        outf << "u," << mixkin::format_double(res.u_discrepancy) << "\n";
        outf << "T," << mixkin::format_double(res.T_discrepancy) << "\n";
    }
    std::printf("discrepancy(n) = %.4e\ndiscrepancy(u) = %.4e\ndiscrepancy(T) = %.4e\n",
                res.n_discrepancy, res.u_discrepancy, res.T_discrepancy);
    std::cout << path << "\n";
    return 0;
}

int cmd_riemann(double eps, double kappa, const std::string& euler, int nx, bool nx_given,
                const CommonOpts& opts) {
    mixkin::ExperimentConfig cfg;
    if (euler.empty()) {
        cfg = mixkin::preset_config(mixkin::Preset::riemann_kinetic);
    } else if (euler == "single") {
        cfg = mixkin::preset_config(mixkin::Preset::riemann_euler_single);
    } else if (euler == "multi") {
        cfg = mixkin::preset_config(mixkin::Preset::riemann_euler_multi);
    } else {
        throw mixkin::ConfigError("--euler must be 'single' or 'multi'");
    }
    cfg.regime = {eps, kappa};
    if (nx_given) cfg.grid.nx = nx;
    cfg.output_dir = opts.out;
    cfg.serial = opts.serial;
    const mixkin::RunArtifacts artifacts = mixkin::run_preset(cfg);
    for (const auto& f : artifacts.files) std::cout << f << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Semi-Lagrangian solver for the consistent BGK mixture model"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "Execute a JSON experiment config");
    std::string config_path;
    CommonOpts run_opts;
    run->add_option("--config", config_path, "Path to the config JSON")->required();
    add_common(run, run_opts);

    // accuracy
    auto* acc = app.add_subcommand("accuracy", "Self-convergence table on the smooth preset");
    std::string scheme = "BDF3-QCW35";
    double acc_eps = 1e-2, acc_kappa = -1.0;
    std::vector<int> nx_list{40, 80, 160, 320};
    CommonOpts acc_opts;
    acc->add_option("--scheme", scheme, "BE, RK2-QCW23, RK3-QCW35, BDF2-QCW23, BDF3-QCW35");
    acc->add_option("--eps", acc_eps, "Knudsen scale epsilon")->required();
    acc->add_option("--kappa", acc_kappa, "Inter-species scale (defaults to eps)");
    acc->add_option("--nx", nx_list, "Comma separated nested resolutions")->delimiter(',');
    add_common(acc, acc_opts);

    // indiff
    auto* ind = app.add_subcommand("indiff", "Single gas vs four identical gases discrepancy");
    double ind_eps = 1e-2;
    int ind_nx = 200;
    CommonOpts ind_opts;
    ind->add_option("--eps", ind_eps, "Knudsen scale epsilon")->required();
    ind->add_option("--nx", ind_nx, "Spatial resolution");
    add_common(ind, ind_opts);

    // riemann
    auto* rie = app.add_subcommand("riemann", "Riemann problem, kinetic or Euler reference");
    double rie_eps = 1e-6, rie_kappa = 1e-6;
    std::string euler_kind;
    int rie_nx = 0;
    CommonOpts rie_opts;
    rie->add_option("--eps", rie_eps, "Knudsen scale epsilon")->required();
    rie->add_option("--kappa", rie_kappa, "Inter-species scale")->required();
    rie->add_option("--euler", euler_kind, "Run the Euler reference instead: single|multi");
    auto* rie_nx_opt = rie->add_option("--nx", rie_nx, "Spatial resolution");
    add_common(rie, rie_opts);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (run->parsed()) {
            return cmd_run(config_path, run_opts, run->count("--out") > 0);
        }
        if (acc->parsed()) {
            return cmd_accuracy(scheme, acc_eps, acc_kappa, nx_list, acc_opts);
        }
        if (ind->parsed()) {
            return cmd_indiff(ind_eps, ind_nx, ind_opts);
        }
        if (rie->parsed()) {
            return cmd_riemann(rie_eps, rie_kappa, euler_kind, rie_nx, rie_nx_opt->count() > 0,
                               rie_opts);
        }
    } catch (const mixkin::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
    return 0;
}
