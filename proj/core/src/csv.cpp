#include "mixkin/csv.hpp"

#include <charconv>
#include <fstream>

#include "mixkin/errors.hpp"

namespace mixkin {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary); // binary keeps newlines LF everywhere
    if (!out) throw ConfigError("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void write_moments_csv(const std::string& path, std::span<const double> x_nodes,
                       const MomentField& moments, const SpeciesTable& species) {
    std::ofstream out = open_out(path);
    const int L = moments.L, nx = moments.nx;

    out << "x";
    for (int s = 1; s <= L; ++s) out << ",n_" << s;
    for (int s = 1; s <= L; ++s) out << ",u_" << s;
    for (int s = 1; s <= L; ++s) out << ",T_" << s;
    out << ",n,rho,u,T,E\n";

    for (int i = 0; i < nx; ++i) {
        out << format_double(x_nodes[static_cast<std::size_t>(i)]);
        for (int s = 0; s < L; ++s) out << ',' << format_double(moments.n[moments.idx(s, i)]);
        for (int s = 0; s < L; ++s) out << ',' << format_double(moments.u[moments.idx(s, i)]);
        for (int s = 0; s < L; ++s) out << ',' << format_double(moments.T[moments.idx(s, i)]);
        double energy = 0.0;
        for (int s = 0; s < L; ++s) {
            const double m_s = species.mass[static_cast<std::size_t>(s)];
            const double ns = moments.n[moments.idx(s, i)];
            const double us = moments.u[moments.idx(s, i)];
            energy += 0.5 * m_s * ns * us * us + 1.5 * ns * species.k_b * moments.T[moments.idx(s, i)];
        }
        out << ',' << format_double(moments.n_tot[static_cast<std::size_t>(i)])
            << ',' << format_double(moments.rho[static_cast<std::size_t>(i)])
            << ',' << format_double(moments.u_bulk[static_cast<std::size_t>(i)])
            << ',' << format_double(moments.T_bulk[static_cast<std::size_t>(i)])
            << ',' << format_double(energy) << '\n';
    }
}

void write_diagnostics_csv(const std::string& path, std::span<const StepDiagnostics> rows) {
    std::ofstream out = open_out(path);
    const int L = rows.empty() ? 0 : static_cast<int>(rows.front().mass.size());
    out << "step,t,dt";
    for (int s = 1; s <= L; ++s) out << ",mass_" << s;
    out << ",momentum,energy,min_g1\n";
    for (const auto& r : rows) {
        out << r.step << ',' << format_double(r.t) << ',' << format_double(r.dt);
        for (double m : r.mass) out << ',' << format_double(m);
        out << ',' << format_double(r.momentum) << ',' << format_double(r.energy) << ','
            << format_double(r.min_g1) << '\n';
    }
}

void write_convergence_csv(const std::string& path, std::span<const ConvergenceRow> rows) {
    std::ofstream out = open_out(path);
    out << "Nx,error,rate\n";
    for (const auto& r : rows) {
        out << r.nx << ',' << format_double(r.error) << ',';
        if (r.rate) out << format_double(*r.rate);
        out << '\n';
    }
}

} // namespace mixkin
