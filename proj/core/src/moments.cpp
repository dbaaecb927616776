#include "mixkin/moments.hpp"

#include <cmath>
#include <string>

#include "mixkin/errors.hpp"
#include "mixkin/parallel.hpp"

namespace mixkin {

void SpeciesTable::validate() const {
    const int L = count();
    if (L < 1) throw ConfigError("SpeciesTable: needs at least one species");
    if (lambda.size() != static_cast<std::size_t>(L) * static_cast<std::size_t>(L)) {
        throw ConfigError("SpeciesTable: lambda must be L x L");
    }
    if (!(k_b > 0.0)) throw ConfigError("SpeciesTable: k_b must be positive");
    for (double m : mass) {
        if (!(m > 0.0)) throw ConfigError("SpeciesTable: masses must be positive");
    }
    for (int s = 0; s < L; ++s) {
        for (int k = 0; k < L; ++k) {
            if (lam(s, k) < 0.0) throw ConfigError("SpeciesTable: lambda must be nonnegative");
            if (lam(s, k) != lam(k, s)) throw ConfigError("SpeciesTable: lambda must be symmetric");
        }
    }
}

MixtureState MixtureState::zeros(int L, int nv, int nx) {
    MixtureState st;
    st.L = L;
    st.nv = nv;
    st.nx = nx;
    st.data.assign(static_cast<std::size_t>(L) * 2 * static_cast<std::size_t>(nv) *
                       static_cast<std::size_t>(nx),
                   0.0);
    return st;
}

MomentField MomentField::zeros(int L, int nx) {
    MomentField m;
    m.L = L;
    m.nx = nx;
    const std::size_t sn = static_cast<std::size_t>(L) * static_cast<std::size_t>(nx);
    m.n.assign(sn, 0.0);
    m.u.assign(sn, 0.0);
    m.T.assign(sn, 0.0);
    m.n_tot.assign(static_cast<std::size_t>(nx), 0.0);
    m.rho.assign(static_cast<std::size_t>(nx), 0.0);
    m.u_bulk.assign(static_cast<std::size_t>(nx), 0.0);
    m.T_bulk.assign(static_cast<std::size_t>(nx), 0.0);
    return m;
}

void MomentField::update_globals(const SpeciesTable& species) {
    const double k_b = species.k_b;
    for (int i = 0; i < nx; ++i) {
        double nt = 0.0, rh = 0.0, mu = 0.0;
        for (int s = 0; s < L; ++s) {
            const double ns = n[idx(s, i)];
            nt += ns;
            rh += species.mass[static_cast<std::size_t>(s)] * ns;
            mu += species.mass[static_cast<std::size_t>(s)] * ns * u[idx(s, i)];
        }
        const double ub = mu / rh;
        double e = 0.0;
        for (int s = 0; s < L; ++s) {
            const double du = u[idx(s, i)] - ub;
            e += 3.0 * n[idx(s, i)] * k_b * T[idx(s, i)] +
                 species.mass[static_cast<std::size_t>(s)] * n[idx(s, i)] * du * du;
        }
        n_tot[static_cast<std::size_t>(i)] = nt;
        rho[static_cast<std::size_t>(i)] = rh;
        u_bulk[static_cast<std::size_t>(i)] = ub;
        T_bulk[static_cast<std::size_t>(i)] = e / (3.0 * nt * k_b);
    }
}

MomentField compute_moments(const MixtureState& state, const PhaseGrid& grid,
                            const SpeciesTable& species) {
    const int L = state.L, nv = state.nv, nx = state.nx;
    const double dv = grid.dv;
    MomentField mom = MomentField::zeros(L, nx);

    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        double* n_s = mom.n.data() + mom.idx(s, 0);
        double* u_s = mom.u.data() + mom.idx(s, 0);
        double* T_s = mom.T.data() + mom.idx(s, 0);

        // chunks over x keep the velocity summation order fixed
        parallel_for(nx, [&](std::int64_t ib, std::int64_t ie) {
            const std::size_t b = static_cast<std::size_t>(ib), e = static_cast<std::size_t>(ie);
            for (int j = 0; j < nv; ++j) {
                const double v = grid.v_nodes[static_cast<std::size_t>(j)];
                const double* g1 = state.row(s, 0, j);
                for (std::size_t i = b; i < e; ++i) {
                    n_s[i] += g1[i];
                    u_s[i] += v * g1[i];
                }
            }
            for (std::size_t i = b; i < e; ++i) {
                if (!(n_s[i] > 0.0)) {
                    throw NumericalError("NonPositiveDensity: species " + std::to_string(s + 1) +
                                         " at node " + std::to_string(i));
                }
                u_s[i] /= n_s[i]; // dv cancels
            }
            for (int j = 0; j < nv; ++j) {
                const double v = grid.v_nodes[static_cast<std::size_t>(j)];
                const double* g1 = state.row(s, 0, j);
                const double* g2 = state.row(s, 1, j);
                for (std::size_t i = b; i < e; ++i) {
                    const double dvel = v - u_s[i];
                    T_s[i] += dvel * dvel * g1[i] + g2[i];
                }
            }
            for (std::size_t i = b; i < e; ++i) {
                // 3 n k_B T / (2 m) = (T_acc / 2) dv with n = n_acc dv
                T_s[i] = m_s * T_s[i] / (3.0 * species.k_b * n_s[i]);
                n_s[i] *= dv;
            }
        });
    }

    mom.update_globals(species);
    return mom;
}

void maxwellian_pair(double u, double T, double mass, double k_b,
                     std::span<const double> v_nodes, std::span<double> m1,
                     std::span<double> m2) {
    if (!(T > 0.0)) {
        throw NumericalError("NonPositiveTemperature: T = " + std::to_string(T));
    }
    const double b = k_b * T / mass;
    const double norm = 1.0 / std::sqrt(2.0 * M_PI * b);
    const double inv2b = 1.0 / (2.0 * b);
    const double twob = 2.0 * b;
    for (std::size_t j = 0; j < v_nodes.size(); ++j) {
        const double d = v_nodes[j] - u;
        const double g = norm * std::exp(-d * d * inv2b);
        m1[j] = g;
        m2[j] = twob * g;
    }
}

} // namespace mixkin
