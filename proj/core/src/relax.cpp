#include "mixkin/relax.hpp"

#include <cmath>
#include <string>

#include "mixkin/errors.hpp"
#include "mixkin/parallel.hpp"

namespace mixkin {

void RegimeParams::validate() const {
    if (!(epsilon > 0.0) || !(kappa > 0.0)) {
        throw ConfigError("RegimeParams: epsilon and kappa must be positive");
    }
}

InteractionField InteractionField::zeros(int L, int nx) {
    InteractionField f;
    f.L = L;
    f.nx = nx;
    const std::size_t sz = static_cast<std::size_t>(L) * static_cast<std::size_t>(L) *
                           static_cast<std::size_t>(nx);
    f.nu.assign(sz, 0.0);
    f.a.assign(sz, 0.0);
    f.b.assign(sz, 0.0);
    f.gamma.assign(sz, 0.0);
    f.u_mix.assign(sz, 0.0);
    f.T_mix.assign(sz, 0.0);
    return f;
}

FrequencyRule default_frequency_rule() {
    return [](int, int, double lambda_sk, double n_k) { return lambda_sk * n_k; };
}

InteractionField interaction_params(const MomentField& moments, const SpeciesTable& species,
                                    const FrequencyRule& rule) {
    const int L = moments.L, nx = moments.nx;
    InteractionField field = InteractionField::zeros(L, nx);
    const FrequencyRule& freq = rule ? rule : default_frequency_rule();

    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        for (int k = 0; k < L; ++k) {
            const double m_k = species.mass[static_cast<std::size_t>(k)];
            const double lam = species.lam(s, k);
            const double msum = m_s + m_k;
            const std::size_t off = field.idx(s, k, 0);
            for (int i = 0; i < nx; ++i) {
                const double n_k_i = moments.n[moments.idx(k, i)];
                const double nu = freq(s, k, lam, n_k_i);
                double a = 0.0;
                if (lam > 0.0) {
                    if (nu == 0.0) {
                        throw NumericalError("ZeroFrequencyDivision: nu_" + std::to_string(s + 1) +
                                             std::to_string(k + 1) + " = 0 with lambda > 0 at node " +
                                             std::to_string(i));
                    }
                    a = lam * n_k_i * m_k / (nu * msum);
                }
                const std::size_t id = off + static_cast<std::size_t>(i);
                field.nu[id] = nu;
                field.a[id] = a;
                field.b[id] = 2.0 * a * m_s / msum;
                field.gamma[id] = (m_s * a / 3.0) * (2.0 * m_k / msum - a);
            }
        }
    }
    return field;
}

void mixing_targets(InteractionField& field, const MomentField& moments,
                    const SpeciesTable& species) {
    const int L = field.L, nx = field.nx;
    const double k_b = species.k_b;
    for (int s = 0; s < L; ++s) {
        for (int k = 0; k < L; ++k) {
            const std::size_t off = field.idx(s, k, 0);
            for (int i = 0; i < nx; ++i) {
                const std::size_t id = off + static_cast<std::size_t>(i);
                const double us = moments.u[moments.idx(s, i)];
                const double uk = moments.u[moments.idx(k, i)];
                const double Ts = moments.T[moments.idx(s, i)];
                const double Tk = moments.T[moments.idx(k, i)];
                const double a = field.a[id];
                const double b = field.b[id];
                const double du = us - uk;
                field.u_mix[id] = (1.0 - a) * us + a * uk;
                const double Tmix = (1.0 - b) * Ts + b * Tk + field.gamma[id] / k_b * du * du;
                if (!(Tmix > 0.0)) {
                    throw NumericalError("NegativeMixingTemperature: pair (" +
                                         std::to_string(s + 1) + "," + std::to_string(k + 1) +
                                         ") at node " + std::to_string(i));
                }
                field.T_mix[id] = Tmix;
            }
        }
    }
}

namespace {

// dense L x L solve, partial pivoting; A and rhs are clobbered
void solve_dense(std::vector<double>& A, std::vector<double>& rhs, int L) {
    for (int col = 0; col < L; ++col) {
        int piv = col;
        double best = std::fabs(A[static_cast<std::size_t>(col) * L + col]);
        for (int r = col + 1; r < L; ++r) {
            const double cand = std::fabs(A[static_cast<std::size_t>(r) * L + col]);
            if (cand > best) {
                best = cand;
                piv = r;
            }
        }
        if (best < 1e-14) throw NumericalError("SingularSystem: pivot below 1e-14");
        if (piv != col) {
            for (int c = 0; c < L; ++c) {
                std::swap(A[static_cast<std::size_t>(piv) * L + c], A[static_cast<std::size_t>(col) * L + c]);
            }
            std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
        }
        const double inv = 1.0 / A[static_cast<std::size_t>(col) * L + col];
        for (int r = col + 1; r < L; ++r) {
            const double f = A[static_cast<std::size_t>(r) * L + col] * inv;
            if (f == 0.0) continue;
            for (int c = col; c < L; ++c) {
                A[static_cast<std::size_t>(r) * L + c] -= f * A[static_cast<std::size_t>(col) * L + c];
            }
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    for (int r = L - 1; r >= 0; --r) {
        double acc = rhs[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < L; ++c) {
            acc -= A[static_cast<std::size_t>(r) * L + c] * rhs[static_cast<std::size_t>(c)];
        }
        rhs[static_cast<std::size_t>(r)] = acc / A[static_cast<std::size_t>(r) * L + r];
    }
}

void build_velocity_system(const InteractionField& field, int node, double dtk,
                           std::vector<double>& A) {
    const int L = field.L;
    A.assign(static_cast<std::size_t>(L) * L, 0.0);
    for (int s = 0; s < L; ++s) {
        double diag = 1.0;
        for (int k = 0; k < L; ++k) {
            if (k == s) continue;
            const double c = dtk * field.nu[field.idx(s, k, node)] * field.a[field.idx(s, k, node)];
            diag += c;
            A[static_cast<std::size_t>(s) * L + k] = -c;
        }
        A[static_cast<std::size_t>(s) * L + s] = diag;
    }
}

void build_temperature_system(const InteractionField& field, int node, double dtk,
                              std::vector<double>& B) {
    const int L = field.L;
    B.assign(static_cast<std::size_t>(L) * L, 0.0);
    for (int s = 0; s < L; ++s) {
        double diag = 1.0;
        for (int k = 0; k < L; ++k) {
            if (k == s) continue;
            const double c = dtk * field.nu[field.idx(s, k, node)] * field.b[field.idx(s, k, node)];
            diag += c;
            B[static_cast<std::size_t>(s) * L + k] = -c;
        }
        B[static_cast<std::size_t>(s) * L + s] = diag;
    }
}

void temperature_rhs(const InteractionField& field, int node, double dtk,
                     const SpeciesTable& species, std::span<const double> T_tilde,
                     std::span<const double> u_new, std::span<const double> u_tilde,
                     std::vector<double>& rhs) {
    const int L = field.L;
    const double k_b = species.k_b;
    rhs.assign(static_cast<std::size_t>(L), 0.0);
    for (int s = 0; s < L; ++s) {
        const double m_s = species.mass[static_cast<std::size_t>(s)];
        const double du_t = u_new[static_cast<std::size_t>(s)] - u_tilde[static_cast<std::size_t>(s)];
        double xi = T_tilde[static_cast<std::size_t>(s)] + m_s / (3.0 * k_b) * du_t * du_t;
        for (int k = 0; k < L; ++k) {
            if (k == s) continue;
            const std::size_t id = field.idx(s, k, node);
            const double duk = u_new[static_cast<std::size_t>(s)] - u_new[static_cast<std::size_t>(k)];
            xi += dtk * field.nu[id] *
                  (field.gamma[id] / k_b + m_s / (3.0 * k_b) * field.a[id] * field.a[id]) * duk * duk;
        }
        rhs[static_cast<std::size_t>(s)] = xi;
    }
}

} // namespace

std::vector<double> solve_velocities(std::span<const double> u_tilde,
                                     const InteractionField& field, int node,
                                     double dt_eff_kappa) {
    const int L = field.L;
    std::vector<double> A;
    std::vector<double> rhs(u_tilde.begin(), u_tilde.end());
    build_velocity_system(field, node, dt_eff_kappa, A);
    solve_dense(A, rhs, L);
    return rhs;
}

std::vector<double> solve_temperatures(std::span<const double> T_tilde,
                                       std::span<const double> u_new,
                                       std::span<const double> u_tilde,
                                       const InteractionField& field, int node,
                                       double dt_eff_kappa, const SpeciesTable& species) {
    const int L = field.L;
    std::vector<double> B, rhs;
    temperature_rhs(field, node, dt_eff_kappa, species, T_tilde, u_new, u_tilde, rhs);
    build_temperature_system(field, node, dt_eff_kappa, B);
    solve_dense(B, rhs, L);
    for (int s = 0; s < L; ++s) {
        if (!(rhs[static_cast<std::size_t>(s)] > 0.0)) {
            throw NumericalError("NegativeTemperature: species " + std::to_string(s + 1) +
                                 " at node " + std::to_string(node));
        }
    }
    return rhs;
}

void solve_moment_update(MomentField& moments, const InteractionField& field,
                         double dt_eff_kappa, const SpeciesTable& species) {
    const int L = moments.L, nx = moments.nx;
    parallel_for(nx, [&](std::int64_t ib, std::int64_t ie) {
        std::vector<double> A, rhs, u_til(static_cast<std::size_t>(L)),
            T_til(static_cast<std::size_t>(L)), u_new(static_cast<std::size_t>(L));
        for (std::int64_t i = ib; i < ie; ++i) {
            const int node = static_cast<int>(i);
            for (int s = 0; s < L; ++s) {
                u_til[static_cast<std::size_t>(s)] = moments.u[moments.idx(s, node)];
                T_til[static_cast<std::size_t>(s)] = moments.T[moments.idx(s, node)];
            }

            rhs.assign(u_til.begin(), u_til.end());
            build_velocity_system(field, node, dt_eff_kappa, A);
            solve_dense(A, rhs, L);
            u_new.assign(rhs.begin(), rhs.end());

            temperature_rhs(field, node, dt_eff_kappa, species, T_til, u_new, u_til, rhs);
            build_temperature_system(field, node, dt_eff_kappa, A);
            solve_dense(A, rhs, L);

            for (int s = 0; s < L; ++s) {
                if (!(rhs[static_cast<std::size_t>(s)] > 0.0)) {
                    throw NumericalError("NegativeTemperature: species " + std::to_string(s + 1) +
                                         " at node " + std::to_string(node));
                }
                moments.u[moments.idx(s, node)] = u_new[static_cast<std::size_t>(s)];
                moments.T[moments.idx(s, node)] = rhs[static_cast<std::size_t>(s)];
            }
        }
    });
    moments.update_globals(species);
}

void relax_update(std::span<const double> g1_tilde, std::span<const double> g2_tilde,
                  double n_new, int s, std::span<const double> nu_node,
                  std::span<const double> m1, std::span<const double> b_node,
                  double dt_over_eps, double dt_over_kappa,
                  std::span<double> g1_out, std::span<double> g2_out) {
    const int L = static_cast<int>(nu_node.size());
    const std::size_t nv = g1_tilde.size();

    double denom = 1.0;
    for (int k = 0; k < L; ++k) {
        denom += (k == s ? dt_over_eps : dt_over_kappa) * nu_node[static_cast<std::size_t>(k)];
    }
    const double inv = 1.0 / denom;

    for (std::size_t j = 0; j < nv; ++j) {
        double acc1 = g1_tilde[j];
        double acc2 = g2_tilde[j];
        for (int k = 0; k < L; ++k) {
            const double r = (k == s ? dt_over_eps : dt_over_kappa) *
                             nu_node[static_cast<std::size_t>(k)];
            if (r == 0.0) continue;
            const double m = m1[static_cast<std::size_t>(k) * nv + j];
            acc1 += r * n_new * m;
            acc2 += r * n_new * (2.0 * b_node[static_cast<std::size_t>(k)]) * m;
        }
        g1_out[j] = acc1 * inv;
        g2_out[j] = acc2 * inv;
    }
}

} // namespace mixkin
