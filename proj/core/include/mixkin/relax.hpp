#ifndef MIXKIN_RELAX_HPP
#define MIXKIN_RELAX_HPP

#include <functional>
#include <span>
#include <vector>

#include "mixkin/moments.hpp"

namespace mixkin {

/// Scale separation: epsilon drives intra-species collisions, kappa the
/// inter-species ones.
struct RegimeParams {
    double epsilon = 1.0;
    double kappa = 1.0;
    void validate() const;
};

/// Per-node, per ordered species pair (s, k): collision frequency nu_sk,
/// the auxiliary coefficients (a, b, gamma) and the mixing targets
/// (u_sk, T_sk) of the fictitious Maxwellians. Layout [(s L + k)][node].
struct InteractionField {
    int L = 0;
    int nx = 0;
    std::vector<double> nu, a, b, gamma, u_mix, T_mix;

    static InteractionField zeros(int L, int nx);

    std::size_t idx(int s, int k, int i) const {
        return (static_cast<std::size_t>(s) * static_cast<std::size_t>(L) +
                static_cast<std::size_t>(k)) *
                   static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(i);
    }
};

/// nu_sk as a function of (s, k, lambda_sk, n_k). The built-in rule is
/// nu_sk = lambda_sk n_k, which keeps the mixing temperatures positive
/// with a factor-2 margin.
using FrequencyRule = std::function<double(int s, int k, double lambda_sk, double n_k)>;

FrequencyRule default_frequency_rule();

/// Fill nu, a, b, gamma from the moments:
///   a_sk = lambda_sk n_k m_k / (nu_sk (m_s + m_k)),
///   b_sk = 2 a_sk m_s / (m_s + m_k),
///   gamma_sk = (m_s a_sk / 3)(2 m_k / (m_s + m_k) - a_sk).
InteractionField interaction_params(const MomentField& moments, const SpeciesTable& species,
                                    const FrequencyRule& rule = {});

/// Fill the mixing targets from the (already solved) moments:
///   u_sk = (1 - a_sk) u_s + a_sk u_k,
///   T_sk = (1 - b_sk) T_s + b_sk T_k + gamma_sk / k_B |u_s - u_k|^2.
/// Throws NumericalError("NegativeMixingTemperature ...") if any T_sk <= 0.
void mixing_targets(InteractionField& field, const MomentField& moments,
                    const SpeciesTable& species);

/// Implicit velocity exchange at one node: solves
///   (I + dt_eff_kappa * coupling) u = u_tilde
/// with coupling_sk = nu_sk a_sk. Strictly diagonally dominant; solved by
/// dense elimination with partial pivoting.
std::vector<double> solve_velocities(std::span<const double> u_tilde,
                                     const InteractionField& field, int node,
                                     double dt_eff_kappa);

/// Implicit temperature exchange at one node, using the already solved
/// velocities; the right-hand side carries the kinetic-energy bookkeeping
/// terms of the exchange.
std::vector<double> solve_temperatures(std::span<const double> T_tilde,
                                       std::span<const double> u_new,
                                       std::span<const double> u_tilde,
                                       const InteractionField& field, int node,
                                       double dt_eff_kappa, const SpeciesTable& species);

/// Batched version over all nodes: replaces moments.u / moments.T by the
/// solved values (n is unchanged) and refreshes the global fields.
void solve_moment_update(MomentField& moments, const InteractionField& field,
                         double dt_eff_kappa, const SpeciesTable& species);

/// Pointwise relaxation closure for one (species, node), applied to both
/// components of the reduced pair:
///   g = (g_tilde + sum_k r_k n M_k) / (1 + sum_k r_k),
/// r_ss = dt_over_eps nu_ss, r_sk = dt_over_kappa nu_sk (k != s).
/// m1 holds the L unit Maxwellian rows stacked [k][j]; the second
/// component uses M2 = 2 b_k M1 with b_k = k_B T_sk / m_s.
void relax_update(std::span<const double> g1_tilde, std::span<const double> g2_tilde,
                  double n_new, int s, std::span<const double> nu_node,
                  std::span<const double> m1, std::span<const double> b_node,
                  double dt_over_eps, double dt_over_kappa,
                  std::span<double> g1_out, std::span<double> g2_out);

} // namespace mixkin

#endif
