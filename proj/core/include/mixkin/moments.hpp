#ifndef MIXKIN_MOMENTS_HPP
#define MIXKIN_MOMENTS_HPP

#include <span>
#include <vector>

#include "mixkin/grid.hpp"

namespace mixkin {

/// Mixture composition: molecular masses and the symmetric collision
/// strength matrix lambda of Maxwell molecules.
struct SpeciesTable {
    std::vector<double> mass;   // m_s > 0, one per species
    std::vector<double> lambda; // L x L row-major, lambda_sk = lambda_ks >= 0
    double k_b = 1.0;           // Boltzmann constant (problem units)

    int count() const { return static_cast<int>(mass.size()); }
    double lam(int s, int k) const {
        return lambda[static_cast<std::size_t>(s) * static_cast<std::size_t>(count()) +
                      static_cast<std::size_t>(k)];
    }
    void validate() const;
};

/// Reduced distribution pair (g1, g2) per species on the (x, v) grid.
/// g2 carries the transverse energy of the underlying 3-D velocity space.
/// Layout: row-major [species][component][velocity][space], so a fixed
/// (s, p, v_j) row is contiguous in x.
struct MixtureState {
    int L = 0;
    int nv = 0; // velocity nodes
    int nx = 0; // spatial nodes
    double time = 0.0;
    std::vector<double> data;

    static MixtureState zeros(int L, int nv, int nx);

    std::size_t row_offset(int s, int p, int j) const {
        return ((static_cast<std::size_t>(s) * 2 + static_cast<std::size_t>(p)) *
                    static_cast<std::size_t>(nv) +
                static_cast<std::size_t>(j)) *
               static_cast<std::size_t>(nx);
    }
    double* row(int s, int p, int j) { return data.data() + row_offset(s, p, j); }
    const double* row(int s, int p, int j) const { return data.data() + row_offset(s, p, j); }
    double& at(int s, int p, int j, int i) { return data[row_offset(s, p, j) + static_cast<std::size_t>(i)]; }
    double at(int s, int p, int j, int i) const { return data[row_offset(s, p, j) + static_cast<std::size_t>(i)]; }
    std::size_t rows() const { return static_cast<std::size_t>(L) * 2 * static_cast<std::size_t>(nv); }
};

/// Per-species and global macroscopic fields on the spatial grid.
struct MomentField {
    int L = 0;
    int nx = 0;
    std::vector<double> n, u, T;               // [species][node]
    std::vector<double> n_tot, rho, u_bulk, T_bulk; // [node]

    static MomentField zeros(int L, int nx);

    std::size_t idx(int s, int i) const {
        return static_cast<std::size_t>(s) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(i);
    }
    std::span<const double> species_n(int s) const { return {n.data() + idx(s, 0), static_cast<std::size_t>(nx)}; }
    std::span<const double> species_u(int s) const { return {u.data() + idx(s, 0), static_cast<std::size_t>(nx)}; }
    std::span<const double> species_T(int s) const { return {T.data() + idx(s, 0), static_cast<std::size_t>(nx)}; }

    /// Recompute the global fields from the per-species ones.
    void update_globals(const SpeciesTable& species);
};

/// Discrete moments of the reduced pair:
///   n_s = sum_j g1 dv,  n_s u_s = sum_j v_j g1 dv,
///   3 n_s k_B T_s / (2 m_s) = sum_j [ (v_j - u_s)^2 g1 + g2 ] / 2 dv.
/// Throws NumericalError("NonPositiveDensity ...") if any n_s <= 0.
MomentField compute_moments(const MixtureState& state, const PhaseGrid& grid,
                            const SpeciesTable& species);

/// Unit-density Maxwellian pair on the velocity nodes:
///   M1_j = exp(-(v_j - u)^2 / (2 b)) / sqrt(2 pi b),  b = k_B T / m,
///   M2_j = 2 b M1_j.
/// Callers scale by the species density.
void maxwellian_pair(double u, double T, double mass, double k_b,
                     std::span<const double> v_nodes, std::span<double> m1,
                     std::span<double> m2);

} // namespace mixkin

#endif
