#ifndef PATHINT_SPECTRAL_HPP
#define PATHINT_SPECTRAL_HPP

#include <cstddef>
#include <vector>

#include "pathint/model.hpp"

namespace pathint::spectral {

struct SpectralGrid {
  double q_min;
  double q_max;
  std::size_t n_points;  // >= 16

  double spacing() const { return (q_max - q_min) / static_cast<double>(n_points - 1); }
};

// Eigenpairs of H = -hbar^2/(2m) d^2/dq^2 + V(q), second-order central
// differences with Dirichlet boundaries. Eigenvalues are Richardson
// extrapolated from the (n, 2n) grid pair, which also certifies convergence;
// eigenfunctions live on the fine grid, L^2-normalized with the grid inner
// product.
struct Spectrum {
  SpectralGrid grid;                              // fine grid of the pair
  std::vector<double> eigenvalues;                // ascending
  std::vector<std::vector<double>> eigenfunctions;
  double edge_amplitude = 0.0;                    // max |phi_0|,|phi_1| at boundary
  double doubling_drift = 0.0;                    // max |E(2n) - E(n)| over E0, E1

  double eigenfunction_at(std::size_t level, double q) const;
};

// Throws GridError when phi_0/phi_1 fail to decay below 1e-8 at the
// boundaries, reporting the measured edge amplitude.
Spectrum diagonalize(const Potential& potential, const SpectralGrid& grid, double hbar,
                     std::size_t n_states = 16);

// Single-grid eigenvalues with no extrapolation or refinement. The FD kinetic
// dispersion underestimates k^2, so these converge to the true spectrum from
// below as the grid refines.
std::vector<double> raw_eigenvalues(const Potential& potential, const SpectralGrid& grid,
                                    double hbar, std::size_t n_states);

// [-8,8] * max(1, a + 4 sqrt(hbar/(m omega))) with 2048 points.
SpectralGrid default_grid(const Potential& potential, double hbar);

// diagonalize on the default grid, widening (up to a few times) when the
// boundary-decay validation fails.
Spectrum diagonalize_auto(const Potential& potential, double hbar, std::size_t n_states = 16);

// Z(beta) = sum_j exp(-beta E_j), truncated when a term drops below 1e-16 of
// the running sum.
double partition_from_spectrum(const Spectrum& spectrum, double beta);

// E_1 - E_0 for a double-well potential.
double splitting(const Potential& double_well, const SpectralGrid& grid, double hbar);

}  // namespace pathint::spectral

#endif
