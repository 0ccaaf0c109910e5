#ifndef PATHINT_PIMC_HPP
#define PATHINT_PIMC_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "pathint/model.hpp"

namespace pathint::pimc {

// Metropolis sampling of the Euclidean lattice measure exp(-S_E/hbar).
// Updates are single-site random-walk proposals swept in lattice order, plus
// an optional rigid whole-path shift per sweep (the ergodicity fix for deep
// double wells). hbar is taken from the potential.
struct SamplerConfig {
  Lattice lattice;
  Potential potential;
  BoundaryKind boundary = BoundaryKind::Periodic;
  double fixed_start = 0.0;  // endpoints for FixedEndpoints boundary
  double fixed_end = 0.0;
  long n_sweeps = 10000;
  long n_thermalization = 1000;
  int n_chains = 4;
  double step_width = 0.5;
  bool shift_moves = false;
  double shift_width = 1.0;
  long record_every = 0;  // 0: choose so ~4096 paths are kept per chain
  std::uint64_t seed = 1;
};

struct EstimatorResult {
  double mean = 0.0;
  double std_error = 0.0;
  double n_effective = 0.0;
};

struct Ensemble {
  SamplerConfig config;
  double acceptance_rate = 0.0;             // site moves, averaged over chains
  std::vector<double> chain_acceptance;
  bool acceptance_in_band = true;            // [0.2, 0.8]
  std::vector<std::vector<double>> q_series;   // per chain, per measured sweep
  std::vector<std::vector<double>> q2_series;
  std::vector<std::vector<std::vector<double>>> paths;  // per chain, recorded

  EstimatorResult mean_position() const;
  EstimatorResult mean_square() const;
  std::vector<double> chain_means_q2() const;
};

// Deterministic given (seed, config): chains draw from independent streams
// derived from the master seed and are merged in chain-index order.
Ensemble run_sampler(const SamplerConfig& config);

// C(tau) = <q(0) q(tau)> at the requested separations (multiples of the
// lattice spacing, <= beta/2). Periodic ensembles only.
std::vector<EstimatorResult> correlation_function(const Ensemble& ensemble,
                                                  std::span<const double> separations);

struct GapPoint {
  double tau;
  double value;
  double std_error;
};

// Effective-gap series E(tau) = -ln[C(tau+delta)/C(tau)] / delta on the
// lattice separations up to max_tau (default beta/2).
std::vector<GapPoint> effective_gap(const Ensemble& ensemble, double max_tau = 0.0);

// Short pilot runs that steer step_width toward 50% site acceptance; a config
// already in the [0.4, 0.6] band is returned unchanged. Deterministic given
// seed.
SamplerConfig tune_step(const SamplerConfig& config);

}  // namespace pathint::pimc

#endif
