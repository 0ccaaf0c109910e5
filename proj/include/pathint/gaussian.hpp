#ifndef PATHINT_GAUSSIAN_HPP
#define PATHINT_GAUSSIAN_HPP

#include <complex>
#include <vector>

#include "pathint/model.hpp"

namespace pathint::gaussian {

// Factorized propagator: prefactor times a pure phase (real time) or a real
// Boltzmann weight (Euclidean). Real time reconstructs as
//   prefactor * phase_or_sign * exp(i S_cl / hbar),
// Euclidean as prefactor * exp(-S_cl / hbar).
struct PropagatorValue {
  double prefactor_modulus;
  std::complex<double> phase_or_sign;
  double classical_action;
  TimeSignature signature;
  double hbar;

  std::complex<double> value() const;
  double euclidean_value() const;  // throws for real-time values
};

PropagatorValue free_propagator(double q, double qp, double extent, double m, double hbar,
                                TimeSignature signature);

// Caustics sin(omega T) = 0 are a hard error in real time; for sin(omega T) < 0
// the prefactor phase follows the principal square root (no Maslov index).
PropagatorValue ho_propagator(double q, double qp, double extent, double m, double omega,
                              double hbar, TimeSignature signature);

// Z(beta) = exp(-beta hbar omega / 2) / (1 - exp(-beta hbar omega)), beta
// conjugate to energy. Equals the integrated diagonal Euclidean propagator at
// imaginary time hbar*beta.
double ho_partition_function(double beta, double omega, double hbar);

// The quadrature side of the identity above: integral dq K_E(q, hbar*beta; q).
double ho_partition_function_quadrature(double beta, double m, double omega, double hbar);

// Green's function of m (d^2/dtau^2 - omega^2) with G(0,.) = G(beta,.) = 0:
//   G(tau, tau') = -sinh(omega tau_<) sinh(omega (beta - tau_>)) / (m omega sinh omega beta)
double dirichlet_green(double tau, double taup, double beta, double m, double omega);

struct PolePrescription {
  double epsilon = 1e-3;
};

struct FeynmanGreenResult {
  std::complex<double> value;
  double residual;  // quadrature truncation estimate
};

// Quadrature of integral dk/2pi * i exp(-ik dt) / (k^2 - omega^2 + i eps).
// Converges to exp(-i omega |dt|)/(2 omega) as eps -> 0+.
FeynmanGreenResult feynman_green_qm(double dt, double omega, PolePrescription prescription);

// Source samples J(tau_j) on a Euclidean lattice spanning [0, beta].
struct SourceFunction {
  Lattice lattice;
  std::vector<double> samples;
};

// (1/2) integral dtau dtau' J(tau) G(tau,tau') J(tau') by composite trapezoid
// with the Dirichlet Green's function. The overall normalization C of
// K_E^0[J] = C exp(<JGJ>/2) is never computed; it cancels in every ratio.
double quadratic_generating_exponent(const SourceFunction& source, double beta, double m,
                                     double omega);

// a tanh((omega/2)(tau - tau0)) with omega = sqrt(lambda a^2 / 3).
double instanton_profile(double tau, double a, double lambda, double tau0);
double instanton_profile_slope(double tau, double a, double lambda, double tau0);

// Exact iterated-Gaussian evaluation of the N-slice Euclidean lattice
// propagator for quadratic potentials (Free, Harmonic). The per-slice kernel
// uses the symmetric endpoint-average weight
//   (m/2 pi hbar delta)^(1/2) exp(-[m (q'-q)^2/(2 delta) + delta (V(q)+V(q'))/2]/hbar),
// which converges to the closed forms at O(1/N^2); the N-dimensional Gaussian
// integral is carried out exactly by composing one-slice kernels.
double lattice_propagator(double q, double qp, const Lattice& lattice,
                          const Potential& potential);

}  // namespace pathint::gaussian

#endif
