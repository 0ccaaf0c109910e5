#ifndef PATHINT_MODEL_HPP
#define PATHINT_MODEL_HPP

#include <cstddef>
#include <vector>

namespace pathint {

enum class PotentialKind { Free, Harmonic, AnharmonicQuartic, DoubleWell, Periodic };
enum class TimeSignature { RealTime, Euclidean };
enum class BoundaryKind { FixedEndpoints, Periodic };

// Closed-form 1D potentials, immutable after construction.
//
//   Free              V = 0
//   Harmonic          V = m omega^2 q^2 / 2
//   AnharmonicQuartic V = m omega^2 q^2 / 2 + lambda q^4 / 24
//   DoubleWell        V = lambda (q^2 - a^2)^2 / 24, small-oscillation
//                     frequency omega = sqrt(lambda a^2 / 3)
//   Periodic          V = depth (1 - cos(2 pi q / period))
class Potential {
 public:
  Potential() = default;  // free particle, m = hbar = 1

  static Potential free_particle(double m = 1.0, double hbar = 1.0);
  static Potential harmonic(double m, double omega, double hbar = 1.0);
  static Potential anharmonic(double m, double omega, double lambda, double hbar = 1.0);
  static Potential double_well(double lambda, double a, double m = 1.0, double hbar = 1.0);
  static Potential periodic(double depth, double period, double m = 1.0, double hbar = 1.0);

  PotentialKind kind() const { return kind_; }
  double mass() const { return m_; }
  double hbar() const { return hbar_; }
  double omega() const { return omega_; }  // 0 for Free; derived for DoubleWell/Periodic
  double coupling() const { return lambda_; }
  double well_separation() const { return a_; }
  double depth() const { return depth_; }
  double period() const { return period_; }

  double value(double q) const;
  double deriv(double q) const;
  double second_deriv(double q) const;

 private:
  PotentialKind kind_ = PotentialKind::Free;
  double m_ = 1.0;
  double hbar_ = 1.0;
  double omega_ = 0.0;
  double lambda_ = 0.0;
  double a_ = 0.0;
  double depth_ = 0.0;
  double period_ = 0.0;
};

struct VDerivatives {
  double v;
  double v1;
  double v2;
};

VDerivatives potential_derivatives(const Potential& potential, double q);

// Uniform time discretization. spacing * n_slices == extent by construction.
class Lattice {
 public:
  Lattice() = default;  // single Euclidean slice of unit extent
  Lattice(std::size_t n_slices, double extent, TimeSignature signature);

  std::size_t n_slices() const { return n_; }
  double extent() const { return extent_; }
  double spacing() const { return extent_ / static_cast<double>(n_); }
  TimeSignature signature() const { return signature_; }

 private:
  std::size_t n_ = 1;
  double extent_ = 1.0;
  TimeSignature signature_ = TimeSignature::Euclidean;
};

// N+1 positions q_0..q_N plus boundary metadata.
class Path {
 public:
  Path(std::vector<double> positions, BoundaryKind boundary);

  const std::vector<double>& positions() const { return positions_; }
  BoundaryKind boundary() const { return boundary_; }
  std::size_t n_legs() const { return positions_.size() - 1; }

 private:
  std::vector<double> positions_;
  BoundaryKind boundary_;
};

// Discretized action over the path's legs. Euclidean signature sums
// delta * [m qdot^2/2 + V(qbar)], real time sums delta * [m qdot^2/2 - V(qbar)]
// with qbar_j = (q_j + q_{j+1})/2 and qdot_j = (q_{j+1} - q_j)/delta.
double discrete_action(const Path& path, const Lattice& lattice, const Potential& potential);

}  // namespace pathint

#endif
