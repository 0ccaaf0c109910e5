#include "pathint/model.hpp"

#include <cmath>

#include "pathint/errors.hpp"

namespace pathint {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + " must be finite");
}

void require_positive(double x, const char* what) {
  require_finite(x, what);
  if (x <= 0.0) throw DomainError(std::string(what) + " must be > 0");
}

void require_nonneg(double x, const char* what) {
  require_finite(x, what);
  if (x < 0.0) throw DomainError(std::string(what) + " must be >= 0");
}

}  // namespace

Potential Potential::free_particle(double m, double hbar) {
  require_positive(m, "m");
  require_positive(hbar, "hbar");
  Potential p;
  p.kind_ = PotentialKind::Free;
  p.m_ = m;
  p.hbar_ = hbar;
  return p;
}

Potential Potential::harmonic(double m, double omega, double hbar) {
  require_positive(m, "m");
  require_nonneg(omega, "omega");
  require_positive(hbar, "hbar");
  Potential p;
  p.kind_ = PotentialKind::Harmonic;
  p.m_ = m;
  p.omega_ = omega;
  p.hbar_ = hbar;
  return p;
}

Potential Potential::anharmonic(double m, double omega, double lambda, double hbar) {
  require_positive(m, "m");
  require_nonneg(omega, "omega");
  require_nonneg(lambda, "lambda");
  require_positive(hbar, "hbar");
  Potential p;
  p.kind_ = PotentialKind::AnharmonicQuartic;
  p.m_ = m;
  p.omega_ = omega;
  p.lambda_ = lambda;
  p.hbar_ = hbar;
  return p;
}

Potential Potential::double_well(double lambda, double a, double m, double hbar) {
  require_positive(m, "m");
  require_nonneg(lambda, "lambda");
  require_positive(a, "a");
  require_positive(hbar, "hbar");
  Potential p;
  p.kind_ = PotentialKind::DoubleWell;
  p.m_ = m;
  p.lambda_ = lambda;
  p.a_ = a;
  p.omega_ = std::sqrt(lambda * a * a / 3.0);
  p.hbar_ = hbar;
  return p;
}

Potential Potential::periodic(double depth, double period, double m, double hbar) {
  require_positive(m, "m");
  require_nonneg(depth, "depth");
  require_positive(period, "period");
  require_positive(hbar, "hbar");
  Potential p;
  p.kind_ = PotentialKind::Periodic;
  p.m_ = m;
  p.depth_ = depth;
  p.period_ = period;
  p.omega_ = (kTwoPi / period) * std::sqrt(depth / m);
  p.hbar_ = hbar;
  return p;
}

double Potential::value(double q) const {
  switch (kind_) {
    case PotentialKind::Free:
      return 0.0;
    case PotentialKind::Harmonic:
      return 0.5 * m_ * omega_ * omega_ * q * q;
    case PotentialKind::AnharmonicQuartic:
      return 0.5 * m_ * omega_ * omega_ * q * q + lambda_ * q * q * q * q / 24.0;
    case PotentialKind::DoubleWell: {
      const double u = q * q - a_ * a_;
      return lambda_ * u * u / 24.0;
    }
    case PotentialKind::Periodic:
      return depth_ * (1.0 - std::cos(kTwoPi * q / period_));
  }
  return 0.0;
}

double Potential::deriv(double q) const {
  switch (kind_) {
    case PotentialKind::Free:
      return 0.0;
    case PotentialKind::Harmonic:
      return m_ * omega_ * omega_ * q;
    case PotentialKind::AnharmonicQuartic:
      return m_ * omega_ * omega_ * q + lambda_ * q * q * q / 6.0;
    case PotentialKind::DoubleWell:
      return lambda_ * q * (q * q - a_ * a_) / 6.0;
    case PotentialKind::Periodic:
      return depth_ * (kTwoPi / period_) * std::sin(kTwoPi * q / period_);
  }
  return 0.0;
}

double Potential::second_deriv(double q) const {
  switch (kind_) {
    case PotentialKind::Free:
      return 0.0;
    case PotentialKind::Harmonic:
      return m_ * omega_ * omega_;
    case PotentialKind::AnharmonicQuartic:
      return m_ * omega_ * omega_ + lambda_ * q * q / 2.0;
    case PotentialKind::DoubleWell:
      return lambda_ * (3.0 * q * q - a_ * a_) / 6.0;
    case PotentialKind::Periodic: {
      const double k = kTwoPi / period_;
      return depth_ * k * k * std::cos(k * q);
    }
  }
  return 0.0;
}

VDerivatives potential_derivatives(const Potential& potential, double q) {
  require_finite(q, "q");
  return {potential.value(q), potential.deriv(q), potential.second_deriv(q)};
}

Lattice::Lattice(std::size_t n_slices, double extent, TimeSignature signature)
    : n_(n_slices), extent_(extent), signature_(signature) {
  if (n_slices < 1) throw DomainError("lattice: n_slices must be >= 1");
  require_positive(extent, "extent");
}

Path::Path(std::vector<double> positions, BoundaryKind boundary)
    : positions_(std::move(positions)), boundary_(boundary) {
  if (positions_.size() < 2) throw StructuralError("path: need at least 2 positions");
  for (double q : positions_) require_finite(q, "position");
  if (boundary_ == BoundaryKind::Periodic && positions_.front() != positions_.back()) {
    throw StructuralError("path: periodic boundary requires q_0 == q_N");
  }
}

double discrete_action(const Path& path, const Lattice& lattice, const Potential& potential) {
  const auto& q = path.positions();
  if (q.size() != lattice.n_slices() + 1) {
    throw StructuralError("discrete_action: path length does not match lattice");
  }
  const double delta = lattice.spacing();
  const double m = potential.mass();
  const double v_sign = lattice.signature() == TimeSignature::Euclidean ? 1.0 : -1.0;
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < q.size(); ++j) {
    const double qdot = (q[j + 1] - q[j]) / delta;
    const double qbar = 0.5 * (q[j] + q[j + 1]);
    sum += delta * (0.5 * m * qdot * qdot + v_sign * potential.value(qbar));
  }
  if (!std::isfinite(sum)) throw DomainError("discrete_action: non-finite result");
  return sum;
}

}  // namespace pathint
