#include "pathint/gaussian.hpp"

#include <cmath>

#include "pathint/errors.hpp"
#include "pathint/numerics.hpp"

namespace pathint::gaussian {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr std::complex<double> kI{0.0, 1.0};

void check_positive(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0) throw DomainError(std::string(what) + " must be > 0");
}

}  // namespace

std::complex<double> PropagatorValue::value() const {
  if (signature == TimeSignature::Euclidean) {
    return {euclidean_value(), 0.0};
  }
  return prefactor_modulus * phase_or_sign *
         std::exp(kI * (classical_action / hbar));
}

double PropagatorValue::euclidean_value() const {
  if (signature != TimeSignature::Euclidean) {
    throw UnsupportedError("euclidean_value on a real-time propagator");
  }
  return prefactor_modulus * std::exp(-classical_action / hbar);
}

PropagatorValue free_propagator(double q, double qp, double extent, double m, double hbar,
                                TimeSignature signature) {
  check_positive(extent, "extent");
  check_positive(m, "m");
  check_positive(hbar, "hbar");
  PropagatorValue out;
  out.signature = signature;
  out.hbar = hbar;
  out.prefactor_modulus = std::sqrt(m / (2.0 * kPi * hbar * extent));
  out.classical_action = m * (qp - q) * (qp - q) / (2.0 * extent);
  if (signature == TimeSignature::RealTime) {
    // (m / 2 pi i hbar T)^(1/2): modulus above times exp(-i pi/4)
    out.phase_or_sign = std::polar(1.0, -kPi / 4.0);
  } else {
    out.phase_or_sign = 1.0;
  }
  return out;
}

PropagatorValue ho_propagator(double q, double qp, double extent, double m, double omega,
                              double hbar, TimeSignature signature) {
  check_positive(extent, "extent");
  check_positive(m, "m");
  check_positive(hbar, "hbar");
  if (omega < 0.0 || !std::isfinite(omega)) throw DomainError("omega must be >= 0");
  if (omega == 0.0) return free_propagator(q, qp, extent, m, hbar, signature);

  PropagatorValue out;
  out.signature = signature;
  out.hbar = hbar;
  if (signature == TimeSignature::Euclidean) {
    const double s = std::sinh(omega * extent);
    const double c = std::cosh(omega * extent);
    out.prefactor_modulus = std::sqrt(m * omega / (2.0 * kPi * hbar * s));
    out.classical_action = (m * omega / (2.0 * s)) * ((qp * qp + q * q) * c - 2.0 * qp * q);
    out.phase_or_sign = 1.0;
  } else {
    const double s = std::sin(omega * extent);
    const double c = std::cos(omega * extent);
    if (s == 0.0 || std::abs(s) < 1e-14 * std::max(1.0, omega * extent)) {
      throw CausticError("ho_propagator: caustic, sin(omega T) = 0");
    }
    out.prefactor_modulus = std::sqrt(m * omega / (2.0 * kPi * hbar * std::abs(s)));
    out.classical_action = (m * omega / (2.0 * s)) * ((qp * qp + q * q) * c - 2.0 * qp * q);
    // principal sqrt of 1/(i sin): exp(-i pi/4) for sin > 0, exp(+i pi/4) otherwise
    out.phase_or_sign = std::polar(1.0, s > 0.0 ? -kPi / 4.0 : kPi / 4.0);
  }
  return out;
}

double ho_partition_function(double beta, double omega, double hbar) {
  check_positive(beta, "beta");
  check_positive(omega, "omega");
  check_positive(hbar, "hbar");
  const double x = beta * hbar * omega;
  return std::exp(-0.5 * x) / (1.0 - std::exp(-x));
}

double ho_partition_function_quadrature(double beta, double m, double omega, double hbar) {
  check_positive(beta, "beta");
  check_positive(m, "m");
  check_positive(omega, "omega");
  check_positive(hbar, "hbar");
  const double tau = hbar * beta;  // imaginary-time extent matching Z(beta)
  // Diagonal K_E(q, tau; q) is a Gaussian in q; pick the window from its width.
  const double s = std::sinh(omega * tau);
  const double c = std::cosh(omega * tau);
  const double alpha = (m * omega / (hbar * s)) * (c - 1.0);  // exponent coefficient
  const double width = 1.0 / std::sqrt(alpha);
  const double window = 10.0 * width;
  auto diag = [&](double q) {
    return ho_propagator(q, q, tau, m, omega, hbar, TimeSignature::Euclidean).euclidean_value();
  };
  const double scale = diag(0.0) * width;
  return numerics::integrate(diag, -window, window, 1e-12 * scale);
}

double dirichlet_green(double tau, double taup, double beta, double m, double omega) {
  check_positive(beta, "beta");
  check_positive(m, "m");
  check_positive(omega, "omega");
  if (!(tau >= 0.0 && tau <= beta && taup >= 0.0 && taup <= beta)) {
    throw DomainError("dirichlet_green: arguments must lie in [0, beta]");
  }
  const double lo = std::min(tau, taup);
  const double hi = std::max(tau, taup);
  // -sinh(w lo) sinh(w (beta-hi)) / (m w sinh(w beta)), written so large
  // omega*beta cannot overflow: exponent a+b-c <= 0 below.
  const double a = omega * lo;
  const double b = omega * (beta - hi);
  const double c = omega * beta;
  const double num = std::exp(a + b - c) * (1.0 - std::exp(-2.0 * a)) * (1.0 - std::exp(-2.0 * b));
  return -num / (2.0 * m * omega * (1.0 - std::exp(-2.0 * c)));
}

FeynmanGreenResult feynman_green_qm(double dt, double omega, PolePrescription prescription) {
  check_positive(omega, "omega");
  const double eps = prescription.epsilon;
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("epsilon must be > 0");
  if (!std::isfinite(dt)) throw DomainError("dt must be finite");

  // The sin part of exp(-ik dt) is odd in k and drops, leaving
  //   (i/pi) * int_0^inf cos(k dt) / (k^2 - omega^2 + i eps) dk.
  // Subtract the exactly integrable 1/(k^2 + omega^2) piece so the remainder
  // falls off like 1/k^4 and the truncated tail is controlled:
  //   1/(k^2-w^2+ie) - 1/(k^2+w^2) = (2 w^2 - ie)/((k^2-w^2+ie)(k^2+w^2)).
  const double adt = std::abs(dt);
  const std::complex<double> base = (kI / (2.0 * omega)) * std::exp(-omega * adt);
  const std::complex<double> shift(2.0 * omega * omega, -eps);
  auto rest = [&](double k) {
    const std::complex<double> den1(k * k - omega * omega, eps);
    const double den2 = k * k + omega * omega;
    return std::cos(k * adt) * shift / (den1 * den2);
  };
  // The subtracted integrand falls off like 2 w^2 / k^4; the near-pole peak at
  // k = omega (width ~ eps/2w) gets its own tightly resolved panel.
  const double kmax = 300.0 * omega;
  const double w = 0.05 * omega;
  const double tol = 1e-10;
  std::complex<double> correction = numerics::integrate_complex(rest, 0.0, omega - w, tol);
  correction += numerics::integrate_complex(rest, omega - w, omega + w, tol);
  correction += numerics::integrate_complex(rest, omega + w, kmax, tol);
  correction *= kI / kPi;
  // |remainder integrand| <= 2 w^2 / k^4 beyond kmax
  const double tail = (2.0 * omega * omega) / (3.0 * kmax * kmax * kmax) / kPi;
  return {base + correction, tail + tol};
}

double quadratic_generating_exponent(const SourceFunction& source, double beta, double m,
                                     double omega) {
  check_positive(beta, "beta");
  if (source.lattice.signature() != TimeSignature::Euclidean) {
    throw StructuralError("source lattice must be Euclidean");
  }
  if (std::abs(source.lattice.extent() - beta) > 1e-12 * beta) {
    throw StructuralError("source lattice extent does not span [0, beta]");
  }
  const std::size_t n = source.lattice.n_slices();
  if (source.samples.size() != n + 1) {
    throw StructuralError("source samples do not match lattice");
  }
  const double h = source.lattice.spacing();
  auto weight = [&](std::size_t i) { return (i == 0 || i == n) ? 0.5 * h : h; };
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (!std::isfinite(source.samples[i])) throw DomainError("source sample must be finite");
    const double ti = static_cast<double>(i) * h;
    double row = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
      const double tj = static_cast<double>(j) * h;
      row += weight(j) * dirichlet_green(ti, tj, beta, m, omega) * source.samples[j];
    }
    sum += weight(i) * source.samples[i] * row;
  }
  return 0.5 * sum;
}

double instanton_profile(double tau, double a, double lambda, double tau0) {
  check_positive(a, "a");
  check_positive(lambda, "lambda");
  const double omega = std::sqrt(lambda * a * a / 3.0);
  return a * std::tanh(0.5 * omega * (tau - tau0));
}

double instanton_profile_slope(double tau, double a, double lambda, double tau0) {
  check_positive(a, "a");
  check_positive(lambda, "lambda");
  const double omega = std::sqrt(lambda * a * a / 3.0);
  const double ch = std::cosh(0.5 * omega * (tau - tau0));
  return 0.5 * a * omega / (ch * ch);
}

double lattice_propagator(double q, double qp, const Lattice& lattice,
                          const Potential& potential) {
  if (lattice.signature() != TimeSignature::Euclidean) {
    throw UnsupportedError("lattice_propagator: Euclidean signature only");
  }
  const auto kind = potential.kind();
  if (kind != PotentialKind::Free && kind != PotentialKind::Harmonic) {
    throw UnsupportedError("lattice_propagator: quadratic potentials only");
  }
  const double m = potential.mass();
  const double hbar = potential.hbar();
  const double delta = lattice.spacing();
  const double c2 = 0.5 * m * potential.omega() * potential.omega();

  // One-slice kernel exp(log_n1 - a1 (x^2 + y^2) + 2 b1 x y); composing keeps
  // the symmetric Gaussian form, with a^2 - b^2 invariant.
  const double a1 = m / (2.0 * hbar * delta) + delta * c2 / (2.0 * hbar);
  const double b1 = m / (2.0 * hbar * delta);
  const double log_n1 = 0.5 * std::log(m / (2.0 * kPi * hbar * delta));

  double a = a1;
  double b = b1;
  double log_n = log_n1;
  for (std::size_t step = 1; step < lattice.n_slices(); ++step) {
    const double s = a1 + a;
    log_n += log_n1 + 0.5 * std::log(kPi / s);
    const double a_next = a1 - b1 * b1 / s;
    b = b1 * b / s;
    a = a_next;
  }
  return std::exp(log_n - a * (q * q + qp * qp) + 2.0 * b * q * qp);
}

}  // namespace pathint::gaussian
