#include "pathint/instanton.hpp"

#include <cmath>

#include "pathint/errors.hpp"
#include "pathint/gaussian.hpp"

namespace pathint::instanton {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;

void check_positive(double x, const char* what) {
  if (!std::isfinite(x) || x <= 0.0) throw DomainError(std::string(what) + " must be > 0");
}

void require_r(const InstantonParams& p) {
  if (p.r_provenance == RProvenance::Unset) {
    throw ConfigError("fluctuation ratio R is unset; supply it or calibrate from the oracle");
  }
}

}  // namespace

double InstantonParams::omega() const { return std::sqrt(lambda * a * a / 3.0); }

double InstantonParams::action() const { return std::sqrt(lambda / 3.0) * 2.0 * a * a * a / 3.0; }

double InstantonParams::boltzmann() const { return std::exp(-action() / hbar); }

InstantonParams make_params(double lambda, double a, double hbar) {
  check_positive(lambda, "lambda");
  check_positive(a, "a");
  check_positive(hbar, "hbar");
  InstantonParams p;
  p.lambda = lambda;
  p.a = a;
  p.hbar = hbar;
  return p;
}

InstantonParams with_r(InstantonParams params, double r) {
  if (!std::isfinite(r) || r < 0.0) throw DomainError("R must be >= 0");
  params.r = r;
  params.r_provenance = RProvenance::UserSupplied;
  return params;
}

ActionResult instanton_action(double lambda, double a) {
  check_positive(lambda, "lambda");
  check_positive(a, "a");
  const double omega = std::sqrt(lambda * a * a / 3.0);
  const double s_closed = std::sqrt(lambda / 3.0) * 2.0 * a * a * a / 3.0;

  // Zero-energy solutions have S = int (qdot^2) dtau = 2 int V dtau; check the
  // closed form against quadrature along the tanh profile.
  const double range = 40.0 / omega;
  const std::size_t n = 4000;
  const double h = 2.0 * range / static_cast<double>(n);
  double sum = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    const double tau = -range + static_cast<double>(i) * h;
    const double qdot = gaussian::instanton_profile_slope(tau, a, lambda, 0.0);
    const double q = gaussian::instanton_profile(tau, a, lambda, 0.0);
    const double u = q * q - a * a;
    const double v = lambda * u * u / 24.0;
    const double w = (i == 0 || i == n) ? 0.5 : 1.0;
    sum += w * (0.5 * qdot * qdot + v);
  }
  const double s_quad = sum * h;
  if (std::abs(s_quad - s_closed) > 1e-8 * s_closed) {
    throw ConvergenceError("instanton action quadrature disagrees with the closed form");
  }
  return {s_closed, omega};
}

DiluteGasResult dilute_gas_propagator(double beta, const InstantonParams& params,
                                      Endpoints endpoints, int n_sectors) {
  check_positive(beta, "beta");
  require_r(params);
  if (n_sectors < 1) throw DomainError("n_sectors must be >= 1");

  const double omega = params.omega();
  const double hbar = params.hbar;
  const double prefactor = std::sqrt(omega / (kPi * hbar)) * std::exp(-0.5 * beta * omega);
  const double q_param = beta * params.r * params.boltzmann();

  DiluteGasResult out;
  out.q_parameter = q_param;
  out.n_sectors = n_sectors;
  out.sector_weights.reserve(static_cast<std::size_t>(n_sectors));
  out.partial_sums.reserve(static_cast<std::size_t>(n_sectors));
  double running = 0.0;
  for (int n = 0; n < n_sectors; ++n) {
    // Instanton count 2n (same well) or 2n+1 (opposite well); the position
    // integrations produce beta^k / k!.
    const int k = endpoints == Endpoints::SameWell ? 2 * n : 2 * n + 1;
    double term = 1.0;
    for (int i = 1; i <= k; ++i) term *= q_param / static_cast<double>(i);
    const double weight = prefactor * term;
    out.sector_weights.push_back(weight);
    running += weight;
    out.partial_sums.push_back(running);
  }
  out.closed_form = prefactor * (endpoints == Endpoints::SameWell ? std::cosh(q_param)
                                                                  : std::sinh(q_param));
  const double shift = hbar * params.r * params.boltzmann();
  out.energy_minus = 0.5 * hbar * omega - shift;
  out.energy_plus = 0.5 * hbar * omega + shift;
  return out;
}

double energy_splitting(const InstantonParams& params) {
  require_r(params);
  return 2.0 * params.hbar * params.r * params.boltzmann();
}

InstantonParams calibrate_r(const InstantonParams& params, double oracle_splitting) {
  check_positive(oracle_splitting, "oracle splitting");
  InstantonParams out = params;
  out.r = oracle_splitting * std::exp(out.action() / out.hbar) / (2.0 * out.hbar);
  out.r_provenance = RProvenance::OracleCalibrated;
  return out;
}

double periodic_band_energy(double theta, const InstantonParams& params) {
  require_r(params);
  if (!(theta >= 0.0) || !(theta < 2.0 * kPi)) {
    throw DomainError("theta must lie in [0, 2pi)");
  }
  return 0.5 * params.hbar * params.omega() -
         2.0 * params.hbar * params.r * params.boltzmann() * std::cos(theta);
}

double periodic_double_sum(double q_parameter) {
  if (!std::isfinite(q_parameter) || q_parameter < 0.0) {
    throw DomainError("Q must be >= 0");
  }
  double sum = 1.0;
  double term = 1.0;
  for (int n = 1; n < 400; ++n) {
    term *= (q_parameter * q_parameter) / (static_cast<double>(n) * static_cast<double>(n));
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

double periodic_theta_integral(double q_parameter) {
  if (!std::isfinite(q_parameter) || q_parameter < 0.0) {
    throw DomainError("Q must be >= 0");
  }
  // Periodic trapezoid converges exponentially for this smooth integrand.
  const int n = 512;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double theta = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    sum += std::exp(2.0 * q_parameter * std::cos(theta));
  }
  return sum / static_cast<double>(n);
}

RStabilityReport r_stability(const std::vector<InstantonParams>& calibrated) {
  if (calibrated.size() < 2) throw DomainError("r_stability: need at least two calibrations");
  double lo = calibrated.front().r;
  double hi = lo;
  for (const auto& p : calibrated) {
    require_r(p);
    lo = std::min(lo, p.r);
    hi = std::max(hi, p.r);
  }
  if (!(lo > 0.0)) throw DomainError("r_stability: calibrated R must be positive");
  const double spread = hi / lo - 1.0;
  return {lo, hi, spread, spread < 0.25};
}

}  // namespace pathint::instanton
