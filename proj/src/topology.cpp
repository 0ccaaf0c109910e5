#include "pathint/topology.hpp"

#include <cmath>

#include "pathint/errors.hpp"

namespace pathint::topology {

namespace {

constexpr double kPi = 3.141592653589793238462643383280;
constexpr std::complex<double> kI{0.0, 1.0};

void check_setup(const InterferenceSetup& s) {
  if (!std::isfinite(s.base_phase) || !std::isfinite(s.flux)) {
    throw DomainError("phase and flux must be finite");
  }
  if (!(s.charge > 0) || !(s.hbar > 0) || !(s.c > 0)) {
    throw DomainError("e, hbar, c must be > 0");
  }
}

}  // namespace

AbPhase ab_relative_phase(const InterferenceSetup& setup) {
  check_setup(setup);
  const double raw = setup.base_phase - setup.charge * setup.flux / (setup.hbar * setup.c);
  double mod = std::fmod(raw, 2.0 * kPi);
  if (mod < 0.0) mod += 2.0 * kPi;
  return {raw, mod};
}

double two_slit_intensity(std::complex<double> a1, std::complex<double> a2,
                          const InterferenceSetup& setup) {
  check_setup(setup);
  const double ab = setup.charge * setup.flux / (setup.hbar * setup.c);
  const std::complex<double> amp = a1 + std::exp(-kI * ab) * a2;
  return std::norm(amp);
}

StatisticsSolutions statistics_solutions(int dimension) {
  if (dimension == 3) {
    // exp(2 i phi) = 1: Bose and Fermi only.
    return {3, false, {0.0, kPi}};
  }
  if (dimension == 2) {
    // C_n = exp(i phi) C_{n-1} fixes the sector coefficients but leaves phi free.
    return {2, true, {}};
  }
  throw UnsupportedError("statistics_solutions: dimension must be 2 or 3");
}

StatisticsPhase::StatisticsPhase(int dimension, double phi) : dimension_(dimension), phi_(phi) {
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  if (dimension == 2) return;
  if (dimension != 3) throw UnsupportedError("statistics phase: dimension must be 2 or 3");
  // exp(2 i phi) = 1: phi must be a multiple of pi
  const double r = std::abs(std::remainder(phi, kPi));
  if (r > 1e-12) {
    throw DomainError("statistics phase: 3D admits only phi = 0 or pi (mod 2pi)");
  }
}

std::complex<double> StatisticsPhase::coefficient(int n) const {
  return sector_coefficient(n, phi_);
}

std::complex<double> sector_coefficient(int n, double phi) {
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  return std::exp(kI * (static_cast<double>(n) * phi));
}

std::complex<double> winding_amplitude(const std::map<int, std::complex<double>>& sectors,
                                       double phi) {
  if (!std::isfinite(phi)) throw DomainError("phi must be finite");
  std::complex<double> sum = 0.0;
  for (const auto& [n, amp] : sectors) {
    sum += sector_coefficient(n, phi) * amp;
  }
  return sum;
}

double dirac_charge_unit(int n, double g, double hbar, double c) {
  if (g == 0.0 || !std::isfinite(g)) throw DomainError("magnetic charge g must be nonzero");
  if (!(hbar > 0) || !(c > 0)) throw DomainError("hbar, c must be > 0");
  return static_cast<double>(n) * hbar * c / (2.0 * g);
}

}  // namespace pathint::topology
