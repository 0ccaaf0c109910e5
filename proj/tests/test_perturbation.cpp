#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pathint/errors.hpp"
#include "pathint/gaussian.hpp"
#include "pathint/perturbation.hpp"
#include "pathint/wick.hpp"

using namespace pathint;
using namespace pathint::perturbation;

namespace {
constexpr double kPi = 3.141592653589793238462643383280;

std::vector<double> ladder(double lo, double hi, int n) {
  std::vector<double> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  return out;
}
}  // namespace

TEST_CASE("first-order anharmonic ground state energy") {
  // lambda = 0: the oscillator ground state
  CHECK(anharmonic_e0_first_order(1.0, 1.0, 0.0, 1.0).value == doctest::Approx(0.5));
  CHECK(anharmonic_e0_first_order(1.0, 2.0, 0.0, 1.0).value == doctest::Approx(1.0));

  // direct formula at lambda = 0.1
  const auto e = anharmonic_e0_first_order(1.0, 1.0, 0.1, 1.0);
  CHECK(e.value == doctest::Approx(0.503125).epsilon(1e-15));
  CHECK(e.error_bar == 0.0);

  // hbar and mass scaling
  CHECK(anharmonic_e0_first_order(2.0, 1.5, 0.3, 0.5).value ==
        doctest::Approx(0.5 * 0.5 * 1.5 + 0.25 * 0.3 / (32.0 * 4.0 * 2.25)).epsilon(1e-15));

  CHECK_THROWS_AS(anharmonic_e0_first_order(0.0, 1.0, 0.1, 1.0), DomainError);
}

TEST_CASE("log slope energy estimator") {
  // HO closed-form diagonal: E0 = 1/2 within 1e-4 on a ladder up to 30
  auto ho_diag = [](double beta) {
    return gaussian::ho_propagator(0, 0, beta, 1, 1, 1, TimeSignature::Euclidean)
        .euclidean_value();
  };
  const auto lad = ladder(10.0, 30.0, 6);
  const auto est = log_slope_energy(ho_diag, lad);
  CHECK(est.value == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(est.error_bar < 1e-4);

  // free particle: logarithmic growth only, slope ~ 1/(2 beta) -> 0
  auto free_diag = [](double beta) { return std::sqrt(1.0 / (2.0 * kPi * beta)); };
  const double f30 = log_slope_energy(free_diag, lad).value;
  const double f300 = log_slope_energy(free_diag, ladder(100.0, 300.0, 6)).value;
  CHECK(std::abs(f30) < 1.0 / (2.0 * 26.0) + 1e-12);
  CHECK(std::abs(f300) < std::abs(f30));
  CHECK(std::abs(f300) < 2e-3);

  // anharmonic first-order modulation recovers w/2 + lambda/32
  const double lambda = 0.1;
  auto anharm_diag = [&](double beta) {
    const double ratio = wick::euclidean_first_order_ke_ratio(beta, 1, 1, lambda, 1);
    return ho_diag(beta) * std::exp(-beta * ratio);
  };
  const auto lad2 = ladder(20.0, 40.0, 6);
  const auto est2 = log_slope_energy(anharm_diag, lad2);
  CHECK(est2.value == doctest::Approx(0.5 + lambda / 32.0).epsilon(1e-6));

  CHECK_THROWS_AS(log_slope_energy(ho_diag, std::vector<double>{1.0, 2.0}), PreconditionError);
  CHECK_THROWS_AS(log_slope_energy(ho_diag, std::vector<double>{1.0, 2.0, 1.5}),
                  PreconditionError);
  auto negative = [](double) { return -1.0; };
  CHECK_THROWS_AS(log_slope_energy(negative, lad), DomainError);
}

TEST_CASE("log slope recovers injected energies under polynomial prefactors") {
  // a degree-p prefactor biases the slope by at most p / beta
  for (double e0 : {0.1, 0.7, 2.0, 10.0}) {
    auto diag = [&](double beta) { return (1.0 + 0.3 * beta) * std::exp(-beta * e0); };
    const auto lad = ladder(30.0 / e0, 60.0 / e0, 5);
    const auto est = log_slope_energy(diag, lad);
    const double ladder_error = 1.0 / lad[3] + 5.0 * est.error_bar;
    CHECK(std::abs(est.value - e0) <= ladder_error);
  }
}

TEST_CASE("three routes to the anharmonic ground state agree") {
  const double lambda = 0.1;
  // route 1: closed-form first order
  const double formula = anharmonic_e0_first_order(1, 1, lambda, 1).value;

  // route 2: contraction + log slope
  auto diag = [&](double beta) {
    const double ratio = wick::euclidean_first_order_ke_ratio(beta, 1, 1, lambda, 1);
    return gaussian::ho_propagator(0, 0, beta, 1, 1, 1, TimeSignature::Euclidean)
               .euclidean_value() * std::exp(-beta * ratio);
  };
  const double slope = log_slope_energy(diag, ladder(22.0, 42.0, 6)).value;

  CHECK(std::abs(formula - slope) < 2e-3);
  // the spectral-oracle leg of this comparison lives in test_spectral.cpp
}
