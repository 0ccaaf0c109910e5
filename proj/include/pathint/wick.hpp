#ifndef PATHINT_WICK_HPP
#define PATHINT_WICK_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "pathint/model.hpp"

namespace pathint::wick {

// Exact rational coefficient arithmetic for symmetry factors.
struct Rational {
  long long num = 0;
  long long den = 1;

  Rational() = default;
  Rational(long long n, long long d);
  static Rational zero() { return Rational(); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
  bool is_zero() const { return num == 0; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// A perfect matching on labels 1..2n, canonical: each pair (i,j) has i < j and
// pairs are sorted by first element.
struct Pairing {
  std::vector<std::pair<int, int>> pairs;
};

// All (n_points-1)!! canonical pairings. n_points must be even and <= 16.
std::vector<Pairing> enumerate_pairings(int n_points);

// Gaussian n-point function: sum over pairings of products of the symmetric
// two-point kernel. Odd counts vanish identically.
double free_npoint(std::span<const double> points,
                   const std::function<double(double, double)>& kernel);

// One distinct analytic expression of a contraction order, still symbolic:
// label 0 is the integrated vertex position, labels 1,2 are external points.
// coefficient is in units of lambda^lambda_power, with an extra factor of -i
// in real time (has_imaginary_unit).
struct ContractionTerm {
  std::vector<std::pair<int, int>> kernel_factors;
  std::uint64_t multiplicity = 0;
  Rational coefficient;        // e.g. -1/2 meaning (-lambda/2) or (-i lambda/2)
  Rational symmetry_factor;    // |coefficient| relative to the bare vertex
  int lambda_power = 0;
  bool has_imaginary_unit = false;
  bool connected = false;
};

// Order-lambda two-point structure from explicit enumeration of all 6! = 720
// derivative assignments: 576 connected (factor 1/2), 144 disconnected
// (factor 1/8).
std::vector<ContractionTerm> first_order_two_point_terms(
    TimeSignature signature = TimeSignature::Euclidean);

// Order-lambda coefficient of -ln(K_E/C)/beta for the quartic anharmonic
// oscillator, evaluated with the beta->infinity kernel G(tau,tau) = -1/(2 m w)
// over [0, beta]; equals lambda hbar / (32 m^2 w^2) up to O(1/(beta w)).
// Requires beta * omega >= 20.
double euclidean_first_order_ke_ratio(double beta, double m, double omega, double lambda,
                                      double hbar);

struct CancellationReport {
  Rational disconnected_residual;          // coefficient after division; must be 0
  double disconnected_residual_numeric;    // same check with the numeric kernel
  std::vector<ContractionTerm> surviving;  // free two-point + connected order-lambda
};

// Forms numerator and denominator of G^(2) to order lambda and divides,
// verifying that the disconnected part cancels exactly.
CancellationReport disconnected_cancellation_check(double beta, double m, double omega,
                                                   double lambda);

}  // namespace pathint::wick

#endif
