#include "pathint/wick.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>

#include "pathint/errors.hpp"

namespace pathint::wick {

namespace {

long long gcd_ll(long long a, long long b) {
  a = std::abs(a);
  b = std::abs(b);
  while (b != 0) {
    const long long t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw DomainError("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const long long g = gcd_ll(num == 0 ? 1 : num, den);
  num /= g;
  den /= g;
  if (num == 0) den = 1;
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}

std::vector<Pairing> enumerate_pairings(int n_points) {
  if (n_points < 0 || n_points % 2 != 0) {
    throw DomainError("enumerate_pairings: n_points must be even and >= 0");
  }
  if (n_points > 16) {
    throw CapacityError("enumerate_pairings: n_points above the combinatorial guard (16)");
  }
  std::vector<Pairing> out;
  std::vector<std::pair<int, int>> current;
  std::vector<bool> used(static_cast<std::size_t>(n_points) + 1, false);

  // Always match the smallest unused label first; this yields each matching
  // exactly once, already in canonical order.
  auto recurse = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 1; i <= n_points; ++i) {
      if (!used[static_cast<std::size_t>(i)]) {
        first = i;
        break;
      }
    }
    if (first < 0) {
      out.push_back(Pairing{current});
      return;
    }
    used[static_cast<std::size_t>(first)] = true;
    for (int j = first + 1; j <= n_points; ++j) {
      if (used[static_cast<std::size_t>(j)]) continue;
      used[static_cast<std::size_t>(j)] = true;
      current.emplace_back(first, j);
      self(self);
      current.pop_back();
      used[static_cast<std::size_t>(j)] = false;
    }
    used[static_cast<std::size_t>(first)] = false;
  };
  recurse(recurse);
  return out;
}

double free_npoint(std::span<const double> points,
                   const std::function<double(double, double)>& kernel) {
  if (points.size() % 2 != 0) return 0.0;
  if (points.empty()) return 1.0;
  // Spot check of the stated kernel symmetry on the first two points.
  {
    const double kab = kernel(points[0], points[1]);
    const double kba = kernel(points[1], points[0]);
    const double scale = std::max({std::abs(kab), std::abs(kba), 1e-300});
    if (std::abs(kab - kba) > 1e-9 * scale) {
      throw DomainError("free_npoint: kernel is not symmetric");
    }
  }
  const auto pairings = enumerate_pairings(static_cast<int>(points.size()));
  double sum = 0.0;
  for (const auto& pairing : pairings) {
    double prod = 1.0;
    for (const auto& [i, j] : pairing.pairs) {
      prod *= kernel(points[static_cast<std::size_t>(i - 1)],
                     points[static_cast<std::size_t>(j - 1)]);
    }
    sum += prod;
  }
  return sum;
}

namespace {

// Canonical key of a product of kernel factors; labels: 0 = integrated vertex,
// 1,2 = external points. The kernel is symmetric, so pairs are sorted.
using FactorList = std::vector<std::pair<int, int>>;

FactorList canonical(FactorList factors) {
  for (auto& f : factors) {
    if (f.first > f.second) std::swap(f.first, f.second);
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

// Enumerate all bijections of derivative slots onto the J slots of a product
// of brackets <J G J>^n_brackets and bucket them by the analytic expression
// they produce. slot_labels[i] is the position label carried by derivative i.
std::map<FactorList, std::uint64_t> enumerate_assignments(const std::vector<int>& slot_labels,
                                                          int n_brackets) {
  const int n_slots = 2 * n_brackets;
  if (static_cast<int>(slot_labels.size()) != n_slots) {
    throw StructuralError("derivative count does not match J slots");
  }
  std::vector<int> perm(static_cast<std::size_t>(n_slots));
  std::iota(perm.begin(), perm.end(), 0);
  std::map<FactorList, std::uint64_t> classes;
  do {
    // J slot 2k and 2k+1 belong to bracket k; the bracket becomes
    // G(label of derivative on slot 2k, label of derivative on slot 2k+1).
    FactorList factors;
    factors.reserve(static_cast<std::size_t>(n_brackets));
    for (int k = 0; k < n_brackets; ++k) {
      const int la = slot_labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(2 * k)])];
      const int lb =
          slot_labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(2 * k + 1)])];
      factors.emplace_back(la, lb);
    }
    ++classes[canonical(std::move(factors))];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return classes;
}

bool is_connected_two_point(const FactorList& factors) {
  // Disconnected means some factor(s) carry no external label while the
  // externals pair among themselves; for this order it is simply whether
  // the externals 1 and 2 sit in one factor.
  for (const auto& f : factors) {
    if (f.first == 1 && f.second == 2) return false;
  }
  return true;
}

}  // namespace

std::vector<ContractionTerm> first_order_two_point_terms(TimeSignature signature) {
  // Two external derivatives (x1, x2) plus one quartic vertex acting on the
  // 6-J term of exp(<JGJ>/2): all 6! assignments, bucketed by expression.
  const std::vector<int> slots = {1, 2, 0, 0, 0, 0};
  const auto classes = enumerate_assignments(slots, 3);

  // Expansion bookkeeping: vertex 1/4!, exponential term 1/3!, (1/2)^3 from
  // the bracket normalization; total 1/1152 per assignment, sign -1.
  const Rational per_assignment(-1, 24 * 6 * 8);
  std::vector<ContractionTerm> terms;
  for (const auto& [factors, count] : classes) {
    ContractionTerm t;
    t.kernel_factors = factors;
    t.multiplicity = count;
    t.coefficient = per_assignment * Rational(static_cast<long long>(count), 1);
    t.symmetry_factor = Rational(static_cast<long long>(count), 1152);
    t.lambda_power = 1;
    t.has_imaginary_unit = (signature == TimeSignature::RealTime);
    t.connected = is_connected_two_point(factors);
    terms.push_back(std::move(t));
  }
  // Deterministic order: connected first.
  std::sort(terms.begin(), terms.end(),
            [](const ContractionTerm& a, const ContractionTerm& b) {
              return a.connected > b.connected;
            });
  return terms;
}

double euclidean_first_order_ke_ratio(double beta, double m, double omega, double lambda,
                                      double hbar) {
  if (!(beta > 0) || !(m > 0) || !(omega > 0) || !(hbar > 0) || lambda < 0) {
    throw DomainError("euclidean_first_order_ke_ratio: bad parameters");
  }
  if (beta * omega < 20.0) {
    throw PreconditionError(
        "euclidean_first_order_ke_ratio: beta*omega must be >= 20 for the "
        "infinite-beta kernel");
  }
  // Four vertex derivatives on the 4-J term of exp(<JGJ>/2): enumerate the
  // 4! assignments; every one lands on G(tau,tau)^2.
  const std::vector<int> slots = {0, 0, 0, 0};
  const auto classes = enumerate_assignments(slots, 2);
  std::uint64_t count = 0;
  for (const auto& [factors, c] : classes) {
    if (factors != FactorList{{0, 0}, {0, 0}}) {
      throw StructuralError("unexpected contraction class in K_E expansion");
    }
    count += c;
  }
  // -(lambda hbar/4!) * (count / (2! 2^2)) * int G(tau,tau)^2 dtau; the ratio
  // flips the sign. G(tau,tau) = -1/(2 m omega) in the beta->infinity limit.
  const double g_diag = -1.0 / (2.0 * m * omega);
  const double integral = g_diag * g_diag * beta;  // trapezoid of a constant is exact
  const double weight = static_cast<double>(count) / (24.0 * 2.0 * 4.0);
  return lambda * hbar * weight * integral / beta;
}

CancellationReport disconnected_cancellation_check(double beta, double m, double omega,
                                                   double lambda) {
  if (!(beta > 0) || !(m > 0) || !(omega > 0) || lambda < 0) {
    throw DomainError("disconnected_cancellation_check: bad parameters");
  }
  const auto order1 = first_order_two_point_terms(TimeSignature::Euclidean);

  // Numerator: G(1,2) + lambda (connected + disconnected).
  // Denominator: 1 + lambda * vacuum, vacuum = -1/8 <G(0,0)^2 integral>.
  // The vacuum bubble is the same enumeration that drives the K_E ratio.
  const Rational vacuum_coeff(-1, 8);

  Rational disconnected_coeff = Rational::zero();
  std::vector<ContractionTerm> surviving;

  // Order-0 survivor: the free two-point function.
  ContractionTerm free_term;
  free_term.kernel_factors = {{1, 2}};
  free_term.multiplicity = 1;
  free_term.coefficient = Rational(1, 1);
  free_term.symmetry_factor = Rational(1, 1);
  free_term.lambda_power = 0;
  surviving.push_back(free_term);

  for (const auto& t : order1) {
    if (t.connected) {
      surviving.push_back(t);
    } else {
      // Division to order lambda subtracts free_term * vacuum, which carries
      // the identical kernel structure {G(1,2), G(0,0), G(0,0)}.
      disconnected_coeff = t.coefficient - free_term.coefficient * vacuum_coeff;
    }
  }

  // The same cancellation evaluated with the numeric infinite-beta kernel.
  const double g_diag = -1.0 / (2.0 * m * omega);
  const double g12 = -std::exp(-omega * beta / 3.0) / (2.0 * m * omega);
  const double bubble = g_diag * g_diag * beta;
  double disc_value = 0.0;
  for (const auto& t : order1) {
    if (!t.connected) disc_value = lambda * t.coefficient.to_double() * g12 * bubble;
  }
  const double denom_value = lambda * vacuum_coeff.to_double() * bubble * g12;
  const double residual_numeric = disc_value - denom_value;

  return {disconnected_coeff, residual_numeric, surviving};
}

}  // namespace pathint::wick
