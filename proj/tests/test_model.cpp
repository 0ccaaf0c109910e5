#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pathint/model.hpp"
#include "pathint/errors.hpp"

using namespace pathint;

namespace {

Path constant_path(std::size_t n_slices, double q, BoundaryKind b = BoundaryKind::Periodic) {
  return Path(std::vector<double>(n_slices + 1, q), b);
}

}  // namespace

TEST_CASE("discrete action on constant and linear paths") {
  const auto dw = Potential::double_well(1.0, 1.0);
  const Lattice lat(16, 2.0, TimeSignature::Euclidean);
  // zero kinetic term, constant potential V(0) = 1/24, extent 2
  CHECK(discrete_action(constant_path(16, 0.0), lat, dw) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));

  const auto free = Potential::free_particle();
  CHECK(discrete_action(constant_path(16, 0.0), lat, free) == 0.0);

  // linear 0 -> 1 over beta = 1: (1/2)(dq/dtau)^2 * beta = 1/2 for any N
  for (std::size_t n : {1u, 7u, 32u}) {
    const Lattice l(n, 1.0, TimeSignature::Euclidean);
    std::vector<double> q(n + 1);
    for (std::size_t i = 0; i <= n; ++i) q[i] = static_cast<double>(i) / static_cast<double>(n);
    const Path path(q, BoundaryKind::FixedEndpoints);
    CHECK(discrete_action(path, l, free) == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("discrete action signature split") {
  const auto ho = Potential::harmonic(1.0, 1.0);
  const Lattice euc(8, 1.0, TimeSignature::Euclidean);
  const Lattice rt(8, 1.0, TimeSignature::RealTime);
  const auto path = constant_path(8, 0.7);
  // constant path: pure potential term, opposite signs
  CHECK(discrete_action(path, euc, ho) == doctest::Approx(0.5 * 0.49).epsilon(1e-14));
  CHECK(discrete_action(path, rt, ho) == doctest::Approx(-0.5 * 0.49).epsilon(1e-14));
}

TEST_CASE("discrete action error paths") {
  const auto free = Potential::free_particle();
  const Lattice lat(8, 1.0, TimeSignature::Euclidean);
  CHECK_THROWS_AS(discrete_action(constant_path(9, 0.0), lat, free), StructuralError);
  CHECK_THROWS_AS(Path({0.0, std::nan(""), 0.0}, BoundaryKind::FixedEndpoints), DomainError);
  CHECK_THROWS_AS(Path({0.0, 1.0}, BoundaryKind::Periodic), StructuralError);
}

TEST_CASE("potential derivatives: closed forms") {
  const auto dw = Potential::double_well(1.0, 1.0);
  auto d = potential_derivatives(dw, 1.0);
  CHECK(d.v == doctest::Approx(0.0));
  CHECK(d.v1 == doctest::Approx(0.0));
  CHECK(d.v2 == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  // V''(+-a) = lambda a^2 / 3 = omega^2
  CHECK(d.v2 == doctest::Approx(dw.omega() * dw.omega()).epsilon(1e-14));

  const auto ho = Potential::harmonic(1.0, 2.0);
  d = potential_derivatives(ho, 0.0);
  CHECK(d.v == 0.0);
  CHECK(d.v1 == 0.0);
  CHECK(d.v2 == doctest::Approx(4.0).epsilon(1e-14));

  const auto free = Potential::free_particle();
  d = potential_derivatives(free, 3.7);
  CHECK(d.v == 0.0);
  CHECK(d.v1 == 0.0);
  CHECK(d.v2 == 0.0);
}

TEST_CASE("potential derivative consistency by central differences") {
  const double h = 1e-4;
  const std::vector<Potential> pots = {
      Potential::harmonic(1.0, 1.3),
      Potential::anharmonic(1.0, 1.0, 0.8),
      Potential::double_well(1.0, 1.0),
      Potential::double_well(2.0, 1.5),
      Potential::periodic(0.7, 3.0),
  };
  // Grid where V = O(1): the 10 h^2 truncation bound dominates the roundoff
  // noise eps |V| / h^2 of the second difference.
  for (const auto& p : pots) {
    for (double q = -1.5; q <= 1.5; q += 0.19) {
      const double fd1 = (p.value(q + h) - p.value(q - h)) / (2.0 * h);
      const double fd2 = (p.value(q + h) - 2.0 * p.value(q) + p.value(q - h)) / (h * h);
      CHECK(std::abs(fd1 - p.deriv(q)) <= 10.0 * h * h * std::max(1.0, std::abs(p.deriv(q))));
      CHECK(std::abs(fd2 - p.second_deriv(q)) <= 10.0 * h * h);
    }
  }
}

TEST_CASE("time reversal invariance of the action") {
  const auto dw = Potential::double_well(1.3, 1.1);
  const Lattice lat(12, 3.0, TimeSignature::Euclidean);
  const Lattice rt(12, 3.0, TimeSignature::RealTime);
  std::vector<double> q = {0.1, -0.4, 0.9, 1.2, -0.3, 0.0, 0.5, 0.6, -1.0, 0.2, 0.8, -0.2, 0.3};
  std::vector<double> rev(q.rbegin(), q.rend());
  const Path fwd(q, BoundaryKind::FixedEndpoints);
  const Path bwd(rev, BoundaryKind::FixedEndpoints);
  CHECK(discrete_action(fwd, lat, dw) == doctest::Approx(discrete_action(bwd, lat, dw)).epsilon(1e-14));
  CHECK(discrete_action(fwd, rt, dw) == doctest::Approx(discrete_action(bwd, rt, dw)).epsilon(1e-14));
}

TEST_CASE("free action depends only on position differences") {
  const auto free = Potential::free_particle();
  const Lattice lat(6, 2.0, TimeSignature::Euclidean);
  std::vector<double> q = {0.0, 0.7, -0.1, 0.4, 0.9, 0.3, 0.2};
  std::vector<double> shifted(q);
  for (auto& x : shifted) x += 5.3;
  CHECK(discrete_action(Path(q, BoundaryKind::FixedEndpoints), lat, free) ==
        doctest::Approx(discrete_action(Path(shifted, BoundaryKind::FixedEndpoints), lat, free))
            .epsilon(1e-13));
}

TEST_CASE("continuum consistency is second order on a smooth path") {
  const auto ho = Potential::harmonic(1.0, 1.0);
  const double beta = 2.0;
  // exact Euclidean action of q(tau) = sin(tau): int (cos^2 + sin^2)/2 = beta/2
  const double exact = beta / 2.0;
  auto action_at = [&](std::size_t n) {
    const Lattice lat(n, beta, TimeSignature::Euclidean);
    std::vector<double> q(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
      q[i] = std::sin(beta * static_cast<double>(i) / static_cast<double>(n));
    }
    return discrete_action(Path(q, BoundaryKind::FixedEndpoints), lat, ho);
  };
  const double e1 = std::abs(action_at(64) - exact);
  const double e2 = std::abs(action_at(128) - exact);
  const double order = std::log2(e1 / e2);
  CHECK(order > 1.9);
  CHECK(order < 2.1);
}

TEST_CASE("lattice invariants") {
  const Lattice lat(7, 2.5, TimeSignature::Euclidean);
  CHECK(lat.spacing() * static_cast<double>(lat.n_slices()) ==
        doctest::Approx(lat.extent()).epsilon(1e-16));
  CHECK_THROWS_AS(Lattice(0, 1.0, TimeSignature::Euclidean), DomainError);
  CHECK_THROWS_AS(Lattice(4, -1.0, TimeSignature::Euclidean), DomainError);
}

TEST_CASE("double well derived frequency") {
  const auto dw = Potential::double_well(1.0, 2.0);
  CHECK(dw.omega() == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-15));
  CHECK_THROWS_AS(Potential::double_well(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(Potential::harmonic(-1.0, 1.0), DomainError);
}
