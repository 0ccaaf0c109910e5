// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "pathint/gaussian.hpp"
#include "pathint/instanton.hpp"
#include "pathint/model.hpp"
#include "pathint/numerics.hpp"
#include "pathint/perturbation.hpp"
#include "pathint/pimc.hpp"
#include "pathint/spectral.hpp"
#include "pathint/topology.hpp"
#include "pathint/wick.hpp"

using namespace pathint;

namespace {

int g_failures = 0;

struct Criterion {
  int index;
  std::string label;
  double budget_seconds;
};

void report(const Criterion& c, bool ok, double seconds, const std::string& detail) {
  const bool in_budget = seconds < c.budget_seconds;
  const bool pass = ok && in_budget;
  if (!pass) ++g_failures;
  std::printf("[%s] criterion %2d: %-34s (%6.2fs < %4.0fs) %s\n", pass ? "PASS" : "FAIL",
              c.index, c.label.c_str(), seconds, c.budget_seconds, detail.c_str());
  std::fflush(stdout);
}

void run(const Criterion& c, const std::function<bool(std::string&)>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double seconds = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0).count();
  report(c, ok, seconds, detail);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

double ho_exact_diagonal(double beta) {
  return gaussian::ho_propagator(0, 0, beta, 1, 1, 1, TimeSignature::Euclidean)
      .euclidean_value();
}

// Gap from the periodic-correlator cosh model C(tau) ~ A cosh(E (beta/2-tau)),
// solved for E from two separations by bisection.
double cosh_gap(double c1, double tau1, double c2, double tau2, double beta) {
  const double target = c1 / c2;
  auto model = [&](double e) {
    return std::cosh(e * (0.5 * beta - tau1)) / std::cosh(e * (0.5 * beta - tau2));
  };
  double lo = 1e-4, hi = 3.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (model(mid) > target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  run({1, "free-particle lattice exactness", 1.0}, [](std::string& detail) {
    const auto free = Potential::free_particle();
    double worst = 0.0;
    for (std::size_t n : {1u, 10u, 100u}) {
      const Lattice lat(n, 2.0, TimeSignature::Euclidean);
      const double latv = gaussian::lattice_propagator(0.3, 0.9, lat, free);
      const double closed =
          gaussian::free_propagator(0.3, 0.9, 2.0, 1, 1, TimeSignature::Euclidean)
              .euclidean_value();
      worst = std::max(worst, std::abs(latv - closed) / closed);
    }
    detail = "max rel err " + fmt(worst) + " <= 1e-12";
    return worst <= 1e-12;
  });

  run({2, "HO lattice convergence order", 10.0}, [](std::string& detail) {
    const auto ho = Potential::harmonic(1.0, 1.0);
    const double exact = ho_exact_diagonal(1.0);
    std::vector<double> errs;
    for (std::size_t n : {64u, 128u, 256u}) {
      const double v =
          gaussian::lattice_propagator(0.0, 0.0, Lattice(n, 1.0, TimeSignature::Euclidean), ho);
      errs.push_back(std::abs(v - exact) / exact);
    }
    const double order1 = std::log2(errs[0] / errs[1]);
    const double order2 = std::log2(errs[1] / errs[2]);
    detail = "orders " + fmt(order1) + ", " + fmt(order2) + "; final err " + fmt(errs[2]);
    return order1 >= 1.9 && order2 >= 1.9 && errs[2] <= 1e-4;
  });

  run({3, "HO partition function quadrature", 1.0}, [](std::string& detail) {
    double worst = 0.0;
    for (double beta : {0.5, 1.0, 5.0}) {
      const double closed = gaussian::ho_partition_function(beta, 1.0, 1.0);
      const double quad = gaussian::ho_partition_function_quadrature(beta, 1.0, 1.0, 1.0);
      worst = std::max(worst, std::abs(quad - closed) / closed);
    }
    detail = "max rel err " + fmt(worst) + " <= 1e-8";
    return worst <= 1e-8;
  });

  run({4, "ground-state energy, three routes", 30.0}, [](std::string& detail) {
    const double lambda = 0.1;
    const double formula = perturbation::anharmonic_e0_first_order(1, 1, lambda, 1).value;

    auto diag = [&](double beta) {
      return ho_exact_diagonal(beta) *
             std::exp(-beta * wick::euclidean_first_order_ke_ratio(beta, 1, 1, lambda, 1));
    };
    std::vector<double> ladder;
    for (int i = 0; i < 6; ++i) ladder.push_back(22.0 + 4.0 * i);
    const double contraction = perturbation::log_slope_energy(diag, ladder).value;

    const auto pot = Potential::anharmonic(1.0, 1.0, lambda);
    const auto spec = spectral::diagonalize(pot, {-8.0, 8.0, 2048}, 1.0, 2);
    const double oracle = spec.eigenvalues[0];

    const double d12 = std::abs(formula - contraction);
    const double d13 = std::abs(formula - oracle);
    const double d23 = std::abs(contraction - oracle);
    detail = "formula " + fmt(formula) + ", contraction " + fmt(contraction) + ", oracle " +
             fmt(oracle);
    return d12 <= 2e-3 && d13 <= 2e-3 && d23 <= 2e-3 && d13 <= 1e-3;
  });

  run({5, "combinatorics golden values", 1.0}, [](std::string& detail) {
    bool ok = true;
    const std::vector<std::size_t> expect = {1, 3, 15, 105};
    for (int i = 0; i < 4; ++i) {
      ok = ok && wick::enumerate_pairings(2 * (i + 1)).size() == expect[static_cast<std::size_t>(i)];
    }
    const auto terms = wick::first_order_two_point_terms();
    ok = ok && terms.size() == 2;
    std::uint64_t total = 0;
    for (const auto& t : terms) total += t.multiplicity;
    ok = ok && total == 720;
    ok = ok && terms[0].connected && terms[0].multiplicity == 576 &&
         terms[0].symmetry_factor == wick::Rational(1, 2);
    ok = ok && !terms[1].connected && terms[1].multiplicity == 144 &&
         terms[1].symmetry_factor == wick::Rational(1, 8);
    const auto report = wick::disconnected_cancellation_check(25.0, 1, 1, 0.4);
    ok = ok && report.disconnected_residual == wick::Rational::zero();
    detail = "counts 1,3,15,105; 720 = 576 (1/2) + 144 (1/8); residual " +
             std::to_string(report.disconnected_residual.num);
    return ok;
  });

  run({6, "PIMC harmonic fidelity", 120.0}, [](std::string& detail) {
    pimc::SamplerConfig cfg;
    cfg.lattice = Lattice(100, 10.0, TimeSignature::Euclidean);
    cfg.potential = Potential::harmonic(1.0, 1.0);
    cfg.boundary = BoundaryKind::Periodic;
    cfg.n_sweeps = 300000;
    cfg.n_thermalization = 20000;
    cfg.n_chains = 4;
    cfg.step_width = 1.0;
    cfg.seed = 6151;

    const auto ens = pimc::run_sampler(cfg);
    const auto q2 = ens.mean_square();
    const double exact = 0.5 / std::tanh(5.0);  // 0.50005
    const bool q2_ok = std::abs(q2.mean - exact) <= 3.0 * q2.std_error &&
                       q2.std_error <= 0.005;

    const auto gaps = pimc::effective_gap(ens, 2.0);
    double acc = 0.0;
    int cnt = 0;
    for (const auto& g : gaps) {
      if (g.tau >= 0.3 && g.tau <= 1.5) {
        acc += g.value;
        ++cnt;
      }
    }
    const double plateau = acc / cnt;
    const bool gap_ok = std::abs(plateau - 1.0) <= 0.05;
    detail = "<q^2> = " + fmt(q2.mean) + " +- " + fmt(q2.std_error) + " (exact " + fmt(exact) +
             "); gap plateau " + fmt(plateau);
    return q2_ok && gap_ok;
  });

  run({7, "double-well splitting, PIMC vs oracle", 300.0}, [](std::string& detail) {
    const auto dw = Potential::double_well(1.0, 2.0);
    const double oracle = spectral::splitting(dw, spectral::default_grid(dw, 1.0), 1.0);

    pimc::SamplerConfig cfg;
    cfg.lattice = Lattice(300, 30.0, TimeSignature::Euclidean);
    cfg.potential = dw;
    cfg.boundary = BoundaryKind::Periodic;
    cfg.n_sweeps = 300000;
    cfg.n_thermalization = 30000;
    cfg.n_chains = 4;
    cfg.step_width = 0.9;
    cfg.shift_moves = true;
    cfg.shift_width = 4.0;
    cfg.seed = 77;

    const auto ens = pimc::run_sampler(cfg);
    const std::vector<double> taus = {2.0, 5.0};
    const auto cs = pimc::correlation_function(ens, taus);
    const double gap = cosh_gap(cs[0].mean, 2.0, cs[1].mean, 5.0, 30.0);
    const double rel = std::abs(gap - oracle) / oracle;
    detail = "gap " + fmt(gap) + " vs oracle " + fmt(oracle) + " (rel " + fmt(rel) + ")";
    return rel <= 0.20;
  });

  run({8, "instanton hbar scaling", 60.0}, [](std::string& detail) {
    const auto dw = Potential::double_well(1.0, 2.0);
    std::vector<double> x, y;
    for (double hb : {0.5, 0.6, 0.8, 1.0}) {
      const double de = spectral::splitting(dw, spectral::default_grid(dw, hb), hb);
      x.push_back(1.0 / hb);
      y.push_back(std::log(de));
    }
    const auto [slope, intercept] = numerics::linear_fit(x, y);
    (void)intercept;
    const double s_inst = instanton::instanton_action(1.0, 2.0).s_inst;
    const double rel = std::abs(slope + s_inst) / s_inst;
    detail = "slope " + fmt(slope) + " vs -S_inst " + fmt(-s_inst) + " (rel " + fmt(rel) + ")";
    return rel <= 0.10;
  });

  run({9, "dilute-gas resummation", 1.0}, [](std::string& detail) {
    // partial sums through n = 3 at Q = 1
    auto params = instanton::make_params(1.0, 2.0, 1.0);
    const double beta = 5.0;
    params = instanton::with_r(params, std::exp(params.action()) / beta);
    const auto even = instanton::dilute_gas_propagator(beta, params,
                                                       instanton::Endpoints::SameWell, 4);
    const auto odd = instanton::dilute_gas_propagator(beta, params,
                                                      instanton::Endpoints::OppositeWell, 4);
    const double err_even = std::abs(even.partial_sums[3] - even.closed_form) / even.closed_form;
    const double err_odd = std::abs(odd.partial_sums[3] - odd.closed_form) / odd.closed_form;

    double worst_identity = 0.0;
    for (double q = 0.0; q <= 5.0; q += 0.25) {
      const double lhs = instanton::periodic_double_sum(q);
      const double rhs = instanton::periodic_theta_integral(q);
      worst_identity = std::max(worst_identity, std::abs(lhs - rhs) / std::max(1.0, lhs));
    }
    detail = "cosh err " + fmt(err_even) + ", sinh err " + fmt(err_odd) + ", identity err " +
             fmt(worst_identity);
    return err_even <= 1e-4 && err_odd <= 1e-4 && worst_identity <= 1e-10;
  });

  run({10, "topology phases", 1.0}, [](std::string& detail) {
    const double pi = 3.141592653589793238462643383280;
    bool ok = true;
    // constructive -> destructive at e Phi / hbar c = pi
    topology::InterferenceSetup s{0.0, 0.0, 1.0, 1.0, 1.0};
    ok = ok && std::abs(topology::two_slit_intensity(1.0, 1.0, s) - 4.0) < 1e-12;
    s.flux = pi;
    ok = ok && std::abs(topology::two_slit_intensity(1.0, 1.0, s)) < 1e-12;
    // 2pi periodicity
    double worst = 0.0;
    for (double flux : {0.3, 1.9, 4.4}) {
      topology::InterferenceSetup a{0.2, flux, 1.3, 0.9, 1.1};
      auto b = a;
      b.flux += 2.0 * pi * b.hbar * b.c / b.charge;
      worst = std::max(worst, std::abs(topology::two_slit_intensity({1, 0.2}, {0.7, -0.1}, a) -
                                       topology::two_slit_intensity({1, 0.2}, {0.7, -0.1}, b)));
    }
    ok = ok && worst <= 1e-12;
    // 3D statistics solutions exactly {0, pi}
    const auto d3 = topology::statistics_solutions(3);
    ok = ok && d3.allowed.size() == 2 && d3.allowed[0] == 0.0 && d3.allowed[1] == pi;
    // Dirac product e g = n hbar c / 2 exact
    for (int n = -2; n <= 2; ++n) {
      const double e = topology::dirac_charge_unit(n, 0.7, 1.3, 0.9);
      ok = ok && e * 0.7 == n * 1.3 * 0.9 / 2.0;
    }
    detail = "AB flip, periodicity err " + fmt(worst) + ", {0, pi}, e*g exact";
    return ok;
  });

  run({11, "seeded reruns byte-identical", 120.0}, [](std::string& detail) {
    const char* cli_env = std::getenv("PATHINT_CLI");
    const std::string cli = cli_env ? cli_env : "./tools/pathint";
    if (!std::filesystem::exists(cli)) {
      detail = "CLI binary not found at " + cli;
      return false;
    }
    const auto dir = std::filesystem::temp_directory_path() / "pathint_acceptance";
    std::filesystem::create_directories(dir);
    const std::string prefix = (dir / "run").string();
    const std::string cmd = cli +
                            " pimc --potential double-well --lambda 1 --a 2 --n_slices 60"
                            " --beta 12 --sweeps 12000 --thermalization 1200 --chains 3"
                            " --shift_moves 1 --shift_width 4 --seed 424242 --output " +
                            prefix + " > /dev/null";
    if (std::system(cmd.c_str()) != 0) {
      detail = "CLI run failed";
      return false;
    }
    const std::string manifest1 = read_file(prefix + ".manifest.json");
    const std::string csv1 = read_file(prefix + ".estimators.csv");
    if (std::system(cmd.c_str()) != 0) {
      detail = "CLI rerun failed";
      return false;
    }
    const std::string manifest2 = read_file(prefix + ".manifest.json");
    const std::string csv2 = read_file(prefix + ".estimators.csv");
    const bool identical = manifest1 == manifest2 && csv1 == csv2 && !manifest1.empty() &&
                           !csv1.empty();
    detail = identical ? "manifest and CSV bytes identical across reruns"
                       : "rerun outputs differ";
    return identical;
  });

  if (g_failures == 0) {
    std::printf("acceptance: all 11 criteria passed\n");
  } else {
    std::printf("acceptance: %d criterion(s) FAILED\n", g_failures);
  }
  return g_failures == 0 ? 0 : 1;
}
