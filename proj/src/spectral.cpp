#include "pathint/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pathint/errors.hpp"
#include "pathint/rng.hpp"

namespace pathint::spectral {

namespace {

// Symmetric tridiagonal eigensolver: Sturm-sequence bisection for selected
// eigenvalues plus inverse iteration for eigenvectors. Self-contained so the
// oracle stays auditable and bit-deterministic.
struct Tridiag {
  std::vector<double> diag;
  double off;  // constant off-diagonal
};

// Number of eigenvalues strictly below x (Sturm count via LDL^T pivots).
std::size_t sturm_count(const Tridiag& t, double x) {
  const double e2 = t.off * t.off;
  std::size_t count = 0;
  bool first = true;
  double q = 1.0;
  for (double d : t.diag) {
    q = first ? (d - x) : (d - x) - e2 / q;
    first = false;
    if (q == 0.0) q = -1e-300;  // exact-pivot tie-break; infs propagate safely
    if (q < 0.0) ++count;
  }
  return count;
}

double bisect_eigenvalue(const Tridiag& t, std::size_t index, double lo, double hi) {
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (sturm_count(t, mid) > index) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Solve (T - lambda I) x = b in place by tridiagonal LU with partial
// pivoting (the dgttrf/dgtts2 recipe; pivoting fills a second superdiagonal).
void shifted_solve(const Tridiag& t, double lambda, std::vector<double>& x) {
  const std::size_t n = t.diag.size();
  const double e = t.off;
  const double tiny = std::numeric_limits<double>::min() * 1e10;
  std::vector<double> d(n);
  std::vector<double> du(n > 1 ? n - 1 : 0, e);
  std::vector<double> du2(n > 2 ? n - 2 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.diag[i] - lambda;

  for (std::size_t i = 0; i + 1 < n; ++i) {
    double sub = e;  // current subdiagonal entry coupling row i+1 to column i
    if (std::abs(d[i]) >= std::abs(sub)) {
      if (d[i] == 0.0) d[i] = tiny;
      const double fact = sub / d[i];
      d[i + 1] -= fact * du[i];
      x[i + 1] -= fact * x[i];
    } else {
      const double fact = d[i] / sub;
      d[i] = sub;
      const double old_du = du[i];
      du[i] = d[i + 1];
      d[i + 1] = old_du - fact * d[i + 1];
      if (i + 2 < n) {
        du2[i] = du[i + 1];
        du[i + 1] = -fact * du[i + 1];
      }
      std::swap(x[i], x[i + 1]);
      x[i + 1] -= fact * x[i];
    }
  }
  if (d[n - 1] == 0.0) d[n - 1] = tiny;
  x[n - 1] /= d[n - 1];
  if (n >= 2) x[n - 2] = (x[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
  for (std::size_t k = n; k-- > 2;) {
    const std::size_t i = k - 2;
    const double up2 = (i + 2 < n) ? du2[i] : 0.0;
    x[i] = (x[i] - du[i] * x[i + 1] - up2 * x[i + 2]) / d[i];
  }
}

double norm2(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

void orthogonalize(std::vector<double>& v, const std::vector<std::vector<double>>& basis,
                   const std::vector<std::size_t>& against) {
  for (std::size_t idx : against) {
    const auto& u = basis[idx];
    double dot = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) dot += v[i] * u[i];
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= dot * u[i];
  }
}

struct RawSolve {
  std::vector<double> values;
  std::vector<std::vector<double>> vectors;  // interior points, 2-norm = 1
};

RawSolve solve_lowest(const Tridiag& t, std::size_t n_states) {
  const std::size_t n = t.diag.size();
  n_states = std::min(n_states, n);
  // Gershgorin bounds.
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (double d : t.diag) {
    lo = std::min(lo, d - 2.0 * std::abs(t.off));
    hi = std::max(hi, d + 2.0 * std::abs(t.off));
  }
  RawSolve out;
  out.values.reserve(n_states);
  for (std::size_t k = 0; k < n_states; ++k) {
    out.values.push_back(bisect_eigenvalue(t, k, lo, hi));
  }

  Rng rng(0x5eedbeefcafef00dull, 1);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  out.vectors.reserve(n_states);
  for (std::size_t k = 0; k < n_states; ++k) {
    // Members of a near-degenerate cluster must be kept orthogonal by hand.
    std::vector<std::size_t> cluster;
    for (std::size_t j = 0; j < k; ++j) {
      if (std::abs(out.values[j] - out.values[k]) < 1e-8 * scale + 1e-12) cluster.push_back(j);
    }
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform() - 0.5;
    for (int iter = 0; iter < 4; ++iter) {
      orthogonalize(v, out.vectors, cluster);
      shifted_solve(t, out.values[k], v);
      const double nv = norm2(v);
      if (!(nv > 0.0) || !std::isfinite(nv)) {
        throw ConvergenceError("inverse iteration broke down");
      }
      for (auto& x : v) x /= nv;
    }
    orthogonalize(v, out.vectors, cluster);
    const double nv = norm2(v);
    for (auto& x : v) x /= nv;
    // Fix the overall sign: first significantly nonzero component positive.
    for (double x : v) {
      if (std::abs(x) > 1e-8) {
        if (x < 0.0) {
          for (auto& y : v) y = -y;
        }
        break;
      }
    }
    out.vectors.push_back(std::move(v));
  }
  return out;
}

Tridiag build_hamiltonian(const Potential& potential, const SpectralGrid& grid, double hbar) {
  const double h = grid.spacing();
  const double kin = hbar * hbar / (potential.mass() * h * h);
  Tridiag t;
  t.off = -0.5 * kin;
  t.diag.resize(grid.n_points - 2);
  for (std::size_t i = 0; i < t.diag.size(); ++i) {
    const double q = grid.q_min + static_cast<double>(i + 1) * h;
    t.diag[i] = kin + potential.value(q);
  }
  return t;
}

SpectralGrid doubled(const SpectralGrid& g) {
  return {g.q_min, g.q_max, 2 * g.n_points - 1};
}

}  // namespace

double Spectrum::eigenfunction_at(std::size_t level, double q) const {
  if (level >= eigenfunctions.size()) throw DomainError("eigenfunction_at: no such level");
  if (q < grid.q_min || q > grid.q_max) return 0.0;
  const double h = grid.spacing();
  const double s = (q - grid.q_min) / h;
  const std::size_t i = std::min(static_cast<std::size_t>(s), grid.n_points - 2);
  const double frac = s - static_cast<double>(i);
  const auto& phi = eigenfunctions[level];
  return phi[i] * (1.0 - frac) + phi[i + 1] * frac;
}

std::vector<double> raw_eigenvalues(const Potential& potential, const SpectralGrid& grid,
                                    double hbar, std::size_t n_states) {
  if (grid.n_points < 16) throw DomainError("spectral grid: n_points must be >= 16");
  if (!(grid.q_min < grid.q_max)) throw DomainError("spectral grid: q_min < q_max required");
  if (!(hbar > 0)) throw DomainError("hbar must be > 0");
  return solve_lowest(build_hamiltonian(potential, grid, hbar), n_states).values;
}

Spectrum diagonalize(const Potential& potential, const SpectralGrid& grid, double hbar,
                     std::size_t n_states) {
  if (grid.n_points < 16) throw DomainError("spectral grid: n_points must be >= 16");
  if (!(grid.q_min < grid.q_max)) throw DomainError("spectral grid: q_min < q_max required");
  if (!(hbar > 0)) throw DomainError("hbar must be > 0");
  if (n_states < 2) n_states = 2;

  SpectralGrid coarse = grid;
  for (int refinement = 0;; ++refinement) {
    const SpectralGrid fine = doubled(coarse);
    const auto raw_c = solve_lowest(build_hamiltonian(potential, coarse, hbar), n_states);
    const auto raw_f = solve_lowest(build_hamiltonian(potential, fine, hbar), n_states);

    const double drift = std::max(std::abs(raw_f.values[0] - raw_c.values[0]),
                                  std::abs(raw_f.values[1] - raw_c.values[1]));
    if (drift >= 1e-6) {
      if (refinement >= 6) {
        throw ConvergenceError("diagonalize: doubling drift " + std::to_string(drift) +
                               " still above 1e-6 after grid refinement");
      }
      coarse = fine;
      continue;
    }

    Spectrum spec;
    spec.grid = fine;
    spec.doubling_drift = drift;
    spec.eigenvalues.resize(raw_f.values.size());
    for (std::size_t k = 0; k < raw_f.values.size(); ++k) {
      // Second-order scheme: h^2 error cancels in the (n, 2n) pair.
      spec.eigenvalues[k] = (4.0 * raw_f.values[k] - raw_c.values[k]) / 3.0;
    }
    const double h = fine.spacing();
    const double inv_sqrt_h = 1.0 / std::sqrt(h);
    spec.eigenfunctions.resize(raw_f.vectors.size());
    for (std::size_t k = 0; k < raw_f.vectors.size(); ++k) {
      auto& phi = spec.eigenfunctions[k];
      phi.assign(fine.n_points, 0.0);
      for (std::size_t i = 0; i < raw_f.vectors[k].size(); ++i) {
        phi[i + 1] = raw_f.vectors[k][i] * inv_sqrt_h;  // grid inner product = 1
      }
    }
    spec.edge_amplitude = std::max(
        std::max(std::abs(spec.eigenfunctions[0][1]),
                 std::abs(spec.eigenfunctions[0][fine.n_points - 2])),
        std::max(std::abs(spec.eigenfunctions[1][1]),
                 std::abs(spec.eigenfunctions[1][fine.n_points - 2])));
    if (spec.edge_amplitude > 1e-8) {
      throw GridError("spectral grid too small: edge amplitude " +
                      std::to_string(spec.edge_amplitude));
    }
    return spec;
  }
}

SpectralGrid default_grid(const Potential& potential, double hbar) {
  const double omega = potential.omega();
  const double a = potential.kind() == PotentialKind::DoubleWell ? potential.well_separation()
                                                                 : 0.0;
  double factor = 1.0;
  if (omega > 0.0) {
    factor = std::max(1.0, a + 4.0 * std::sqrt(hbar / (potential.mass() * omega)));
  }
  return {-8.0 * factor, 8.0 * factor, 2048};
}

Spectrum diagonalize_auto(const Potential& potential, double hbar, std::size_t n_states) {
  SpectralGrid grid = default_grid(potential, hbar);
  for (int attempt = 0; attempt < 4; ++attempt) {
    try {
      return diagonalize(potential, grid, hbar, n_states);
    } catch (const GridError&) {
      grid.q_min *= 2.0;
      grid.q_max *= 2.0;
    }
  }
  return diagonalize(potential, grid, hbar, n_states);
}

double partition_from_spectrum(const Spectrum& spectrum, double beta) {
  if (!(beta > 0)) throw DomainError("beta must be > 0");
  double sum = 0.0;
  for (double e : spectrum.eigenvalues) {
    const double term = std::exp(-beta * e);
    if (sum > 0.0 && term < 1e-16 * sum) break;
    sum += term;
  }
  return sum;
}

double splitting(const Potential& double_well, const SpectralGrid& grid, double hbar) {
  if (double_well.kind() != PotentialKind::DoubleWell) {
    throw DomainError("splitting: potential must be a double well");
  }
  const auto spec = diagonalize(double_well, grid, hbar, 2);
  return spec.eigenvalues[1] - spec.eigenvalues[0];
}

}  // namespace pathint::spectral
