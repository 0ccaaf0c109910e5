#include "pathint/numerics.hpp"

#include <cmath>
#include <cstddef>

#include "pathint/errors.hpp"

namespace pathint::numerics {

double trapezoid(std::span<const double> samples, double a, double b) {
  if (samples.size() < 2) throw StructuralError("trapezoid: need at least 2 samples");
  const double h = (b - a) / static_cast<double>(samples.size() - 1);
  double sum = 0.5 * (samples.front() + samples.back());
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) sum += samples[i];
  return sum * h;
}

namespace {

template <typename T>
T simpson(double a, double b, T fa, T fm, T fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename T>
T adaptive(const std::function<T(double)>& f, double a, double m, double b, T fa, T fm, T fb,
           T whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const T flm = f(lm);
  const T frm = f(rm);
  const T left = simpson(a, m, fa, flm, fm);
  const T right = simpson(m, b, fm, frm, fb);
  const T delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <typename T>
T integrate_impl(const std::function<T(double)>& f, double a, double b, double tol) {
  const double m = 0.5 * (a + b);
  const T fa = f(a);
  const T fm = f(m);
  const T fb = f(b);
  const T whole = simpson(a, b, fa, fm, fb);
  return adaptive(f, a, m, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  return integrate_impl<double>(f, a, b, tol);
}

std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, double tol) {
  return integrate_impl<std::complex<double>>(f, a, b, tol);
}

std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw StructuralError("linear_fit: bad input sizes");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n;
  const double my = sy / n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("linear_fit: degenerate abscissae");
  const double slope = sxy / sxx;
  return {slope, my - slope * mx};
}

BlockingResult blocking_analysis(std::span<const double> series) {
  const std::size_t n = series.size();
  if (n == 0) throw StructuralError("blocking_analysis: empty series");
  double mean = 0.0;
  for (double v : series) mean += v;
  mean /= static_cast<double>(n);
  if (n == 1) return {mean, 0.0, 1.0};

  double var0 = 0.0;
  for (double v : series) var0 += (v - mean) * (v - mean);
  var0 /= static_cast<double>(n - 1);
  if (var0 == 0.0) return {mean, 0.0, static_cast<double>(n)};

  // Block until the error stops growing (or too few blocks remain).
  std::vector<double> blocks(series.begin(), series.end());
  double best_err_sq = var0 / static_cast<double>(n);
  while (blocks.size() >= 32) {
    std::vector<double> next(blocks.size() / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = 0.5 * (blocks[2 * i] + blocks[2 * i + 1]);
    }
    blocks.swap(next);
    const std::size_t m = blocks.size();
    double bmean = 0.0;
    for (double v : blocks) bmean += v;
    bmean /= static_cast<double>(m);
    double bvar = 0.0;
    for (double v : blocks) bvar += (v - bmean) * (v - bmean);
    bvar /= static_cast<double>(m - 1);
    const double err_sq = bvar / static_cast<double>(m);
    if (err_sq > best_err_sq) {
      best_err_sq = err_sq;
    } else if (err_sq < 0.8 * best_err_sq) {
      break;  // plateau passed; noise in the estimator is shrinking it again
    }
  }
  const double naive_err_sq = var0 / static_cast<double>(n);
  const double n_eff = naive_err_sq > 0.0
                           ? static_cast<double>(n) * naive_err_sq / best_err_sq
                           : static_cast<double>(n);
  return {mean, std::sqrt(best_err_sq), n_eff};
}

}  // namespace pathint::numerics
