#ifndef PATHINT_NUMERICS_HPP
#define PATHINT_NUMERICS_HPP

#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace pathint::numerics {

// Composite trapezoid on n+1 equally spaced samples over [a, b].
double trapezoid(std::span<const double> samples, double a, double b);

// Adaptive Simpson to absolute tolerance tol.
double integrate(const std::function<double(double)>& f, double a, double b, double tol);
std::complex<double> integrate_complex(const std::function<std::complex<double>(double)>& f,
                                       double a, double b, double tol);

// Least-squares straight line through (x_i, y_i); returns {slope, intercept}.
std::pair<double, double> linear_fit(std::span<const double> x, std::span<const double> y);

struct BlockingResult {
  double mean = 0.0;
  double std_error = 0.0;
  double n_effective = 0.0;
};

// Blocking (binning) error analysis: doubles the block size until the error
// estimate plateaus, following the usual Flyvbjerg-Petersen recipe.
BlockingResult blocking_analysis(std::span<const double> series);

}  // namespace pathint::numerics

#endif
