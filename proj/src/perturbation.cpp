#include "pathint/perturbation.hpp"

#include <cmath>
#include <vector>

#include "pathint/errors.hpp"

namespace pathint::perturbation {

EnergyEstimate anharmonic_e0_first_order(double m, double omega, double lambda, double hbar) {
  if (!(m > 0) || !(omega > 0) || !(hbar > 0) || lambda < 0) {
    throw DomainError("anharmonic_e0_first_order: parameters must be positive");
  }
  const double value =
      0.5 * hbar * omega + hbar * hbar * lambda / (32.0 * m * m * omega * omega);
  return {value, EnergyOrder::FirstOrder, 0.0};
}

EnergyEstimate log_slope_energy(const std::function<double(double)>& propagator_diag,
                                std::span<const double> beta_ladder) {
  if (beta_ladder.size() < 3) {
    throw PreconditionError("log_slope_energy: need at least 3 ladder points");
  }
  for (std::size_t i = 1; i < beta_ladder.size(); ++i) {
    if (!(beta_ladder[i] > beta_ladder[i - 1])) {
      throw PreconditionError("log_slope_energy: beta ladder must be increasing");
    }
  }
  std::vector<double> log_k(beta_ladder.size());
  for (std::size_t i = 0; i < beta_ladder.size(); ++i) {
    const double k = propagator_diag(beta_ladder[i]);
    if (!(k > 0.0) || !std::isfinite(k)) {
      throw DomainError("log_slope_energy: propagator diagonal must be positive");
    }
    log_k[i] = std::log(k);
  }
  const std::size_t last = beta_ladder.size() - 1;
  const double d_last =
      -(log_k[last] - log_k[last - 1]) / (beta_ladder[last] - beta_ladder[last - 1]);
  const double d_prev =
      -(log_k[last - 1] - log_k[last - 2]) / (beta_ladder[last - 1] - beta_ladder[last - 2]);
  return {d_last, EnergyOrder::LogSlope, std::abs(d_last - d_prev)};
}

}  // namespace pathint::perturbation
