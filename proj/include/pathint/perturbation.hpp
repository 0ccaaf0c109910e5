#ifndef PATHINT_PERTURBATION_HPP
#define PATHINT_PERTURBATION_HPP

#include <functional>
#include <span>

namespace pathint::perturbation {

enum class EnergyOrder { ExactQuadratic, FirstOrder, Oracle, LogSlope };

struct EnergyEstimate {
  double value = 0.0;
  EnergyOrder order = EnergyOrder::ExactQuadratic;
  double error_bar = 0.0;  // 0 for closed-form entries
};

// E_0 = hbar w / 2 + hbar^2 lambda / (32 m^2 w^2).
EnergyEstimate anharmonic_e0_first_order(double m, double omega, double lambda, double hbar);

// Ground-state energy from the beta -> infinity log slope of the diagonal
// Euclidean propagator: successive differences -[ln K(b_{i+1}) - ln K(b_i)] /
// (b_{i+1} - b_i); the last difference is the value, the change from the
// previous one the error bar. The betas must be increasing, >= 3 of them.
EnergyEstimate log_slope_energy(const std::function<double(double)>& propagator_diag,
                                std::span<const double> beta_ladder);

}  // namespace pathint::perturbation

#endif
