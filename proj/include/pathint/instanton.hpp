#ifndef PATHINT_INSTANTON_HPP
#define PATHINT_INSTANTON_HPP

#include <vector>

namespace pathint::instanton {

enum class RProvenance { Unset, UserSupplied, OracleCalibrated };

// Double-well semiclassics for V = lambda (q^2 - a^2)^2 / 24 (mass 1):
//   omega  = sqrt(lambda a^2 / 3)
//   S_inst = sqrt(lambda/3) 2 a^3 / 3 = (2/3) omega a^2
// R is the one-instanton/constant-background fluctuation ratio per unit
// imaginary time. It is never derived here; it is either supplied or
// calibrated against the spectral oracle, and carries its provenance.
struct InstantonParams {
  double a = 1.0;
  double lambda = 1.0;
  double hbar = 1.0;
  double r = 0.0;
  RProvenance r_provenance = RProvenance::Unset;

  double omega() const;
  double action() const;
  double boltzmann() const;  // exp(-S_inst / hbar)
};

InstantonParams make_params(double lambda, double a, double hbar);
InstantonParams with_r(InstantonParams params, double r);

struct ActionResult {
  double s_inst;
  double omega;
};

// Closed forms, verified internally by quadrature of 2 int V(q_inst) dtau
// along the profile (throws ConvergenceError on mismatch > 1e-8).
ActionResult instanton_action(double lambda, double a);

enum class Endpoints { SameWell, OppositeWell };

struct DiluteGasResult {
  std::vector<double> sector_weights;  // n-th entry: 2n (same well) or 2n+1 (opposite)
  std::vector<double> partial_sums;    // cumulative, converging to closed_form
  double closed_form;                  // prefactor * cosh(Q) or sinh(Q)
  double q_parameter;                  // Q = beta R exp(-S/hbar)
  double energy_minus;                 // hbar w/2 - hbar R exp(-S/hbar)
  double energy_plus;                  // hbar w/2 + hbar R exp(-S/hbar)
  int n_sectors;
};

DiluteGasResult dilute_gas_propagator(double beta, const InstantonParams& params,
                                      Endpoints endpoints, int n_sectors = 8);

// Delta E = 2 hbar R exp(-S_inst / hbar).
double energy_splitting(const InstantonParams& params);

// R = oracle_splitting exp(S_inst/hbar) / (2 hbar), tagged OracleCalibrated.
InstantonParams calibrate_r(const InstantonParams& params, double oracle_splitting);

// E(theta) = hbar w / 2 - 2 hbar R exp(-S/hbar) cos(theta), theta in [0, 2pi).
double periodic_band_energy(double theta, const InstantonParams& params);

// The two sides of the periodic-potential sector identity
//   sum_n Q^(2n)/(n!)^2 = int_0^2pi (dtheta/2pi) exp(2 Q cos theta) = I_0(2Q).
double periodic_double_sum(double q_parameter);
double periodic_theta_integral(double q_parameter);

// Dilute-gas quality check: spread of oracle-calibrated R values across an
// hbar range. A large spread means the prefactor's own hbar dependence is not
// negligible; flagged as a warning, never an error.
struct RStabilityReport {
  double r_min;
  double r_max;
  double spread;  // r_max / r_min - 1
  bool within_band;  // spread < 0.25
};

RStabilityReport r_stability(const std::vector<InstantonParams>& calibrated);

}  // namespace pathint::instanton

#endif
