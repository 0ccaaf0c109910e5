#ifndef PATHINT_TOPOLOGY_HPP
#define PATHINT_TOPOLOGY_HPP

#include <complex>
#include <map>
#include <vector>

namespace pathint::topology {

// Gaussian units with explicit hbar and c (the e/c coupling convention).
struct InterferenceSetup {
  double base_phase = 0.0;  // phi_12 before the flux is switched on
  double flux = 0.0;        // Phi
  double charge = 1.0;      // e
  double hbar = 1.0;
  double c = 1.0;
};

struct AbPhase {
  double raw;     // phi_12 - e Phi / (hbar c)
  double mod_2pi; // same, reduced to [0, 2pi)
};

AbPhase ab_relative_phase(const InterferenceSetup& setup);

// |A_1 + exp(-i e Phi / hbar c) A_2|^2.
double two_slit_intensity(std::complex<double> a1, std::complex<double> a2,
                          const InterferenceSetup& setup);

struct StatisticsSolutions {
  int dimension;
  bool continuous;              // 2D: any phi in [0, 2pi) is allowed
  std::vector<double> allowed;  // 3D: {0, pi}
};

StatisticsSolutions statistics_solutions(int dimension);

// A statistics phase with its dimensional constraint enforced: 3D admits only
// phi = 0 or pi (mod 2pi), 2D admits any phi. Sector coefficients are
// C_n = exp(i n phi) with C_0 = 1.
class StatisticsPhase {
 public:
  StatisticsPhase(int dimension, double phi);

  int dimension() const { return dimension_; }
  double phi() const { return phi_; }
  std::complex<double> coefficient(int n) const;

 private:
  int dimension_;
  double phi_;
};

// Sector coefficient C_n = exp(i n phi); C_0 = 1 always.
std::complex<double> sector_coefficient(int n, double phi);

// A = sum_n exp(i n phi) A_n over finitely many winding sectors.
std::complex<double> winding_amplitude(const std::map<int, std::complex<double>>& sectors,
                                       double phi);

// Dirac condition e = n hbar c / (2 g); the invariant product e g = n hbar c/2.
double dirac_charge_unit(int n, double g, double hbar, double c);

}  // namespace pathint::topology

#endif
