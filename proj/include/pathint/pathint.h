/* C interface to the pathint shared library: opaque handles, status codes,
 * out-parameters. Every function returns PATHINT_OK or an error status; the
 * thread-local message behind pathint_last_error() describes the failure. */
#ifndef PATHINT_H
#define PATHINT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define PATHINT_API __declspec(dllexport)
#else
#define PATHINT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum pathint_status {
  PATHINT_OK = 0,
  PATHINT_ERR_DOMAIN = 1,
  PATHINT_ERR_STRUCTURAL = 2,
  PATHINT_ERR_CAPACITY = 3,
  PATHINT_ERR_CONFIG = 4,
  PATHINT_ERR_PRECONDITION = 5,
  PATHINT_ERR_UNSUPPORTED = 6,
  PATHINT_ERR_CAUSTIC = 7,
  PATHINT_ERR_GRID = 8,
  PATHINT_ERR_CONVERGENCE = 9,
  PATHINT_ERR_INTERNAL = 100
} pathint_status;

PATHINT_API const char* pathint_version(void);
PATHINT_API const char* pathint_last_error(void);

/* ----- model ----- */

typedef struct pathint_potential pathint_potential;

PATHINT_API pathint_status pathint_potential_free_particle(double m, double hbar,
                                                           pathint_potential** out);
PATHINT_API pathint_status pathint_potential_harmonic(double m, double omega, double hbar,
                                                      pathint_potential** out);
PATHINT_API pathint_status pathint_potential_anharmonic(double m, double omega, double lambda,
                                                        double hbar, pathint_potential** out);
PATHINT_API pathint_status pathint_potential_double_well(double lambda, double a, double m,
                                                         double hbar, pathint_potential** out);
PATHINT_API pathint_status pathint_potential_periodic(double depth, double period, double m,
                                                      double hbar, pathint_potential** out);
PATHINT_API void pathint_potential_destroy(pathint_potential* p);
PATHINT_API pathint_status pathint_potential_eval(const pathint_potential* p, double q, double* v,
                                                  double* v1, double* v2);
PATHINT_API double pathint_potential_omega(const pathint_potential* p);

typedef enum pathint_signature { PATHINT_REAL_TIME = 0, PATHINT_EUCLIDEAN = 1 } pathint_signature;
typedef enum pathint_boundary {
  PATHINT_FIXED_ENDPOINTS = 0,
  PATHINT_PERIODIC = 1
} pathint_boundary;

typedef struct pathint_lattice pathint_lattice;
PATHINT_API pathint_status pathint_lattice_create(size_t n_slices, double extent,
                                                  pathint_signature signature,
                                                  pathint_lattice** out);
PATHINT_API void pathint_lattice_destroy(pathint_lattice* l);
PATHINT_API double pathint_lattice_spacing(const pathint_lattice* l);

PATHINT_API pathint_status pathint_discrete_action(const double* positions, size_t n_positions,
                                                   pathint_boundary boundary,
                                                   const pathint_lattice* lattice,
                                                   const pathint_potential* potential,
                                                   double* out);

/* ----- gaussian ----- */

typedef struct pathint_propagator_value {
  double prefactor_modulus;
  double phase_re;
  double phase_im;
  double classical_action;
  double value_re;
  double value_im;
} pathint_propagator_value;

PATHINT_API pathint_status pathint_free_propagator(double q, double qp, double extent, double m,
                                                   double hbar, pathint_signature signature,
                                                   pathint_propagator_value* out);
PATHINT_API pathint_status pathint_ho_propagator(double q, double qp, double extent, double m,
                                                 double omega, double hbar,
                                                 pathint_signature signature,
                                                 pathint_propagator_value* out);
PATHINT_API pathint_status pathint_ho_partition_function(double beta, double omega, double hbar,
                                                         double* out);
PATHINT_API pathint_status pathint_ho_partition_quadrature(double beta, double m, double omega,
                                                           double hbar, double* out);
PATHINT_API pathint_status pathint_dirichlet_green(double tau, double taup, double beta, double m,
                                                   double omega, double* out);
PATHINT_API pathint_status pathint_feynman_green(double dt, double omega, double epsilon,
                                                 double* out_re, double* out_im,
                                                 double* out_residual);
PATHINT_API pathint_status pathint_generating_exponent(const double* j_samples, size_t n_samples,
                                                       const pathint_lattice* lattice, double m,
                                                       double omega, double* out);
PATHINT_API pathint_status pathint_instanton_profile(double tau, double a, double lambda,
                                                     double tau0, double* out);
PATHINT_API pathint_status pathint_lattice_propagator(double q, double qp,
                                                      const pathint_lattice* lattice,
                                                      const pathint_potential* potential,
                                                      double* out);

/* ----- wick ----- */

PATHINT_API pathint_status pathint_pairing_count(int n_points, uint64_t* out);

typedef struct pathint_wick_terms pathint_wick_terms;
PATHINT_API pathint_status pathint_first_order_terms(pathint_signature signature,
                                                     pathint_wick_terms** out);
PATHINT_API void pathint_wick_terms_destroy(pathint_wick_terms* t);
PATHINT_API size_t pathint_wick_terms_count(const pathint_wick_terms* t);
PATHINT_API pathint_status pathint_wick_term_info(const pathint_wick_terms* t, size_t index,
                                                  uint64_t* multiplicity, long long* coeff_num,
                                                  long long* coeff_den, int* connected,
                                                  size_t* n_factors);
PATHINT_API pathint_status pathint_wick_term_factor(const pathint_wick_terms* t, size_t term,
                                                    size_t factor, int* label_i, int* label_j);

typedef double (*pathint_kernel_fn)(double t1, double t2, void* ctx);
PATHINT_API pathint_status pathint_free_npoint(const double* points, size_t n_points,
                                               pathint_kernel_fn kernel, void* ctx, double* out);
PATHINT_API pathint_status pathint_ke_ratio_first_order(double beta, double m, double omega,
                                                        double lambda, double hbar, double* out);
PATHINT_API pathint_status pathint_cancellation_check(double beta, double m, double omega,
                                                      double lambda, long long* residual_num,
                                                      long long* residual_den,
                                                      double* residual_numeric);

/* ----- perturbation ----- */

PATHINT_API pathint_status pathint_anharmonic_e0(double m, double omega, double lambda,
                                                 double hbar, double* out);
PATHINT_API pathint_status pathint_log_slope_energy(const double* betas, const double* k_values,
                                                    size_t n, double* value, double* error_bar);

/* ----- spectral ----- */

typedef struct pathint_spectrum pathint_spectrum;
PATHINT_API pathint_status pathint_diagonalize(const pathint_potential* potential, double q_min,
                                               double q_max, size_t n_points, double hbar,
                                               size_t n_states, pathint_spectrum** out);
PATHINT_API pathint_status pathint_diagonalize_auto(const pathint_potential* potential,
                                                    double hbar, size_t n_states,
                                                    pathint_spectrum** out);
PATHINT_API void pathint_spectrum_destroy(pathint_spectrum* s);
PATHINT_API size_t pathint_spectrum_size(const pathint_spectrum* s);
PATHINT_API pathint_status pathint_spectrum_eigenvalue(const pathint_spectrum* s, size_t level,
                                                       double* out);
PATHINT_API pathint_status pathint_spectrum_grid(const pathint_spectrum* s, double* q_min,
                                                 double* q_max, size_t* n_points);
PATHINT_API pathint_status pathint_spectrum_eigenfunction(const pathint_spectrum* s, size_t level,
                                                          double* buffer, size_t buffer_len);
PATHINT_API pathint_status pathint_partition_from_spectrum(const pathint_spectrum* s, double beta,
                                                           double* out);
PATHINT_API pathint_status pathint_splitting_auto(const pathint_potential* double_well,
                                                  double hbar, double* out);

/* ----- pimc ----- */

typedef struct pathint_pimc_params {
  size_t n_slices;
  double beta;
  int boundary; /* pathint_boundary */
  double fixed_start;
  double fixed_end;
  long n_sweeps;
  long n_thermalization;
  int n_chains;
  double step_width;
  int shift_moves;
  double shift_width;
  long record_every;
  uint64_t seed;
} pathint_pimc_params;

typedef struct pathint_ensemble pathint_ensemble;
PATHINT_API pathint_status pathint_pimc_run(const pathint_potential* potential,
                                            const pathint_pimc_params* params,
                                            pathint_ensemble** out);
PATHINT_API void pathint_ensemble_destroy(pathint_ensemble* e);
PATHINT_API double pathint_ensemble_acceptance(const pathint_ensemble* e);
PATHINT_API pathint_status pathint_ensemble_mean_position(const pathint_ensemble* e, double* mean,
                                                          double* std_error, double* n_effective);
PATHINT_API pathint_status pathint_ensemble_mean_square(const pathint_ensemble* e, double* mean,
                                                        double* std_error, double* n_effective);
PATHINT_API pathint_status pathint_ensemble_correlation(const pathint_ensemble* e,
                                                        const double* taus, size_t n_taus,
                                                        double* means, double* std_errors,
                                                        double* n_effectives);
PATHINT_API pathint_status pathint_ensemble_effective_gap(const pathint_ensemble* e,
                                                          double max_tau, double* taus,
                                                          double* values, double* errors,
                                                          size_t cap, size_t* n_out);
PATHINT_API pathint_status pathint_pimc_tune(const pathint_potential* potential,
                                             const pathint_pimc_params* params,
                                             double* tuned_step_width);

/* ----- instanton ----- */

typedef struct pathint_instanton_params {
  double a;
  double lambda;
  double hbar;
  double r;
  int r_provenance; /* 0 unset, 1 user supplied, 2 oracle calibrated */
} pathint_instanton_params;

PATHINT_API pathint_status pathint_instanton_action(double lambda, double a, double* s_inst,
                                                    double* omega);
PATHINT_API pathint_status pathint_energy_splitting(const pathint_instanton_params* params,
                                                    double* out);
PATHINT_API pathint_status pathint_calibrate_r(pathint_instanton_params* params,
                                               double oracle_splitting);
PATHINT_API pathint_status pathint_dilute_gas(double beta, const pathint_instanton_params* params,
                                              int opposite_well, int n_sectors, double* weights,
                                              double* partial_sums, size_t cap, size_t* n_out,
                                              double* closed_form, double* e_minus, double* e_plus,
                                              double* q_param);
PATHINT_API pathint_status pathint_periodic_band_energy(double theta,
                                                        const pathint_instanton_params* params,
                                                        double* out);
PATHINT_API pathint_status pathint_periodic_sector_identity(double q_param, double* double_sum,
                                                            double* theta_integral);

/* ----- topology ----- */

typedef struct pathint_interference_setup {
  double base_phase;
  double flux;
  double charge;
  double hbar;
  double c;
} pathint_interference_setup;

PATHINT_API pathint_status pathint_ab_phase(const pathint_interference_setup* setup, double* raw,
                                            double* mod_2pi);
PATHINT_API pathint_status pathint_two_slit_intensity(double a1_re, double a1_im, double a2_re,
                                                      double a2_im,
                                                      const pathint_interference_setup* setup,
                                                      double* out);
PATHINT_API pathint_status pathint_statistics_solutions(int dimension, int* continuous,
                                                        double* allowed, size_t cap,
                                                        size_t* n_out);
/* Validates the (dimension, phi) pair (3D admits only 0 or pi mod 2pi) and
 * returns the sector coefficient C_n = exp(i n phi). */
PATHINT_API pathint_status pathint_statistics_phase_coefficient(int dimension, double phi, int n,
                                                                double* out_re, double* out_im);
PATHINT_API pathint_status pathint_winding_amplitude(const int* ns, const double* amps_re,
                                                     const double* amps_im, size_t n_sectors,
                                                     double phi, double* out_re, double* out_im);
PATHINT_API pathint_status pathint_dirac_charge_unit(int n, double g, double hbar, double c,
                                                     double* out);

#ifdef __cplusplus
}
#endif

#endif /* PATHINT_H */
