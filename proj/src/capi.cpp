#include "pathint/pathint.h"

#include <cstring>
#include <string>
#include <vector>

#include "pathint/errors.hpp"
#include "pathint/gaussian.hpp"
#include "pathint/instanton.hpp"
#include "pathint/model.hpp"
#include "pathint/perturbation.hpp"
#include "pathint/pimc.hpp"
#include "pathint/spectral.hpp"
#include "pathint/topology.hpp"
#include "pathint/version.hpp"
#include "pathint/wick.hpp"

namespace {

thread_local std::string g_last_error;

pathint_status to_status(const pathint::Error& e) {
  switch (e.code()) {
    case pathint::ErrorCode::Domain: return PATHINT_ERR_DOMAIN;
    case pathint::ErrorCode::Structural: return PATHINT_ERR_STRUCTURAL;
    case pathint::ErrorCode::Capacity: return PATHINT_ERR_CAPACITY;
    case pathint::ErrorCode::Config: return PATHINT_ERR_CONFIG;
    case pathint::ErrorCode::Precondition: return PATHINT_ERR_PRECONDITION;
    case pathint::ErrorCode::Unsupported: return PATHINT_ERR_UNSUPPORTED;
    case pathint::ErrorCode::Caustic: return PATHINT_ERR_CAUSTIC;
    case pathint::ErrorCode::Grid: return PATHINT_ERR_GRID;
    case pathint::ErrorCode::Convergence: return PATHINT_ERR_CONVERGENCE;
  }
  return PATHINT_ERR_INTERNAL;
}

template <typename Fn>
pathint_status wrap(Fn&& fn) {
  try {
    fn();
    return PATHINT_OK;
  } catch (const pathint::Error& e) {
    g_last_error = e.what();
    return to_status(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PATHINT_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return PATHINT_ERR_INTERNAL;
  }
}

pathint::TimeSignature to_signature(pathint_signature s) {
  return s == PATHINT_EUCLIDEAN ? pathint::TimeSignature::Euclidean
                                : pathint::TimeSignature::RealTime;
}

pathint::BoundaryKind to_boundary(int b) {
  return b == PATHINT_PERIODIC ? pathint::BoundaryKind::Periodic
                               : pathint::BoundaryKind::FixedEndpoints;
}

void fill_propagator(const pathint::gaussian::PropagatorValue& v, pathint_propagator_value* out) {
  out->prefactor_modulus = v.prefactor_modulus;
  out->phase_re = v.phase_or_sign.real();
  out->phase_im = v.phase_or_sign.imag();
  out->classical_action = v.classical_action;
  const auto val = v.value();
  out->value_re = val.real();
  out->value_im = val.imag();
}

pathint::instanton::InstantonParams to_params(const pathint_instanton_params* p) {
  auto out = pathint::instanton::make_params(p->lambda, p->a, p->hbar);
  out.r = p->r;
  out.r_provenance = p->r_provenance == 2   ? pathint::instanton::RProvenance::OracleCalibrated
                     : p->r_provenance == 1 ? pathint::instanton::RProvenance::UserSupplied
                                            : pathint::instanton::RProvenance::Unset;
  return out;
}

pathint::pimc::SamplerConfig to_config(const pathint_potential* potential,
                                       const pathint_pimc_params* p);

}  // namespace

struct pathint_potential {
  pathint::Potential value;
};
struct pathint_lattice {
  pathint::Lattice value;
};
struct pathint_wick_terms {
  std::vector<pathint::wick::ContractionTerm> value;
};
struct pathint_spectrum {
  pathint::spectral::Spectrum value;
};
struct pathint_ensemble {
  pathint::pimc::Ensemble value;
};

namespace {

pathint::pimc::SamplerConfig to_config(const pathint_potential* potential,
                                       const pathint_pimc_params* p) {
  pathint::pimc::SamplerConfig cfg;
  cfg.lattice = pathint::Lattice(p->n_slices, p->beta, pathint::TimeSignature::Euclidean);
  cfg.potential = potential->value;
  cfg.boundary = to_boundary(p->boundary);
  cfg.fixed_start = p->fixed_start;
  cfg.fixed_end = p->fixed_end;
  cfg.n_sweeps = p->n_sweeps;
  cfg.n_thermalization = p->n_thermalization;
  cfg.n_chains = p->n_chains;
  cfg.step_width = p->step_width;
  cfg.shift_moves = p->shift_moves != 0;
  cfg.shift_width = p->shift_width;
  cfg.record_every = p->record_every;
  cfg.seed = p->seed;
  return cfg;
}

}  // namespace

extern "C" {

const char* pathint_version(void) { return pathint::kVersion; }

const char* pathint_last_error(void) { return g_last_error.c_str(); }

/* ----- model ----- */

pathint_status pathint_potential_free_particle(double m, double hbar, pathint_potential** out) {
  return wrap([&] { *out = new pathint_potential{pathint::Potential::free_particle(m, hbar)}; });
}
pathint_status pathint_potential_harmonic(double m, double omega, double hbar,
                                          pathint_potential** out) {
  return wrap([&] { *out = new pathint_potential{pathint::Potential::harmonic(m, omega, hbar)}; });
}
pathint_status pathint_potential_anharmonic(double m, double omega, double lambda, double hbar,
                                            pathint_potential** out) {
  return wrap(
      [&] { *out = new pathint_potential{pathint::Potential::anharmonic(m, omega, lambda, hbar)}; });
}
pathint_status pathint_potential_double_well(double lambda, double a, double m, double hbar,
                                             pathint_potential** out) {
  return wrap(
      [&] { *out = new pathint_potential{pathint::Potential::double_well(lambda, a, m, hbar)}; });
}
pathint_status pathint_potential_periodic(double depth, double period, double m, double hbar,
                                          pathint_potential** out) {
  return wrap(
      [&] { *out = new pathint_potential{pathint::Potential::periodic(depth, period, m, hbar)}; });
}
void pathint_potential_destroy(pathint_potential* p) { delete p; }

pathint_status pathint_potential_eval(const pathint_potential* p, double q, double* v, double* v1,
                                      double* v2) {
  return wrap([&] {
    const auto d = pathint::potential_derivatives(p->value, q);
    if (v) *v = d.v;
    if (v1) *v1 = d.v1;
    if (v2) *v2 = d.v2;
  });
}

double pathint_potential_omega(const pathint_potential* p) { return p->value.omega(); }

pathint_status pathint_lattice_create(size_t n_slices, double extent, pathint_signature signature,
                                      pathint_lattice** out) {
  return wrap([&] {
    *out = new pathint_lattice{pathint::Lattice(n_slices, extent, to_signature(signature))};
  });
}
void pathint_lattice_destroy(pathint_lattice* l) { delete l; }

double pathint_lattice_spacing(const pathint_lattice* l) { return l->value.spacing(); }

pathint_status pathint_discrete_action(const double* positions, size_t n_positions,
                                       pathint_boundary boundary, const pathint_lattice* lattice,
                                       const pathint_potential* potential, double* out) {
  return wrap([&] {
    pathint::Path path(std::vector<double>(positions, positions + n_positions),
                       to_boundary(boundary));
    *out = pathint::discrete_action(path, lattice->value, potential->value);
  });
}

/* ----- gaussian ----- */

pathint_status pathint_free_propagator(double q, double qp, double extent, double m, double hbar,
                                       pathint_signature signature,
                                       pathint_propagator_value* out) {
  return wrap([&] {
    fill_propagator(pathint::gaussian::free_propagator(q, qp, extent, m, hbar,
                                                       to_signature(signature)),
                    out);
  });
}

pathint_status pathint_ho_propagator(double q, double qp, double extent, double m, double omega,
                                     double hbar, pathint_signature signature,
                                     pathint_propagator_value* out) {
  return wrap([&] {
    fill_propagator(pathint::gaussian::ho_propagator(q, qp, extent, m, omega, hbar,
                                                     to_signature(signature)),
                    out);
  });
}

pathint_status pathint_ho_partition_function(double beta, double omega, double hbar, double* out) {
  return wrap([&] { *out = pathint::gaussian::ho_partition_function(beta, omega, hbar); });
}

pathint_status pathint_ho_partition_quadrature(double beta, double m, double omega, double hbar,
                                               double* out) {
  return wrap(
      [&] { *out = pathint::gaussian::ho_partition_function_quadrature(beta, m, omega, hbar); });
}

pathint_status pathint_dirichlet_green(double tau, double taup, double beta, double m,
                                       double omega, double* out) {
  return wrap([&] { *out = pathint::gaussian::dirichlet_green(tau, taup, beta, m, omega); });
}

pathint_status pathint_feynman_green(double dt, double omega, double epsilon, double* out_re,
                                     double* out_im, double* out_residual) {
  return wrap([&] {
    const auto r = pathint::gaussian::feynman_green_qm(dt, omega, {epsilon});
    *out_re = r.value.real();
    *out_im = r.value.imag();
    if (out_residual) *out_residual = r.residual;
  });
}

pathint_status pathint_generating_exponent(const double* j_samples, size_t n_samples,
                                           const pathint_lattice* lattice, double m, double omega,
                                           double* out) {
  return wrap([&] {
    pathint::gaussian::SourceFunction src{lattice->value,
                                          std::vector<double>(j_samples, j_samples + n_samples)};
    *out = pathint::gaussian::quadratic_generating_exponent(src, lattice->value.extent(), m,
                                                            omega);
  });
}

pathint_status pathint_instanton_profile(double tau, double a, double lambda, double tau0,
                                         double* out) {
  return wrap([&] { *out = pathint::gaussian::instanton_profile(tau, a, lambda, tau0); });
}

pathint_status pathint_lattice_propagator(double q, double qp, const pathint_lattice* lattice,
                                          const pathint_potential* potential, double* out) {
  return wrap(
      [&] { *out = pathint::gaussian::lattice_propagator(q, qp, lattice->value, potential->value); });
}

/* ----- wick ----- */

pathint_status pathint_pairing_count(int n_points, uint64_t* out) {
  return wrap([&] {
    *out = static_cast<uint64_t>(pathint::wick::enumerate_pairings(n_points).size());
  });
}

pathint_status pathint_first_order_terms(pathint_signature signature, pathint_wick_terms** out) {
  return wrap([&] {
    *out = new pathint_wick_terms{
        pathint::wick::first_order_two_point_terms(to_signature(signature))};
  });
}
void pathint_wick_terms_destroy(pathint_wick_terms* t) { delete t; }

size_t pathint_wick_terms_count(const pathint_wick_terms* t) { return t->value.size(); }

pathint_status pathint_wick_term_info(const pathint_wick_terms* t, size_t index,
                                      uint64_t* multiplicity, long long* coeff_num,
                                      long long* coeff_den, int* connected, size_t* n_factors) {
  return wrap([&] {
    if (index >= t->value.size()) throw pathint::DomainError("term index out of range");
    const auto& term = t->value[index];
    if (multiplicity) *multiplicity = term.multiplicity;
    if (coeff_num) *coeff_num = term.coefficient.num;
    if (coeff_den) *coeff_den = term.coefficient.den;
    if (connected) *connected = term.connected ? 1 : 0;
    if (n_factors) *n_factors = term.kernel_factors.size();
  });
}

pathint_status pathint_wick_term_factor(const pathint_wick_terms* t, size_t term, size_t factor,
                                        int* label_i, int* label_j) {
  return wrap([&] {
    if (term >= t->value.size()) throw pathint::DomainError("term index out of range");
    const auto& factors = t->value[term].kernel_factors;
    if (factor >= factors.size()) throw pathint::DomainError("factor index out of range");
    *label_i = factors[factor].first;
    *label_j = factors[factor].second;
  });
}

pathint_status pathint_free_npoint(const double* points, size_t n_points,
                                   pathint_kernel_fn kernel, void* ctx, double* out) {
  return wrap([&] {
    auto k = [kernel, ctx](double a, double b) { return kernel(a, b, ctx); };
    *out = pathint::wick::free_npoint(std::span<const double>(points, n_points), k);
  });
}

pathint_status pathint_ke_ratio_first_order(double beta, double m, double omega, double lambda,
                                            double hbar, double* out) {
  return wrap([&] {
    *out = pathint::wick::euclidean_first_order_ke_ratio(beta, m, omega, lambda, hbar);
  });
}

pathint_status pathint_cancellation_check(double beta, double m, double omega, double lambda,
                                          long long* residual_num, long long* residual_den,
                                          double* residual_numeric) {
  return wrap([&] {
    const auto r = pathint::wick::disconnected_cancellation_check(beta, m, omega, lambda);
    if (residual_num) *residual_num = r.disconnected_residual.num;
    if (residual_den) *residual_den = r.disconnected_residual.den;
    if (residual_numeric) *residual_numeric = r.disconnected_residual_numeric;
  });
}

/* ----- perturbation ----- */

pathint_status pathint_anharmonic_e0(double m, double omega, double lambda, double hbar,
                                     double* out) {
  return wrap([&] {
    *out = pathint::perturbation::anharmonic_e0_first_order(m, omega, lambda, hbar).value;
  });
}

pathint_status pathint_log_slope_energy(const double* betas, const double* k_values, size_t n,
                                        double* value, double* error_bar) {
  return wrap([&] {
    std::vector<double> bs(betas, betas + n);
    std::vector<double> ks(k_values, k_values + n);
    auto diag = [&](double beta) {
      for (size_t i = 0; i < bs.size(); ++i) {
        if (bs[i] == beta) return ks[i];
      }
      throw pathint::DomainError("log_slope_energy: beta not tabulated");
    };
    const auto est = pathint::perturbation::log_slope_energy(diag, bs);
    *value = est.value;
    if (error_bar) *error_bar = est.error_bar;
  });
}

/* ----- spectral ----- */

pathint_status pathint_diagonalize(const pathint_potential* potential, double q_min, double q_max,
                                   size_t n_points, double hbar, size_t n_states,
                                   pathint_spectrum** out) {
  return wrap([&] {
    pathint::spectral::SpectralGrid grid{q_min, q_max, n_points};
    *out = new pathint_spectrum{
        pathint::spectral::diagonalize(potential->value, grid, hbar, n_states)};
  });
}

pathint_status pathint_diagonalize_auto(const pathint_potential* potential, double hbar,
                                        size_t n_states, pathint_spectrum** out) {
  return wrap([&] {
    *out = new pathint_spectrum{
        pathint::spectral::diagonalize_auto(potential->value, hbar, n_states)};
  });
}

void pathint_spectrum_destroy(pathint_spectrum* s) { delete s; }

size_t pathint_spectrum_size(const pathint_spectrum* s) { return s->value.eigenvalues.size(); }

pathint_status pathint_spectrum_eigenvalue(const pathint_spectrum* s, size_t level, double* out) {
  return wrap([&] {
    if (level >= s->value.eigenvalues.size()) {
      throw pathint::DomainError("eigenvalue level out of range");
    }
    *out = s->value.eigenvalues[level];
  });
}

pathint_status pathint_spectrum_grid(const pathint_spectrum* s, double* q_min, double* q_max,
                                     size_t* n_points) {
  return wrap([&] {
    if (q_min) *q_min = s->value.grid.q_min;
    if (q_max) *q_max = s->value.grid.q_max;
    if (n_points) *n_points = s->value.grid.n_points;
  });
}

pathint_status pathint_spectrum_eigenfunction(const pathint_spectrum* s, size_t level,
                                              double* buffer, size_t buffer_len) {
  return wrap([&] {
    if (level >= s->value.eigenfunctions.size()) {
      throw pathint::DomainError("eigenfunction level out of range");
    }
    const auto& phi = s->value.eigenfunctions[level];
    if (buffer_len < phi.size()) throw pathint::StructuralError("buffer too small");
    std::memcpy(buffer, phi.data(), phi.size() * sizeof(double));
  });
}

pathint_status pathint_partition_from_spectrum(const pathint_spectrum* s, double beta,
                                               double* out) {
  return wrap([&] { *out = pathint::spectral::partition_from_spectrum(s->value, beta); });
}

pathint_status pathint_splitting_auto(const pathint_potential* double_well, double hbar,
                                      double* out) {
  return wrap([&] {
    const auto spec = pathint::spectral::diagonalize_auto(double_well->value, hbar, 2);
    *out = spec.eigenvalues[1] - spec.eigenvalues[0];
  });
}

/* ----- pimc ----- */

pathint_status pathint_pimc_run(const pathint_potential* potential,
                                const pathint_pimc_params* params, pathint_ensemble** out) {
  return wrap([&] {
    *out = new pathint_ensemble{pathint::pimc::run_sampler(to_config(potential, params))};
  });
}

void pathint_ensemble_destroy(pathint_ensemble* e) { delete e; }

double pathint_ensemble_acceptance(const pathint_ensemble* e) {
  return e->value.acceptance_rate;
}

pathint_status pathint_ensemble_mean_position(const pathint_ensemble* e, double* mean,
                                              double* std_error, double* n_effective) {
  return wrap([&] {
    const auto r = e->value.mean_position();
    *mean = r.mean;
    if (std_error) *std_error = r.std_error;
    if (n_effective) *n_effective = r.n_effective;
  });
}

pathint_status pathint_ensemble_mean_square(const pathint_ensemble* e, double* mean,
                                            double* std_error, double* n_effective) {
  return wrap([&] {
    const auto r = e->value.mean_square();
    *mean = r.mean;
    if (std_error) *std_error = r.std_error;
    if (n_effective) *n_effective = r.n_effective;
  });
}

pathint_status pathint_ensemble_correlation(const pathint_ensemble* e, const double* taus,
                                            size_t n_taus, double* means, double* std_errors,
                                            double* n_effectives) {
  return wrap([&] {
    const auto rs =
        pathint::pimc::correlation_function(e->value, std::span<const double>(taus, n_taus));
    for (size_t i = 0; i < rs.size(); ++i) {
      if (means) means[i] = rs[i].mean;
      if (std_errors) std_errors[i] = rs[i].std_error;
      if (n_effectives) n_effectives[i] = rs[i].n_effective;
    }
  });
}

pathint_status pathint_ensemble_effective_gap(const pathint_ensemble* e, double max_tau,
                                              double* taus, double* values, double* errors,
                                              size_t cap, size_t* n_out) {
  return wrap([&] {
    const auto gaps = pathint::pimc::effective_gap(e->value, max_tau);
    const size_t n = gaps.size() < cap ? gaps.size() : cap;
    for (size_t i = 0; i < n; ++i) {
      if (taus) taus[i] = gaps[i].tau;
      if (values) values[i] = gaps[i].value;
      if (errors) errors[i] = gaps[i].std_error;
    }
    if (n_out) *n_out = n;
  });
}

pathint_status pathint_pimc_tune(const pathint_potential* potential,
                                 const pathint_pimc_params* params, double* tuned_step_width) {
  return wrap([&] {
    *tuned_step_width = pathint::pimc::tune_step(to_config(potential, params)).step_width;
  });
}

/* ----- instanton ----- */

pathint_status pathint_instanton_action(double lambda, double a, double* s_inst, double* omega) {
  return wrap([&] {
    const auto r = pathint::instanton::instanton_action(lambda, a);
    *s_inst = r.s_inst;
    if (omega) *omega = r.omega;
  });
}

pathint_status pathint_energy_splitting(const pathint_instanton_params* params, double* out) {
  return wrap([&] { *out = pathint::instanton::energy_splitting(to_params(params)); });
}

pathint_status pathint_calibrate_r(pathint_instanton_params* params, double oracle_splitting) {
  return wrap([&] {
    const auto r = pathint::instanton::calibrate_r(to_params(params), oracle_splitting);
    params->r = r.r;
    params->r_provenance = 2;
  });
}

pathint_status pathint_dilute_gas(double beta, const pathint_instanton_params* params,
                                  int opposite_well, int n_sectors, double* weights,
                                  double* partial_sums, size_t cap, size_t* n_out,
                                  double* closed_form, double* e_minus, double* e_plus,
                                  double* q_param) {
  return wrap([&] {
    const auto r = pathint::instanton::dilute_gas_propagator(
        beta, to_params(params),
        opposite_well ? pathint::instanton::Endpoints::OppositeWell
                      : pathint::instanton::Endpoints::SameWell,
        n_sectors);
    const size_t n = r.sector_weights.size() < cap ? r.sector_weights.size() : cap;
    for (size_t i = 0; i < n; ++i) {
      if (weights) weights[i] = r.sector_weights[i];
      if (partial_sums) partial_sums[i] = r.partial_sums[i];
    }
    if (n_out) *n_out = n;
    if (closed_form) *closed_form = r.closed_form;
    if (e_minus) *e_minus = r.energy_minus;
    if (e_plus) *e_plus = r.energy_plus;
    if (q_param) *q_param = r.q_parameter;
  });
}

pathint_status pathint_periodic_band_energy(double theta, const pathint_instanton_params* params,
                                            double* out) {
  return wrap([&] { *out = pathint::instanton::periodic_band_energy(theta, to_params(params)); });
}

pathint_status pathint_periodic_sector_identity(double q_param, double* double_sum,
                                                double* theta_integral) {
  return wrap([&] {
    if (double_sum) *double_sum = pathint::instanton::periodic_double_sum(q_param);
    if (theta_integral) *theta_integral = pathint::instanton::periodic_theta_integral(q_param);
  });
}

/* ----- topology ----- */

namespace {

pathint::topology::InterferenceSetup to_setup(const pathint_interference_setup* s) {
  return {s->base_phase, s->flux, s->charge, s->hbar, s->c};
}

}  // namespace

pathint_status pathint_ab_phase(const pathint_interference_setup* setup, double* raw,
                                double* mod_2pi) {
  return wrap([&] {
    const auto r = pathint::topology::ab_relative_phase(to_setup(setup));
    if (raw) *raw = r.raw;
    if (mod_2pi) *mod_2pi = r.mod_2pi;
  });
}

pathint_status pathint_two_slit_intensity(double a1_re, double a1_im, double a2_re, double a2_im,
                                          const pathint_interference_setup* setup, double* out) {
  return wrap([&] {
    *out = pathint::topology::two_slit_intensity({a1_re, a1_im}, {a2_re, a2_im}, to_setup(setup));
  });
}

pathint_status pathint_statistics_solutions(int dimension, int* continuous, double* allowed,
                                            size_t cap, size_t* n_out) {
  return wrap([&] {
    const auto r = pathint::topology::statistics_solutions(dimension);
    if (continuous) *continuous = r.continuous ? 1 : 0;
    const size_t n = r.allowed.size() < cap ? r.allowed.size() : cap;
    for (size_t i = 0; i < n; ++i) {
      if (allowed) allowed[i] = r.allowed[i];
    }
    if (n_out) *n_out = n;
  });
}

pathint_status pathint_statistics_phase_coefficient(int dimension, double phi, int n,
                                                    double* out_re, double* out_im) {
  return wrap([&] {
    const pathint::topology::StatisticsPhase sp(dimension, phi);
    const auto c = sp.coefficient(n);
    *out_re = c.real();
    *out_im = c.imag();
  });
}

pathint_status pathint_winding_amplitude(const int* ns, const double* amps_re,
                                         const double* amps_im, size_t n_sectors, double phi,
                                         double* out_re, double* out_im) {
  return wrap([&] {
    std::map<int, std::complex<double>> sectors;
    for (size_t i = 0; i < n_sectors; ++i) {
      sectors[ns[i]] = {amps_re[i], amps_im[i]};
    }
    const auto r = pathint::topology::winding_amplitude(sectors, phi);
    *out_re = r.real();
    *out_im = r.imag();
  });
}

pathint_status pathint_dirac_charge_unit(int n, double g, double hbar, double c, double* out) {
  return wrap([&] { *out = pathint::topology::dirac_charge_unit(n, g, hbar, c); });
}

}  // extern "C"
