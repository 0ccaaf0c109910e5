#include "pathint/pimc.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "pathint/errors.hpp"
#include "pathint/numerics.hpp"
#include "pathint/rng.hpp"

namespace pathint::pimc {

namespace {

void validate(const SamplerConfig& c) {
  if (c.lattice.signature() != TimeSignature::Euclidean) {
    throw UnsupportedError("run_sampler: Euclidean signature only");
  }
  if (c.boundary == BoundaryKind::Periodic && c.lattice.n_slices() < 2) {
    throw DomainError("run_sampler: periodic sampling needs at least 2 slices");
  }
  if (c.n_sweeps <= c.n_thermalization || c.n_thermalization < 0) {
    throw DomainError("run_sampler: need n_sweeps > n_thermalization >= 0");
  }
  if (!(c.step_width > 0)) throw DomainError("run_sampler: step_width must be > 0");
  if (c.n_chains < 1) throw DomainError("run_sampler: n_chains must be >= 1");
  if (c.shift_moves && !(c.shift_width > 0)) {
    throw DomainError("run_sampler: shift_width must be > 0");
  }
}

struct ChainState {
  std::vector<double> q;  // periodic: N sites (q_N = q_0 implied); fixed: N+1
  bool periodic;
  double delta;
  double m;
  double hbar;
  const Potential* pot;

  std::size_t n_updatable() const { return periodic ? q.size() : q.size() - 2; }

  double site(std::size_t i) const { return periodic ? q[i % q.size()] : q[i]; }

  // Local action pieces touching site j (its two legs).
  double local_action(std::size_t j, double qj) const {
    const std::size_t n = q.size();
    const double qm = periodic ? q[(j + n - 1) % n] : q[j - 1];
    const double qp = periodic ? q[(j + 1) % n] : q[j + 1];
    const double k1 = qj - qm;
    const double k2 = qp - qj;
    return (0.5 * m / delta) * (k1 * k1 + k2 * k2) +
           delta * (pot->value(0.5 * (qm + qj)) + pot->value(0.5 * (qj + qp)));
  }

  double shift_action_delta(double u) const {
    // Kinetic terms are shift invariant; only the potential changes.
    const std::size_t n = q.size();
    const std::size_t legs = periodic ? n : n - 1;
    double ds = 0.0;
    for (std::size_t j = 0; j < legs; ++j) {
      const double qbar = 0.5 * (q[j] + (periodic ? q[(j + 1) % n] : q[j + 1]));
      ds += pot->value(qbar + u) - pot->value(qbar);
    }
    return ds * delta;
  }
};

struct ChainResult {
  double acceptance = 0.0;
  std::vector<double> q_series;
  std::vector<double> q2_series;
  std::vector<std::vector<double>> paths;
};

ChainResult run_chain(const SamplerConfig& cfg, int chain_index, long record_every) {
  const std::size_t n_slices = cfg.lattice.n_slices();
  ChainState st;
  st.periodic = cfg.boundary == BoundaryKind::Periodic;
  st.delta = cfg.lattice.spacing();
  st.m = cfg.potential.mass();
  st.hbar = cfg.potential.hbar();
  st.pot = &cfg.potential;
  if (st.periodic) {
    st.q.assign(n_slices, 0.0);
  } else {
    st.q.assign(n_slices + 1, 0.0);
    st.q.front() = cfg.fixed_start;
    st.q.back() = cfg.fixed_end;
    for (std::size_t i = 1; i < n_slices; ++i) {
      const double f = static_cast<double>(i) / static_cast<double>(n_slices);
      st.q[i] = cfg.fixed_start + f * (cfg.fixed_end - cfg.fixed_start);
    }
  }

  Rng rng(cfg.seed, static_cast<std::uint64_t>(chain_index));
  const std::size_t first = st.periodic ? 0 : 1;
  const std::size_t last = st.periodic ? st.q.size() : st.q.size() - 1;

  ChainResult out;
  long accepted = 0;
  long attempted = 0;
  const long measured = cfg.n_sweeps - cfg.n_thermalization;
  out.q_series.reserve(static_cast<std::size_t>(measured));
  out.q2_series.reserve(static_cast<std::size_t>(measured));

  for (long sweep = 0; sweep < cfg.n_sweeps; ++sweep) {
    for (std::size_t j = first; j < last; ++j) {
      const double old_q = st.q[j];
      const double new_q = old_q + rng.symmetric(cfg.step_width);
      const double ds = st.local_action(j, new_q) - st.local_action(j, old_q);
      ++attempted;
      if (ds <= 0.0 || rng.uniform() < std::exp(-ds / st.hbar)) {
        st.q[j] = new_q;
        ++accepted;
      }
    }
    if (cfg.shift_moves && st.periodic) {  // rigid shifts would move fixed endpoints
      const double u = rng.symmetric(cfg.shift_width);
      const double ds = st.shift_action_delta(u);
      if (ds <= 0.0 || rng.uniform() < std::exp(-ds / st.hbar)) {
        for (auto& x : st.q) x += u;
      }
    }
    if (sweep < cfg.n_thermalization) continue;

    double s1 = 0.0;
    double s2 = 0.0;
    for (double x : st.q) {
      s1 += x;
      s2 += x * x;
    }
    const double inv = 1.0 / static_cast<double>(st.q.size());
    out.q_series.push_back(s1 * inv);
    out.q2_series.push_back(s2 * inv);

    if (record_every > 0 && (sweep - cfg.n_thermalization) % record_every == 0) {
      std::vector<double> path(st.q.begin(), st.q.end());
      if (st.periodic) path.push_back(st.q.front());
      out.paths.push_back(std::move(path));
    }
  }
  out.acceptance = attempted > 0 ? static_cast<double>(accepted) / static_cast<double>(attempted)
                                 : 0.0;
  return out;
}

EstimatorResult merge_series(const std::vector<std::vector<double>>& per_chain) {
  double mean = 0.0;
  double var_sum = 0.0;
  double n_eff = 0.0;
  int chains = 0;
  for (const auto& series : per_chain) {
    if (series.empty()) continue;
    const auto b = numerics::blocking_analysis(series);
    mean += b.mean;
    var_sum += b.std_error * b.std_error;
    n_eff += b.n_effective;
    ++chains;
  }
  if (chains == 0) throw StructuralError("no measurements recorded");
  const double inv = 1.0 / static_cast<double>(chains);
  return {mean * inv, std::sqrt(var_sum) * inv, n_eff};
}

}  // namespace

EstimatorResult Ensemble::mean_position() const { return merge_series(q_series); }

EstimatorResult Ensemble::mean_square() const { return merge_series(q2_series); }

std::vector<double> Ensemble::chain_means_q2() const {
  std::vector<double> out;
  for (const auto& series : q2_series) {
    double s = 0.0;
    for (double v : series) s += v;
    out.push_back(series.empty() ? 0.0 : s / static_cast<double>(series.size()));
  }
  return out;
}

Ensemble run_sampler(const SamplerConfig& config) {
  validate(config);
  long record_every = config.record_every;
  if (record_every <= 0) {
    const long measured = config.n_sweeps - config.n_thermalization;
    record_every = std::max<long>(1, measured / 4096);
  }

  std::vector<ChainResult> results(static_cast<std::size_t>(config.n_chains));
  std::vector<std::thread> workers;
  workers.reserve(results.size());
  for (int i = 0; i < config.n_chains; ++i) {
    workers.emplace_back([&, i] { results[static_cast<std::size_t>(i)] =
                                      run_chain(config, i, record_every); });
  }
  for (auto& w : workers) w.join();

  Ensemble ens;
  ens.config = config;
  ens.config.record_every = record_every;
  double acc = 0.0;
  for (const auto& r : results) {
    ens.chain_acceptance.push_back(r.acceptance);
    acc += r.acceptance;
    ens.q_series.push_back(r.q_series);
    ens.q2_series.push_back(r.q2_series);
    ens.paths.push_back(r.paths);
  }
  ens.acceptance_rate = acc / static_cast<double>(config.n_chains);
  ens.acceptance_in_band = ens.acceptance_rate >= 0.2 && ens.acceptance_rate <= 0.8;
  return ens;
}

namespace {

std::size_t separation_index(const Ensemble& ens, double tau) {
  const double delta = ens.config.lattice.spacing();
  const double beta = ens.config.lattice.extent();
  if (tau < 0.0 || tau > 0.5 * beta + 1e-12) {
    throw DomainError("correlation_function: separations must lie in [0, beta/2]");
  }
  const double k = tau / delta;
  const double kr = std::round(k);
  if (std::abs(k - kr) > 1e-6) {
    throw DomainError("correlation_function: separation is not a lattice multiple");
  }
  return static_cast<std::size_t>(kr);
}

std::vector<std::vector<double>> correlator_series(const Ensemble& ens, std::size_t k) {
  const std::size_t n = ens.config.lattice.n_slices();
  std::vector<std::vector<double>> per_chain;
  per_chain.reserve(ens.paths.size());
  for (const auto& chain_paths : ens.paths) {
    std::vector<double> series;
    series.reserve(chain_paths.size());
    for (const auto& path : chain_paths) {
      double c = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        c += path[j] * path[(j + k) % n];
      }
      series.push_back(c / static_cast<double>(n));
    }
    per_chain.push_back(std::move(series));
  }
  return per_chain;
}

}  // namespace

std::vector<EstimatorResult> correlation_function(const Ensemble& ensemble,
                                                  std::span<const double> separations) {
  if (ensemble.config.boundary != BoundaryKind::Periodic) {
    throw PreconditionError("correlation_function: periodic-boundary ensembles only");
  }
  std::vector<EstimatorResult> out;
  out.reserve(separations.size());
  for (double tau : separations) {
    out.push_back(merge_series(correlator_series(ensemble, separation_index(ensemble, tau))));
  }
  return out;
}

std::vector<GapPoint> effective_gap(const Ensemble& ensemble, double max_tau) {
  const double delta = ensemble.config.lattice.spacing();
  const double beta = ensemble.config.lattice.extent();
  if (max_tau <= 0.0) max_tau = 0.5 * beta;
  std::vector<double> seps;
  for (double t = 0.0; t + delta <= max_tau + 1e-12; t += delta) seps.push_back(t);
  seps.push_back(seps.back() + delta);
  const auto c = correlation_function(ensemble, seps);

  std::vector<GapPoint> out;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    if (!(c[i].mean > 0.0) || !(c[i + 1].mean > 0.0)) break;  // noise floor reached
    const double value = -std::log(c[i + 1].mean / c[i].mean) / delta;
    const double r1 = c[i].std_error / c[i].mean;
    const double r2 = c[i + 1].std_error / c[i + 1].mean;
    out.push_back({seps[i], value, std::sqrt(r1 * r1 + r2 * r2) / delta});
  }
  return out;
}

SamplerConfig tune_step(const SamplerConfig& config) {
  validate(config);
  SamplerConfig pilot = config;
  pilot.n_chains = 1;
  pilot.n_thermalization = 0;
  pilot.n_sweeps = std::max<long>(64, std::min<long>(512, config.n_thermalization));
  pilot.record_every = pilot.n_sweeps + 1;  // no paths

  SamplerConfig tuned = config;
  for (int iter = 0; iter < 24; ++iter) {
    pilot.step_width = tuned.step_width;
    pilot.seed = config.seed ^ (0x9e3779b97f4a7c15ull + static_cast<std::uint64_t>(iter));
    const double acc = run_sampler(pilot).acceptance_rate;
    if (acc >= 0.4 && acc <= 0.6) break;
    // Move the width toward 50% acceptance, capped per iteration.
    const double factor = std::clamp(std::exp(2.0 * (acc - 0.5)), 0.5, 2.0);
    tuned.step_width *= factor;
  }
  return tuned;
}

}  // namespace pathint::pimc
