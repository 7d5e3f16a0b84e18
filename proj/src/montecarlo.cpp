#include "tomolab/montecarlo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <thread>

#include "tomolab/errors.hpp"
#include "tomolab/kernels.hpp"

namespace tomolab::montecarlo {

std::vector<long long> sample_counts(const std::vector<double>& probabilities, long long n,
                                     Xoshiro256pp& rng) {
  if (n < 0) throw std::invalid_argument("sample_counts: negative n");
  if (probabilities.empty())
    throw std::invalid_argument("sample_counts: empty probability vector");
  double sum = 0.0;
  for (double p : probabilities) {
    if (p < 0.0 || !std::isfinite(p))
      throw std::invalid_argument("sample_counts: invalid probability vector");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("sample_counts: probabilities must sum to 1");

  const int m = static_cast<int>(probabilities.size());
  std::vector<long long> counts(m, 0);
  long long remaining = n;
  double mass = 1.0;
  for (int j = 0; j + 1 < m && remaining > 0; ++j) {
    const double q = std::clamp(probabilities[j] / mass, 0.0, 1.0);
    long long c;
    if (q >= 1.0) {
      c = remaining;
    } else if (q <= 0.0) {
      c = 0;
    } else {
      std::binomial_distribution<long long> binom(remaining, q);
      c = binom(rng);
    }
    counts[j] = c;
    remaining -= c;
    mass -= probabilities[j];
  }
  counts[m - 1] += remaining;
  return counts;
}

double pairwise_sum(const double* x, std::size_t n) {
  if (n <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x, half) + pairwise_sum(x + half, n - half);
}

namespace {

double mean_of(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size()) / static_cast<double>(v.size());
}

// Two-pass sample standard deviation, deterministic tree order.
double std_of(const std::vector<double>& v, double mean) {
  if (v.size() < 2) return 0.0;
  std::vector<double> sq(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double d = v[i] - mean;
    sq[i] = d * d;
  }
  return std::sqrt(pairwise_sum(sq.data(), sq.size()) / static_cast<double>(v.size() - 1));
}

struct Workspace {
  std::vector<double> freqs;
  Eigen::VectorXd est_coeffs;
  Eigen::VectorXd delta;
  opcore::Matrix delta_op;
  Eigen::SelfAdjointEigenSolver<opcore::Matrix> solver;
};

Workspace& workspace() {
  thread_local Workspace ws;
  return ws;
}

}  // namespace

MeasurementPlan::MeasurementPlan(const povm::Pom& pom, const tomography::ReconstructionSet& recon)
    : dim_(pom.dim), pom_(&pom), theta_rows_(recon.coeff_rows) {}

TrialContext::TrialContext(const MeasurementPlan& plan, const Matrix& rho)
    : plan_(&plan),
      probs_(tomography::born_probabilities(plan.pom(), rho)),
      true_coeffs_(opcore::shared_basis(plan.dim()).vectorize(rho)) {}

TrialResult TrialContext::run(long long n_copies, Xoshiro256pp& rng) const {
  if (n_copies < 1) throw std::invalid_argument("TrialContext::run: n_copies must be >= 1");
  const auto counts = sample_counts(probs_, n_copies, rng);
  const std::size_t m = counts.size();

  Workspace& ws = workspace();
  ws.freqs.resize(m);
  const double inv_n = 1.0 / static_cast<double>(n_copies);
  for (std::size_t j = 0; j < m; ++j) ws.freqs[j] = counts[j] * inv_n;

  const auto& rows = plan_->theta_rows();
  const std::size_t len = static_cast<std::size_t>(rows.cols());
  ws.est_coeffs.resize(static_cast<Eigen::Index>(len));
  kernels::weighted_sum_rows(rows.data(), ws.freqs.data(), m, len, ws.est_coeffs.data());

  TrialResult out;
  out.sq_hs = kernels::sum_sq_diff(ws.est_coeffs.data(), true_coeffs_.data(), len);
  out.hs_dist = std::sqrt(out.sq_hs);

  ws.delta = ws.est_coeffs - true_coeffs_;
  opcore::shared_basis(plan_->dim()).devectorize_into(ws.delta, ws.delta_op);
  ws.solver.compute(ws.delta_op, Eigen::EigenvaluesOnly);
  out.trace_dist = 0.5 * ws.solver.eigenvalues().cwiseAbs().sum();
  return out;
}

TrialResult run_trial(const povm::Pom& pom, const tomography::ReconstructionSet& recon,
                      const Matrix& rho, long long n_copies, Xoshiro256pp& rng) {
  const MeasurementPlan plan(pom, recon);
  const TrialContext ctx(plan, rho);
  return ctx.run(n_copies, rng);
}

StateSpec StateSpec::fixed(Matrix rho_in) {
  StateSpec spec;
  spec.kind = Kind::fixed;
  spec.rho = std::move(rho_in);
  return spec;
}

StateSpec StateSpec::haar_pure_ensemble(int count) {
  if (count < 1) throw std::invalid_argument("haar_pure_ensemble: count must be >= 1");
  StateSpec spec;
  spec.kind = Kind::haar_pure_ensemble;
  spec.ensemble_size = count;
  return spec;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("TOMOLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

ExperimentStats run_experiment(const povm::Pom& pom, const ExperimentConfig& config) {
  const auto fso = tomography::frame_superoperator(pom);
  const auto recon = tomography::canonical_reconstruction(pom, fso);
  return run_experiment(pom, recon, config);
}

ExperimentStats run_experiment(const povm::Pom& pom, const tomography::ReconstructionSet& recon,
                               const ExperimentConfig& config) {
  if (config.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
  const int d = pom.dim;
  const long long n_copies =
      config.n_copies > 0 ? config.n_copies : 1000 + 20ll * d * d;

  // True states, generated serially from per-state streams.
  std::vector<Matrix> states;
  switch (config.state.kind) {
    case StateSpec::Kind::completely_mixed:
      states.push_back(Matrix::Identity(d, d) / static_cast<double>(d));
      break;
    case StateSpec::Kind::fixed:
      if (config.state.rho.rows() != d) throw std::invalid_argument("run_experiment: state dim");
      states.push_back(config.state.rho);
      break;
    case StateSpec::Kind::haar_pure_ensemble:
      states.reserve(config.state.ensemble_size);
      for (int s = 0; s < config.state.ensemble_size; ++s) {
        Xoshiro256pp rng =
            derive_stream(config.master_seed, static_cast<std::uint64_t>(s), ~0ull);
        states.push_back(opcore::projector(opcore::random_haar_pure(d, rng)));
      }
      break;
  }
  const int n_states = static_cast<int>(states.size());
  const int trials = config.trials;

  const MeasurementPlan plan(pom, recon);
  std::vector<TrialContext> contexts;
  contexts.reserve(n_states);
  for (const auto& rho : states) contexts.emplace_back(plan, rho);

  std::vector<double> td(static_cast<std::size_t>(n_states) * trials);
  std::vector<double> hs(td.size());
  std::vector<double> sq(td.size());

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::size_t s = i / trials;
      const std::size_t t = i % trials;
      Xoshiro256pp rng = derive_stream(config.master_seed, s, t);
      const TrialResult r = contexts[s].run(n_copies, rng);
      td[i] = r.trace_dist;
      hs[i] = r.hs_dist;
      sq[i] = r.sq_hs;
    }
  };

  const std::size_t total = td.size();
  const int n_threads = std::max(1, std::min<int>(resolve_threads(config.threads),
                                                  static_cast<int>(total)));
  if (n_threads == 1) {
    work(0, total);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    const std::size_t chunk = (total + n_threads - 1) / n_threads;
    for (int k = 0; k < n_threads; ++k) {
      const std::size_t begin = k * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Aggregation: per-state means/stds first, then across states.
  const double sqrt_n = std::sqrt(static_cast<double>(n_copies));
  std::vector<double> state_mean_td(n_states), state_std_td(n_states);
  std::vector<double> state_mean_hs(n_states), state_std_hs(n_states);
  std::vector<double> state_mean_sq(n_states), state_std_sq(n_states);
  for (int s = 0; s < n_states; ++s) {
    const std::vector<double> td_s(td.begin() + static_cast<std::ptrdiff_t>(s) * trials,
                                   td.begin() + static_cast<std::ptrdiff_t>(s + 1) * trials);
    const std::vector<double> hs_s(hs.begin() + static_cast<std::ptrdiff_t>(s) * trials,
                                   hs.begin() + static_cast<std::ptrdiff_t>(s + 1) * trials);
    const std::vector<double> sq_s(sq.begin() + static_cast<std::ptrdiff_t>(s) * trials,
                                   sq.begin() + static_cast<std::ptrdiff_t>(s + 1) * trials);
    state_mean_td[s] = mean_of(td_s);
    state_std_td[s] = std_of(td_s, state_mean_td[s]);
    state_mean_hs[s] = mean_of(hs_s);
    state_std_hs[s] = std_of(hs_s, state_mean_hs[s]);
    state_mean_sq[s] = mean_of(sq_s);
    state_std_sq[s] = std_of(sq_s, state_mean_sq[s]);
  }

  ExperimentStats stats;
  stats.n_copies = n_copies;
  stats.trials = trials;
  stats.states = n_states;
  stats.scaled_mean_trace_distance = sqrt_n * mean_of(state_mean_td);
  stats.scaled_mean_hs_distance = sqrt_n * mean_of(state_mean_hs);
  stats.scaled_mse = static_cast<double>(n_copies) * mean_of(state_mean_sq);
  stats.std_over_trials = sqrt_n * mean_of(state_std_td);
  stats.std_over_trials_hs = sqrt_n * mean_of(state_std_hs);
  stats.std_over_trials_mse = static_cast<double>(n_copies) * mean_of(state_std_sq);
  if (n_states > 1) {
    const double mean_over_states = mean_of(state_mean_td);
    const double raw = std_of(state_mean_td, mean_over_states);
    stats.std_over_states_mean_of_trials = sqrt_n * raw;
    // Subtract the expected trial contribution var/trials.
    std::vector<double> within_var(n_states);
    for (int s = 0; s < n_states; ++s) within_var[s] = state_std_td[s] * state_std_td[s];
    const double trial_part = mean_of(within_var) / trials;
    const double debiased = raw * raw - trial_part;
    stats.std_over_states = sqrt_n * std::sqrt(std::max(0.0, debiased));
  }
  return stats;
}

}  // namespace tomolab::montecarlo
