#pragma once

#include <cstdint>
#include <vector>

#include "tomolab/rng.hpp"
#include "tomolab/tomography.hpp"

namespace tomolab::montecarlo {

using opcore::Matrix;

struct TrialResult {
  double trace_dist = 0.0;
  double hs_dist = 0.0;
  double sq_hs = 0.0;
};

// Exact multinomial draw via the conditional-binomial chain.
std::vector<long long> sample_counts(const std::vector<double>& probabilities, long long n,
                                     Xoshiro256pp& rng);

// Deterministic pairwise (tree) summation; aggregation order is fixed so
// results do not depend on the thread count.
double pairwise_sum(const double* x, std::size_t n);

// Per-measurement precomputation shared by every state and trial.
class MeasurementPlan {
 public:
  MeasurementPlan(const povm::Pom& pom, const tomography::ReconstructionSet& recon);

  int dim() const { return dim_; }
  int outcomes() const { return static_cast<int>(theta_rows_.rows()); }
  const tomography::RowMatrixXd& theta_rows() const { return theta_rows_; }
  const povm::Pom& pom() const { return *pom_; }

 private:
  int dim_;
  const povm::Pom* pom_;
  tomography::RowMatrixXd theta_rows_;
};

// Per-true-state precomputation: Born probabilities and the vectorized
// state. run() samples counts, assembles the estimator in coefficient
// space and returns the two distances.
class TrialContext {
 public:
  TrialContext(const MeasurementPlan& plan, const Matrix& rho);
  TrialResult run(long long n_copies, Xoshiro256pp& rng) const;

  const std::vector<double>& probabilities() const { return probs_; }

 private:
  const MeasurementPlan* plan_;
  std::vector<double> probs_;
  Eigen::VectorXd true_coeffs_;
};

TrialResult run_trial(const povm::Pom& pom, const tomography::ReconstructionSet& recon,
                      const Matrix& rho, long long n_copies, Xoshiro256pp& rng);

struct StateSpec {
  enum class Kind { completely_mixed, fixed, haar_pure_ensemble };
  Kind kind = Kind::completely_mixed;
  Matrix rho;             // kind == fixed
  int ensemble_size = 0;  // kind == haar_pure_ensemble

  static StateSpec completely_mixed() { return {}; }
  static StateSpec fixed(Matrix rho_in);
  static StateSpec haar_pure_ensemble(int count);
};

struct ExperimentConfig {
  StateSpec state;
  long long n_copies = 0;  // 0 -> 1000 + 20 d^2
  int trials = 1;
  std::uint64_t master_seed = 0;
  int threads = 0;  // 0 -> TOMOLAB_THREADS env, else hardware
};

// Scaled statistics carry sqrt(N) (distances) or N (MSE). The standard
// deviations decompose the trace-distance fluctuation:
//  - std_over_trials: trial-to-trial std for a fixed state; for
//    ensembles, the average over states of the within-state std.
//  - std_over_states_mean_of_trials: std across states of the per-state
//    trial means (contains a residual trial contribution).
//  - std_over_states: the state-only component, with the within-state
//    variance/trials subtracted (clamped at zero).
struct ExperimentStats {
  double scaled_mean_trace_distance = 0.0;
  double scaled_mean_hs_distance = 0.0;
  double scaled_mse = 0.0;
  double std_over_trials = 0.0;
  double std_over_trials_hs = 0.0;
  double std_over_trials_mse = 0.0;
  double std_over_states_mean_of_trials = 0.0;
  double std_over_states = 0.0;
  long long n_copies = 0;
  int trials = 0;
  int states = 0;
};

// Runs the trial grid. Fully deterministic given the seed: every
// (state, trial) cell owns a counter-derived RNG stream, and
// aggregation uses fixed-tree pairwise sums, so the thread count never
// changes any output bit.
ExperimentStats run_experiment(const povm::Pom& pom, const ExperimentConfig& config);
ExperimentStats run_experiment(const povm::Pom& pom, const tomography::ReconstructionSet& recon,
                               const ExperimentConfig& config);

int resolve_threads(int requested);

}  // namespace tomolab::montecarlo
