#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "tomolab/povm.hpp"

namespace tomolab::reports {

// Shortest round-trip decimal form; every number in a data file goes
// through here so re-runs are byte-identical.
std::string format_double(double v);

// SIC POM for dimension d: loaded from <fiducial_dir>/fiducial_d<d>.json
// when a directory is given (missing file is an actionable error naming
// the fiducial command), otherwise found by numerical search with a
// d-derived seed. Results are cached per process.
povm::Pom sic_pom_for_dim(int d, std::uint64_t seed, const std::string& fiducial_dir = "");

struct Fig1Options {
  int dmax = 8;
  std::uint64_t seed = 1;
  int mixed_trials = 1000;
  int pure_states = 1000;
  int pure_trials = 100;
  std::string fiducial_dir;
  int threads = 0;

  nlohmann::json to_json() const;
  static Fig1Options from_json(const nlohmann::json& j);
};

struct Fig2Options {
  std::uint64_t seed = 1;
  int z_steps = 20;  // z grid 0..1 inclusive, z_steps+1 rows
  long long n_copies = 1000;
  int states = 1000;
  int trials = 400;
  int threads = 0;

  nlohmann::json to_json() const;
  static Fig2Options from_json(const nlohmann::json& j);
};

struct Table1Options {
  std::uint64_t seed = 1;
  long long n_copies = 1000;
  int mixed_trials = 1000;
  int pure_states = 1000;
  int pure_trials = 1000;
  std::string fiducial_dir;
  int threads = 0;

  nlohmann::json to_json() const;
  static Table1Options from_json(const nlohmann::json& j);
};

struct Fig3Options {
  int dmax = 10;

  nlohmann::json to_json() const;
  static Fig3Options from_json(const nlohmann::json& j);
};

struct Fig4Options {
  std::uint64_t seed = 1;
  int kmax_theory = 5;
  int kmax_sim = 3;
  int mixed_trials = 1000;
  std::string fiducial_dir;
  int threads = 0;

  nlohmann::json to_json() const;
  static Fig4Options from_json(const nlohmann::json& j);
};

void write_fig1_csv(std::ostream& os, const Fig1Options& opt);
void write_fig2_csv(std::ostream& os, const Fig2Options& opt);
void write_table1_csv(std::ostream& os, const Table1Options& opt);
void write_fig3_csv(std::ostream& os, const Fig3Options& opt);
void write_fig4_csv(std::ostream& os, const Fig4Options& opt);

struct SimulateOptions {
  std::string pom = "sic";  // sic|tetra|octa|product-sic|noisy-sic
  std::vector<int> dims = {2};
  double alpha = 0.0;
  long long n_copies = 0;  // 0 -> 1000 + 20 d^2
  int trials = 1000;
  int states = 0;                    // >0 selects the Haar pure ensemble
  std::string state_kind = "mixed";  // mixed|pure-ensemble
  std::uint64_t seed = 1;
  std::string fiducial;      // fiducial file for single-SIC poms
  std::string fiducial_dir;  // per-dimension fiducial files
  int threads = 0;

  nlohmann::json to_json() const;
  static SimulateOptions from_json(const nlohmann::json& j);
};

// Builds the measurement, runs the experiment, returns stats as JSON.
nlohmann::json run_simulate(const SimulateOptions& opt);

struct RunOutcome {
  std::vector<std::string> outputs;  // data file paths
  std::string manifest_path;
};

// Regenerates target data into out_dir and writes the sibling manifest.
// `argv` is recorded verbatim in the manifest. Replaying the manifest
// feeds the recorded resolved options straight back through here.
RunOutcome run_reproduce(const std::string& target, const nlohmann::json& options,
                         const std::string& out_dir, const std::vector<std::string>& argv);

nlohmann::json default_options(const std::string& target);

// Reads a manifest and re-runs its target with the recorded options.
RunOutcome replay_manifest(const std::string& manifest_path, const std::string& out_dir,
                           const std::vector<std::string>& argv);

}  // namespace tomolab::reports
