#include "tomolab/reports.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>

#include "tomolab/errors.hpp"
#include "tomolab/kernels.hpp"
#include "tomolab/montecarlo.hpp"
#include "tomolab/theory.hpp"
#include "tomolab/version.hpp"

namespace tomolab::reports {

namespace fs = std::filesystem;
using montecarlo::ExperimentConfig;
using montecarlo::ExperimentStats;
using montecarlo::StateSpec;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

povm::Pom sic_pom_for_dim(int d, std::uint64_t seed, const std::string& fiducial_dir) {
  struct Key {
    int d;
    std::uint64_t seed;
    std::string dir;
    bool operator<(const Key& o) const {
      return std::tie(d, seed, dir) < std::tie(o.d, o.seed, o.dir);
    }
  };
  static std::mutex mu;
  static std::map<Key, povm::Pom> cache;
  const Key key{d, seed, fiducial_dir};
  {
    std::scoped_lock lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }

  povm::Vector fiducial;
  if (!fiducial_dir.empty()) {
    const fs::path path = fs::path(fiducial_dir) / ("fiducial_d" + std::to_string(d) + ".json");
    if (!fs::exists(path))
      throw construction_error("missing fiducial for d=" + std::to_string(d) + ": " +
                               path.string() + "; generate it with `tomolab fiducial find --d " +
                               std::to_string(d) + " --out " + path.string() + "`");
    fiducial = povm::load_fiducial(path.string());
  } else {
    fiducial = povm::fiducial_search(d, splitmix64_mix(seed + 77777ull * d)).ket;
  }
  povm::Pom pom = povm::sic_from_fiducial(fiducial);
  std::scoped_lock lock(mu);
  return cache.emplace(key, std::move(pom)).first->second;
}

namespace {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t salt) {
  return splitmix64_mix(seed + 0x9E3779B97F4A7C15ULL * (salt + 1));
}

void csv_row(std::ostream& os, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << ",";
    os << cells[i];
  }
  os << "\n";
}

ExperimentStats run_mixed(const povm::Pom& pom, const tomography::ReconstructionSet& recon,
                          long long n, int trials, std::uint64_t seed, int threads) {
  ExperimentConfig cfg;
  cfg.state = StateSpec::completely_mixed();
  cfg.n_copies = n;
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.threads = threads;
  return montecarlo::run_experiment(pom, recon, cfg);
}

ExperimentStats run_pure_ensemble(const povm::Pom& pom, const tomography::ReconstructionSet& recon,
                                  long long n, int states, int trials, std::uint64_t seed,
                                  int threads) {
  ExperimentConfig cfg;
  cfg.state = StateSpec::haar_pure_ensemble(states);
  cfg.n_copies = n;
  cfg.trials = trials;
  cfg.master_seed = seed;
  cfg.threads = threads;
  return montecarlo::run_experiment(pom, recon, cfg);
}

}  // namespace

// ----------------------------------------------------------------- fig1 --

nlohmann::json Fig1Options::to_json() const {
  return {{"dmax", dmax},
          {"seed", seed},
          {"mixed_trials", mixed_trials},
          {"pure_states", pure_states},
          {"pure_trials", pure_trials},
          {"fiducial_dir", fiducial_dir}};
}

Fig1Options Fig1Options::from_json(const nlohmann::json& j) {
  Fig1Options o;
  o.dmax = j.value("dmax", o.dmax);
  o.seed = j.value("seed", o.seed);
  o.mixed_trials = j.value("mixed_trials", o.mixed_trials);
  o.pure_states = j.value("pure_states", o.pure_states);
  o.pure_trials = j.value("pure_trials", o.pure_trials);
  o.fiducial_dir = j.value("fiducial_dir", o.fiducial_dir);
  return o;
}

void write_fig1_csv(std::ostream& os, const Fig1Options& opt) {
  os << "# schema: tomolab-fig1 v1\n";
  os << "# options: " << opt.to_json().dump() << "\n";
  csv_row(os, {"d", "theory_tr", "sim_tr_mixed", "sim_tr_pure", "theory_hs", "sim_hs_mixed",
               "sim_hs_pure", "std_a", "std_b", "std_c"});
  for (int d = 2; d <= opt.dmax; ++d) {
    const povm::Pom pom = sic_pom_for_dim(d, opt.seed, opt.fiducial_dir);
    const auto fso = tomography::frame_superoperator(pom);
    const auto recon = tomography::canonical_reconstruction(pom, fso);
    const long long n = 1000 + 20ll * d * d;

    const double scaled_mse_mixed = theory::tight_ic_mse(d, 1.0 / d, 1.0);
    const double theory_tr = theory::rmt_mean_trace_distance(d, scaled_mse_mixed);
    const double theory_hs = theory::mean_hs_distance(d, scaled_mse_mixed);

    const ExperimentStats mixed = run_mixed(pom, recon, n, opt.mixed_trials,
                                            sub_seed(opt.seed, 2 * d), opt.threads);
    const ExperimentStats pure = run_pure_ensemble(pom, recon, n, opt.pure_states,
                                                   opt.pure_trials, sub_seed(opt.seed, 2 * d + 1),
                                                   opt.threads);
    csv_row(os, {std::to_string(d), format_double(theory_tr),
                 format_double(mixed.scaled_mean_trace_distance),
                 format_double(pure.scaled_mean_trace_distance), format_double(theory_hs),
                 format_double(mixed.scaled_mean_hs_distance),
                 format_double(pure.scaled_mean_hs_distance), format_double(mixed.std_over_trials),
                 format_double(pure.std_over_trials),
                 format_double(pure.std_over_states_mean_of_trials)});
  }
}

// ----------------------------------------------------------------- fig2 --

nlohmann::json Fig2Options::to_json() const {
  return {{"seed", seed},   {"z_steps", z_steps}, {"n_copies", n_copies},
          {"states", states}, {"trials", trials}};
}

Fig2Options Fig2Options::from_json(const nlohmann::json& j) {
  Fig2Options o;
  o.seed = j.value("seed", o.seed);
  o.z_steps = j.value("z_steps", o.z_steps);
  o.n_copies = j.value("n_copies", o.n_copies);
  o.states = j.value("states", o.states);
  o.trials = j.value("trials", o.trials);
  return o;
}

void write_fig2_csv(std::ostream& os, const Fig2Options& opt) {
  os << "# schema: tomolab-fig2 v1\n";
  os << "# options: " << opt.to_json().dump() << "\n";
  csv_row(os, {"purity", "z", "theory_parallel", "theory_antiparallel", "theory_isotropic",
               "sim_random_avg"});

  const povm::Pom pom = povm::qubit_tetrahedron();
  const auto fso = tomography::frame_superoperator(pom);
  const auto recon = tomography::canonical_reconstruction(pom, fso);
  const montecarlo::MeasurementPlan plan(pom, recon);
  const Eigen::Vector3d a1 = povm::tetrahedron_directions()[0];

  for (int zi = 0; zi <= opt.z_steps; ++zi) {
    const double z = static_cast<double>(zi) / opt.z_steps;
    const double purity = 0.5 * (1.0 + z * z);
    const double tr_par =
        theory::qubit_mean_trace_distance(theory::qubit_mse_matrix(z * a1, 1.0).ellipsoid);
    const double tr_antipar =
        theory::qubit_mean_trace_distance(theory::qubit_mse_matrix(-z * a1, 1.0).ellipsoid);
    const double tr_iso = std::sqrt(2.0 / (3.0 * std::numbers::pi)) * std::sqrt(9.0 - z * z);

    // Random directions at fixed |s| = z, each state averaged over trials.
    const std::uint64_t master = sub_seed(opt.seed, zi);
    std::vector<double> state_means(opt.states);
    for (int s = 0; s < opt.states; ++s) {
      Xoshiro256pp dir_rng = derive_stream(master, s, ~0ull);
      Eigen::Vector3d u(dir_rng.normal(), dir_rng.normal(), dir_rng.normal());
      u.normalize();
      const montecarlo::TrialContext ctx(plan, opcore::state_from_bloch(z * u));
      std::vector<double> vals(opt.trials);
      for (int t = 0; t < opt.trials; ++t) {
        Xoshiro256pp rng = derive_stream(master, s, t);
        vals[t] = ctx.run(opt.n_copies, rng).trace_dist;
      }
      state_means[s] = montecarlo::pairwise_sum(vals.data(), vals.size()) / opt.trials;
    }
    const double sim = std::sqrt(static_cast<double>(opt.n_copies)) *
                       montecarlo::pairwise_sum(state_means.data(), state_means.size()) /
                       opt.states;
    csv_row(os, {format_double(purity), format_double(z), format_double(tr_par),
                 format_double(tr_antipar), format_double(tr_iso), format_double(sim)});
  }
}

// --------------------------------------------------------------- table1 --

nlohmann::json Table1Options::to_json() const {
  return {{"seed", seed},
          {"n_copies", n_copies},
          {"mixed_trials", mixed_trials},
          {"pure_states", pure_states},
          {"pure_trials", pure_trials},
          {"fiducial_dir", fiducial_dir}};
}

Table1Options Table1Options::from_json(const nlohmann::json& j) {
  Table1Options o;
  o.seed = j.value("seed", o.seed);
  o.n_copies = j.value("n_copies", o.n_copies);
  o.mixed_trials = j.value("mixed_trials", o.mixed_trials);
  o.pure_states = j.value("pure_states", o.pure_states);
  o.pure_trials = j.value("pure_trials", o.pure_trials);
  o.fiducial_dir = j.value("fiducial_dir", o.fiducial_dir);
  return o;
}

void write_table1_csv(std::ostream& os, const Table1Options& opt) {
  const povm::Pom sic2 = sic_pom_for_dim(2, opt.seed, opt.fiducial_dir);
  const povm::Pom joint = sic_pom_for_dim(4, opt.seed, opt.fiducial_dir);
  const povm::Pom prod = povm::product_pom({sic2, sic2});

  const auto recon_prod = tomography::canonical_reconstruction(prod, tomography::frame_superoperator(prod));
  const auto recon_joint =
      tomography::canonical_reconstruction(joint, tomography::frame_superoperator(joint));

  const double th_prod_mixed =
      theory::product_predictions({2, 2}, 0.25, {0.5, 0.5}, 1.0).mean_trace_distance;
  const double th_prod_pure =
      theory::product_predictions({2, 2}, 1.0, {1.0, 1.0}, 1.0).mean_trace_distance;
  const double th_joint_mixed =
      theory::rmt_mean_trace_distance(4, theory::tight_ic_mse(4, 0.25, 1.0));
  const double th_joint_pure =
      theory::rmt_mean_trace_distance(4, theory::tight_ic_mse(4, 1.0, 1.0));

  const ExperimentStats prod_mixed = run_mixed(prod, recon_prod, opt.n_copies, opt.mixed_trials,
                                               sub_seed(opt.seed, 11), opt.threads);
  const ExperimentStats joint_mixed = run_mixed(joint, recon_joint, opt.n_copies,
                                                opt.mixed_trials, sub_seed(opt.seed, 12),
                                                opt.threads);
  const ExperimentStats prod_pure =
      run_pure_ensemble(prod, recon_prod, opt.n_copies, opt.pure_states, opt.pure_trials,
                        sub_seed(opt.seed, 13), opt.threads);
  const ExperimentStats joint_pure =
      run_pure_ensemble(joint, recon_joint, opt.n_copies, opt.pure_states, opt.pure_trials,
                        sub_seed(opt.seed, 14), opt.threads);

  auto err_pct = [](double theory_v, double numerical) {
    return 100.0 * (theory_v / numerical - 1.0);
  };

  os << "# schema: tomolab-table1 v1\n";
  os << "# options: " << opt.to_json().dump() << "\n";
  os << "# std_over_states_prod: " << format_double(prod_pure.std_over_states_mean_of_trials)
     << "\n";
  os << "# std_over_states_joint: " << format_double(joint_pure.std_over_states_mean_of_trials)
     << "\n";
  csv_row(os, {"row", "mixed_theory", "mixed_numerical", "mixed_error_pct", "pure_theory",
               "pure_numerical", "pure_error_pct"});
  csv_row(os, {"prod", format_double(th_prod_mixed),
               format_double(prod_mixed.scaled_mean_trace_distance),
               format_double(err_pct(th_prod_mixed, prod_mixed.scaled_mean_trace_distance)),
               format_double(th_prod_pure), format_double(prod_pure.scaled_mean_trace_distance),
               format_double(err_pct(th_prod_pure, prod_pure.scaled_mean_trace_distance))});
  csv_row(os, {"joint", format_double(th_joint_mixed),
               format_double(joint_mixed.scaled_mean_trace_distance),
               format_double(err_pct(th_joint_mixed, joint_mixed.scaled_mean_trace_distance)),
               format_double(th_joint_pure), format_double(joint_pure.scaled_mean_trace_distance),
               format_double(err_pct(th_joint_pure, joint_pure.scaled_mean_trace_distance))});
  csv_row(os, {"ratio", format_double(th_prod_mixed / th_joint_mixed),
               format_double(prod_mixed.scaled_mean_trace_distance /
                             joint_mixed.scaled_mean_trace_distance),
               "", format_double(th_prod_pure / th_joint_pure),
               format_double(prod_pure.scaled_mean_trace_distance /
                             joint_pure.scaled_mean_trace_distance),
               ""});
}

// ----------------------------------------------------------------- fig3 --

nlohmann::json Fig3Options::to_json() const { return {{"dmax", dmax}}; }

Fig3Options Fig3Options::from_json(const nlohmann::json& j) {
  Fig3Options o;
  o.dmax = j.value("dmax", o.dmax);
  return o;
}

void write_fig3_csv(std::ostream& os, const Fig3Options& opt) {
  os << "# schema: tomolab-fig3 v1\n";
  os << "# options: " << opt.to_json().dump() << "\n";
  csv_row(os, {"d1", "d2", "mse_ratio"});
  for (int d1 = 2; d1 <= opt.dmax; ++d1)
    for (int d2 = 2; d2 <= opt.dmax; ++d2) {
      const double purity = 1.0 / (static_cast<double>(d1) * d2);
      const double ratio =
          theory::product_predictions({d1, d2}, purity, {1.0 / d1, 1.0 / d2}, 1.0).ratio_vs_joint;
      csv_row(os, {std::to_string(d1), std::to_string(d2), format_double(ratio)});
    }
}

// ----------------------------------------------------------------- fig4 --

nlohmann::json Fig4Options::to_json() const {
  return {{"seed", seed},
          {"kmax_theory", kmax_theory},
          {"kmax_sim", kmax_sim},
          {"mixed_trials", mixed_trials},
          {"fiducial_dir", fiducial_dir}};
}

Fig4Options Fig4Options::from_json(const nlohmann::json& j) {
  Fig4Options o;
  o.seed = j.value("seed", o.seed);
  o.kmax_theory = j.value("kmax_theory", o.kmax_theory);
  o.kmax_sim = j.value("kmax_sim", o.kmax_sim);
  o.mixed_trials = j.value("mixed_trials", o.mixed_trials);
  o.fiducial_dir = j.value("fiducial_dir", o.fiducial_dir);
  return o;
}

void write_fig4_csv(std::ostream& os, const Fig4Options& opt) {
  os << "# schema: tomolab-fig4 v1\n";
  os << "# options: " << opt.to_json().dump() << "\n";
  csv_row(os, {"k", "joint_theory", "joint_sim", "prod_theory", "prod_sim",
               "mse_ratio_closed_form"});
  for (int k = 1; k <= opt.kmax_theory; ++k) {
    const int d = 1 << k;
    const double purity = 1.0 / d;
    const double scaled_mse = theory::tight_ic_mse(d, purity, 1.0);
    const double joint_theory = theory::rmt_mean_trace_distance(d, scaled_mse);
    const double prod_theory =
        k == 1 ? joint_theory
               : theory::product_predictions(std::vector<int>(k, 2), purity,
                                             std::vector<double>(k, 0.5), 1.0)
                     .mean_trace_distance;
    const double ratio_cf = theory::multipartite_mse_ratio_closed_form(2, k);

    std::string joint_sim = "nan", prod_sim = "nan";
    if (k <= opt.kmax_sim) {
      const povm::Pom joint = sic_pom_for_dim(d, opt.seed, opt.fiducial_dir);
      const auto recon_joint =
          tomography::canonical_reconstruction(joint, tomography::frame_superoperator(joint));
      const povm::Pom sic2 = sic_pom_for_dim(2, opt.seed, opt.fiducial_dir);
      const povm::Pom prod = povm::product_pom(std::vector<povm::Pom>(k, sic2));
      const auto recon_prod =
          tomography::canonical_reconstruction(prod, tomography::frame_superoperator(prod));
      const ExperimentStats js = run_mixed(joint, recon_joint, 0, opt.mixed_trials,
                                           sub_seed(opt.seed, 100 + k), opt.threads);
      const ExperimentStats ps = run_mixed(prod, recon_prod, 0, opt.mixed_trials,
                                           sub_seed(opt.seed, 200 + k), opt.threads);
      joint_sim = format_double(js.scaled_mean_trace_distance);
      prod_sim = format_double(ps.scaled_mean_trace_distance);
    }
    csv_row(os, {std::to_string(k), format_double(joint_theory), joint_sim,
                 format_double(prod_theory), prod_sim, format_double(ratio_cf)});
  }
}

// ------------------------------------------------------------- simulate --

nlohmann::json SimulateOptions::to_json() const {
  return {{"pom", pom},       {"dims", dims},           {"alpha", alpha},
          {"n_copies", n_copies}, {"trials", trials},   {"states", states},
          {"state_kind", state_kind}, {"seed", seed},   {"fiducial", fiducial},
          {"fiducial_dir", fiducial_dir}};
}

SimulateOptions SimulateOptions::from_json(const nlohmann::json& j) {
  SimulateOptions o;
  o.pom = j.value("pom", o.pom);
  o.dims = j.value("dims", o.dims);
  o.alpha = j.value("alpha", o.alpha);
  o.n_copies = j.value("n_copies", o.n_copies);
  o.trials = j.value("trials", o.trials);
  o.states = j.value("states", o.states);
  o.state_kind = j.value("state_kind", o.state_kind);
  o.seed = j.value("seed", o.seed);
  o.fiducial = j.value("fiducial", o.fiducial);
  o.fiducial_dir = j.value("fiducial_dir", o.fiducial_dir);
  return o;
}

nlohmann::json run_simulate(const SimulateOptions& opt) {
  povm::Pom pom;
  if (opt.pom == "tetra") {
    pom = povm::qubit_tetrahedron();
  } else if (opt.pom == "octa") {
    pom = povm::qubit_mub_octahedron();
  } else if (opt.pom == "sic" || opt.pom == "noisy-sic") {
    if (opt.dims.size() != 1)
      throw std::invalid_argument("simulate: --pom " + opt.pom + " takes a single dimension");
    const int d = opt.dims[0];
    pom = opt.fiducial.empty() ? sic_pom_for_dim(d, opt.seed, opt.fiducial_dir)
                               : povm::sic_from_fiducial(povm::load_fiducial(opt.fiducial));
    if (opt.pom == "noisy-sic") pom = povm::noisy_sic(pom, opt.alpha);
  } else if (opt.pom == "product-sic") {
    std::vector<povm::Pom> factors;
    for (int d : opt.dims) factors.push_back(sic_pom_for_dim(d, opt.seed, opt.fiducial_dir));
    pom = povm::product_pom(factors);
  } else {
    throw std::invalid_argument("simulate: unknown --pom " + opt.pom);
  }

  ExperimentConfig cfg;
  if (opt.state_kind == "mixed") {
    cfg.state = StateSpec::completely_mixed();
  } else if (opt.state_kind == "pure-ensemble") {
    cfg.state = StateSpec::haar_pure_ensemble(opt.states > 0 ? opt.states : 100);
  } else {
    throw std::invalid_argument("simulate: unknown --state " + opt.state_kind);
  }
  cfg.n_copies = opt.n_copies;
  cfg.trials = opt.trials;
  cfg.master_seed = opt.seed;
  cfg.threads = opt.threads;
  const ExperimentStats stats = montecarlo::run_experiment(pom, cfg);

  nlohmann::json out;
  out["options"] = opt.to_json();
  out["dim"] = pom.dim;
  out["outcomes"] = pom.outcomes();
  out["n_copies"] = stats.n_copies;
  out["stats"] = {{"scaled_mean_trace_distance", stats.scaled_mean_trace_distance},
                  {"scaled_mean_hs_distance", stats.scaled_mean_hs_distance},
                  {"scaled_mse", stats.scaled_mse},
                  {"std_over_trials", stats.std_over_trials},
                  {"std_over_trials_hs", stats.std_over_trials_hs},
                  {"std_over_trials_mse", stats.std_over_trials_mse},
                  {"std_over_states_mean_of_trials", stats.std_over_states_mean_of_trials},
                  {"std_over_states", stats.std_over_states},
                  {"trials", stats.trials},
                  {"states", stats.states}};
  out["version"] = kVersion;
  return out;
}

// ------------------------------------------------------------- manifest --

nlohmann::json default_options(const std::string& target) {
  if (target == "fig1") return Fig1Options{}.to_json();
  if (target == "fig2") return Fig2Options{}.to_json();
  if (target == "table1") return Table1Options{}.to_json();
  if (target == "fig3") return Fig3Options{}.to_json();
  if (target == "fig4") return Fig4Options{}.to_json();
  throw std::invalid_argument("unknown reproduce target: " + target);
}

RunOutcome run_reproduce(const std::string& target, const nlohmann::json& options,
                         const std::string& out_dir, const std::vector<std::string>& argv) {
  const auto start = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);
  const fs::path data_path =
      fs::path(out_dir) / (target + (target == "simulate" ? ".json" : ".csv"));

  std::ostringstream body;
  nlohmann::json resolved;
  std::uint64_t seed = 0;
  if (target == "simulate") {
    const auto opt = SimulateOptions::from_json(options);
    resolved = opt.to_json();
    seed = opt.seed;
    body << run_simulate(opt).dump(2) << "\n";
  } else if (target == "fig1") {
    const auto opt = Fig1Options::from_json(options);
    resolved = opt.to_json();
    seed = opt.seed;
    write_fig1_csv(body, opt);
  } else if (target == "fig2") {
    const auto opt = Fig2Options::from_json(options);
    resolved = opt.to_json();
    seed = opt.seed;
    write_fig2_csv(body, opt);
  } else if (target == "table1") {
    const auto opt = Table1Options::from_json(options);
    resolved = opt.to_json();
    seed = opt.seed;
    write_table1_csv(body, opt);
  } else if (target == "fig3") {
    const auto opt = Fig3Options::from_json(options);
    resolved = opt.to_json();
    write_fig3_csv(body, opt);
  } else if (target == "fig4") {
    const auto opt = Fig4Options::from_json(options);
    resolved = opt.to_json();
    seed = opt.seed;
    write_fig4_csv(body, opt);
  } else {
    throw std::invalid_argument("unknown reproduce target: " + target);
  }

  {
    std::ofstream os(data_path);
    if (!os) throw construction_error("cannot write " + data_path.string());
    os << body.str();
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  nlohmann::json manifest;
  manifest["tool"] = "tomolab";
  manifest["version"] = kVersion;
  manifest["target"] = target;
  manifest["options"] = resolved;
  manifest["master_seed"] = seed;
  manifest["command"] = argv;
  manifest["simd"] = kernels::backend_name();
  manifest["threads"] = montecarlo::resolve_threads(0);
  manifest["wall_time_s"] = wall;
  manifest["outputs"] = {data_path.filename().string()};

  RunOutcome outcome;
  outcome.outputs.push_back(data_path.string());
  const fs::path manifest_path = fs::path(out_dir) / (target + ".manifest.json");
  std::ofstream ms(manifest_path);
  if (!ms) throw construction_error("cannot write " + manifest_path.string());
  ms << manifest.dump(2) << "\n";
  outcome.manifest_path = manifest_path.string();
  return outcome;
}

RunOutcome replay_manifest(const std::string& manifest_path, const std::string& out_dir,
                           const std::vector<std::string>& argv) {
  std::ifstream is(manifest_path);
  if (!is) throw construction_error("cannot open manifest " + manifest_path);
  nlohmann::json manifest;
  try {
    is >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw construction_error(std::string("bad manifest JSON: ") + e.what());
  }
  if (!manifest.contains("target") || !manifest.contains("options"))
    throw construction_error("manifest missing target/options: " + manifest_path);
  const std::string dir =
      out_dir.empty() ? fs::path(manifest_path).parent_path().string() : out_dir;
  return run_reproduce(manifest["target"].get<std::string>(), manifest["options"], dir, argv);
}

}  // namespace tomolab::reports
