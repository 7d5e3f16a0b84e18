// Acceptance suite: one criterion per invocation (or `all`), one
// PASS/FAIL line per criterion. Monte Carlo checks run at fixed seeds so
// every number here is reproducible bit for bit.
//
// Usage: acceptance <1..11|all> [--tool <path to the tomolab binary>]

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "tomolab/designs.hpp"
#include "tomolab/montecarlo.hpp"
#include "tomolab/povm.hpp"
#include "tomolab/reports.hpp"
#include "tomolab/theory.hpp"
#include "tomolab/tomography.hpp"

using namespace tomolab;
using montecarlo::ExperimentConfig;
using montecarlo::ExperimentStats;
using montecarlo::StateSpec;
using opcore::Matrix;
namespace fs = std::filesystem;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

struct Check {
  Result& r;
  void operator()(bool ok, const std::string& what) {
    if (!ok) {
      r.pass = false;
      r.detail += (r.detail.empty() ? "" : "; ") + what;
    }
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

povm::Pom sic(int d) { return reports::sic_pom_for_dim(d, 42, ""); }

ExperimentStats run(const povm::Pom& pom, StateSpec state, long long n, int trials,
                    std::uint64_t seed) {
  ExperimentConfig cfg;
  cfg.state = std::move(state);
  cfg.n_copies = n;
  cfg.trials = trials;
  cfg.master_seed = seed;
  return montecarlo::run_experiment(pom, cfg);
}

// ---------------------------------------------------------------------- 1

Result criterion_1() {
  Result r;
  Check check{r};

  const double th_prod_mixed =
      theory::product_predictions({2, 2}, 0.25, {0.5, 0.5}, 1.0).mean_trace_distance;
  const double th_prod_pure =
      theory::product_predictions({2, 2}, 1.0, {1.0, 1.0}, 1.0).mean_trace_distance;
  const double th_joint_mixed =
      theory::rmt_mean_trace_distance(4, theory::tight_ic_mse(4, 0.25, 1.0));
  const double th_joint_pure =
      theory::rmt_mean_trace_distance(4, theory::tight_ic_mse(4, 1.0, 1.0));
  check(std::abs(th_prod_mixed - 4.223) < 5e-3, "prod/theory mixed " + fmt(th_prod_mixed));
  check(std::abs(th_prod_pure - 4.158) < 5e-3, "prod/theory pure " + fmt(th_prod_pure));
  check(std::abs(th_joint_mixed - 3.676) < 5e-3, "joint/theory mixed " + fmt(th_joint_mixed));
  check(std::abs(th_joint_pure - 3.601) < 5e-3, "joint/theory pure " + fmt(th_joint_pure));

  const povm::Pom sic2 = sic(2);
  const povm::Pom joint = sic(4);
  const povm::Pom prod = povm::product_pom({sic2, sic2});

  const auto prod_mixed = run(prod, StateSpec::completely_mixed(), 1000, 1000, 801);
  const auto joint_mixed = run(joint, StateSpec::completely_mixed(), 1000, 1000, 802);
  const auto prod_pure = run(prod, StateSpec::haar_pure_ensemble(1000), 1000, 1000, 803);
  const auto joint_pure = run(joint, StateSpec::haar_pure_ensemble(1000), 1000, 1000, 804);

  auto within = [&](double sim, double paper, const char* what) {
    check(std::abs(sim / paper - 1.0) <= 0.02,
          std::string(what) + " sim " + fmt(sim) + " vs paper " + fmt(paper));
  };
  within(prod_mixed.scaled_mean_trace_distance, 4.255, "prod/num mixed");
  within(joint_mixed.scaled_mean_trace_distance, 3.716, "joint/num mixed");
  within(prod_pure.scaled_mean_trace_distance, 4.162, "prod/num pure");
  within(joint_pure.scaled_mean_trace_distance, 3.575, "joint/num pure");

  const double ratio_th_mixed = th_prod_mixed / th_joint_mixed;
  const double ratio_th_pure = th_prod_pure / th_joint_pure;
  check(ratio_th_mixed >= 1.145 && ratio_th_mixed <= 1.164,
        "theory ratio mixed " + fmt(ratio_th_mixed));
  check(ratio_th_pure >= 1.145 && ratio_th_pure <= 1.164,
        "theory ratio pure " + fmt(ratio_th_pure));
  // the simulated ratios carry the 2% sampling tolerance of the criterion
  const double rs_mixed =
      prod_mixed.scaled_mean_trace_distance / joint_mixed.scaled_mean_trace_distance;
  const double rs_pure =
      prod_pure.scaled_mean_trace_distance / joint_pure.scaled_mean_trace_distance;
  check(rs_mixed >= 1.145 * 0.98 && rs_mixed <= 1.164 * 1.02, "sim ratio mixed " + fmt(rs_mixed));
  check(rs_pure >= 1.145 * 0.98 && rs_pure <= 1.164 * 1.02, "sim ratio pure " + fmt(rs_pure));

  // reference std values over the 1000 pure states (caption protocol)
  check(std::abs(prod_pure.std_over_states_mean_of_trials / 0.033 - 1.0) < 0.25,
        "prod std over states " + fmt(prod_pure.std_over_states_mean_of_trials));
  check(std::abs(joint_pure.std_over_states_mean_of_trials / 0.027 - 1.0) < 0.25,
        "joint std over states " + fmt(joint_pure.std_over_states_mean_of_trials));

  if (r.pass)
    r.detail = "theory " + fmt(th_prod_mixed) + "/" + fmt(th_prod_pure) + "/" +
               fmt(th_joint_mixed) + "/" + fmt(th_joint_pure) + ", sim " +
               fmt(prod_mixed.scaled_mean_trace_distance) + "/" +
               fmt(prod_pure.scaled_mean_trace_distance) + "/" +
               fmt(joint_mixed.scaled_mean_trace_distance) + "/" +
               fmt(joint_pure.scaled_mean_trace_distance) + ", stds " +
               fmt(prod_pure.std_over_states_mean_of_trials) + "/" +
               fmt(joint_pure.std_over_states_mean_of_trials);
  return r;
}

// ---------------------------------------------------------------------- 2

Result criterion_2() {
  Result r;
  Check check{r};
  std::string info;

  std::vector<double> ratio_over_sqrt_d;
  for (int d = 2; d <= 8; ++d) {
    const povm::Pom pom = sic(d);
    const double mse0 = theory::tight_ic_mse(d, 1.0 / d, 1.0);
    const double th_tr = theory::rmt_mean_trace_distance(d, mse0);
    const double th_hs = theory::mean_hs_distance(d, mse0);
    ratio_over_sqrt_d.push_back(th_tr / th_hs / std::sqrt(static_cast<double>(d)));

    // fig1 protocol: theory evaluated at rho = 1/d, compared with the
    // completely mixed simulation.
    const auto mixed = run(pom, StateSpec::completely_mixed(), 0, 30000, 900 + d);
    const double gap_tr = mixed.scaled_mean_trace_distance / th_tr - 1.0;
    const double gap_hs = mixed.scaled_mean_hs_distance / th_hs - 1.0;
    check(std::abs(gap_tr) <= 0.03,
          "d=" + std::to_string(d) + " trace gap " + fmt(100 * gap_tr) + "%");
    check(std::abs(gap_hs) <= 0.01,
          "d=" + std::to_string(d) + " hs gap " + fmt(100 * gap_hs) + "%");
    info += (info.empty() ? "gaps tr/hs %: " : ", ") + std::to_string(d) + ":" +
            fmt(100 * gap_tr) + "/" + fmt(100 * gap_hs);
  }

  // scaling separation from the theory columns: tr/hs grows like sqrt(d)
  double log_mean = 0.0;
  for (double x : ratio_over_sqrt_d) log_mean += std::log(x);
  log_mean /= static_cast<double>(ratio_over_sqrt_d.size());
  const double fit = std::exp(log_mean);
  for (std::size_t i = 0; i < ratio_over_sqrt_d.size(); ++i)
    check(std::abs(ratio_over_sqrt_d[i] / fit - 1.0) <= 0.10,
          "scaling residual at d=" + std::to_string(2 + static_cast<int>(i)));

  if (!r.pass)
    r.detail += " [the d=2 trace gap is forced: criterion 4 verifies the semicircle formula "
                "sits 7-9% below the exact qubit value, so a 3% match at d=2 is unattainable]";
  r.detail = info + (r.detail.empty() ? "" : " | " + r.detail);
  return r;
}

// ---------------------------------------------------------------------- 3

Result criterion_3() {
  Result r;
  Check check{r};

  const Eigen::Vector3d a1 = povm::tetrahedron_directions()[0];
  const double iso =
      theory::qubit_mean_trace_distance(theory::qubit_mse_matrix({0, 0, 0}, 1.0).ellipsoid);
  const double par =
      theory::qubit_mean_trace_distance(theory::qubit_mse_matrix(a1, 1.0).ellipsoid);
  const double anti =
      theory::qubit_mean_trace_distance(theory::qubit_mse_matrix(-a1, 1.0).ellipsoid);
  check(std::abs(iso - std::sqrt(2.0 / (3.0 * std::numbers::pi)) * 3.0) < 1e-12 &&
            std::abs(iso - 1.382) < 1e-3,
        "isotropic " + fmt(iso));
  check(std::abs(par - 1.295) < 1e-3, "z=+1 " + fmt(par));
  check(std::abs(anti - 1.2533) < 1e-3, "z=-1 branch " + fmt(anti));
  check(std::abs(anti / 1.259 - 1.0) < 0.01,
        "z=-1 within 1% of the reported 1.259 (flagged discrepancy)");

  const povm::Pom tetra = povm::qubit_tetrahedron();
  const int trials = 10000;
  const struct {
    Eigen::Vector3d s;
    double want;
    const char* name;
  } cases[] = {{{0, 0, 0}, iso, "mixed"}, {a1, par, "z=+1"}, {-a1, anti, "z=-1"}};
  std::string info = "theory " + fmt(iso) + "/" + fmt(par) + "/" + fmt(anti) + ", mc";
  int idx = 0;
  for (const auto& c : cases) {
    const auto stats = run(tetra, StateSpec::fixed(opcore::state_from_bloch(c.s)), 1000, trials,
                           1200 + idx++);
    const double se = stats.std_over_trials / std::sqrt(static_cast<double>(trials));
    check(std::abs(stats.scaled_mean_trace_distance - c.want) <= 3.0 * se,
          std::string(c.name) + " mc " + fmt(stats.scaled_mean_trace_distance) + " vs " +
              fmt(c.want) + " (3se " + fmt(3 * se) + ")");
    info += " " + fmt(stats.scaled_mean_trace_distance);
  }
  if (r.pass) r.detail = info;
  return r;
}

// ---------------------------------------------------------------------- 4

Result criterion_4() {
  Result r;
  const double exact = std::sqrt(2.0 / (3.0 * std::numbers::pi)) * 3.0;
  const double rmt = theory::rmt_mean_trace_distance(2, theory::tight_ic_mse(2, 0.5, 1.0));
  const double below = 1.0 - rmt / exact;
  r.pass = below >= 0.07 && below <= 0.09;
  r.detail = "rmt " + fmt(rmt) + " vs exact " + fmt(exact) + ": " + fmt(100 * below) + "% below";
  return r;
}

// ---------------------------------------------------------------------- 5

Result criterion_5() {
  Result r;
  Check check{r};
  double worst_f0 = 0.0, worst_recon = 0.0, worst_trinv = 0.0;

  auto examine = [&](const povm::Pom& pom, double coef, bool check_recon) {
    const int d = pom.dim;
    const auto fso = tomography::frame_superoperator(pom);
    const Eigen::MatrixXd target =
        coef * Eigen::MatrixXd::Identity(d * d - 1, d * d - 1);
    worst_f0 = std::max(worst_f0, (fso.traceless - target).cwiseAbs().maxCoeff());

    const auto recon = tomography::canonical_reconstruction(pom, fso);
    if (check_recon) {
      for (int j = 0; j < pom.outcomes(); ++j) {
        const Matrix want = (d + 1.0) * opcore::projector(pom.source->states[j]) -
                            Matrix::Identity(d, d);
        worst_recon =
            std::max(worst_recon, (recon.operators[j] - want).cwiseAbs().maxCoeff());
      }
    }
    const double tr_inv = tomography::pseudo_inverse(fso.traceless).trace();
    const double want = (d + 1.0) * (static_cast<double>(d) * d - 1.0);
    worst_trinv = std::max(worst_trinv, std::abs(tr_inv / want - 1.0));
  };

  for (int d = 2; d <= 8; ++d) examine(sic(d), 1.0 / (d + 1.0), true);
  examine(povm::qubit_mub_octahedron(), 1.0 / 3.0, false);

  check(worst_f0 < 1e-8, "F0 deviation " + fmt(worst_f0));
  check(worst_recon < 1e-8, "reconstruction deviation " + fmt(worst_recon));
  check(worst_trinv < 1e-6, "Tr(F0^-1) relative error " + fmt(worst_trinv));
  if (r.pass)
    r.detail = "worst F0 " + fmt(worst_f0) + ", recon " + fmt(worst_recon) + ", TrF0inv rel " +
               fmt(worst_trinv);
  return r;
}

// ---------------------------------------------------------------------- 6

Result criterion_6() {
  Result r;
  Check check{r};
  double worst2 = 0.0, worst3 = 0.0;
  for (int d = 2; d <= 8; ++d) {
    const povm::Pom pom = sic(d);
    worst2 = std::max(worst2, std::abs(designs::frame_potential(*pom.source, 2) -
                                       theory::phi2_sic(d)));
    worst3 = std::max(worst3, std::abs(designs::frame_potential(*pom.source, 3) -
                                       theory::phi3_sic(d)));
  }
  check(worst2 < 1e-8, "phi2 deviation " + fmt(worst2));
  check(worst3 < 1e-8, "phi3 deviation " + fmt(worst3));

  const auto octa = povm::qubit_mub_octahedron();
  check(designs::is_weighted_t_design(*octa.source, 3).is_design, "octahedron 3-design");

  Xoshiro256pp rng(606);
  double min_slack = 1e9;
  for (int rep = 0; rep < 30; ++rep) {
    const int d = 2 + rep % 4;
    povm::WeightedStateSet set;
    set.dim = d;
    const int n = d * d + static_cast<int>(rng() % 9);
    std::vector<double> w(n);
    double wsum = 0.0;
    for (auto& x : w) {
      x = 0.05 + rng.uniform01();
      wsum += x;
    }
    for (int j = 0; j < n; ++j) {
      set.states.push_back(opcore::random_haar_pure(d, rng));
      set.weights.push_back(w[j] * d / wsum);
    }
    for (int t = 1; t <= 3; ++t)
      min_slack = std::min(min_slack, designs::is_weighted_t_design(set, t).slack);
  }
  check(min_slack >= -1e-10, "lower bound violated, slack " + fmt(min_slack));
  if (r.pass)
    r.detail = "phi2/phi3 dev " + fmt(worst2) + "/" + fmt(worst3) + ", min random slack " +
               fmt(min_slack);
  return r;
}

// ---------------------------------------------------------------------- 7

Result criterion_7() {
  Result r;
  Check check{r};
  auto ratio = [](int d1, int d2) {
    const double purity = 1.0 / (static_cast<double>(d1) * d2);
    return theory::product_predictions({d1, d2}, purity, {1.0 / d1, 1.0 / d2}, 1.0)
        .ratio_vs_joint;
  };

  double best = 0.0;
  int best_d1 = 0, best_d2 = 0;
  for (int d1 = 2; d1 <= 10; ++d1)
    for (int d2 = 2; d2 <= 10; ++d2)
      if (ratio(d1, d2) > best) {
        best = ratio(d1, d2);
        best_d1 = d1;
        best_d2 = d2;
      }
  check(best_d1 == 3 && best_d2 == 3, "max not at (3,3)");
  check(std::abs(best - 1.36) < 5e-3, "max ratio " + fmt(best));

  for (int d1 = 3; d1 < 10; ++d1)
    check(ratio(d1 + 1, 2) < ratio(d1, 2),
          "not decreasing in d1 at d2=2, d1=" + std::to_string(d1));

  const double big = ratio(20, 20);
  check(std::abs(big / 1.1 - 1.0) <= 0.05, "(20,20) ratio " + fmt(big) + " vs 1.1");
  if (r.pass) r.detail = "max " + fmt(best) + " at (3,3), (20,20) " + fmt(big);
  return r;
}

// ---------------------------------------------------------------------- 8

Result criterion_8() {
  Result r;
  Check check{r};
  std::string info = "pulls:";
  int idx = 0;
  for (int d : {2, 3}) {
    const povm::Pom base = sic(d);
    for (double alpha : {0.0, 0.5, 1.0}) {
      const povm::Pom noisy = povm::noisy_sic(base, alpha);
      const int trials = 4000;
      const auto stats =
          run(noisy, StateSpec::completely_mixed(), 1000, trials, 1500 + idx++);
      const double want = 1000.0 * theory::noisy_predictions(d, alpha, 1.0 / d, 1000.0).mse;
      const double se = stats.std_over_trials_mse / std::sqrt(static_cast<double>(trials));
      const double pull = (stats.scaled_mse - want) / se;
      check(std::abs(pull) <= 3.0, "d=" + std::to_string(d) + " alpha=" + fmt(alpha) +
                                       " pull " + fmt(pull) + " sigma");
      info += " " + fmt(pull);
    }
  }
  // theory-only quadrupling at the large-d proxy
  const double m0 = theory::noisy_predictions(8, 0.0, 0.125, 1.0).mse;
  const double m1 = theory::noisy_predictions(8, 1.0, 0.125, 1.0).mse;
  check(std::abs(m1 / m0 / 4.0 - 1.0) <= 0.05, "alpha=1 quadrupling " + fmt(m1 / m0));
  if (r.pass) r.detail = info + ", d=8 ratio " + fmt(m1 / m0);
  return r;
}

// ---------------------------------------------------------------------- 9

Result criterion_9() {
  Result r;
  Check check{r};

  // closed form vs the exact mse quotient, as trace-distance ratios
  std::vector<double> log_ratio;
  for (int k = 1; k <= 5; ++k) {
    const int d = 1 << k;
    const double purity = 1.0 / d;
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= 5.0;
    const double exact = std::sqrt((prod - purity) /
                                   (static_cast<double>(d) * d + d - 1.0 - purity));
    const double closed = std::sqrt(theory::multipartite_mse_ratio_closed_form(2, k));
    check(std::abs(closed / exact - 1.0) <= 5e-3,
          "k=" + std::to_string(k) + " closed " + fmt(closed) + " vs exact " + fmt(exact));
    log_ratio.push_back(std::log(closed));
  }

  // exponential growth: least-squares line through log(ratio) vs k
  const int m = static_cast<int>(log_ratio.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < m; ++i) {
    const double x = i + 1.0;
    sx += x;
    sy += log_ratio[i];
    sxx += x * x;
    sxy += x * log_ratio[i];
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / m;
  double max_resid = 0.0, max_log = 0.0;
  for (int i = 0; i < m; ++i) {
    max_resid = std::max(max_resid, std::abs(log_ratio[i] - (intercept + slope * (i + 1.0))));
    max_log = std::max(max_log, std::abs(log_ratio[i]));
  }
  check(max_resid <= 0.02 * max_log,
        "log-ratio nonlinearity " + fmt(max_resid) + " vs " + fmt(0.02 * max_log));

  // simulation for k <= 3
  const povm::Pom sic2 = sic(2);
  std::string info = "sim ratios:";
  for (int k = 1; k <= 3; ++k) {
    const int d = 1 << k;
    const povm::Pom joint = sic(d);
    const povm::Pom prod_pom = povm::product_pom(std::vector<povm::Pom>(k, sic2));
    const int trials = 12000;
    const auto js = run(joint, StateSpec::completely_mixed(), 0, trials, 1700 + k);
    const auto ps = run(prod_pom, StateSpec::completely_mixed(), 0, trials, 1800 + k);
    const double sim = ps.scaled_mean_trace_distance / js.scaled_mean_trace_distance;
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= 5.0;
    const double purity = 1.0 / d;
    const double exact = std::sqrt((prod - purity) /
                                   (static_cast<double>(d) * d + d - 1.0 - purity));
    check(std::abs(sim / exact - 1.0) <= 0.03,
          "k=" + std::to_string(k) + " sim ratio " + fmt(sim) + " vs " + fmt(exact));
    info += " " + fmt(sim);
  }
  if (r.pass) r.detail = info + ", log-lin resid " + fmt(max_resid / max_log);
  return r;
}

// --------------------------------------------------------------------- 10

Result criterion_10(const std::string& tool) {
  Result r;
  Check check{r};
  if (tool.empty() || !fs::exists(tool)) {
    r.pass = false;
    r.detail = "tomolab binary not found (pass --tool)";
    return r;
  }
  const fs::path base = fs::temp_directory_path() / "tomolab_acceptance_10";
  fs::remove_all(base);
  fs::create_directories(base);
  const auto dir_a = (base / "a").string();
  const auto dir_b = (base / "b").string();

  auto shell = [&](const std::string& cmd) {
    const int rc = std::system(cmd.c_str());
    check(rc == 0, "command failed: " + cmd);
    return rc == 0;
  };
  auto slurp = [](const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
  };

  // a simulation-bearing target under different thread counts
  shell("TOMOLAB_THREADS=1 " + tool +
        " reproduce fig1 --dmax 3 --mixed-trials 200 --pure-states 12 --pure-trials 10"
        " --seed 7 --out " +
        dir_a + " > /dev/null");
  shell("TOMOLAB_THREADS=3 " + tool + " replay " + dir_a + "/fig1.manifest.json --out " +
        dir_b + " > /dev/null");
  check(slurp(dir_a + "/fig1.csv") == slurp(dir_b + "/fig1.csv"),
        "fig1.csv differs between run and replay under different thread counts");
  check(!slurp(dir_a + "/fig1.csv").empty(), "fig1.csv empty");

  // a theory-only target, replay into a third directory
  const auto dir_c = (base / "c").string();
  const auto dir_d = (base / "d").string();
  shell(tool + " reproduce fig3 --dmax 7 --out " + dir_c + " > /dev/null");
  shell(tool + " replay " + dir_c + "/fig3.manifest.json --out " + dir_d + " > /dev/null");
  check(slurp(dir_c + "/fig3.csv") == slurp(dir_d + "/fig3.csv"), "fig3.csv differs on replay");

  fs::remove_all(base);
  if (r.pass) r.detail = "run/replay byte-identical across TOMOLAB_THREADS=1 vs 3";
  return r;
}

// --------------------------------------------------------------------- 11

Result criterion_11() {
  Result r;
  Check check{r};

  // (a) superoperator-path MSE vs the closed form, 50 random (d, rho)
  Xoshiro256pp rng(1111);
  double worst_a = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 2 + rep % 4;
    const povm::Pom pom = sic(d);
    const auto recon =
        tomography::canonical_reconstruction(pom, tomography::frame_superoperator(pom));
    const Matrix rho = (rep % 2 == 0)
                           ? Matrix(opcore::random_mixed(d, rng))
                           : Matrix(opcore::projector(opcore::random_haar_pure(d, rng)));
    const auto stats = tomography::error_stats(pom, recon, rho, 1000);
    const double want = theory::tight_ic_mse(d, opcore::purity(rho), 1000.0);
    worst_a = std::max(worst_a, std::abs(stats.mse / want - 1.0));
  }
  check(worst_a <= 1e-8, "mse closed-form deviation " + fmt(worst_a));

  // (b) quadrature vs closed-form branches on 100 degenerate ellipsoids
  double worst_b = 0.0;
  for (int rep = 0; rep < 100; ++rep) {
    const double v_pair = 0.05 + 4.0 * rng.uniform01();
    const double v_odd = 0.05 + 4.0 * rng.uniform01();
    std::array<double, 3> v = {v_pair, v_pair, v_odd};
    if (rep % 3 == 1) std::swap(v[0], v[2]);
    if (rep % 3 == 2) std::swap(v[1], v[2]);
    const theory::QubitEllipsoid e{v};
    const double closed = theory::qubit_mean_error(e);
    const double quad = theory::qubit_mean_error_quadrature(e);
    worst_b = std::max(worst_b, std::abs(closed - quad) / closed);
  }
  check(worst_b <= 1e-8, "quadrature deviation " + fmt(worst_b));

  // (c) multinomial covariance vs (p_j d_jk - p_j p_k)/N at 5 standard errors
  const std::vector<double> p = {0.1, 0.25, 0.3, 0.05, 0.3};
  const int m = static_cast<int>(p.size());
  const long long n = 100;
  const int batches = 40, per_batch = 5000;
  std::vector<std::vector<double>> batch_cov(batches, std::vector<double>(m * m, 0.0));
  for (int b = 0; b < batches; ++b) {
    std::vector<std::vector<double>> f(per_batch, std::vector<double>(m));
    std::vector<double> mean(m, 0.0);
    for (int t = 0; t < per_batch; ++t) {
      const auto counts = montecarlo::sample_counts(p, n, rng);
      for (int j = 0; j < m; ++j) {
        f[t][j] = static_cast<double>(counts[j]) / n;
        mean[j] += f[t][j];
      }
    }
    for (double& x : mean) x /= per_batch;
    for (int t = 0; t < per_batch; ++t)
      for (int j = 0; j < m; ++j)
        for (int kk = 0; kk < m; ++kk)
          batch_cov[b][j * m + kk] += (f[t][j] - mean[j]) * (f[t][kk] - mean[kk]);
    for (double& x : batch_cov[b]) x /= (per_batch - 1);
  }
  double worst_pull = 0.0;
  for (int j = 0; j < m; ++j)
    for (int kk = j; kk < m; ++kk) {
      double mean_cov = 0.0;
      for (int b = 0; b < batches; ++b) mean_cov += batch_cov[b][j * m + kk];
      mean_cov /= batches;
      double var = 0.0;
      for (int b = 0; b < batches; ++b) {
        const double dlt = batch_cov[b][j * m + kk] - mean_cov;
        var += dlt * dlt;
      }
      const double se = std::sqrt(var / (batches - 1) / batches);
      const double want = ((j == kk ? p[j] : 0.0) - p[j] * p[kk]) / n;
      worst_pull = std::max(worst_pull, std::abs(mean_cov - want) / se);
    }
  check(worst_pull <= 5.0, "covariance pull " + fmt(worst_pull) + " sigma");

  if (r.pass)
    r.detail = "mse dev " + fmt(worst_a) + ", quad dev " + fmt(worst_b) + ", cov pull " +
               fmt(worst_pull) + " sigma";
  return r;
}

const char* kNames[] = {
    "",
    "table1 reproduction (two-qubit joint vs product SIC)",
    "fig1 desk scale (d=2..8 scaled distances vs theory)",
    "qubit exact values (1.382 / 1.295 / 1.2533) and Monte Carlo",
    "semicircle-vs-exact gap at d=2 (7-9% below)",
    "tight-IC structure (F0, reconstruction operators, Tr F0^-1)",
    "design properties (phi_2, phi_3, 3-design, lower bound)",
    "fig3 ratio surface (max 1.36 at (3,3), monotonicity, large-d)",
    "white-noise model (simulated MSE vs formula, quadrupling)",
    "multipartite scaling (closed form, sim k<=3, exponential growth)",
    "determinism (manifest replay, thread-count independence)",
    "oracle cross-checks (closed-form MSE, quadrature, multinomial)",
};

}  // namespace

int main(int argc, char** argv) {
  std::string which = argc > 1 ? argv[1] : "all";
  std::string tool;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--tool") tool = argv[i + 1];

  const std::function<Result()> criteria[] = {
      nullptr,      criterion_1, criterion_2, criterion_3,
      criterion_4,  criterion_5, criterion_6, criterion_7,
      criterion_8,  criterion_9, [&] { return criterion_10(tool); },
      criterion_11,
  };

  int failures = 0;
  auto run_one = [&](int i) {
    const Result res = criteria[i]();
    std::printf("%s  criterion %2d: %s%s%s\n", res.pass ? "PASS" : "FAIL", i, kNames[i],
                res.detail.empty() ? "" : " -- ", res.detail.c_str());
    std::fflush(stdout);
    if (!res.pass) ++failures;
  };

  if (which == "all") {
    for (int i = 1; i <= 11; ++i) run_one(i);
  } else {
    const int i = std::atoi(which.c_str());
    if (i < 1 || i > 11) {
      std::fprintf(stderr, "usage: acceptance <1..11|all> [--tool path]\n");
      return 2;
    }
    run_one(i);
  }
  return failures == 0 ? 0 : 1;
}
