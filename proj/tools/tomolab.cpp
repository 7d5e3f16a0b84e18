// tomolab: SIC-POM construction, tight-IC tomography predictions, and
// Monte Carlo reproduction of the reference simulations.
//
// Exit codes: 0 success, 2 usage error, 3 construction/verification
// failure, 4 numerical failure.

#include <fstream>
#include <iostream>
#include <numbers>

#include "CLI11.hpp"
#include "json.hpp"
#include "tomolab/errors.hpp"
#include "tomolab/reports.hpp"
#include "tomolab/theory.hpp"
#include "tomolab/version.hpp"

using nlohmann::json;
using namespace tomolab;

namespace {

std::vector<std::string> collect_argv(int argc, char** argv) {
  return {argv, argv + argc};
}

void emit(const json& j, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream os(out_path);
  if (!os) throw construction_error("cannot write " + out_path);
  os << j.dump(2) << "\n";
}

const char* quantity_name(theory::Quantity q) {
  switch (q) {
    case theory::Quantity::mse: return "mse";
    case theory::Quantity::mean_trace_distance: return "mean_trace_distance";
    case theory::Quantity::mean_hs_distance: return "mean_hs_distance";
    case theory::Quantity::variance: return "variance";
    case theory::Quantity::ratio: return "ratio";
  }
  return "";
}

theory::Quantity quantity_from(const char* name) {
  const std::string s = name;
  if (s == "mse") return theory::Quantity::mse;
  if (s == "mean_trace_distance") return theory::Quantity::mean_trace_distance;
  if (s == "mean_hs_distance") return theory::Quantity::mean_hs_distance;
  if (s == "variance") return theory::Quantity::variance;
  return theory::Quantity::ratio;
}

json to_json(const theory::TheoryPrediction& p) {
  return {{"quantity", quantity_name(p.quantity)},
          {"value", p.value},
          {"formula", p.formula},
          {"n_power", p.n_power}};
}

json prediction(const char* quantity, double value, const char* formula, int n_power) {
  return to_json(theory::TheoryPrediction{quantity_from(quantity), value, formula, n_power});
}

int cmd_fiducial_find(int d, std::uint64_t seed, int restarts, const std::string& out) {
  const auto result = povm::fiducial_search(d, seed, restarts);
  if (!out.empty()) povm::save_fiducial(out, result.ket);
  json j;
  j["d"] = d;
  j["seed"] = seed;
  j["residual"] = result.residual;
  j["max_deviation"] = povm::fiducial_max_deviation(result.ket);
  j["restarts_used"] = result.restarts_used;
  if (!out.empty()) j["output"] = out;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_fiducial_verify(const std::string& path, double tol) {
  // Load without the tolerance gate so the deviation is always reported.
  const povm::Vector ket = povm::load_fiducial(path, std::numeric_limits<double>::infinity());
  const double dev = povm::fiducial_max_deviation(ket);
  json j;
  j["d"] = static_cast<int>(ket.size());
  j["max_deviation"] = dev;
  j["target_overlap"] = 1.0 / std::sqrt(ket.size() + 1.0);
  j["tol"] = tol;
  j["passed"] = dev <= tol;
  std::cout << j.dump(2) << "\n";
  if (dev > tol)
    throw construction_error("fiducial verification failed: max deviation " +
                             reports::format_double(dev));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state tomography with SIC POMs: theory, simulation, reproduction"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  const auto argv_vec = collect_argv(argc, argv);

  // ---- fiducial ----
  auto* fid = app.add_subcommand("fiducial", "find or verify Heisenberg-Weyl fiducial kets");
  fid->require_subcommand(1);
  int fid_d = 2;
  std::uint64_t fid_seed = 1;
  int fid_restarts = 256;
  std::string fid_out, fid_path;
  double fid_tol = 1e-8;
  auto* fid_find = fid->add_subcommand("find", "search for a fiducial ket");
  fid_find->add_option("--d", fid_d, "Hilbert space dimension")->required();
  fid_find->add_option("--seed", fid_seed, "search seed");
  fid_find->add_option("--restarts", fid_restarts, "maximum random restarts");
  fid_find->add_option("--out", fid_out, "output fiducial JSON path");
  auto* fid_verify = fid->add_subcommand("verify", "verify a fiducial file");
  fid_verify->add_option("--fiducial", fid_path, "fiducial JSON path")->required();
  fid_verify->add_option("--tol", fid_tol, "max allowed overlap deviation");

  // ---- theory ----
  auto* th = app.add_subcommand("theory", "closed-form predictions");
  th->require_subcommand(1);
  int th_d = 2;
  double th_purity = -1.0, th_alpha = 0.0, th_n = 1.0, th_z = 0.0, th_phi3 = -1.0,
         th_rho3 = -1.0;
  std::vector<int> th_dims;
  std::vector<double> th_red;
  std::string th_out;

  auto add_common = [&](CLI::App* sub, bool need_d) {
    if (need_d) sub->add_option("--d", th_d, "dimension")->required();
    sub->add_option("--n", th_n, "number of copies N (default 1: scaled values)");
    sub->add_option("--out", th_out, "write JSON here instead of stdout");
  };

  auto* th_mse = th->add_subcommand("mse", "tight-IC MSE");
  add_common(th_mse, true);
  th_mse->add_option("--purity", th_purity, "tr(rho^2)")->required();
  auto* th_tr = th->add_subcommand("trace-distance", "mean trace distance (semicircle model)");
  add_common(th_tr, true);
  th_tr->add_option("--purity", th_purity, "tr(rho^2)")->required();
  auto* th_hs = th->add_subcommand("hs-distance", "mean HS distance (chi^2 model)");
  add_common(th_hs, true);
  th_hs->add_option("--purity", th_purity, "tr(rho^2)")->required();
  auto* th_noisy = th->add_subcommand("noisy", "white-noise SIC predictions");
  add_common(th_noisy, true);
  th_noisy->add_option("--alpha", th_alpha, "noise strength")->required();
  th_noisy->add_option("--purity", th_purity, "tr(rho^2)")->required();
  auto* th_qubit = th->add_subcommand("qubit", "exact qubit tetrahedron error");
  th_qubit->add_option("--z", th_z, "Bloch component along the first leg, in [-1,1]")
      ->required();
  th_qubit->add_option("--n", th_n, "number of copies N");
  th_qubit->add_option("--out", th_out, "write JSON here instead of stdout");
  auto* th_aniso = th->add_subcommand("anisotropy", "averaged Tr(C^2) and bounds");
  add_common(th_aniso, true);
  th_aniso->add_option("--purity", th_purity, "tr(rho^2)")->required();
  th_aniso->add_option("--tr-rho3", th_rho3, "tr(rho^3)")->required();
  th_aniso->add_option("--phi3", th_phi3, "order-3 frame potential (default: SIC value)");
  auto* th_prod = th->add_subcommand("product", "product SIC POM predictions");
  th_prod->add_option("--dims", th_dims, "subsystem dimensions")->required()->delimiter(',');
  th_prod->add_option("--purity", th_purity, "tr(rho^2)")->required();
  th_prod->add_option("--reduced-purities", th_red, "tr(rho_j^2) of the reduced states")
      ->delimiter(',');
  th_prod->add_option("--n", th_n, "number of copies N");
  th_prod->add_option("--out", th_out, "write JSON here instead of stdout");

  // ---- simulate ----
  auto* sim = app.add_subcommand("simulate", "Monte Carlo tomography experiment");
  reports::SimulateOptions sim_opt;
  std::string sim_out;
  sim->add_option("--pom", sim_opt.pom, "sic|tetra|octa|product-sic|noisy-sic");
  int sim_d = 0;
  sim->add_option("--d", sim_d, "dimension (single-system poms)");
  sim->add_option("--dims", sim_opt.dims, "subsystem dimensions (product-sic)")->delimiter(',');
  sim->add_option("--alpha", sim_opt.alpha, "noise strength (noisy-sic)");
  sim->add_option("--n", sim_opt.n_copies, "copies per trial (0: 1000 + 20 d^2)");
  sim->add_option("--trials", sim_opt.trials, "trials per state");
  sim->add_option("--states", sim_opt.states, "ensemble size (pure-ensemble)");
  sim->add_option("--state", sim_opt.state_kind, "mixed|pure-ensemble");
  sim->add_option("--seed", sim_opt.seed, "master seed");
  sim->add_option("--fiducial", sim_opt.fiducial, "fiducial JSON for the SIC");
  sim->add_option("--fiducial-dir", sim_opt.fiducial_dir, "directory of fiducial_d<d>.json");
  sim->add_option("--out", sim_out, "output directory (JSON + manifest); stdout if omitted");

  // ---- reproduce ----
  auto* rep = app.add_subcommand("reproduce", "regenerate reference figure/table data as CSV");
  std::string rep_target, rep_out = "out", rep_fiddir;
  std::uint64_t rep_seed = 1;
  int rep_dmax = 0, rep_mixed_trials = 0, rep_pure_states = 0, rep_pure_trials = 0,
      rep_kmax_sim = -1, rep_states = 0, rep_trials = 0;
  long long rep_n = 0;
  rep->add_option("target", rep_target, "fig1|fig2|table1|fig3|fig4")->required();
  rep->add_option("--out", rep_out, "output directory");
  rep->add_option("--seed", rep_seed, "master seed");
  rep->add_option("--dmax", rep_dmax, "largest dimension (fig1, fig3)");
  rep->add_option("--mixed-trials", rep_mixed_trials, "trials for the completely mixed state");
  rep->add_option("--pure-states", rep_pure_states, "Haar ensemble size");
  rep->add_option("--pure-trials", rep_pure_trials, "trials per pure state");
  rep->add_option("--states", rep_states, "fixed-purity ensemble size (fig2)");
  rep->add_option("--trials", rep_trials, "trials per state (fig2)");
  rep->add_option("--n", rep_n, "copies per trial (table1/fig2)");
  rep->add_option("--kmax-sim", rep_kmax_sim, "largest simulated qubit count (fig4)");
  rep->add_option("--fiducial-dir", rep_fiddir, "directory of fiducial_d<d>.json files");

  // ---- replay ----
  auto* rpl = app.add_subcommand("replay", "re-run a manifest; output is byte-identical");
  std::string rpl_manifest, rpl_out;
  rpl->add_option("manifest", rpl_manifest, "path to a .manifest.json")->required();
  rpl->add_option("--out", rpl_out, "output directory (default: manifest's directory)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fid_find->parsed()) return cmd_fiducial_find(fid_d, fid_seed, fid_restarts, fid_out);
    if (fid_verify->parsed()) return cmd_fiducial_verify(fid_path, fid_tol);

    if (th->parsed()) {
      json out;
      if (th_mse->parsed()) {
        out = prediction("mse", theory::tight_ic_mse(th_d, th_purity, th_n),
                         "tight_ic_mse: (d^2 + d - 1 - purity)/N", -1);
      } else if (th_tr->parsed()) {
        const double mse = theory::tight_ic_mse(th_d, th_purity, th_n);
        out = prediction("mean_trace_distance", theory::rmt_mean_trace_distance(th_d, mse),
                         "rmt_trace: (4/(3 pi)) sqrt(d mse)", -1);
      } else if (th_hs->parsed()) {
        const double mse = theory::tight_ic_mse(th_d, th_purity, th_n);
        out = prediction(
            "mean_hs_distance", theory::mean_hs_distance(th_d, mse),
            "chi2_hs: sqrt(2 mse/(d^2-1)) Gamma(d^2/2)/Gamma((d^2-1)/2)", -1);
      } else if (th_noisy->parsed()) {
        const auto p = theory::noisy_predictions(th_d, th_alpha, th_purity, th_n);
        out["mse"] = prediction("mse", p.mse,
                                "noisy_mse: ((1 + (d+1)^2 (d-1) (alpha+1)^2)/d - purity)/N", -1);
        out["mean_trace_distance"] = prediction(
            "mean_trace_distance", p.mean_trace_distance, "rmt_trace applied to noisy_mse", -1);
        out["mean_hs_distance"] = prediction("mean_hs_distance", p.mean_hs_distance,
                                             "chi2_hs applied to noisy_mse", -1);
      } else if (th_qubit->parsed()) {
        if (th_z < -1.0 || th_z > 1.0) throw std::invalid_argument("--z must lie in [-1,1]");
        const Eigen::Vector3d a1 = povm::tetrahedron_directions()[0];
        const auto qm = theory::qubit_mse_matrix(th_z * a1, th_n);
        out["sigma_sq"] = qm.ellipsoid.sigma_sq;
        out["mean_trace_distance"] =
            prediction("mean_trace_distance", theory::qubit_mean_trace_distance(qm.ellipsoid),
                       "qubit_exact: E(|ds|)/2 via principal-variance branches", 0);
        out["isotropic_reference"] =
            prediction("mean_trace_distance",
                       std::sqrt(2.0 / (3.0 * std::numbers::pi * th_n)) *
                           std::sqrt(9.0 - th_z * th_z),
                       "qubit_isotropic: sqrt(2/(3 pi N)) sqrt(9 - s^2)", 0);
      } else if (th_aniso->parsed()) {
        const double phi3 = th_phi3 < 0.0 ? theory::phi3_sic(th_d) : th_phi3;
        const auto b = theory::anisotropy_functionals(th_d, th_purity, th_rho3, phi3);
        out["mean_tr_c2"] = b.mean_tr_c2;
        out["lower_bound"] = b.lower_bound;
        out["upper_bound"] = b.upper_bound;
        out["phi3"] = phi3;
        out["formula"] = "n2_avg_tr_c2(phi3) with bounds at the 3-design and phi2 potentials";
      } else if (th_prod->parsed()) {
        const auto p = theory::product_predictions(th_dims, th_purity, th_red, th_n);
        out["mse"] = prediction("mse", p.mse,
                                "product_mse: (prod_j (d_j^2 + d_j - 1) - purity)/N", -1);
        out["mean_trace_distance"] =
            prediction("mean_trace_distance", p.mean_trace_distance,
                       "product_trace: (4 sqrt(d)/(3 pi)) sqrt(N mse)/sqrt(N)", -1);
        out["ratio_vs_joint"] =
            prediction("ratio", p.ratio_vs_joint, "product_mse / tight_ic_mse", 0);
        if (p.variance)
          out["variance"] = prediction("variance", *p.variance,
                                       "product_variance (bipartite any state; else at rho=1/d)",
                                       -2);
      }
      emit(out, th_out);
      return 0;
    }

    if (sim->parsed()) {
      if (sim_d > 0) sim_opt.dims = {sim_d};
      if (!sim_out.empty()) {
        const auto outcome =
            reports::run_reproduce("simulate", sim_opt.to_json(), sim_out, argv_vec);
        std::cout << outcome.outputs.front() << "\n";
      } else {
        std::cout << reports::run_simulate(sim_opt).dump(2) << "\n";
      }
      return 0;
    }

    if (rep->parsed()) {
      json options = reports::default_options(rep_target);
      options["seed"] = rep_seed;
      if (rep_dmax > 0) options["dmax"] = rep_dmax;
      if (rep_mixed_trials > 0) options["mixed_trials"] = rep_mixed_trials;
      if (rep_pure_states > 0) options["pure_states"] = rep_pure_states;
      if (rep_pure_trials > 0) options["pure_trials"] = rep_pure_trials;
      if (rep_states > 0) options["states"] = rep_states;
      if (rep_trials > 0) options["trials"] = rep_trials;
      if (rep_n > 0) options["n_copies"] = rep_n;
      if (rep_kmax_sim >= 0) options["kmax_sim"] = rep_kmax_sim;
      if (!rep_fiddir.empty()) options["fiducial_dir"] = rep_fiddir;
      const auto outcome = reports::run_reproduce(rep_target, options, rep_out, argv_vec);
      for (const auto& path : outcome.outputs) std::cout << path << "\n";
      std::cout << outcome.manifest_path << "\n";
      return 0;
    }

    if (rpl->parsed()) {
      const auto outcome = reports::replay_manifest(rpl_manifest, rpl_out, argv_vec);
      for (const auto& path : outcome.outputs) std::cout << path << "\n";
      return 0;
    }
  } catch (const construction_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
