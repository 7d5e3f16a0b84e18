#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <vector>

namespace tomolab::theory {

// Closed-form prediction tagged with a self-describing formula id so CLI
// output records which expression produced each number.
enum class Quantity { mse, mean_trace_distance, mean_hs_distance, variance, ratio };

struct TheoryPrediction {
  Quantity quantity;
  double value = 0.0;
  std::string formula;   // e.g. "tight_ic_mse: (d^2+d-1-purity)/N"
  int n_power = 0;       // power of N factored out of `value` (0 = none)
};

// Frame-potential reference values for rank-one tight IC sets.
double phi2_sic(int d);     // 2d/(d+1)
double phi3_sic(int d);     // (d^2+3d)/(d+1)^2
double phi3_design(int d);  // 6d/((d+1)(d+2)), the 3-design value

// MSE of linear tomography with a rank-one tight IC measurement:
// (d^2 + d - 1 - purity)/N.
double tight_ic_mse(int d, double purity, double n_copies);

// Mean trace distance from the semicircle model: (4/(3 pi)) sqrt(d * mse).
double rmt_mean_trace_distance(int d, double mse);

// Mean HS distance from the chi^2 model:
// sqrt(mse/(d^2-1)) * sqrt(2) Gamma(d^2/2)/Gamma((d^2-1)/2), via log-Gamma.
double mean_hs_distance(int d, double mse);

struct AnisotropyBounds {
  double mean_tr_c2 = 0.0;   // N^2 * unitary average of Tr(C^2)
  double lower_bound = 0.0;  // value at the 3-design frame potential
  double upper_bound = 0.0;  // simplified bound at phi3 = phi2
};

// Unitary-averaged squared-error fluctuation for a rank-one tight IC
// measurement with order-3 frame potential phi3.
AnisotropyBounds anisotropy_functionals(int d, double purity, double tr_rho3, double phi3);

// State-specific N^2 Tr(C^2) for a SIC POM:
// (d^2+d+2)(1+purity) - 1 + purity^2 - 2 (d^2+d)^2 sum_j p_j^3.
double sic_tr_c2_scaled(int d, double purity, double sum_p_cubed);

struct NoisyPredictions {
  double mse = 0.0;
  double mean_trace_distance = 0.0;
  double mean_hs_distance = 0.0;
};

// White-noise model: mse = {[1 + (d+1)^2 (d-1) (alpha+1)^2]/d - purity}/N,
// distances via the semicircle/chi^2 forms on that mse.
NoisyPredictions noisy_predictions(int d, double alpha, double purity, double n_copies);

struct QubitEllipsoid {
  std::array<double, 3> sigma_sq{};  // variances along the principal axes
};

struct QubitMse {
  Eigen::Matrix3d matrix;
  QubitEllipsoid ellipsoid;
};

// Bloch-vector MSE matrix of the tetrahedron measurement:
// C(s) = [3 I - s s^T + (9/4) sum_k (a_k.s) a_k a_k^T]/N.
QubitMse qubit_mse_matrix(const Eigen::Vector3d& s, double n_copies);

// E(|delta s|) for a centered Gaussian with the given principal
// variances. Uses the closed-form branches when two variances coincide
// (relative 1e-9), otherwise adaptive quadrature of the reduced
// one-dimensional integral (1e-10 absolute).
double qubit_mean_error(const QubitEllipsoid& ellipsoid);
// Quadrature path only; the oracle partner of the closed-form branches.
double qubit_mean_error_quadrature(const QubitEllipsoid& ellipsoid);
// Mean trace distance = E(|delta s|)/2.
double qubit_mean_trace_distance(const QubitEllipsoid& ellipsoid);

struct ProductPredictions {
  double mse = 0.0;
  std::optional<double> variance;  // bipartite: any state; k>2: completely mixed only
  double mean_trace_distance = 0.0;
  double ratio_vs_joint = 0.0;  // mse / tight_ic_mse(prod dims, purity)
};

// Product SIC POM on subsystems `dims`:
// mse = [prod_j (d_j^2 + d_j - 1) - purity]/N.
ProductPredictions product_predictions(const std::vector<int>& dims, double purity,
                                       const std::vector<double>& reduced_purities,
                                       double n_copies);

// MSE-ratio growth law for k equal parties of dimension d1:
// (1 + 1/d - 1/d^2)^{-1} (1 + 1/d1 - 1/d1^2)^k with d = d1^k.
double multipartite_mse_ratio_closed_form(int d1, int k);

}  // namespace tomolab::theory
