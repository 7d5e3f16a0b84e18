#include "tomolab/theory.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "tomolab/povm.hpp"

namespace tomolab::theory {

namespace {

constexpr double kPi = std::numbers::pi;

void require_purity(int d, double purity) {
  if (purity < 1.0 / d - 1e-9 || purity > 1.0 + 1e-9)
    throw std::invalid_argument("purity must lie in [1/d, 1]");
}

}  // namespace

double phi2_sic(int d) { return 2.0 * d / (d + 1.0); }

double phi3_sic(int d) {
  return (static_cast<double>(d) * d + 3.0 * d) / ((d + 1.0) * (d + 1.0));
}

double phi3_design(int d) { return 6.0 * d / ((d + 1.0) * (d + 2.0)); }

double tight_ic_mse(int d, double purity, double n_copies) {
  require_purity(d, purity);
  return (static_cast<double>(d) * d + d - 1.0 - purity) / n_copies;
}

double rmt_mean_trace_distance(int d, double mse) {
  if (mse < 0.0) throw std::invalid_argument("rmt_mean_trace_distance: negative mse");
  return 4.0 / (3.0 * kPi) * std::sqrt(d * mse);
}

double mean_hs_distance(int d, double mse) {
  if (mse < 0.0) throw std::invalid_argument("mean_hs_distance: negative mse");
  const double d2 = static_cast<double>(d) * d;
  const double log_ratio = std::lgamma(d2 / 2.0) - std::lgamma((d2 - 1.0) / 2.0);
  return std::sqrt(2.0 * mse / (d2 - 1.0)) * std::exp(log_ratio);
}

AnisotropyBounds anisotropy_functionals(int d, double purity, double tr_rho3, double phi3) {
  require_purity(d, purity);
  if (tr_rho3 > std::pow(purity, 1.5) + 1e-9)
    throw std::invalid_argument("anisotropy_functionals: inconsistent moments");
  const double dd = d;
  const double base = dd * dd + 2.0 * dd - 2.0 / dd + purity * purity -
                      2.0 * (2.0 * (dd + 1.0) / (dd + 2.0) * tr_rho3 +
                             (dd - 1.0) / (dd + 2.0) * purity - 1.0 / (dd + 2.0));
  const double excess = purity - 1.0 / dd;
  auto coef = [dd](double p3) {
    return ((dd + 1.0) * (dd + 1.0) * (dd + 1.0) * p3 -
            2.0 * (2.0 * dd * dd + 3.0 * dd - 1.0)) /
           (dd - 1.0);
  };
  AnisotropyBounds out;
  out.mean_tr_c2 = base + coef(phi3) * excess;
  out.lower_bound = base + 2.0 * (dd * dd - 2.0) / (dd + 2.0) * excess;
  out.upper_bound = dd * dd + 2.0 * dd + 2.0 * dd * (dd + 1.0) * excess;
  return out;
}

double sic_tr_c2_scaled(int d, double purity, double sum_p_cubed) {
  const double dd = d;
  const double q = dd * dd + dd;
  return (q + 2.0) * (1.0 + purity) - 1.0 + purity * purity - 2.0 * q * q * sum_p_cubed;
}

NoisyPredictions noisy_predictions(int d, double alpha, double purity, double n_copies) {
  if (alpha < 0.0) throw std::invalid_argument("noisy_predictions: alpha must be >= 0");
  require_purity(d, purity);
  const double dd = d;
  const double a1 = alpha + 1.0;
  NoisyPredictions out;
  out.mse = ((1.0 + (dd + 1.0) * (dd + 1.0) * (dd - 1.0) * a1 * a1) / dd - purity) / n_copies;
  out.mean_trace_distance = rmt_mean_trace_distance(d, out.mse);
  out.mean_hs_distance = mean_hs_distance(d, out.mse);
  return out;
}

QubitMse qubit_mse_matrix(const Eigen::Vector3d& s, double n_copies) {
  QubitMse out;
  Eigen::Matrix3d m = 3.0 * Eigen::Matrix3d::Identity() - s * s.transpose();
  for (const auto& a : povm::tetrahedron_directions())
    m += 2.25 * a.dot(s) * (a * a.transpose());
  out.matrix = m / n_copies;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(out.matrix, Eigen::EigenvaluesOnly);
  for (int i = 0; i < 3; ++i) out.ellipsoid.sigma_sq[i] = std::max(0.0, es.eigenvalues()[i]);
  return out;
}

namespace {

// Reduced integrand of E(|delta s|); all variances positive, sig3 plays
// the distinguished role.
double reduced_integrand(double t, double s1, double s2, double s3) {
  const double t2 = t * t;
  const double num = s1 * s3 + s2 * s3 + (2.0 * s1 * s2 - s1 * s3 - s2 * s3) * t2;
  const double g = s3 * (1.0 - t2) * (1.0 - t2) + (s1 * s2 / s3) * t2 * t2 +
                   (s1 + s2) * t2 * (1.0 - t2);
  return num / (g * std::sqrt(g));
}

double adaptive_simpson(double (*f)(double, double, double, double), double a, double b,
                        double fa, double fm, double fb, double whole, double tol, int depth,
                        double s1, double s2, double s3) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm, s1, s2, s3), frm = f(rm, s1, s2, s3);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, s1, s2, s3) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, s1, s2, s3);
}

// Closed-form branches for sigma_1 = sigma_2 (variances v_pair, v_odd).
double mean_error_two_equal(double v_pair, double v_odd) {
  const double s1 = std::sqrt(v_pair), s3 = std::sqrt(v_odd);
  const double c = std::sqrt(2.0 / kPi);
  if (s1 == 0.0) return c * s3;
  if (s3 == 0.0) return std::sqrt(kPi / 2.0) * s1;
  if (std::abs(v_pair - v_odd) <= 1e-9 * std::max(v_pair, v_odd)) return 2.0 * c * s1;
  if (v_pair > v_odd) {
    const double r = std::sqrt(v_pair - v_odd);
    return c * (v_pair * std::atan(r / s3) / r + s3);
  }
  const double r = std::sqrt(v_odd - v_pair);
  return c * (v_pair * std::atanh(r / s3) / r + s3);
}

}  // namespace

double qubit_mean_error_quadrature(const QubitEllipsoid& ellipsoid) {
  std::array<double, 3> v = ellipsoid.sigma_sq;
  std::sort(v.begin(), v.end());
  for (double x : v)
    if (x < -1e-12) throw std::invalid_argument("qubit_mean_error: negative variance");
  if (v[2] <= 0.0) return 0.0;
  // The reduced form needs sigma_3 > 0; the integral is symmetric under
  // relabeling, so put the largest variance in that slot.
  const double s1 = std::max(0.0, v[0]), s2 = std::max(0.0, v[1]), s3 = v[2];
  const double fa = reduced_integrand(0.0, s1, s2, s3);
  const double fb = reduced_integrand(1.0, s1, s2, s3);
  const double fm = reduced_integrand(0.5, s1, s2, s3);
  const double whole = (fa + 4.0 * fm + fb) / 6.0;
  const double integral = adaptive_simpson(reduced_integrand, 0.0, 1.0, fa, fm, fb, whole,
                                           1e-10, 48, s1, s2, s3);
  return std::sqrt(2.0 / kPi) * integral;
}

double qubit_mean_error(const QubitEllipsoid& ellipsoid) {
  std::array<double, 3> v = ellipsoid.sigma_sq;
  std::sort(v.begin(), v.end());
  for (double& x : v) {
    if (x < -1e-12) throw std::invalid_argument("qubit_mean_error: negative variance");
    x = std::max(0.0, x);
  }
  if (v[2] <= 0.0) return 0.0;
  auto close = [](double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b));
  };
  if (close(v[0], v[1])) return mean_error_two_equal(v[0], v[2]);
  if (close(v[1], v[2])) return mean_error_two_equal(v[1], v[0]);
  return qubit_mean_error_quadrature(ellipsoid);
}

double qubit_mean_trace_distance(const QubitEllipsoid& ellipsoid) {
  return 0.5 * qubit_mean_error(ellipsoid);
}

ProductPredictions product_predictions(const std::vector<int>& dims, double purity,
                                       const std::vector<double>& reduced_purities,
                                       double n_copies) {
  if (dims.size() < 2) throw std::invalid_argument("product_predictions: need >= 2 subsystems");
  long long d_total = 1;
  double prod = 1.0;
  for (int dj : dims) {
    if (dj < 2) throw std::invalid_argument("product_predictions: subsystem dims must be >= 2");
    d_total *= dj;
    prod *= static_cast<double>(dj) * dj + dj - 1.0;
  }
  require_purity(static_cast<int>(d_total), purity);

  ProductPredictions out;
  out.mse = (prod - purity) / n_copies;
  out.mean_trace_distance =
      4.0 * std::sqrt(static_cast<double>(d_total)) / (3.0 * kPi) *
      std::sqrt(prod - purity) / std::sqrt(n_copies);
  out.ratio_vs_joint = out.mse / tight_ic_mse(static_cast<int>(d_total), purity, n_copies);

  const double n2 = n_copies * n_copies;
  if (dims.size() == 2 && reduced_purities.size() == 2) {
    const double a1 = static_cast<double>(dims[0]) * dims[0] + dims[0] - 2.0;
    const double a2 = static_cast<double>(dims[1]) * dims[1] + dims[1] - 2.0;
    const double p1 = reduced_purities[0], p2 = reduced_purities[1];
    out.variance = 2.0 / n2 *
                   (a1 * a2 * (1.0 + purity + p1 + p2) + a1 * (1.0 + p1) + a2 * (1.0 + p2));
  } else if (std::abs(purity - 1.0 / d_total) <= 1e-9) {
    double prod_v = 1.0, prod_inv = 1.0;
    for (int dj : dims) {
      const double ddj = dj;
      prod_v *= (ddj * ddj * ddj + 2.0 * ddj * ddj - 2.0) / ddj;
      prod_inv *= 1.0 / (ddj * ddj);
    }
    out.variance = 2.0 / n2 * (prod_v - prod_inv);
  }
  return out;
}

double multipartite_mse_ratio_closed_form(int d1, int k) {
  if (d1 < 2 || k < 1)
    throw std::invalid_argument("multipartite_mse_ratio_closed_form: d1 >= 2, k >= 1");
  const double d = std::pow(static_cast<double>(d1), k);
  const double per_party = 1.0 + 1.0 / d1 - 1.0 / (static_cast<double>(d1) * d1);
  const double joint = 1.0 + 1.0 / d - 1.0 / (d * d);
  return std::pow(per_party, k) / joint;
}

}  // namespace tomolab::theory
