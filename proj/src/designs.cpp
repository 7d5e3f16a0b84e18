#include "tomolab/designs.hpp"

#include <cmath>
#include <stdexcept>

#include "tomolab/kernels.hpp"

namespace tomolab::designs {

namespace {

double binomial(int n, int k) {
  double v = 1.0;
  for (int i = 1; i <= k; ++i) v *= static_cast<double>(n - k + i) / i;
  return v;
}

}  // namespace

double frame_potential(const povm::WeightedStateSet& set, int t) {
  if (t < 1) throw std::invalid_argument("frame_potential: t must be >= 1");
  if (!set.valid(1e-8)) throw std::invalid_argument("frame_potential: invalid weighted state set");
  const int n = set.size();
  const std::size_t d = static_cast<std::size_t>(set.dim);
  double phi = 0.0;
  for (int j = 0; j < n; ++j) {
    // Diagonal term: overlap is exactly 1.
    phi += set.weights[j] * set.weights[j];
    for (int k = j + 1; k < n; ++k) {
      const double a2 =
          std::norm(kernels::cdot(set.states[j].data(), set.states[k].data(), d));
      double p = 1.0;
      for (int e = 0; e < t; ++e) p *= a2;
      phi += 2.0 * set.weights[j] * set.weights[k] * p;
    }
  }
  return phi;
}

double frame_potential_lower_bound(int d, int t) {
  return static_cast<double>(d) * d / binomial(d + t - 1, t);
}

FramePotentialReport is_weighted_t_design(const povm::WeightedStateSet& set, int t, double tol) {
  FramePotentialReport report;
  report.t = t;
  report.phi_t = frame_potential(set, t);
  report.lower_bound = frame_potential_lower_bound(set.dim, t);
  report.slack = report.phi_t - report.lower_bound;
  report.is_design = report.slack < tol;
  return report;
}

long long design_min_size(int d, int t) {
  if (d < 2 || t < 1) throw std::invalid_argument("design_min_size: d >= 2 and t >= 1 required");
  const int hi = (t + 1) / 2, lo = t / 2;
  return std::llround(binomial(d + hi - 1, hi) * binomial(d + lo - 1, lo));
}

}  // namespace tomolab::designs
