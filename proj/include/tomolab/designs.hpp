#pragma once

#include "tomolab/povm.hpp"

namespace tomolab::designs {

struct FramePotentialReport {
  int t = 0;
  double phi_t = 0.0;
  double lower_bound = 0.0;  // d^2 / C(d+t-1, t)
  bool is_design = false;
  double slack = 0.0;  // phi_t - lower_bound, >= 0 up to roundoff
};

// Phi_t = sum_{j,k} w_j w_k |<psi_j|psi_k>|^{2t}, via the Gram matrix.
double frame_potential(const povm::WeightedStateSet& set, int t);

double frame_potential_lower_bound(int d, int t);

FramePotentialReport is_weighted_t_design(const povm::WeightedStateSet& set, int t,
                                          double tol = 1e-9);

// Minimum number of elements of a weighted t-design:
// C(d+ceil(t/2)-1, ceil(t/2)) * C(d+floor(t/2)-1, floor(t/2)).
long long design_min_size(int d, int t);

}  // namespace tomolab::designs
