#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tomolab/opcore.hpp"

namespace tomolab::povm {

using opcore::Complex;
using opcore::Matrix;
using opcore::Vector;

// Weighted set of pure states {|psi_j>, w_j} with 0 < w_j <= 1 and
// sum_j w_j = d. Rank-one measurements carry one of these as `source`.
struct WeightedStateSet {
  int dim = 0;
  std::vector<Vector> states;
  std::vector<double> weights;

  int size() const { return static_cast<int>(states.size()); }
  double weight_sum() const;
  bool valid(double tol = 1e-10) const;
};

struct Pom {
  int dim = 0;
  std::vector<Matrix> effects;
  std::optional<WeightedStateSet> source;

  int outcomes() const { return static_cast<int>(effects.size()); }
  std::vector<double> effect_traces() const;
};

struct PomValidation {
  bool passed = false;
  double max_completeness_violation = 0.0;  // max |(sum_j Pi_j - 1)_{rc}|
  double min_effect_eigenvalue = 0.0;
  std::vector<double> effect_traces;
  std::string message;
};

PomValidation validate_pom(const Pom& pom, double tol = 1e-10);

// X^{k1} Z^{k2} with Z|e_r> = w^r |e_r>, X the cyclic shift, w = e^{2 pi i/d}.
// Indices are reduced mod d.
Matrix hw_displacement(int d, int k1, int k2);
// O(d) action of X^{k1} Z^{k2} on a ket.
Vector apply_displacement(int k1, int k2, const Vector& v);

// Objective of the fiducial condition: sum over (k1,k2) != (0,0) of
// (|<psi|X^{k1}Z^{k2}|psi>|^2 - 1/(d+1))^2.
double fiducial_residual(const Vector& psi);
// max over (k1,k2) != (0,0) of | |<psi|X^{k1}Z^{k2}|psi>| - 1/sqrt(d+1) |.
double fiducial_max_deviation(const Vector& psi);

// d^2 effects |psi_{k1 k2}><psi_{k1 k2}|/d from the Heisenberg-Weyl orbit
// of a fiducial ket. Throws construction_error, naming the worst (k1,k2),
// if the fiducial condition is violated beyond tol.
Pom sic_from_fiducial(const Vector& psi, double tol = 1e-8);

struct FiducialSearchResult {
  Vector ket;
  double residual = 0.0;
  int restarts_used = 0;
};

// Random restarts + L-BFGS descent on the real parametrization of the
// ket. Succeeds at residual < 1e-16; deterministic given the seed
// (restarts run in order, the first converged one wins). Throws
// construction_error carrying the best residual when restarts run out.
FiducialSearchResult fiducial_search(int d, std::uint64_t seed, int max_restarts = 256);

// Tetrahedron legs with a_1 = (0,0,1) and a_2 in the x-z plane.
std::array<Eigen::Vector3d, 4> tetrahedron_directions();
// Qubit SIC POM: Pi_k = (1 + a_k.tau)/4.
Pom qubit_tetrahedron();
// The 6-outcome measurement (1 +- tau_i)/6; a weighted 3-design.
Pom qubit_mub_octahedron();

// All tensor products of the factors' effects; outcome index is
// row-major in the factor outcome indices.
Pom product_pom(const std::vector<Pom>& factors);

// White-noise deformation Pi_j(alpha) = (alpha/d + |psi_j><psi_j|)/(d alpha + d).
Pom noisy_sic(const Pom& sic, double alpha);

// Fiducial file format: {"d": int, "amplitudes": [[re, im], ...]}.
// The loader normalizes and verifies the fiducial condition within tol.
void save_fiducial(const std::string& path, const Vector& ket);
Vector load_fiducial(const std::string& path, double tol = 1e-8);

}  // namespace tomolab::povm
