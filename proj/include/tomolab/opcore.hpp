#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "tomolab/rng.hpp"

namespace tomolab::opcore {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr double kHermTol = 1e-12;

bool is_hermitian(const Matrix& a, double tol = kHermTol);
bool is_density_operator(const Matrix& a, double tol = 1e-10);

// (A + A^dag)/2; applied before every eigendecomposition to suppress
// roundoff drift.
Matrix symmetrized(const Matrix& a);

// Ascending eigenvalues of a Hermitian matrix.
RealVector hermitian_eigenvalues(const Matrix& a);

// Orthonormal Hermitian basis in the generalized Gell-Mann convention:
// B_0 = 1/sqrt(d), then for each index pair j<k (lexicographic) the
// symmetric and antisymmetric off-diagonal elements, then the d-1
// traceless diagonal elements. tr(B_j B_k) = delta_jk. For d = 2 this is
// {1, tau_x, tau_y, tau_z}/sqrt(2).
class HermitianBasis {
 public:
  explicit HermitianBasis(int dim);  // throws std::invalid_argument if dim < 2

  int dim() const { return dim_; }
  int size() const { return dim_ * dim_; }
  const Matrix& element(int k) const { return elements_[k]; }
  const std::vector<Matrix>& elements() const { return elements_; }

  // coeffs_k = tr(B_k A); a linear isometry, <vec A, vec B> = tr(AB).
  RealVector vectorize(const Matrix& a) const;
  Matrix devectorize(const RealVector& coeffs) const;
  // In-place variant for hot loops (no allocation when `out` is presized).
  void devectorize_into(const RealVector& coeffs, Matrix& out) const;

 private:
  int dim_;
  std::vector<Matrix> elements_;
};

// Process-wide immutable basis cache (basis values are shared freely
// across threads once built).
const HermitianBasis& shared_basis(int dim);

// 1/2 sum_i |lambda_i(A - B)|.
double trace_distance(const Matrix& a, const Matrix& b);
// sqrt(tr((A - B)^2)) = Frobenius norm of the Hermitian difference.
double hs_distance(const Matrix& a, const Matrix& b);

double purity(const Matrix& rho);

Matrix tensor_product(const Matrix& a, const Matrix& b);

// Traces out every factor not in `keep`. `dims` are the subsystem
// dimensions, slowest index first (consistent with tensor_product).
Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep);

Matrix projector(const Vector& ket);

// Haar-distributed pure state: normalized vector of complex Gaussians.
Vector random_haar_pure(int dim, Xoshiro256pp& rng);
// Hilbert-Schmidt-distributed mixed state: GG^dag / tr(GG^dag).
Matrix random_mixed(int dim, Xoshiro256pp& rng);

// Qubit helpers. A Bloch vector of an estimator may stick out of the
// unit ball; that is expected for linear tomography.
Eigen::Vector3d bloch_vector(const Matrix& rho);
Matrix state_from_bloch(const Eigen::Vector3d& s);
bool bloch_is_physical(const Eigen::Vector3d& s, double tol = 1e-10);

}  // namespace tomolab::opcore
