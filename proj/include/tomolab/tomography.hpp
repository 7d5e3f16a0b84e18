#pragma once

#include "tomolab/povm.hpp"

namespace tomolab::tomography {

using opcore::Matrix;
using opcore::RealVector;
// Row-major so that per-outcome coefficient rows are contiguous for the
// kernels.
using RowMatrixXd = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// F = sum_j |Pi_j>><<Pi_j| / tr(Pi_j) in the shared Hermitian basis.
// In that basis F block-diagonalizes exactly: F[0,0] = 1 on the trace
// sector, and `traceless` is the (d^2-1)-dimensional lower block.
struct FrameSuperoperator {
  int dim = 0;
  Eigen::MatrixXd full;
  Eigen::MatrixXd traceless;
  double condition_number = 0.0;
};

FrameSuperoperator frame_superoperator(const povm::Pom& pom);

struct ReconstructionSet {
  std::vector<Matrix> operators;
  // Row j = vec(Theta_j); the hot path of the estimator assembly.
  RowMatrixXd coeff_rows;
};

// Theta_j = F^{-1} |Pi_j>> / tr(Pi_j). Throws construction_error when the
// measurement is not informationally complete (condition number >= 1e12).
ReconstructionSet canonical_reconstruction(const povm::Pom& pom, const FrameSuperoperator& fso);

struct BornClipInfo {
  int clipped = 0;          // outcomes clipped from [-1e-12, 0) to 0
  double renorm = 1.0;      // applied normalization factor
};

// p_j = tr(Pi_j rho). Values below -1e-12 raise numerical_error; tiny
// negatives are clipped to 0 and the vector renormalized.
std::vector<double> born_probabilities(const povm::Pom& pom, const Matrix& rho,
                                       BornClipInfo* info = nullptr);

// rho_hat = sum_j f_j Theta_j. Hermitian and unit trace, not necessarily
// positive semidefinite.
Matrix linear_estimate(const std::vector<double>& frequencies, const ReconstructionSet& recon,
                       int dim);

struct MseMatrix {
  int dim = 0;
  Eigen::MatrixXd matrix;  // includes the 1/N factor
  long long n_copies = 0;
};

// C(rho) = (sum_j p_j |Theta_j>><<Theta_j| - |rho>><<rho|) / N.
MseMatrix mse_matrix(const povm::Pom& pom, const ReconstructionSet& recon, const Matrix& rho,
                     long long n_copies);

struct ErrorStats {
  double mse = 0.0;       // Tr C
  double variance = 0.0;  // 2 Tr(C^2)
};

ErrorStats error_stats(const povm::Pom& pom, const ReconstructionSet& recon, const Matrix& rho,
                       long long n_copies);

// Symmetric pseudo-inverse with a relative eigenvalue cutoff.
Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& sym, double rel_cutoff = 1e-12);

// n_outcomes x d^2 matrix of vectorized effects (row j = vec(Pi_j)).
RowMatrixXd effect_coeff_rows(const povm::Pom& pom);

}  // namespace tomolab::tomography
