#include "tomolab/tomography.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "tomolab/errors.hpp"
#include "tomolab/kernels.hpp"

namespace tomolab::tomography {

RowMatrixXd effect_coeff_rows(const povm::Pom& pom) {
  const auto& basis = opcore::shared_basis(pom.dim);
  RowMatrixXd rows(pom.outcomes(), basis.size());
  for (int j = 0; j < pom.outcomes(); ++j) rows.row(j) = basis.vectorize(pom.effects[j]);
  return rows;
}

FrameSuperoperator frame_superoperator(const povm::Pom& pom) {
  if (pom.effects.empty()) throw std::invalid_argument("frame_superoperator: no effects");
  FrameSuperoperator fso;
  fso.dim = pom.dim;
  const RowMatrixXd rows = effect_coeff_rows(pom);
  Eigen::VectorXd inv_traces(pom.outcomes());
  for (int j = 0; j < pom.outcomes(); ++j) {
    const double t = pom.effects[j].trace().real();
    if (t <= 1e-14) throw std::invalid_argument("frame_superoperator: effect with zero trace");
    inv_traces[j] = 1.0 / t;
  }
  fso.full = rows.transpose() * inv_traces.asDiagonal() * rows;
  const int d2 = fso.full.rows();
  fso.traceless = fso.full.bottomRightCorner(d2 - 1, d2 - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(fso.full, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  fso.condition_number =
      lo > hi * 1e-300 ? hi / lo : std::numeric_limits<double>::infinity();
  return fso;
}

Eigen::MatrixXd pseudo_inverse(const Eigen::MatrixXd& sym, double rel_cutoff) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double cutoff = ev.cwiseAbs().maxCoeff() * rel_cutoff;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    if (std::abs(ev[i]) > cutoff) inv[i] = 1.0 / ev[i];
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

ReconstructionSet canonical_reconstruction(const povm::Pom& pom, const FrameSuperoperator& fso) {
  if (!(fso.condition_number < 1e12))
    throw construction_error(
        "canonical_reconstruction: frame superoperator is singular (measurement not "
        "informationally complete)");
  const auto& basis = opcore::shared_basis(pom.dim);
  const RowMatrixXd rows = effect_coeff_rows(pom);
  const Eigen::MatrixXd f_inv = pseudo_inverse(fso.full);

  ReconstructionSet recon;
  recon.coeff_rows.resize(pom.outcomes(), basis.size());
  recon.operators.reserve(pom.outcomes());
  for (int j = 0; j < pom.outcomes(); ++j) {
    const double t = pom.effects[j].trace().real();
    recon.coeff_rows.row(j) = (f_inv * rows.row(j).transpose()).transpose() / t;
    recon.operators.push_back(basis.devectorize(recon.coeff_rows.row(j)));
  }
  return recon;
}

std::vector<double> born_probabilities(const povm::Pom& pom, const Matrix& rho,
                                       BornClipInfo* info) {
  if (rho.rows() != pom.dim || rho.cols() != pom.dim)
    throw std::invalid_argument("born_probabilities: dimension mismatch");
  const auto& basis = opcore::shared_basis(pom.dim);
  const RealVector vec_rho = basis.vectorize(rho);
  const RowMatrixXd rows = effect_coeff_rows(pom);

  std::vector<double> p(pom.outcomes());
  BornClipInfo local;
  double sum = 0.0;
  for (int j = 0; j < pom.outcomes(); ++j) {
    double pj = kernels::dot(rows.row(j).data(), vec_rho.data(),
                             static_cast<std::size_t>(vec_rho.size()));
    if (pj < -1e-12)
      throw numerical_error("born_probabilities: probability below clipping floor");
    if (pj < 0.0) {
      pj = 0.0;
      ++local.clipped;
    }
    p[j] = pj;
    sum += pj;
  }
  if (std::abs(sum - 1.0) > 1e-10 || local.clipped > 0) {
    if (sum <= 0.0) throw numerical_error("born_probabilities: degenerate distribution");
    local.renorm = 1.0 / sum;
    for (double& pj : p) pj *= local.renorm;
  }
  if (info) *info = local;
  return p;
}

Matrix linear_estimate(const std::vector<double>& frequencies, const ReconstructionSet& recon,
                       int dim) {
  if (static_cast<Eigen::Index>(frequencies.size()) != recon.coeff_rows.rows())
    throw std::invalid_argument("linear_estimate: frequency count mismatch");
  double sum = 0.0;
  for (double f : frequencies) {
    if (f < 0.0) throw std::invalid_argument("linear_estimate: negative frequency");
    sum += f;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("linear_estimate: frequencies must sum to 1");
  const auto& basis = opcore::shared_basis(dim);
  RealVector coeffs(basis.size());
  kernels::weighted_sum_rows(recon.coeff_rows.data(), frequencies.data(),
                             static_cast<std::size_t>(recon.coeff_rows.rows()),
                             static_cast<std::size_t>(recon.coeff_rows.cols()), coeffs.data());
  return basis.devectorize(coeffs);
}

MseMatrix mse_matrix(const povm::Pom& pom, const ReconstructionSet& recon, const Matrix& rho,
                     long long n_copies) {
  const auto& basis = opcore::shared_basis(pom.dim);
  const std::vector<double> p = born_probabilities(pom, rho);
  const RealVector vec_rho = basis.vectorize(rho);
  const Eigen::Map<const Eigen::VectorXd> pv(p.data(), static_cast<Eigen::Index>(p.size()));

  MseMatrix out;
  out.dim = pom.dim;
  out.n_copies = n_copies;
  out.matrix = (recon.coeff_rows.transpose() * pv.asDiagonal() * recon.coeff_rows -
                vec_rho * vec_rho.transpose()) /
               static_cast<double>(n_copies);
  return out;
}

ErrorStats error_stats(const povm::Pom& pom, const ReconstructionSet& recon, const Matrix& rho,
                       long long n_copies) {
  const std::vector<double> p = born_probabilities(pom, rho);
  const std::size_t len = static_cast<std::size_t>(recon.coeff_rows.cols());
  double sum_p_theta2 = 0.0;
  for (int j = 0; j < recon.coeff_rows.rows(); ++j)
    sum_p_theta2 += p[j] * kernels::sum_sq(recon.coeff_rows.row(j).data(), len);

  ErrorStats stats;
  stats.mse = (sum_p_theta2 - opcore::purity(rho)) / static_cast<double>(n_copies);
  const MseMatrix c = mse_matrix(pom, recon, rho, n_copies);
  stats.variance = 2.0 * c.matrix.squaredNorm();
  return stats;
}

}  // namespace tomolab::tomography
