#include "tomolab/opcore.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace tomolab::opcore {

namespace {

void require_square(const Matrix& a, const char* who) {
  if (a.rows() != a.cols()) throw std::invalid_argument(std::string(who) + ": matrix not square");
}

void require_same_dim(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument(std::string(who) + ": dimension mismatch");
}

}  // namespace

bool is_hermitian(const Matrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_density_operator(const Matrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  if (std::abs(a.trace().real() - 1.0) > tol || std::abs(a.trace().imag()) > tol) return false;
  return hermitian_eigenvalues(a).minCoeff() >= -1e-10;
}

Matrix symmetrized(const Matrix& a) {
  require_square(a, "symmetrized");
  return 0.5 * (a + a.adjoint());
}

RealVector hermitian_eigenvalues(const Matrix& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrized(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

HermitianBasis::HermitianBasis(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("HermitianBasis: dimension must be >= 2");
  const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(dim));
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  elements_.reserve(static_cast<std::size_t>(dim) * dim);

  elements_.push_back(Matrix::Identity(dim, dim) * inv_sqrt_d);
  for (int j = 0; j < dim; ++j) {
    for (int k = j + 1; k < dim; ++k) {
      Matrix sym = Matrix::Zero(dim, dim);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      elements_.push_back(sym);
      Matrix asym = Matrix::Zero(dim, dim);
      asym(j, k) = Complex(0.0, -inv_sqrt2);
      asym(k, j) = Complex(0.0, inv_sqrt2);
      elements_.push_back(asym);
    }
  }
  for (int l = 1; l < dim; ++l) {
    const double f = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    Matrix diag = Matrix::Zero(dim, dim);
    for (int j = 0; j < l; ++j) diag(j, j) = f;
    diag(l, l) = -f * l;
    elements_.push_back(diag);
  }
}

RealVector HermitianBasis::vectorize(const Matrix& a) const {
  if (a.rows() != dim_ || a.cols() != dim_)
    throw std::invalid_argument("vectorize: dimension mismatch");
  const double sqrt2 = std::sqrt(2.0);
  RealVector c(size());
  c[0] = a.trace().real() / std::sqrt(static_cast<double>(dim_));
  int idx = 1;
  for (int j = 0; j < dim_; ++j) {
    for (int k = j + 1; k < dim_; ++k) {
      c[idx++] = sqrt2 * a(j, k).real();
      c[idx++] = -sqrt2 * a(j, k).imag();
    }
  }
  for (int l = 1; l < dim_; ++l) {
    const double f = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    double s = 0.0;
    for (int j = 0; j < l; ++j) s += a(j, j).real();
    c[idx++] = f * (s - l * a(l, l).real());
  }
  return c;
}

Matrix HermitianBasis::devectorize(const RealVector& coeffs) const {
  Matrix out(dim_, dim_);
  devectorize_into(coeffs, out);
  return out;
}

void HermitianBasis::devectorize_into(const RealVector& coeffs, Matrix& out) const {
  if (coeffs.size() != size()) throw std::invalid_argument("devectorize: coefficient count");
  out.resize(dim_, dim_);
  out.setZero();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const double c0 = coeffs[0] / std::sqrt(static_cast<double>(dim_));
  for (int j = 0; j < dim_; ++j) out(j, j) = c0;
  int idx = 1;
  for (int j = 0; j < dim_; ++j) {
    for (int k = j + 1; k < dim_; ++k) {
      const double cs = coeffs[idx++];
      const double ca = coeffs[idx++];
      const Complex v(inv_sqrt2 * cs, -inv_sqrt2 * ca);
      out(j, k) = v;
      out(k, j) = std::conj(v);
    }
  }
  for (int l = 1; l < dim_; ++l) {
    const double f = coeffs[idx++] / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int j = 0; j < l; ++j) out(j, j) += f;
    out(l, l) -= f * l;
  }
}

const HermitianBasis& shared_basis(int dim) {
  static std::mutex mu;
  static std::map<int, HermitianBasis> cache;
  std::scoped_lock lock(mu);
  auto it = cache.find(dim);
  if (it == cache.end()) it = cache.emplace(dim, HermitianBasis(dim)).first;
  return it->second;
}

double trace_distance(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "trace_distance");
  return 0.5 * hermitian_eigenvalues(a - b).cwiseAbs().sum();
}

double hs_distance(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "hs_distance");
  return (a - b).norm();
}

double purity(const Matrix& rho) {
  require_square(rho, "purity");
  return (rho * rho).trace().real();
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  const Eigen::Index ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
  Matrix out(ra * rb, ca * cb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ca; ++j) out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  require_square(rho, "partial_trace");
  long long total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial_trace: bad subsystem dimension");
    total *= d;
  }
  if (total != rho.rows())
    throw std::invalid_argument("partial_trace: dims inconsistent with operator dimension");

  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = true;
  }

  long long dim_keep = 1, dim_trace = 1;
  for (int i = 0; i < n; ++i) (kept[i] ? dim_keep : dim_trace) *= dims[i];

  // Strides of each factor in the full row-major composite index.
  std::vector<long long> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  auto expand = [&](long long keep_idx, long long trace_idx) {
    long long full = 0;
    long long ki = keep_idx, ti = trace_idx;
    for (int i = n - 1; i >= 0; --i) {
      const long long d = dims[i];
      if (kept[i]) {
        full += (ki % d) * stride[i];
        ki /= d;
      } else {
        full += (ti % d) * stride[i];
        ti /= d;
      }
    }
    return full;
  };

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (long long r = 0; r < dim_keep; ++r)
    for (long long c = 0; c < dim_keep; ++c) {
      Complex acc = 0.0;
      for (long long t = 0; t < dim_trace; ++t) acc += rho(expand(r, t), expand(c, t));
      out(r, c) = acc;
    }
  return out;
}

Matrix projector(const Vector& ket) { return ket * ket.adjoint(); }

Vector random_haar_pure(int dim, Xoshiro256pp& rng) {
  if (dim < 1) throw std::invalid_argument("random_haar_pure: dimension must be >= 1");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v[i] = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

Matrix random_mixed(int dim, Xoshiro256pp& rng) {
  if (dim < 1) throw std::invalid_argument("random_mixed: dimension must be >= 1");
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
  Matrix rho = g * g.adjoint();
  return rho / rho.trace().real();
}

Eigen::Vector3d bloch_vector(const Matrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw std::invalid_argument("bloch_vector: qubit expected");
  Eigen::Vector3d s;
  s[0] = 2.0 * rho(0, 1).real();
  s[1] = -2.0 * rho(0, 1).imag();
  s[2] = (rho(0, 0) - rho(1, 1)).real();
  return s;
}

Matrix state_from_bloch(const Eigen::Vector3d& s) {
  Matrix rho(2, 2);
  rho(0, 0) = 0.5 * (1.0 + s[2]);
  rho(1, 1) = 0.5 * (1.0 - s[2]);
  rho(0, 1) = 0.5 * Complex(s[0], -s[1]);
  rho(1, 0) = 0.5 * Complex(s[0], s[1]);
  return rho;
}

bool bloch_is_physical(const Eigen::Vector3d& s, double tol) { return s.norm() <= 1.0 + tol; }

}  // namespace tomolab::opcore
