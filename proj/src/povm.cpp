#include "tomolab/povm.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "tomolab/errors.hpp"

namespace tomolab::povm {

double WeightedStateSet::weight_sum() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

bool WeightedStateSet::valid(double tol) const {
  if (states.size() != weights.size() || states.empty()) return false;
  for (const auto& psi : states)
    if (psi.size() != dim || std::abs(psi.norm() - 1.0) > 1e-10) return false;
  for (double w : weights)
    if (w <= 0.0 || w > 1.0 + tol) return false;
  return std::abs(weight_sum() - dim) <= tol;
}

std::vector<double> Pom::effect_traces() const {
  std::vector<double> t;
  t.reserve(effects.size());
  for (const auto& e : effects) t.push_back(e.trace().real());
  return t;
}

PomValidation validate_pom(const Pom& pom, double tol) {
  PomValidation report;
  if (pom.effects.empty()) {
    report.message = "no effects";
    return report;
  }
  Matrix sum = Matrix::Zero(pom.dim, pom.dim);
  double min_eig = std::numeric_limits<double>::infinity();
  for (const auto& e : pom.effects) {
    if (e.rows() != pom.dim || e.cols() != pom.dim) {
      report.message = "effect dimension mismatch";
      return report;
    }
    sum += e;
    min_eig = std::min(min_eig, opcore::hermitian_eigenvalues(e).minCoeff());
    report.effect_traces.push_back(e.trace().real());
  }
  report.max_completeness_violation =
      (sum - Matrix::Identity(pom.dim, pom.dim)).cwiseAbs().maxCoeff();
  report.min_effect_eigenvalue = min_eig;
  report.passed = report.max_completeness_violation <= tol && min_eig >= -1e-10;
  if (!report.passed) {
    std::ostringstream os;
    os << "completeness violation " << report.max_completeness_violation
       << ", min effect eigenvalue " << min_eig;
    report.message = os.str();
  }
  return report;
}

Matrix hw_displacement(int d, int k1, int k2) {
  if (d < 2) throw std::invalid_argument("hw_displacement: dimension must be >= 2");
  k1 = ((k1 % d) + d) % d;
  k2 = ((k2 % d) + d) % d;
  Matrix m = Matrix::Zero(d, d);
  const double w = 2.0 * std::numbers::pi / d;
  for (int r = 0; r < d; ++r)
    m((r + k1) % d, r) = std::polar(1.0, w * (static_cast<double>(k2) * r));
  return m;
}

Vector apply_displacement(int k1, int k2, const Vector& v) {
  const int d = static_cast<int>(v.size());
  k1 = ((k1 % d) + d) % d;
  k2 = ((k2 % d) + d) % d;
  const double w = 2.0 * std::numbers::pi / d;
  Vector out(d);
  for (int r = 0; r < d; ++r)
    out[(r + k1) % d] = std::polar(1.0, w * (static_cast<double>(k2) * r)) * v[r];
  return out;
}

double fiducial_residual(const Vector& psi) {
  const int d = static_cast<int>(psi.size());
  const double target = 1.0 / (d + 1.0);
  double f = 0.0;
  for (int k1 = 0; k1 < d; ++k1)
    for (int k2 = 0; k2 < d; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const Complex a = psi.dot(apply_displacement(k1, k2, psi));
      const double dev = std::norm(a) - target;
      f += dev * dev;
    }
  return f;
}

double fiducial_max_deviation(const Vector& psi) {
  const int d = static_cast<int>(psi.size());
  const double target = 1.0 / std::sqrt(d + 1.0);
  double worst = 0.0;
  for (int k1 = 0; k1 < d; ++k1)
    for (int k2 = 0; k2 < d; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const Complex a = psi.dot(apply_displacement(k1, k2, psi));
      worst = std::max(worst, std::abs(std::abs(a) - target));
    }
  return worst;
}

Pom sic_from_fiducial(const Vector& psi, double tol) {
  const int d = static_cast<int>(psi.size());
  if (d < 2) throw std::invalid_argument("sic_from_fiducial: dimension must be >= 2");
  Vector ket = psi / psi.norm();

  const double target = 1.0 / std::sqrt(d + 1.0);
  double worst = 0.0;
  int worst_k1 = 0, worst_k2 = 0;
  for (int k1 = 0; k1 < d; ++k1)
    for (int k2 = 0; k2 < d; ++k2) {
      if (k1 == 0 && k2 == 0) continue;
      const double dev = std::abs(std::abs(ket.dot(apply_displacement(k1, k2, ket))) - target);
      if (dev > worst) {
        worst = dev;
        worst_k1 = k1;
        worst_k2 = k2;
      }
    }
  if (worst > tol) {
    std::ostringstream os;
    os << "sic_from_fiducial: fiducial condition violated, deviation " << worst << " at (k1,k2)=("
       << worst_k1 << "," << worst_k2 << ")";
    throw construction_error(os.str());
  }

  Pom pom;
  pom.dim = d;
  WeightedStateSet set;
  set.dim = d;
  const double w = 1.0 / d;
  for (int k1 = 0; k1 < d; ++k1)
    for (int k2 = 0; k2 < d; ++k2) {
      Vector state = apply_displacement(k1, k2, ket);
      pom.effects.push_back(opcore::projector(state) * w);
      set.states.push_back(std::move(state));
      set.weights.push_back(w);
    }
  pom.source = std::move(set);
  return pom;
}

std::array<Eigen::Vector3d, 4> tetrahedron_directions() {
  const double s8 = 2.0 * std::sqrt(2.0) / 3.0;
  const double s2 = std::sqrt(2.0) / 3.0;
  const double s6 = std::sqrt(6.0) / 3.0;
  return {Eigen::Vector3d(0, 0, 1), Eigen::Vector3d(s8, 0, -1.0 / 3.0),
          Eigen::Vector3d(-s2, s6, -1.0 / 3.0), Eigen::Vector3d(-s2, -s6, -1.0 / 3.0)};
}

namespace {

// Unit ket for the pure state with unit Bloch vector a.
Vector ket_from_direction(const Eigen::Vector3d& a) {
  const double theta = std::acos(std::clamp(a[2], -1.0, 1.0));
  const double phi = std::atan2(a[1], a[0]);
  Vector v(2);
  v[0] = std::cos(theta / 2.0);
  v[1] = std::polar(std::sin(theta / 2.0), phi);
  return v;
}

}  // namespace

Pom qubit_tetrahedron() {
  Pom pom;
  pom.dim = 2;
  WeightedStateSet set;
  set.dim = 2;
  for (const auto& a : tetrahedron_directions()) {
    Vector ket = ket_from_direction(a);
    pom.effects.push_back(0.5 * opcore::projector(ket));
    set.states.push_back(std::move(ket));
    set.weights.push_back(0.5);
  }
  pom.source = std::move(set);
  return pom;
}

Pom qubit_mub_octahedron() {
  Pom pom;
  pom.dim = 2;
  WeightedStateSet set;
  set.dim = 2;
  const std::array<Eigen::Vector3d, 6> axes = {
      Eigen::Vector3d(1, 0, 0),  Eigen::Vector3d(-1, 0, 0), Eigen::Vector3d(0, 1, 0),
      Eigen::Vector3d(0, -1, 0), Eigen::Vector3d(0, 0, 1),  Eigen::Vector3d(0, 0, -1)};
  for (const auto& a : axes) {
    Vector ket = ket_from_direction(a);
    pom.effects.push_back(opcore::projector(ket) / 3.0);
    set.states.push_back(std::move(ket));
    set.weights.push_back(1.0 / 3.0);
  }
  pom.source = std::move(set);
  return pom;
}

Pom product_pom(const std::vector<Pom>& factors) {
  if (factors.empty()) throw std::invalid_argument("product_pom: empty factor list");
  Pom out = factors.front();
  for (std::size_t f = 1; f < factors.size(); ++f) {
    const Pom& next = factors[f];
    Pom merged;
    merged.dim = out.dim * next.dim;
    merged.effects.reserve(out.effects.size() * next.effects.size());
    for (const auto& a : out.effects)
      for (const auto& b : next.effects)
        merged.effects.push_back(opcore::tensor_product(a, b));
    if (out.source && next.source) {
      WeightedStateSet set;
      set.dim = merged.dim;
      for (int i = 0; i < out.source->size(); ++i)
        for (int j = 0; j < next.source->size(); ++j) {
          Vector v(merged.dim);
          const Vector& x = out.source->states[i];
          const Vector& y = next.source->states[j];
          for (int r = 0; r < x.size(); ++r)
            v.segment(r * y.size(), y.size()) = x[r] * y;
          set.states.push_back(std::move(v));
          set.weights.push_back(out.source->weights[i] * next.source->weights[j]);
        }
      merged.source = std::move(set);
    }
    out = std::move(merged);
  }
  return out;
}

Pom noisy_sic(const Pom& sic, double alpha) {
  if (alpha < 0.0) throw std::invalid_argument("noisy_sic: alpha must be >= 0");
  const int d = sic.dim;
  if (!sic.source || sic.outcomes() != d * d)
    throw construction_error("noisy_sic: input is not a SIC POM (rank-one source with d^2 outcomes required)");
  for (const auto& t : sic.effect_traces())
    if (std::abs(t - 1.0 / d) > 1e-8)
      throw construction_error("noisy_sic: input is not a SIC POM (effect trace != 1/d)");

  Pom pom;
  pom.dim = d;
  const double denom = d * alpha + d;
  const Matrix noise = Matrix::Identity(d, d) * (alpha / d);
  for (const auto& psi : sic.source->states)
    pom.effects.push_back((noise + opcore::projector(psi)) / denom);
  return pom;
}

void save_fiducial(const std::string& path, const Vector& ket) {
  nlohmann::json j;
  j["d"] = static_cast<int>(ket.size());
  auto& amps = j["amplitudes"] = nlohmann::json::array();
  for (int i = 0; i < ket.size(); ++i)
    amps.push_back({ket[i].real(), ket[i].imag()});
  std::ofstream os(path);
  if (!os) throw construction_error("save_fiducial: cannot open " + path);
  os << j.dump(2) << "\n";
}

Vector load_fiducial(const std::string& path, double tol) {
  std::ifstream is(path);
  if (!is) throw construction_error("load_fiducial: cannot open " + path);
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw construction_error("load_fiducial: bad JSON in " + path + ": " + e.what());
  }
  if (!j.contains("d") || !j.contains("amplitudes"))
    throw construction_error("load_fiducial: missing \"d\" or \"amplitudes\" in " + path);
  const int d = j["d"].get<int>();
  const auto& amps = j["amplitudes"];
  if (d < 2 || static_cast<int>(amps.size()) != d)
    throw construction_error("load_fiducial: amplitude count does not match d in " + path);
  Vector ket(d);
  for (int i = 0; i < d; ++i)
    ket[i] = Complex(amps[i][0].get<double>(), amps[i][1].get<double>());
  const double norm = ket.norm();
  if (norm <= 0.0) throw construction_error("load_fiducial: zero vector in " + path);
  ket /= norm;
  const double dev = fiducial_max_deviation(ket);
  if (dev > tol) {
    std::ostringstream os;
    os << "load_fiducial: fiducial condition violated (max deviation " << dev << " > tol " << tol
       << ") in " << path;
    throw construction_error(os.str());
  }
  return ket;
}

}  // namespace tomolab::povm
