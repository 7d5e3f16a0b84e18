// Numerical search for Heisenberg-Weyl fiducial kets: random restarts +
// L-BFGS on the real parametrization of the ket. The objective is the
// squared deviation of every nontrivial displacement overlap from
// 1/(d+1); it is scale- and phase-invariant, so no explicit gauge
// constraint is needed during descent.

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "tomolab/errors.hpp"
#include "tomolab/povm.hpp"
#include "tomolab/rng.hpp"

namespace tomolab::povm {

namespace {

using opcore::Complex;
using opcore::Vector;

struct Objective {
  int d;
  double target;  // 1/(d+1)

  explicit Objective(int dim) : d(dim), target(1.0 / (dim + 1.0)) {}

  // f(x) and, when grad != nullptr, df/dx. x holds (re, im) pairs.
  double eval(const std::vector<double>& x, std::vector<double>* grad) const {
    Vector v(d);
    for (int i = 0; i < d; ++i) v[i] = Complex(x[2 * i], x[2 * i + 1]);
    const double n = v.squaredNorm();
    const double inv_n2 = 1.0 / (n * n);

    Vector dv(d), dtv(d);
    Vector acc = Vector::Zero(d);  // sum of df/dv* contributions
    const double w = 2.0 * std::numbers::pi / d;
    double f = 0.0;
    for (int k1 = 0; k1 < d; ++k1) {
      for (int k2 = 0; k2 < d; ++k2) {
        if (k1 == 0 && k2 == 0) continue;
        // (X^{k1} Z^{k2} v)[r + k1] = w^{k2 r} v[r]
        for (int r = 0; r < d; ++r) {
          const Complex phase = std::polar(1.0, w * (static_cast<double>(k2) * r));
          dv[(r + k1) % d] = phase * v[r];
          dtv[r] = std::conj(phase) * v[(r + k1) % d];
        }
        const Complex a = v.dot(dv);
        const double y = std::norm(a) * inv_n2;
        const double dev = y - target;
        f += dev * dev;
        if (grad) acc += (2.0 * dev) * ((std::conj(a) * dv + a * dtv) * inv_n2 - (2.0 * y / n) * v);
      }
    }
    if (grad) {
      for (int i = 0; i < d; ++i) {
        (*grad)[2 * i] = 2.0 * acc[i].real();
        (*grad)[2 * i + 1] = 2.0 * acc[i].imag();
      }
    }
    return f;
  }
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double vdot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// L-BFGS with Armijo backtracking. Returns the best f seen; x holds the
// corresponding point on exit.
double lbfgs_minimize(const Objective& obj, std::vector<double>& x, double f_stop) {
  constexpr int kHistory = 8;
  constexpr int kMaxIters = 2000;
  constexpr double kArmijo = 1e-4;

  const std::size_t n = x.size();
  std::vector<double> g(n), g_new(n), x_new(n), dir(n);
  std::vector<std::vector<double>> s_hist, y_hist;
  std::vector<double> rho_hist;

  double f = obj.eval(x, &g);
  for (int iter = 0; iter < kMaxIters; ++iter) {
    if (f < f_stop || inf_norm(g) < 1e-13) break;

    // Two-loop recursion for dir = -H g.
    dir = g;
    const int m = static_cast<int>(s_hist.size());
    std::vector<double> alpha(m);
    for (int i = m - 1; i >= 0; --i) {
      alpha[i] = rho_hist[i] * vdot(s_hist[i], dir);
      for (std::size_t j = 0; j < n; ++j) dir[j] -= alpha[i] * y_hist[i][j];
    }
    if (m > 0) {
      const double gamma =
          vdot(s_hist[m - 1], y_hist[m - 1]) / vdot(y_hist[m - 1], y_hist[m - 1]);
      for (std::size_t j = 0; j < n; ++j) dir[j] *= gamma;
    }
    for (int i = 0; i < m; ++i) {
      const double beta = rho_hist[i] * vdot(y_hist[i], dir);
      for (std::size_t j = 0; j < n; ++j) dir[j] += (alpha[i] - beta) * s_hist[i][j];
    }
    for (std::size_t j = 0; j < n; ++j) dir[j] = -dir[j];

    double slope = vdot(g, dir);
    if (slope >= 0.0) {  // not a descent direction; fall back to steepest descent
      for (std::size_t j = 0; j < n; ++j) dir[j] = -g[j];
      slope = -vdot(g, g);
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
    }

    double step = (m == 0) ? std::min(1.0, 1.0 / std::max(1e-12, inf_norm(g))) : 1.0;
    double f_new = f;
    bool accepted = false;
    for (int ls = 0; ls < 60; ++ls) {
      for (std::size_t j = 0; j < n; ++j) x_new[j] = x[j] + step * dir[j];
      f_new = obj.eval(x_new, &g_new);
      if (f_new <= f + kArmijo * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;

    if (s_hist.size() == kHistory) {
      s_hist.erase(s_hist.begin());
      y_hist.erase(y_hist.begin());
      rho_hist.erase(rho_hist.begin());
    }
    std::vector<double> s(n), yv(n);
    for (std::size_t j = 0; j < n; ++j) {
      s[j] = x_new[j] - x[j];
      yv[j] = g_new[j] - g[j];
    }
    const double sy = vdot(s, yv);
    if (sy > 1e-18) {
      rho_hist.push_back(1.0 / sy);
      s_hist.push_back(std::move(s));
      y_hist.push_back(std::move(yv));
    }
    x.swap(x_new);
    g.swap(g_new);
    f = f_new;
  }
  return f;
}

Vector ket_from_params(const std::vector<double>& x) {
  const int d = static_cast<int>(x.size() / 2);
  Vector v(d);
  for (int i = 0; i < d; ++i) v[i] = Complex(x[2 * i], x[2 * i + 1]);
  v /= v.norm();
  // Gauge: first amplitude real nonnegative.
  if (std::abs(v[0]) > 1e-12) v *= std::conj(v[0]) / std::abs(v[0]);
  return v;
}

}  // namespace

FiducialSearchResult fiducial_search(int d, std::uint64_t seed, int max_restarts) {
  if (d < 2) throw std::invalid_argument("fiducial_search: dimension must be >= 2");
  if (max_restarts < 1) throw std::invalid_argument("fiducial_search: max_restarts must be >= 1");

  const Objective obj(d);
  constexpr double kAccept = 1e-16;

  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  for (int restart = 0; restart < max_restarts; ++restart) {
    Xoshiro256pp rng = derive_stream(seed, 0x71D5ULL, static_cast<std::uint64_t>(restart));
    std::vector<double> x(2 * d);
    for (auto& xi : x) xi = rng.normal();
    const double f = lbfgs_minimize(obj, x, 1e-22);
    if (f < best_f) {
      best_f = f;
      best_x = x;
    }
    if (best_f < kAccept) {
      FiducialSearchResult result;
      result.ket = ket_from_params(best_x);
      result.residual = fiducial_residual(result.ket);
      result.restarts_used = restart + 1;
      return result;
    }
  }
  std::ostringstream os;
  os << "fiducial_search: no fiducial found for d=" << d << " after " << max_restarts
     << " restarts (best residual " << best_f << ")";
  throw construction_error(os.str());
}

}  // namespace tomolab::povm
