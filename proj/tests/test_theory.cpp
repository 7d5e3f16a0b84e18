#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "tomolab/opcore.hpp"
#include "tomolab/theory.hpp"
#include "tomolab/tomography.hpp"

using namespace tomolab;
using namespace tomolab::theory;

namespace {

// Independent oracle for E|X|, X ~ N(0, diag(v)):
// E sqrt(Y) = 1/(2 sqrt(pi)) * int_0^inf (1 - prod_i (1+2 s v_i)^{-1/2}) s^{-3/2} ds.
// Substituting s = t^2 removes the s -> 0 singularity; the s > T^2 tail
// contributes 2/T minus a term bounded by prod_i (2 T^2 v_i)^{-1/2},
// negligible at T = 1000 for the variances used here.
double laplace_mean_norm(const std::array<double, 3>& v) {
  auto g = [&](double t) {
    if (t == 0.0) return 2.0 * (v[0] + v[1] + v[2]);
    double prod = 1.0;
    for (double vi : v) prod *= 1.0 / std::sqrt(1.0 + 2.0 * t * t * vi);
    return 2.0 * (1.0 - prod) / (t * t);
  };
  const double big_t = 1000.0;
  const int n = 200000;  // even
  const double h = big_t / n;
  double acc = g(0.0) + g(big_t);
  for (int i = 1; i < n; ++i) acc += g(i * h) * (i % 2 ? 4.0 : 2.0);
  const double head = acc * h / 3.0;
  const double tail = 2.0 / big_t;
  return (head + tail) / (2.0 * std::sqrt(std::numbers::pi));
}

// Random density-operator moments for admissible (purity, tr rho^3) pairs.
std::pair<double, double> random_moments(int d, Xoshiro256pp& rng) {
  const auto rho = opcore::random_mixed(d, rng);
  const double p2 = opcore::purity(rho);
  const double p3 = (rho * rho * rho).trace().real();
  return {p2, p3};
}

}  // namespace

TEST_CASE("tight_ic_mse") {
  CHECK(tight_ic_mse(4, 0.25, 1.0) == doctest::Approx(18.75));
  CHECK(tight_ic_mse(2, 1.0, 100.0) == doctest::Approx(0.04));
  // depends on the state only through the purity
  CHECK(tight_ic_mse(3, 0.7, 5.0) == doctest::Approx((9.0 + 3.0 - 1.0 - 0.7) / 5.0));
  CHECK_THROWS_AS(tight_ic_mse(2, 0.2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tight_ic_mse(2, 1.2, 1.0), std::invalid_argument);
}

TEST_CASE("rmt_mean_trace_distance") {
  // reference values for the two-qubit joint SIC POM
  CHECK(rmt_mean_trace_distance(4, tight_ic_mse(4, 0.25, 1.0)) ==
        doctest::Approx(3.676).epsilon(2e-4));
  CHECK(rmt_mean_trace_distance(4, tight_ic_mse(4, 1.0, 1.0)) ==
        doctest::Approx(3.601).epsilon(2e-4));
  // qubit completely mixed state: 4/pi
  CHECK(rmt_mean_trace_distance(2, 4.5) == doctest::Approx(4.0 / std::numbers::pi));
  CHECK(rmt_mean_trace_distance(3, 0.0) == 0.0);
  // monotone and homogeneous of degree 1/2 in the mse
  CHECK(rmt_mean_trace_distance(5, 2.0) < rmt_mean_trace_distance(5, 3.0));
  CHECK(rmt_mean_trace_distance(5, 4.0) ==
        doctest::Approx(2.0 * rmt_mean_trace_distance(5, 1.0)));
}

TEST_CASE("mean_hs_distance") {
  // d=2, mse=3: sqrt(2)*Gamma(2)/Gamma(3/2)
  CHECK(mean_hs_distance(2, 3.0) ==
        doctest::Approx(std::sqrt(2.0) / (std::sqrt(std::numbers::pi) / 2.0)).epsilon(1e-12));
  CHECK(mean_hs_distance(4, 0.0) == 0.0);
  // law of large numbers: value approaches sqrt(mse) for large d
  CHECK(mean_hs_distance(50, 7.0) / std::sqrt(7.0) == doctest::Approx(1.0).epsilon(1e-3));
  // large arguments stay finite through the log-Gamma route
  CHECK(std::isfinite(mean_hs_distance(64, 123.0)));
  CHECK(mean_hs_distance(5, 2.0) ==
        doctest::Approx(std::sqrt(2.0) * mean_hs_distance(5, 1.0)).epsilon(1e-12));
}

TEST_CASE("anisotropy functionals") {
  Xoshiro256pp rng(21);
  for (int d : {2, 3, 5}) {
    const auto [p2, p3] = random_moments(d, rng);
    // at the 3-design potential the mean saturates the lower bound
    const auto at_design = anisotropy_functionals(d, p2, p3, phi3_design(d));
    CHECK(at_design.mean_tr_c2 == doctest::Approx(at_design.lower_bound).epsilon(1e-12));
    // at phi2 the simplified upper bound dominates (it drops nonpositive terms)
    const auto at_phi2 = anisotropy_functionals(d, p2, p3, phi2_sic(d));
    CHECK(at_phi2.mean_tr_c2 <= at_phi2.upper_bound + 1e-10);
    // the mean is sandwiched over the admissible phi3 range
    for (int rep = 0; rep < 10; ++rep) {
      const double u = rng.uniform01();
      const double phi3 = phi3_design(d) + u * (phi2_sic(d) - phi3_design(d));
      const auto b = anisotropy_functionals(d, p2, p3, phi3);
      CHECK(b.mean_tr_c2 >= b.lower_bound - 1e-10);
      CHECK(b.mean_tr_c2 <= b.upper_bound + 1e-10);
    }
  }
  // SIC potential at large d approaches (d^2+d)(1+purity)
  const int d = 32;
  const auto b = anisotropy_functionals(d, 2.0 / d, 6.0 / (d * d), phi3_sic(d));
  const double asym = (static_cast<double>(d) * d + d) * (1.0 + 2.0 / d);
  CHECK(b.mean_tr_c2 == doctest::Approx(asym).epsilon(0.05));
  CHECK_THROWS_AS(anisotropy_functionals(2, 0.6, 0.9, 1.0), std::invalid_argument);
}

TEST_CASE("anisotropy functionals against the superoperator route") {
  // For an isotropic measurement C(rho) is unitarily invariant, so the
  // pointwise Tr(C^2) equals the unitary average, which sits exactly at
  // the lower bound (3-design frame potential).
  Xoshiro256pp rng(5);
  const auto octa = povm::qubit_mub_octahedron();
  const auto ro =
      tomography::canonical_reconstruction(octa, tomography::frame_superoperator(octa));
  for (int rep = 0; rep < 5; ++rep) {
    const auto rho = opcore::random_mixed(2, rng);
    const double p2 = opcore::purity(rho);
    const double p3 = (rho * rho * rho).trace().real();
    const double direct = tomography::error_stats(octa, ro, rho, 1).variance / 2.0;
    const auto bounds = anisotropy_functionals(2, p2, p3, phi3_design(2));
    CHECK(direct == doctest::Approx(bounds.mean_tr_c2).epsilon(1e-10));
    CHECK(direct == doctest::Approx(bounds.lower_bound).epsilon(1e-10));
  }

  // For a SIC the formula gives the Haar average over states of a fixed
  // spectrum; Monte Carlo over rotations must land within a few standard
  // errors.
  const auto sic2 = povm::sic_from_fiducial(povm::fiducial_search(2, 3).ket);
  const auto rs =
      tomography::canonical_reconstruction(sic2, tomography::frame_superoperator(sic2));
  const auto seed_state = opcore::random_mixed(2, rng);
  const double p2 = opcore::purity(seed_state);
  const double p3 = (seed_state * seed_state * seed_state).trace().real();
  Eigen::SelfAdjointEigenSolver<opcore::Matrix> es(seed_state);
  const Eigen::VectorXd evs = es.eigenvalues();

  const int reps = 1500;
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < reps; ++i) {
    opcore::Matrix g(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) g(r, c) = std::complex<double>(rng.normal(), rng.normal());
    Eigen::HouseholderQR<opcore::Matrix> qr(g);
    opcore::Matrix q = qr.householderQ();
    const opcore::Matrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < 2; ++c) q.col(c) *= rmat(c, c) / std::abs(rmat(c, c));
    const opcore::Matrix rho = q * evs.asDiagonal() * q.adjoint();
    const double v = tomography::error_stats(sic2, rs, rho, 1).variance / 2.0;
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sum_sq / reps - mean * mean) / reps);
  const auto bounds = anisotropy_functionals(2, p2, p3, phi3_sic(2));
  CHECK(std::abs(mean - bounds.mean_tr_c2) <= 3.0 * se);
  CHECK(bounds.lower_bound <= mean + 3.0 * se);
  CHECK(mean <= bounds.upper_bound + 3.0 * se);
}

TEST_CASE("noisy predictions") {
  for (int d : {2, 3, 8}) {
    const double purity = 1.0 / d;
    const auto clean = noisy_predictions(d, 0.0, purity, 1.0);
    CHECK(clean.mse == doctest::Approx(tight_ic_mse(d, purity, 1.0)).epsilon(1e-12));
  }
  // alpha = 1 costs 4x the copies at the completely mixed state of d = 8
  const auto a0 = noisy_predictions(8, 0.0, 0.125, 1.0);
  const auto a1 = noisy_predictions(8, 1.0, 0.125, 1.0);
  CHECK(a1.mse / a0.mse == doctest::Approx(4.0).epsilon(0.05));
  // large-d asymptotics of the distances
  const auto big = noisy_predictions(64, 0.7, 1.0 / 64, 1.0);
  CHECK(big.mean_trace_distance ==
        doctest::Approx(4.0 / (3.0 * std::numbers::pi) * 1.7 * std::pow(64.0, 1.5))
            .epsilon(0.02));
  CHECK(big.mean_hs_distance == doctest::Approx(1.7 * 64.0).epsilon(0.02));
  CHECK_THROWS_AS(noisy_predictions(2, -0.5, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("qubit mse matrix") {
  const auto iso = qubit_mse_matrix({0.0, 0.0, 0.0}, 10.0);
  CHECK((iso.matrix - 0.3 * Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12);

  const Eigen::Vector3d a1 = povm::tetrahedron_directions()[0];
  for (double z : {0.3, -0.8, 1.0}) {
    const auto qm = qubit_mse_matrix(z * a1, 1.0);
    std::array<double, 3> want = {3.0 - z, 3.0 - z, (3.0 - z) * (1.0 + z)};
    std::sort(want.begin(), want.end());
    for (int i = 0; i < 3; ++i)
      CHECK(qm.ellipsoid.sigma_sq[i] == doctest::Approx(want[i]).epsilon(1e-10));
  }

  Xoshiro256pp rng(14);
  for (int rep = 0; rep < 10; ++rep) {
    Eigen::Vector3d s(rng.normal(), rng.normal(), rng.normal());
    s *= rng.uniform01() / s.norm();
    const auto qm = qubit_mse_matrix(s, 1.0);
    CHECK(qm.matrix.trace() == doctest::Approx(9.0 - s.squaredNorm()).epsilon(1e-12));
  }
}

TEST_CASE("qubit mean error: reference values") {
  // isotropic: sqrt(2/(3 pi)) * 3
  const QubitEllipsoid iso{{3.0, 3.0, 3.0}};
  CHECK(0.5 * qubit_mean_error(iso) ==
        doctest::Approx(std::sqrt(2.0 / (3.0 * std::numbers::pi)) * 3.0).epsilon(1e-12));
  CHECK(0.5 * qubit_mean_error(iso) == doctest::Approx(1.382).epsilon(1e-3));

  // parallel extreme state (z = 1): arctanh branch
  const QubitEllipsoid par{{2.0, 2.0, 4.0}};
  CHECK(0.5 * qubit_mean_error(par) == doctest::Approx(1.295).epsilon(1e-3));

  // antiparallel extreme state (z = -1): one vanishing variance
  const QubitEllipsoid anti{{4.0, 4.0, 0.0}};
  CHECK(0.5 * qubit_mean_error(anti) ==
        doctest::Approx(std::sqrt(std::numbers::pi / 2.0)).epsilon(1e-12));
  CHECK(0.5 * qubit_mean_error(anti) == doctest::Approx(1.2533).epsilon(1e-3));

  // planar degenerate with the pair at zero
  const QubitEllipsoid needle{{0.0, 0.0, 2.0}};
  CHECK(qubit_mean_error(needle) ==
        doctest::Approx(std::sqrt(2.0 / std::numbers::pi) * std::sqrt(2.0)).epsilon(1e-12));

  CHECK(qubit_mean_error(QubitEllipsoid{{0.0, 0.0, 0.0}}) == 0.0);
  CHECK_THROWS_AS(qubit_mean_error(QubitEllipsoid{{-1.0, 1.0, 1.0}}), std::invalid_argument);
}

TEST_CASE("qubit mean error: quadrature vs closed form") {
  Xoshiro256pp rng(33);
  for (int rep = 0; rep < 100; ++rep) {
    const double v_pair = 0.05 + 4.0 * rng.uniform01();
    const double v_odd = 0.05 + 4.0 * rng.uniform01();
    // degenerate pair in a random slot
    std::array<double, 3> v = {v_pair, v_pair, v_odd};
    if (rep % 3 == 1) std::swap(v[0], v[2]);
    if (rep % 3 == 2) std::swap(v[1], v[2]);
    const QubitEllipsoid e{v};
    CHECK(qubit_mean_error(e) == doctest::Approx(qubit_mean_error_quadrature(e)).epsilon(1e-8));
  }
}

TEST_CASE("qubit mean error: quadrature is label-symmetric and matches the oracle") {
  Xoshiro256pp rng(44);
  for (int rep = 0; rep < 25; ++rep) {
    std::array<double, 3> v;
    for (auto& x : v) x = 0.1 + 3.0 * rng.uniform01();
    const double base = qubit_mean_error_quadrature(QubitEllipsoid{v});
    std::array<double, 3> perm = {v[1], v[2], v[0]};
    CHECK(qubit_mean_error_quadrature(QubitEllipsoid{perm}) ==
          doctest::Approx(base).epsilon(1e-9));
    CHECK(base == doctest::Approx(laplace_mean_norm(v)).epsilon(1e-6));
  }
}

TEST_CASE("qubit mean error: branch continuity") {
  // arctan/arctanh branches approach the isotropic value as sigma_3 -> sigma_1
  const double v0 = 2.0;
  const double iso = qubit_mean_error(QubitEllipsoid{{v0, v0, v0}});
  for (double delta : {1e-4, 1e-5, 1e-6}) {
    const double above = qubit_mean_error(QubitEllipsoid{{v0, v0, v0 + delta}});
    const double below = qubit_mean_error(QubitEllipsoid{{v0, v0, v0 - delta}});
    CHECK(std::abs(above - iso) < 1e-4);
    CHECK(std::abs(below - iso) < 1e-4);
  }
  CHECK(std::abs(qubit_mean_error(QubitEllipsoid{{v0, v0, v0 + 1e-7}}) - iso) < 1e-7);
}

TEST_CASE("product predictions") {
  // two-qubit reference values
  const auto mixed = product_predictions({2, 2}, 0.25, {0.5, 0.5}, 1.0);
  CHECK(mixed.mean_trace_distance == doctest::Approx(4.223).epsilon(2e-4));
  const auto pure = product_predictions({2, 2}, 1.0, {1.0, 1.0}, 1.0);
  CHECK(pure.mean_trace_distance == doctest::Approx(4.158).epsilon(2e-4));
  CHECK(mixed.mse == doctest::Approx(24.75));

  // the (3,3) cell is the global maximum of the mse ratio
  const auto cell33 = product_predictions({3, 3}, 1.0 / 9.0, {1.0 / 3.0, 1.0 / 3.0}, 1.0);
  CHECK(cell33.ratio_vs_joint == doctest::Approx(1.36).epsilon(3e-3));
  for (int d1 = 2; d1 <= 8; ++d1)
    for (int d2 = 2; d2 <= 8; ++d2) {
      if (d1 == 3 && d2 == 3) continue;
      const double purity = 1.0 / (d1 * d2);
      const auto p = product_predictions({d1, d2}, purity, {1.0 / d1, 1.0 / d2}, 1.0);
      CHECK(p.ratio_vs_joint < cell33.ratio_vs_joint + 1e-12);
    }

  // large equal dimensions: ratio about 1 + 1/d1 + 1/d2
  const auto big = product_predictions({20, 20}, 1.0 / 400.0, {0.05, 0.05}, 1.0);
  CHECK(big.ratio_vs_joint == doctest::Approx(1.1).epsilon(0.05));

  // multipartite variance at the completely mixed state is exact:
  // cross-check against the superoperator route 2 Tr(C^2)
  const auto sic2 = povm::sic_from_fiducial(povm::fiducial_search(2, 3).ket);
  for (int k : {2, 3}) {
    const auto prod_pom = povm::product_pom(std::vector<povm::Pom>(k, sic2));
    const auto recon = tomography::canonical_reconstruction(
        prod_pom, tomography::frame_superoperator(prod_pom));
    const int d = 1 << k;
    const auto stats = tomography::error_stats(
        prod_pom, recon, opcore::Matrix::Identity(d, d) / d, 1);
    std::vector<double> reduced(k, 0.5);
    const auto pred = k == 2
        ? product_predictions({2, 2}, 1.0 / d, reduced, 1.0)
        : product_predictions(std::vector<int>(k, 2), 1.0 / d, {}, 1.0);
    if (k == 3) {
      REQUIRE(pred.variance.has_value());
      CHECK(*pred.variance == doctest::Approx(stats.variance).epsilon(1e-10));
    } else {
      // the bipartite form is an approximation; same order of magnitude
      REQUIRE(pred.variance.has_value());
      CHECK(*pred.variance == doctest::Approx(stats.variance).epsilon(0.05));
    }
  }

  CHECK_THROWS_AS(product_predictions({2}, 0.5, {}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(product_predictions({2, 1}, 0.5, {}, 1.0), std::invalid_argument);
}

TEST_CASE("multipartite ratio closed form") {
  CHECK(multipartite_mse_ratio_closed_form(2, 1) == doctest::Approx(1.0));
  for (int k = 1; k <= 5; ++k) {
    const int d = 1 << k;
    const double purity = 1.0 / d;
    double prod = 1.0;
    for (int j = 0; j < k; ++j) prod *= 5.0;  // d_j^2 + d_j - 1 at d_j = 2
    const double exact =
        (prod - purity) / (static_cast<double>(d) * d + d - 1.0 - purity);
    CHECK(multipartite_mse_ratio_closed_form(2, k) == doctest::Approx(exact).epsilon(5e-3));
  }
  CHECK_THROWS_AS(multipartite_mse_ratio_closed_form(2, 0), std::invalid_argument);
}
