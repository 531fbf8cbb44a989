#include <catch2/catch_amalgamated.hpp>

#include "nzflow/landscape.hpp"
#include "support/oracles.hpp"

using namespace nzflow;

namespace {

// Random point comfortably inside the domain (margin keeps finite-difference
// stencils valid and third derivatives bounded).
OverlapPoint random_interior(Rng& rng) {
  OverlapPoint p;
  p.z = 0.05 + 0.4 * rng.unit();
  p.z00 = (0.05 + 0.9 * rng.unit()) * p.z;
  p.z11 = (0.05 + 0.9 * rng.unit()) * p.z;
  p.z01 = (0.05 + 0.9 * rng.unit()) * (0.5 - p.z);
  p.z10 = (0.05 + 0.9 * rng.unit()) * (0.5 - p.z);
  return p;
}

}  // namespace

TEST_CASE("point agreement density") {
  CHECK(point_agreement(interior_peak()) == Catch::Approx(1.25).margin(1e-15));
  CHECK(point_agreement({0.0, 0.0, 0.5, 0.5, 0.0}) == Catch::Approx(0.0).margin(1e-15));
  CHECK(point_agreement({0.5, 0.5, 0.0, 0.0, 0.5}) == Catch::Approx(2.5).margin(1e-15));
  CHECK_THROWS_AS(point_agreement({0.6, 0, 0, 0, 0}), std::domain_error);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double b = point_agreement(uniform_domain_sample(rng));
    CHECK(b >= 0.0);
    CHECK(b <= 2.5);
  }
}

TEST_CASE("growth rate at the peak and on the boundary") {
  CHECK(std::fabs(growth_rate(interior_peak()) - std::log(25.0 / 8.0)) < 1e-12);

  // The (0,0,1/2,1/2,0) corner evaluates to half the peak value. (A quoted
  // value for it is log(5/8) ~ -0.47; direct evaluation contradicts that,
  // and only "strictly below the peak" matters.)
  const double corner = growth_rate({0.0, 0.0, 0.5, 0.5, 0.0});
  CHECK(std::fabs(corner - 0.5 * std::log(25.0 / 8.0)) < 1e-12);
  CHECK(corner < std::log(25.0 / 8.0));
  CHECK(std::fabs(corner - std::log(5.0 / 8.0)) > 1.0);  // nowhere near the quoted value

  CHECK_THROWS_AS(growth_rate({0.4, 0.5, 0, 0, 0}), std::domain_error);
}

TEST_CASE("growth rate swap symmetry") {
  Rng rng(17);
  for (int i = 0; i < 100; ++i) {
    OverlapPoint p = uniform_domain_sample(rng);
    OverlapPoint q{p.z, p.z11, p.z10, p.z01, p.z00};
    CHECK(std::fabs(growth_rate(p) - growth_rate(q)) < 1e-12);
  }
}

TEST_CASE("stirling prefactor at the peak") {
  const double g1 = stirling_prefactor(interior_peak(), 1.0);
  CHECK(std::fabs(g1 - 1562.5 * std::pow(kPi, -2.5)) < 1e-10);
  CHECK(g1 == Catch::Approx(89.3192).epsilon(1e-5));
  // (pi n)^{-5/2} scaling
  const double g4 = stirling_prefactor(interior_peak(), 4.0);
  CHECK(std::fabs(g4 - g1 / 32.0) < 1e-15);
  CHECK_THROWS_AS(stirling_prefactor({0.25, 0.0, 0.05, 0.05, 0.05}, 1.0), std::domain_error);
}

TEST_CASE("gradient vanishes at the peak and matches finite differences") {
  const Vector5 g0 = growth_rate_gradient(interior_peak());
  for (double g : g0) CHECK(std::fabs(g) < 1e-10);

  Rng rng(23);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const OverlapPoint p = random_interior(rng);
    const Vector5 a = growth_rate_gradient(p);
    const Vector5 fd = oracle::fd_gradient(p, 1e-6);
    for (int c = 0; c < 5; ++c) worst = std::max(worst, std::fabs(a[c] - fd[c]));
  }
  CHECK(worst < 1e-6);

  CHECK_THROWS_AS(growth_rate_gradient({0.25, 0.0, 0.05, 0.05, 0.05}), std::domain_error);
}

TEST_CASE("the printed z00 partial derivative form") {
  // log[(z - z00) b / (2 z00 (3 - 2z - 2z00 + 2z01 + 2z10 - 2z11))] evaluated
  // directly, at the worked point and at random interior points
  auto printed = [](const OverlapPoint& p) {
    const double b = p.z + 1 + p.z00 - p.z01 - p.z10 + p.z11;
    return std::log((p.z - p.z00) * b /
                    (2 * p.z00 * (3 - 2 * p.z - 2 * p.z00 + 2 * p.z01 + 2 * p.z10 - 2 * p.z11)));
  };
  const OverlapPoint worked{0.25, 0.10, 0.05, 0.05, 0.05};
  CHECK(std::fabs(growth_rate_gradient(worked)[1] - printed(worked)) < 1e-12);
  Rng rng(29);
  for (int i = 0; i < 100; ++i) {
    const OverlapPoint p = random_interior(rng);
    CHECK(std::fabs(growth_rate_gradient(p)[1] - printed(p)) < 1e-9);
  }
}

TEST_CASE("stationary polynomials vanish exactly at the peak") {
  const Vector5 q = stationary_polynomials(interior_peak());
  for (double v : q) CHECK(std::fabs(v) < 1e-12);

  // exp(partial) = 1 iff the polynomial vanishes: check the sign linkage
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const OverlapPoint p = random_interior(rng);
    const Vector5 g = growth_rate_gradient(p);
    const Vector5 poly = stationary_polynomials(p);
    for (int c = 0; c < 5; ++c) CHECK((g[c] > 0) == (poly[c] > 0));
  }
}

TEST_CASE("elimination certificates") {
  CHECK(std::fabs(stationary_eliminant(interior_peak())) < 1e-12);
  // term-by-term: 1.25 - 0.25 - 0.625 + 0.125 - 0.125 - 0.375 = 0
  CHECK(std::fabs(5 * 0.25 - 5 * 0.05 - 10 * 0.0625 + 10 * 0.25 * 0.05 - 10 * 0.05 * 0.25 -
                  150 * 0.05 * 0.05) < 1e-15);

  CHECK(std::fabs(slice_eliminant(0.25, 0.05)) < 1e-12);
  CHECK(slice_eliminant_peak_factor(0.05) == 0.0);

  // over z = 1/4 the slice eliminant factors as -(15/16)(20x-1)(96x^2-84x-1)
  Rng rng(37);
  for (int i = 0; i < 50; ++i) {
    const double x = 0.25 * rng.unit();
    const double factored = -(15.0 / 16.0) * (20 * x - 1) * (96 * x * x - 84 * x - 1);
    CHECK(std::fabs(slice_eliminant(0.25, x) - factored) < 1e-12);
  }
  // the quadratic factor has no root in [0, 1/4]
  for (double x = 0.0; x <= 0.25 + 1e-12; x += 1.0 / 512) {
    CHECK(96 * x * x - 84 * x - 1 < 0);
  }
}

TEST_CASE("boundary face function") {
  // the z = 1/2 face with z01 = z10 = 0 gives exactly the same function
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    const double a = 0.5 * rng.unit(), c = 0.5 * rng.unit();
    CHECK(std::fabs(growth_rate({0.5, a, 0.0, 0.0, c}) - boundary_growth_rate(a, c)) < 1e-12);
  }
  CHECK(std::fabs(boundary_growth_rate(0.5, 0.5) - growth_rate({0.0, 0.0, 0.5, 0.5, 0.0})) < 1e-12);
  CHECK_THROWS_AS(boundary_growth_rate(0.6, 0.1), std::domain_error);
}

TEST_CASE("boundary case analysis") {
  const BoundaryCaseReport r = analyze_boundary_cases();
  CHECK(r.all_below_peak);
  CHECK(std::fabs(r.corner_value - 0.5 * std::log(25.0 / 8.0)) < 1e-12);
  CHECK(std::fabs(r.corner_value_quoted - std::log(5.0 / 8.0)) < 1e-15);
  CHECK(std::fabs(r.mirror_corner_value - r.corner_value) < 1e-12);

  // the diagonal has exactly one stationary point, at t = 1/4, where the
  // face attains its maximum (3/2) log(8/5)
  REQUIRE(r.diagonal_stationary_t.size() == 1);
  CHECK(std::fabs(r.diagonal_stationary_t[0] - 0.25) < 1e-6);
  const double face_peak = 1.5 * std::log(8.0 / 5.0);
  CHECK(std::fabs(r.diagonal_stationary_value[0] - face_peak) < 1e-9);
  CHECK(std::fabs(r.face_max_value - face_peak) < 1e-7);
  CHECK(r.face_max_value < r.interior_peak_value);
}

TEST_CASE("multistart maximization finds the peak", "[slow]") {
  const auto maxima = maximize_growth_rate(100, 1e-9, 4321);
  REQUIRE_FALSE(maxima.empty());
  const LocalMaximum& best = maxima.front();
  double dist = 0.0;
  for (int c = 0; c < 5; ++c) {
    const double d = best.point[c] - interior_peak()[c];
    dist += d * d;
  }
  CHECK(std::sqrt(dist) < 1e-6);
  CHECK(std::fabs(best.value - std::log(25.0 / 8.0)) < 1e-9);
  CHECK(best.interior);

  // every candidate (including the appended boundary corners) stays below
  for (const auto& m : maxima) CHECK(m.value <= std::log(25.0 / 8.0) + 1e-9);

  // the two corner candidates are reported, with equal values
  double corner_val = -1;
  int corners = 0;
  for (const auto& m : maxima)
    if (!m.interior && std::fabs(m.value - 0.5 * std::log(25.0 / 8.0)) < 1e-9) {
      ++corners;
      corner_val = m.value;
    }
  CHECK(corners >= 2);
  CHECK(corner_val > 0);
}

TEST_CASE("domain sampling never beats the peak", "[slow]") {
  Rng rng(54321);
  const double cap = std::log(25.0 / 8.0) + 1e-9;
  for (int i = 0; i < 100000; ++i) CHECK(growth_rate(uniform_domain_sample(rng)) <= cap);
}

TEST_CASE("quadratic form at the peak") {
  const Matrix5 h = growth_rate_hessian(interior_peak());
  const Matrix5 b = peak_quadratic_form();
  double worst = 0.0, asym = 0.0;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      worst = std::max(worst, std::fabs(h[i][j] - b[i][j]));
      asym = std::max(asym, std::fabs(h[i][j] - h[j][i]));
    }
  CHECK(worst < 1e-6);
  CHECK(asym < 1e-8);
  CHECK(h[0][0] == Catch::Approx(-9.2).margin(1e-6));
  CHECK(h[0][1] == Catch::Approx(3.3).margin(1e-6));
  CHECK(h[1][1] == Catch::Approx(-11.7).margin(1e-6));

  CHECK_THROWS_AS(growth_rate_hessian({0.25, 0.05, 0.0, 0.05, 0.05}), std::domain_error);
}

TEST_CASE("Taylor expansion about the peak") {
  // residual of f(peak + s u) - log(25/8) - s^2 u^T B u is cubic in s
  const Matrix5 b = peak_quadratic_form();
  Rng rng(61);
  Vector5 u{};
  double norm = 0.0;
  for (int c = 0; c < 5; ++c) {
    u[c] = rng.unit() - 0.3;
    norm += u[c] * u[c];
  }
  norm = std::sqrt(norm);
  for (int c = 0; c < 5; ++c) u[c] /= norm;

  auto residual = [&](double s) {
    OverlapPoint p = interior_peak();
    for (int c = 0; c < 5; ++c) p[c] += s * u[c];
    double quad = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) quad += u[i] * b[i][j] * u[j];
    return growth_rate(p) - std::log(25.0 / 8.0) - s * s * quad;
  };
  const double r2 = std::fabs(residual(1e-2));
  const double r3 = std::fabs(residual(1e-3));
  CHECK(r2 / std::pow(1e-2, 3) < 50.0);
  CHECK(r3 / std::pow(1e-3, 3) < 50.0);
  const double decay = r3 / r2;
  CHECK(decay > 1e-3 / 3.0);
  CHECK(decay < 3e-3);
}

TEST_CASE("curvature spectrum") {
  const CurvatureSpectrum s = curvature_spectrum();
  const double root = std::sqrt(697.0);
  const Vector5 expected{(-37.0 - root) / 4.0, -12.5, -12.5, -12.5, (-37.0 + root) / 4.0};
  for (int i = 0; i < 5; ++i) CHECK(std::fabs(s.eigenvalues[i] - expected[i]) < 1e-8);
  CHECK(s.eigenvalues[0] == Catch::Approx(-15.850190).margin(1e-6));
  CHECK(s.eigenvalues[4] == Catch::Approx(-2.649810).margin(1e-6));
  for (double ev : s.eigenvalues) CHECK(ev < -2.6);

  CHECK(s.determinant == Rational(-328125, 4));
  double prod = 1.0;
  for (double ev : s.eigenvalues) prod *= ev;
  CHECK(std::fabs(prod - s.determinant.convert_to<double>()) <
        1e-6 * std::fabs(s.determinant.convert_to<double>()));
}

TEST_CASE("Laplace coefficient") {
  const double lc = laplace_coefficient();
  const double target = 25.0 / std::sqrt(21.0);
  CHECK(std::fabs(lc - target) < 1e-10 * target);
  CHECK(std::fabs(lc - 1562.5 / std::sqrt(82031.25)) < 1e-10);
  CHECK(std::fabs(lc * lc - 625.0 / 21.0) < 1e-10);
  // dividing by the squared first-moment coefficient sqrt(5)^2
  CHECK(std::fabs(lc / 5.0 - 5.0 / std::sqrt(21.0)) < 1e-10);
}
