#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nzflow/rational.hpp"
#include "nzflow/rng.hpp"

namespace nzflow {

// Continuum image of an overlap index, z = k/n. The domain mirrors the
// integer constraints: 0 <= z <= 1/2, z00,z11 <= z, z01,z10 <= 1/2 - z,
// everything non-negative.
struct OverlapPoint {
  double z = 0, z00 = 0, z01 = 0, z10 = 0, z11 = 0;

  double operator[](int i) const {
    switch (i) {
      case 0: return z;
      case 1: return z00;
      case 2: return z01;
      case 3: return z10;
      default: return z11;
    }
  }
  double& operator[](int i) {
    switch (i) {
      case 0: return z;
      case 1: return z00;
      case 2: return z01;
      case 3: return z10;
      default: return z11;
    }
  }

  std::array<double, 5> to_array() const { return {z, z00, z01, z10, z11}; }
};

using Matrix5 = std::array<std::array<double, 5>, 5>;
using Vector5 = std::array<double, 5>;

inline constexpr double kPi = 3.14159265358979323846;

// The unique interior stationary point (and global maximum) of the rate
// function: (1/4, 1/20, 1/20, 1/20, 1/20).
inline OverlapPoint interior_peak() { return {0.25, 0.05, 0.05, 0.05, 0.05}; }

inline double peak_value() { return std::log(25.0 / 8.0); }

inline bool in_domain(const OverlapPoint& p, double tol = 1e-12) {
  return p.z >= -tol && p.z <= 0.5 + tol && p.z00 >= -tol && p.z11 >= -tol &&
         std::max(p.z00, p.z11) <= p.z + tol && p.z01 >= -tol && p.z10 >= -tol &&
         std::max(p.z01, p.z10) <= 0.5 - p.z + tol;
}

inline void require_in_domain(const OverlapPoint& p, const char* who, double tol = 1e-12) {
  if (!in_domain(p, tol)) throw std::domain_error(std::string(who) + ": point outside the domain");
}

// Margin of the nearest domain face; > 0 strictly inside.
inline double interior_margin(const OverlapPoint& p) {
  double m = std::min({p.z, 0.5 - p.z, p.z00, p.z - p.z00, p.z11, p.z - p.z11, p.z01,
                       0.5 - p.z - p.z01, p.z10, 0.5 - p.z - p.z10});
  return m;
}

// Coordinate clipping onto the domain (z first, then the dependent coords).
inline OverlapPoint clip_to_domain(OverlapPoint p) {
  p.z = std::clamp(p.z, 0.0, 0.5);
  p.z00 = std::clamp(p.z00, 0.0, p.z);
  p.z11 = std::clamp(p.z11, 0.0, p.z);
  p.z01 = std::clamp(p.z01, 0.0, 0.5 - p.z);
  p.z10 = std::clamp(p.z10, 0.0, 0.5 - p.z);
  return p;
}

// Uniform sample of the domain by rejection from the bounding box
// [0, 1/2]^5 (acceptance rate 1/30).
inline OverlapPoint uniform_domain_sample(Rng& rng) {
  for (;;) {
    OverlapPoint p{0.5 * rng.unit(), 0.5 * rng.unit(), 0.5 * rng.unit(), 0.5 * rng.unit(),
                   0.5 * rng.unit()};
    if (in_domain(p, 0.0)) return p;
  }
}

// x log x, extended continuously by 0 at x = 0 (and hard-set to 0 for any
// x <= 1e-300 to keep boundary evaluations finite).
inline double xlogx(double x) { return x <= 1e-300 ? 0.0 : x * std::log(x); }

// Scaled count of points that are in-points under both orientations,
// b = z + 1 + z00 - z01 - z10 + z11, ranging over [0, 5/2] on the domain.
inline double point_agreement(const OverlapPoint& p) {
  require_in_domain(p, "point_agreement");
  return p.z + 1.0 + p.z00 - p.z01 - p.z10 + p.z11;
}

// Per-vertex exponential growth rate of the configuration count: the sum of
// a term behaves like g * exp(n * f) at z = k/n.
inline double growth_rate(const OverlapPoint& p) {
  require_in_domain(p, "growth_rate");
  const double b = p.z + 1.0 + p.z00 - p.z01 - p.z10 + p.z11;
  return (2.25 - p.z00 - p.z01 - p.z10 - p.z11) * std::log(4.0) + std::log(5.0) - xlogx(5.0) +
         xlogx(2.5) + xlogx(b) + xlogx(2.5 - b) - xlogx(p.z00) - xlogx(p.z01) - xlogx(p.z10) -
         xlogx(p.z11) - xlogx(p.z - p.z00) - xlogx(p.z - p.z11) - xlogx(0.5 - p.z - p.z01) -
         xlogx(0.5 - p.z - p.z10);
}

// Polynomial prefactor from Stirling's formula. Defined strictly inside the
// domain only (every factor under the square root must be positive).
inline double stirling_prefactor(const OverlapPoint& p, double n) {
  require_in_domain(p, "stirling_prefactor");
  const double b = p.z + 1.0 + p.z00 - p.z01 - p.z10 + p.z11;
  const double den = p.z00 * p.z01 * p.z10 * p.z11 * (p.z - p.z00) * (p.z - p.z11) *
                     (1.0 - 2.0 * p.z - 2.0 * p.z10) * (1.0 - 2.0 * p.z - 2.0 * p.z01);
  if (den <= 0.0 || b <= 0.0 || b >= 2.5)
    throw std::domain_error("stirling_prefactor: boundary point");
  return std::sqrt(b * (5.0 - 2.0 * b) / den) / (std::sqrt(32.0) * std::pow(kPi * n, 2.5));
}

// Analytic gradient. The z00 component is
//   log[ (z - z00) b / (2 z00 (3 - 2z - 2z00 + 2z01 + 2z10 - 2z11)) ],
// the other four follow from differentiating the rate function the same way
// (each is pinned against central finite differences in the tests).
inline Vector5 growth_rate_gradient(const OverlapPoint& p) {
  require_in_domain(p, "growth_rate_gradient");
  const double b = p.z + 1.0 + p.z00 - p.z01 - p.z10 + p.z11;
  const double rb = 2.5 - b;
  const double a00 = p.z - p.z00, a11 = p.z - p.z11;
  const double c01 = 0.5 - p.z - p.z01, c10 = 0.5 - p.z - p.z10;
  if (std::min({b, rb, a00, a11, c01, c10, p.z00, p.z01, p.z10, p.z11}) <= 0.0)
    throw std::domain_error("growth_rate_gradient: boundary point");
  Vector5 g;
  g[0] = std::log(b * c01 * c10 / (rb * a00 * a11));
  g[1] = std::log(b * a00 / (4.0 * p.z00 * rb));
  g[2] = std::log(rb * c01 / (4.0 * b * p.z01));
  g[3] = std::log(rb * c10 / (4.0 * b * p.z10));
  g[4] = std::log(b * a11 / (4.0 * p.z11 * rb));
  return g;
}

// Numerator-minus-denominator polynomial certificates for the stationarity
// conditions exp(df/dz_i) = 1: order {z, z00, z01, z10, z11}. All five vanish
// simultaneously only at interior stationary points.
inline Vector5 stationary_polynomials(const OverlapPoint& p) {
  const double b = p.z + 1.0 + p.z00 - p.z01 - p.z10 + p.z11;
  const double rb = 2.5 - b;
  const double a00 = p.z - p.z00, a11 = p.z - p.z11;
  const double c01 = 0.5 - p.z - p.z01, c10 = 0.5 - p.z - p.z10;
  Vector5 q;
  q[0] = b * c01 * c10 - rb * a00 * a11;
  q[1] = a00 * b - 2.0 * p.z00 * (3.0 - 2.0 * p.z - 2.0 * p.z00 + 2.0 * p.z01 + 2.0 * p.z10 - 2.0 * p.z11);
  q[2] = rb * c01 - 4.0 * b * p.z01;
  q[3] = rb * c10 - 4.0 * b * p.z10;
  q[4] = a11 * b - 2.0 * p.z11 * (3.0 - 2.0 * p.z - 2.0 * p.z11 + 2.0 * p.z01 + 2.0 * p.z10 - 2.0 * p.z00);
  return q;
}

// Resultant-based elimination certificates that pin the interior stationary
// point. The first eliminates z10 from the z00/z01 conditions; the second
// lives on the symmetric slice z11 = z00, z10 = z01 and factors over z = 1/4
// as -(15/16)(20 z00 - 1)(96 z00^2 - 84 z00 - 1).
inline double stationary_eliminant(const OverlapPoint& p) {
  return 5.0 * p.z - 5.0 * p.z00 - 10.0 * p.z * p.z + 10.0 * p.z * p.z00 - 10.0 * p.z01 * p.z -
         150.0 * p.z01 * p.z00;
}

inline double slice_eliminant(double z, double z00) {
  return -60.0 * z * z * z - 480.0 * z * z * z00 - 120.0 * z * z00 - 1500.0 * z * z00 * z00 +
         2040.0 * z00 * z00 - 1800.0 * z00 * z00 * z00;
}

inline double slice_eliminant_peak_factor(double z00) { return 20.0 * z00 - 1.0; }

// Rate function restricted to the z = 0 face (z00 = z11 = 0 forced there);
// the z = 1/2 face with z01 = z10 = 0 produces exactly the same function of
// its two free coordinates.
inline double boundary_growth_rate(double z01, double z10) {
  if (z01 < -1e-12 || z01 > 0.5 + 1e-12 || z10 < -1e-12 || z10 > 0.5 + 1e-12)
    throw std::domain_error("boundary_growth_rate: arguments outside [0, 1/2]^2");
  const double b = 1.0 - z01 - z10;
  return (2.25 - z01 - z10) * std::log(4.0) + std::log(5.0) - xlogx(5.0) + xlogx(2.5) + xlogx(b) +
         xlogx(2.5 - b) - xlogx(z01) - xlogx(z10) - xlogx(0.5 - z01) - xlogx(0.5 - z10);
}

namespace detail {

// Solve A x = rhs for a 5x5 system by Gaussian elimination with partial
// pivoting. A is destroyed.
inline Vector5 solve5(Matrix5 a, Vector5 rhs) {
  for (int col = 0; col < 5; ++col) {
    int piv = col;
    for (int r = col + 1; r < 5; ++r)
      if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
    std::swap(a[piv], a[col]);
    std::swap(rhs[piv], rhs[col]);
    if (a[col][col] == 0.0) throw std::runtime_error("solve5: singular matrix");
    for (int r = col + 1; r < 5; ++r) {
      const double m = a[r][col] / a[col][col];
      if (m == 0.0) continue;
      for (int c = col; c < 5; ++c) a[r][c] -= m * a[col][c];
      rhs[r] -= m * rhs[col];
    }
  }
  Vector5 x{};
  for (int r = 4; r >= 0; --r) {
    double s = rhs[r];
    for (int c = r + 1; c < 5; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace detail

// Quadratic-form matrix of the expansion f(peak + y) = log(25/8) + y^T B y
// + O(|y|^3), i.e. half the raw Hessian. Central differences of the analytic
// gradient with one step of Richardson extrapolation.
inline Matrix5 growth_rate_hessian(const OverlapPoint& p, double step = 1e-5) {
  if (interior_margin(p) <= 4.0 * step)
    throw std::domain_error("growth_rate_hessian: point too close to the boundary");
  auto fd = [&](double h) {
    Matrix5 d{};
    for (int j = 0; j < 5; ++j) {
      OverlapPoint hi = p, lo = p;
      hi[j] += h;
      lo[j] -= h;
      const Vector5 ghi = growth_rate_gradient(hi);
      const Vector5 glo = growth_rate_gradient(lo);
      for (int i = 0; i < 5; ++i) d[i][j] = (ghi[i] - glo[i]) / (2.0 * h);
    }
    return d;
  };
  const Matrix5 d1 = fd(step);
  const Matrix5 d2 = fd(step / 2.0);
  Matrix5 out{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out[i][j] = 0.5 * (4.0 * d2[i][j] - d1[i][j]) / 3.0;
  return out;
}

// The exact quadratic-form matrix at the peak: (1/10) times an integer
// matrix.
inline constexpr std::array<std::array<int, 5>, 5> kPeakCurvatureNumerators = {{
    {-92, 33, -33, -33, 33},
    {33, -117, -8, -8, 8},
    {-33, -8, -117, 8, -8},
    {-33, -8, 8, -117, -8},
    {33, 8, -8, -8, -117},
}};

inline Matrix5 peak_quadratic_form() {
  Matrix5 b{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) b[i][j] = kPeakCurvatureNumerators[i][j] / 10.0;
  return b;
}

// Exact determinant of the peak quadratic form by fraction-free rational
// elimination: -328125/4.
inline Rational peak_quadratic_form_determinant() {
  std::array<std::array<Rational, 5>, 5> a;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) a[i][j] = Rational(kPeakCurvatureNumerators[i][j], 10);
  Rational det = 1;
  for (int col = 0; col < 5; ++col) {
    int piv = -1;
    for (int r = col; r < 5; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return Rational(0);
    if (piv != col) {
      std::swap(a[piv], a[col]);
      det = -det;
    }
    det *= a[col][col];
    for (int r = col + 1; r < 5; ++r) {
      if (a[r][col] == 0) continue;
      const Rational m = a[r][col] / a[col][col];
      for (int c = col; c < 5; ++c) a[r][c] -= m * a[col][c];
    }
  }
  return det;
}

// Cyclic Jacobi eigenvalues of a symmetric 5x5 matrix, ascending.
inline Vector5 symmetric_eigenvalues(Matrix5 a) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j < 5; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < 5; ++p)
      for (int q = p + 1; q < 5; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (tau >= 0 ? 1.0 : -1.0) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (int k = 0; k < 5; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 5; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  Vector5 ev{a[0][0], a[1][1], a[2][2], a[3][3], a[4][4]};
  std::sort(ev.begin(), ev.end());
  return ev;
}

struct CurvatureSpectrum {
  Vector5 eigenvalues;   // ascending
  Rational determinant;  // exact
};

inline CurvatureSpectrum curvature_spectrum() {
  return {symmetric_eigenvalues(peak_quadratic_form()), peak_quadratic_form_determinant()};
}

// The n-free coefficient g(peak) (pi n)^{5/2} / sqrt(|det B|) of the Laplace
// estimate; reduces to 25/sqrt(21).
inline double laplace_coefficient() {
  const double g1 = stirling_prefactor(interior_peak(), 1.0) * std::pow(kPi, 2.5);
  const double det = std::fabs(peak_quadratic_form_determinant().convert_to<double>());
  return g1 / std::sqrt(det);
}

// ---------------------------------------------------------------------------
// Maximisation over the domain: multistart projected gradient ascent with a
// Newton polish in the interior and a Nelder-Mead fallback near the
// boundary. Candidates are deduplicated by position; the two boundary-case
// corner candidates are always evaluated and reported alongside.
// ---------------------------------------------------------------------------

struct LocalMaximum {
  OverlapPoint point;
  double value = 0.0;
  bool interior = false;
};

namespace detail {

inline OverlapPoint nudge_interior(OverlapPoint p, double eps) {
  p.z = std::clamp(p.z, 2.0 * eps, 0.5 - 2.0 * eps);
  p.z00 = std::clamp(p.z00, eps, p.z - eps);
  p.z11 = std::clamp(p.z11, eps, p.z - eps);
  p.z01 = std::clamp(p.z01, eps, 0.5 - p.z - eps);
  p.z10 = std::clamp(p.z10, eps, 0.5 - p.z - eps);
  return p;
}

inline OverlapPoint nelder_mead_polish(OverlapPoint start, int iters) {
  std::array<OverlapPoint, 6> simplex;
  std::array<double, 6> fv;
  simplex[0] = clip_to_domain(start);
  for (int i = 1; i < 6; ++i) {
    OverlapPoint p = start;
    p[i - 1] += 1e-3;
    simplex[i] = clip_to_domain(p);
  }
  for (int i = 0; i < 6; ++i) fv[i] = growth_rate(simplex[i]);
  for (int it = 0; it < iters; ++it) {
    std::array<int, 6> idx{0, 1, 2, 3, 4, 5};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] > fv[b]; });
    const int worst = idx[5];
    OverlapPoint centroid{};
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c) centroid[c] += simplex[idx[r]][c] / 5.0;
    OverlapPoint refl;
    for (int c = 0; c < 5; ++c) refl[c] = centroid[c] + (centroid[c] - simplex[worst][c]);
    refl = clip_to_domain(refl);
    const double fr = growth_rate(refl);
    if (fr > fv[worst]) {
      simplex[worst] = refl;
      fv[worst] = fr;
    } else {
      OverlapPoint contr;
      for (int c = 0; c < 5; ++c) contr[c] = 0.5 * (centroid[c] + simplex[worst][c]);
      contr = clip_to_domain(contr);
      const double fc = growth_rate(contr);
      if (fc > fv[worst]) {
        simplex[worst] = contr;
        fv[worst] = fc;
      } else {
        for (int r = 1; r < 6; ++r) {
          for (int c = 0; c < 5; ++c)
            simplex[idx[r]][c] = 0.5 * (simplex[idx[0]][c] + simplex[idx[r]][c]);
          fv[idx[r]] = growth_rate(simplex[idx[r]]);
        }
      }
    }
  }
  int best = 0;
  for (int i = 1; i < 6; ++i)
    if (fv[i] > fv[best]) best = i;
  return simplex[best];
}

inline LocalMaximum ascend(OverlapPoint x, double tol) {
  constexpr double kEps = 1e-9;
  x = clip_to_domain(x);
  double fx = growth_rate(x);
  double alpha = 0.05;
  for (int it = 0; it < 600; ++it) {
    const Vector5 g = growth_rate_gradient(nudge_interior(x, kEps));
    double gn = 0.0;
    for (double v : g) gn += v * v;
    gn = std::sqrt(gn);
    if (gn < 1e-10) break;
    bool moved = false;
    while (alpha > 1e-18) {
      OverlapPoint y = x;
      for (int c = 0; c < 5; ++c) y[c] += alpha * g[c];
      y = clip_to_domain(y);
      const double fy = growth_rate(y);
      if (fy > fx) {
        x = y;
        fx = fy;
        alpha *= 1.3;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  // Newton polish when safely interior; Nelder-Mead otherwise.
  if (interior_margin(x) > 1e-4) {
    for (int it = 0; it < 8; ++it) {
      const Vector5 g = growth_rate_gradient(x);
      Matrix5 hess = growth_rate_hessian(x);
      for (auto& row : hess)
        for (auto& v : row) v *= 2.0;  // raw second derivatives
      Vector5 rhs;
      for (int c = 0; c < 5; ++c) rhs[c] = -g[c];
      Vector5 d;
      try {
        d = solve5(hess, rhs);
      } catch (const std::runtime_error&) {
        break;
      }
      OverlapPoint y = x;
      for (int c = 0; c < 5; ++c) y[c] += d[c];
      y = clip_to_domain(y);
      const double fy = growth_rate(y);
      if (!(fy >= fx - 1e-15)) break;
      double shiftn = 0.0;
      for (int c = 0; c < 5; ++c) shiftn = std::max(shiftn, std::fabs(y[c] - x[c]));
      x = y;
      fx = fy;
      if (shiftn < 1e-14) break;
    }
  } else {
    x = nelder_mead_polish(x, 400);
    fx = growth_rate(x);
  }
  (void)tol;
  return {x, fx, interior_margin(x) > 1e-7};
}

}  // namespace detail

// Multistart maximisation. Returns deduplicated candidates sorted by value,
// best first; the two boundary corner candidates (0,0,1/2,1/2,0) and
// (1/2,1/2,0,0,1/2) are appended with their values.
inline std::vector<LocalMaximum> maximize_growth_rate(int n_starts, double tol,
                                                      std::uint64_t seed) {
  if (n_starts < 1) throw std::domain_error("maximize_growth_rate: need at least one start");
  std::vector<LocalMaximum> found;
  for (int s = 0; s < n_starts; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    const LocalMaximum cand = detail::ascend(uniform_domain_sample(rng), tol);
    bool merged = false;
    for (auto& m : found) {
      double d2 = 0.0;
      for (int c = 0; c < 5; ++c) {
        const double d = m.point[c] - cand.point[c];
        d2 += d * d;
      }
      if (std::sqrt(d2) < 1e-6) {
        if (cand.value > m.value) m = cand;
        merged = true;
        break;
      }
    }
    if (!merged) found.push_back(cand);
  }
  const OverlapPoint corner1{0.0, 0.0, 0.5, 0.5, 0.0};
  const OverlapPoint corner2{0.5, 0.5, 0.0, 0.0, 0.5};
  found.push_back({corner1, growth_rate(corner1), false});
  found.push_back({corner2, growth_rate(corner2), false});
  std::sort(found.begin(), found.end(),
            [](const LocalMaximum& a, const LocalMaximum& b) { return a.value > b.value; });
  return found;
}

// ---------------------------------------------------------------------------
// Boundary case analysis (z = 0 and z = 1/2 faces). Both reduce to the same
// two-variable function; its behaviour is resolved numerically: a derivative
// sign-change scan along the diagonal plus a 2-D multistart. A previously
// quoted value for the (1/2, 1/2) corner is log(5/8); direct evaluation
// gives half of log(25/8), and only the strict bound below the interior peak
// is load-bearing.
// ---------------------------------------------------------------------------

struct BoundaryCaseReport {
  double corner_value = 0.0;             // f at (0,0,1/2,1/2,0), evaluated
  double corner_value_quoted = 0.0;      // log(5/8)
  double mirror_corner_value = 0.0;      // f at (1/2,1/2,0,0,1/2)
  std::vector<double> diagonal_stationary_t;      // roots of the diagonal derivative
  std::vector<double> diagonal_stationary_value;  // face values there
  double face_max_value = 0.0;           // best over the 2-D multistart
  double face_max_z01 = 0.0, face_max_z10 = 0.0;
  double interior_peak_value = 0.0;      // log(25/8)
  bool all_below_peak = false;
};

namespace detail {

inline double face_diagonal(double t) { return boundary_growth_rate(t, t); }

// 2-D projected gradient ascent on the face function.
inline std::array<double, 3> face_ascend(double a, double c) {
  auto clipf = [](double v) { return std::clamp(v, 0.0, 0.5); };
  double fx = boundary_growth_rate(a, c);
  double alpha = 0.05;
  for (int it = 0; it < 800; ++it) {
    const double ea = std::clamp(a, 1e-9, 0.5 - 1e-9);
    const double ec = std::clamp(c, 1e-9, 0.5 - 1e-9);
    const double b = 1.0 - ea - ec;  // >= 2e-9 since ea, ec <= 1/2 - 1e-9
    // d/dz01 = log[(5/2 - b)(1/2 - z01) / (4 b z01)], symmetric in z10.
    const double ga = std::log((2.5 - b) * (0.5 - ea) / (4.0 * b * ea));
    const double gc = std::log((2.5 - b) * (0.5 - ec) / (4.0 * b * ec));
    bool moved = false;
    while (alpha > 1e-18) {
      const double na = clipf(a + alpha * ga);
      const double nc = clipf(c + alpha * gc);
      const double fy = boundary_growth_rate(na, nc);
      if (fy > fx) {
        a = na;
        c = nc;
        fx = fy;
        alpha *= 1.3;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved) break;
  }
  return {a, c, fx};
}

}  // namespace detail

inline BoundaryCaseReport analyze_boundary_cases(int grid = 4096, int starts = 64,
                                                 std::uint64_t seed = 12345) {
  BoundaryCaseReport r;
  r.corner_value = growth_rate({0.0, 0.0, 0.5, 0.5, 0.0});
  r.corner_value_quoted = std::log(5.0 / 8.0);
  r.mirror_corner_value = growth_rate({0.5, 0.5, 0.0, 0.0, 0.5});
  r.interior_peak_value = peak_value();

  // Diagonal scan: numerical derivative sign changes, bisected.
  const double lo = 1e-6, hi = 0.5 - 1e-6;
  auto deriv = [&](double t) {
    const double h = 1e-7;
    return (detail::face_diagonal(t + h) - detail::face_diagonal(t - h)) / (2.0 * h);
  };
  double prev_t = lo, prev_d = deriv(lo);
  for (int i = 1; i <= grid; ++i) {
    const double t = lo + (hi - lo) * i / grid;
    const double d = deriv(t);
    if ((prev_d > 0) != (d > 0)) {
      double ta = prev_t, tb = t;
      for (int it = 0; it < 80; ++it) {
        const double tm = 0.5 * (ta + tb);
        if ((deriv(tm) > 0) == (prev_d > 0))
          ta = tm;
        else
          tb = tm;
      }
      const double root = 0.5 * (ta + tb);
      r.diagonal_stationary_t.push_back(root);
      r.diagonal_stationary_value.push_back(detail::face_diagonal(root));
    }
    prev_t = t;
    prev_d = d;
  }

  // 2-D multistart over the face, corners included.
  Rng rng(seed);
  const auto center = detail::face_ascend(0.25, 0.25);
  double best = center[2];
  double ba = center[0], bc = center[1];
  for (int s = 0; s < starts; ++s) {
    const auto res = detail::face_ascend(0.5 * rng.unit(), 0.5 * rng.unit());
    if (res[2] > best) {
      best = res[2];
      ba = res[0];
      bc = res[1];
    }
  }
  const double corner_try = boundary_growth_rate(0.5, 0.5);
  if (corner_try > best) {
    best = corner_try;
    ba = bc = 0.5;
  }
  r.face_max_value = best;
  r.face_max_z01 = ba;
  r.face_max_z10 = bc;

  double worst = std::max({r.corner_value, r.mirror_corner_value, r.face_max_value});
  for (double v : r.diagonal_stationary_value) worst = std::max(worst, v);
  r.all_below_peak = worst < r.interior_peak_value;
  return r;
}

}  // namespace nzflow
