#pragma once

// Brute-force oracles for cross-checking library values.  Everything here is
// hardcoded for the specific small spaces it mentions and shares no code with
// the library paths it checks.

#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Mat2 = std::array<double, 4>;  // [[m[0], m[1]], [m[2], m[3]]] acting on column vectors

inline std::array<double, 2> apply(const Mat2& m, double x0, double x1) {
  return {m[0] * x0 + m[1] * x1, m[2] * x0 + m[3] * x1};
}

// ---- exact state-pair tables for l1^2 and linf^2 --------------------------

struct Pair2 {
  std::array<double, 2> x;  // ball vertex
  std::array<double, 2> f;  // dual ball vertex with f(x) = 1
};

inline const std::vector<Pair2>& linf2_pairs() {
  // vertices (s,t), s,t = +-1; incident facets e_1* s, e_2* t
  static const std::vector<Pair2> ps = [] {
    std::vector<Pair2> v;
    for (double s : {-1.0, 1.0})
      for (double t : {-1.0, 1.0}) {
        v.push_back({{s, t}, {s, 0}});
        v.push_back({{s, t}, {0, t}});
      }
    return v;
  }();
  return ps;
}

inline const std::vector<Pair2>& l1_2_pairs() {
  // vertices +-e_i; incident dual vertices (s,t) with matching sign
  static const std::vector<Pair2> ps = [] {
    std::vector<Pair2> v;
    for (double s : {-1.0, 1.0})
      for (double t : {-1.0, 1.0}) {
        v.push_back({{s, 0}, {s, t}});
        v.push_back({{0, t}, {s, t}});
      }
    return v;
  }();
  return ps;
}

inline double pair_v(const std::vector<Pair2>& ps, const Mat2& m) {
  double best = 0;
  for (const Pair2& p : ps) {
    auto y = apply(m, p.x[0], p.x[1]);
    best = std::max(best, std::abs(p.f[0] * y[0] + p.f[1] * y[1]));
  }
  return best;
}

inline double linf2_norm(const Mat2& m) {
  double best = 0;
  for (double s : {-1.0, 1.0})
    for (double t : {-1.0, 1.0}) {
      auto y = apply(m, s, t);
      best = std::max(best, std::max(std::abs(y[0]), std::abs(y[1])));
    }
  return best;
}

inline double l1_2_norm(const Mat2& m) {
  double best = 0;
  for (int j = 0; j < 2; ++j)
    best = std::max(best, std::abs(m[j]) + std::abs(m[2 + j]));
  return best;
}

// min over a coefficient grid of v(T)/||T||, the brute-force numerical index
// of the named space.  step divides 2 evenly or the endpoints are clamped.
template <class VFn, class NFn>
double grid_index_2x2(double step, VFn v, NFn norm) {
  double best = HUGE_VAL;
  int n = static_cast<int>(std::lround(2.0 / step));
  Mat2 m;
  for (int a = 0; a <= n; ++a) {
    m[0] = -1 + a * step;
    for (int b = 0; b <= n; ++b) {
      m[1] = -1 + b * step;
      for (int c = 0; c <= n; ++c) {
        m[2] = -1 + c * step;
        for (int d = 0; d <= n; ++d) {
          m[3] = -1 + d * step;
          double nn = norm(m);
          if (nn < 1e-9) continue;
          best = std::min(best, v(m) / nn);
        }
      }
    }
  }
  return best;
}

inline double grid_index_linf2(double step) {
  return grid_index_2x2(
      step, [](const Mat2& m) { return pair_v(linf2_pairs(), m); },
      [](const Mat2& m) { return linf2_norm(m); });
}

inline double grid_index_l1_2(double step) {
  return grid_index_2x2(
      step, [](const Mat2& m) { return pair_v(l1_2_pairs(), m); },
      [](const Mat2& m) { return l1_2_norm(m); });
}

// ---- angle-grid oracles on real l2^2 ---------------------------------------

inline double theta_radius_l2(const Mat2& m, int steps = 20000) {
  double best = 0;
  for (int k = 0; k < steps; ++k) {
    double th = 2 * M_PI * k / steps;
    double x0 = std::cos(th), x1 = std::sin(th);
    auto y = apply(m, x0, x1);
    best = std::max(best, std::abs(x0 * y[0] + x1 * y[1]));
  }
  return best;
}

inline double theta_vdelta_l2(const Mat2& m, double delta, int steps = 2000) {
  double best = 0;
  for (int i = 0; i < steps; ++i) {
    double a = 2 * M_PI * i / steps;
    double x0 = std::cos(a), x1 = std::sin(a);
    auto y = apply(m, x0, x1);
    for (int j = 0; j < steps; ++j) {
      double b = 2 * M_PI * j / steps;
      double f0 = std::cos(b), f1 = std::sin(b);
      if (f0 * x0 + f1 * x1 > 1 - delta)
        best = std::max(best, std::abs(f0 * y[0] + f1 * y[1]));
    }
  }
  return best;
}

// ---- closed-form 2x2 singular values ---------------------------------------

inline std::array<double, 2> singulars_2x2(const Eigen::Matrix2cd& m) {
  Eigen::Matrix2cd g = m.adjoint() * m;
  double tr = g(0, 0).real() + g(1, 1).real();
  double det = (g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)).real();
  double disc = std::sqrt(std::max(0.0, tr * tr - 4 * det));
  double l1 = (tr + disc) / 2, l2 = std::max(0.0, (tr - disc) / 2);
  return {std::sqrt(l1), std::sqrt(l2)};
}

inline double nuclear_2x2(const Eigen::Matrix2cd& m) {
  auto s = singulars_2x2(m);
  return s[0] + s[1];
}

inline double spectral_2x2(const Eigen::Matrix2cd& m) {
  return singulars_2x2(m)[0];
}

// ---- block formulas for l1 / linf factors ----------------------------------

enum class RowNorm { l1, l2, linf };

inline double row_norm(RowNorm k, std::complex<double> a, std::complex<double> b) {
  switch (k) {
    case RowNorm::l1:
      return std::abs(a) + std::abs(b);
    case RowNorm::l2:
      return std::sqrt(std::norm(a) + std::norm(b));
    default:
      return std::max(std::abs(a), std::abs(b));
  }
}

// pi of u in l1^2 (x) Y: sum over left coordinates of the Y-norm of the row
inline double pi_l1_left(const Eigen::Matrix2cd& u, RowNorm y) {
  return row_norm(y, u(0, 0), u(0, 1)) + row_norm(y, u(1, 0), u(1, 1));
}

// eps of u in linf^2 (x) Y: extreme functionals of the left dual ball are
// +-e_i, so the sup is the largest Y-norm of a row
inline double eps_linf_left(const Eigen::Matrix2cd& u, RowNorm y) {
  return std::max(row_norm(y, u(0, 0), u(0, 1)), row_norm(y, u(1, 0), u(1, 1)));
}

}  // namespace oracle
