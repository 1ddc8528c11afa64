#pragma once

// Closed-form reference values used by the tests. Nothing here calls into the
// library, so agreement is a genuine cross-check.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Core>

namespace oracle {

using C = std::complex<double>;
using V = Eigen::VectorXd;
constexpr double pi = 3.14159265358979323846;

inline C z(const V& v, int j) { return {v[2 * j], v[2 * j + 1]}; }
inline void put(V& v, int j, C c) {
  v[2 * j] = c.real();
  v[2 * j + 1] = c.imag();
}

/// Hopf map S^3 -> S^2.
inline Eigen::Vector3d hopf(const V& p) {
  const C w = std::conj(z(p, 0)) * z(p, 1);
  return {2.0 * w.real(), 2.0 * w.imag(), std::norm(z(p, 0)) - std::norm(z(p, 1))};
}

/// Circle action of a level-l bundle on a sphere in C^m.
inline V circle(const V& p, double theta, int level) {
  V out = p;
  const C u = std::polar(1.0, 2.0 * pi * theta / level);
  for (int j = 0; j < p.size() / 2; ++j) put(out, j, u * z(p, j));
  return out;
}

/// Time-t flow of the lift of the j-th coordinate rotation normalized at the
/// point where coordinate j vanishes: only z_j turns, by exp(-2 pi i t).
inline V coordinate_lift_flow(const V& p, int j, double t) {
  V out = p;
  put(out, j, std::polar(1.0, -2.0 * pi * t) * z(p, j));
  return out;
}

/// Complex coordinate turned by generator i: the s2 rotation turns z_0, the
/// cpn torus fixes [1:0:...:0] and its i-th circle turns z_{i+1}.
inline int rotated_coordinate(bool s2_model, int generator) { return s2_model ? 0 : generator + 1; }

/// The s2 rotation lift is the j = 0 case.
inline V s2_lift_flow(const V& p, double t) { return coordinate_lift_flow(p, 0, t); }

/// omega-area of the cap {x_3 <= h} of S^2 for a level-n bundle
/// (n / 4 pi times the Euclidean cap area, by midpoint quadrature in the polar angle).
inline double s2_cap_omega(int n, double h) {
  const double theta_max = std::acos(-h);  // polar angle measured from the south pole
  const int k = 20000;
  double area = 0.0;
  for (int i = 0; i < k; ++i) {
    const double th = (i + 0.5) * theta_max / k;
    area += 2.0 * pi * std::sin(th) * theta_max / k;
  }
  return n / (4.0 * pi) * area;
}

/// alpha ^ beta^n on 2n+1 vectors by summing over all permutations
/// (determinant convention: each 2-form factor carries 1/2!).
inline double wedge_by_permutations(const std::function<double(int)>& alpha,
                                    const std::function<double(int, int)>& beta, int count) {
  std::vector<int> perm(count);
  std::iota(perm.begin(), perm.end(), 0);
  double total = 0.0;
  do {
    int inversions = 0;
    for (int a = 0; a < count; ++a)
      for (int b = a + 1; b < count; ++b)
        if (perm[a] > perm[b]) ++inversions;
    double term = alpha(perm[0]);
    for (int k = 1; k + 1 < count; k += 2) term *= beta(perm[k], perm[k + 1]);
    total += (inversions % 2 ? -1.0 : 1.0) * term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / std::pow(2.0, (count - 1) / 2);
}

/// dh(R) by central differences along the closed-form circle action.
inline double reeb_derivative(const std::function<double(const V&)>& h, const V& p, int level, double eps = 1e-4) {
  return (h(circle(p, eps, level)) - h(circle(p, -eps, level))) / (2.0 * eps);
}

} // namespace oracle
