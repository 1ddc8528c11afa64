#pragma once

#include <Eigen/Core>
#include <complex>

namespace prequant {

/// Largest ambient dimension of any registered model (CP^3 total space lives in C^4).
inline constexpr int kMaxAmbient = 8;

/// Ambient real vector. Complex coordinates are stored as interleaved
/// (re, im) pairs, so z_j = v[2j] + i v[2j+1].
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxAmbient, 1>;

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

namespace cplx {

inline int size(const Vec& v) { return static_cast<int>(v.size()) / 2; }

inline Complex get(const Vec& v, int j) { return {v[2 * j], v[2 * j + 1]}; }

inline void set(Vec& v, int j, Complex c) {
  v[2 * j] = c.real();
  v[2 * j + 1] = c.imag();
}

/// Hermitian product <u, v> = sum conj(u_j) v_j.
inline Complex inner(const Vec& u, const Vec& v) {
  Complex acc{0.0, 0.0};
  for (int j = 0; j < size(u); ++j) acc += std::conj(get(u, j)) * get(v, j);
  return acc;
}

/// Multiplication by a complex scalar.
inline Vec scale(const Vec& v, Complex c) {
  Vec out(v.size());
  for (int j = 0; j < size(v); ++j) set(out, j, c * get(v, j));
  return out;
}

/// The complex structure: multiplication by i.
inline Vec mul_i(const Vec& v) {
  Vec out(v.size());
  for (int j = 0; j < size(v); ++j) {
    out[2 * j] = -v[2 * j + 1];
    out[2 * j + 1] = v[2 * j];
  }
  return out;
}

/// Removes the complex line through the unit vector z: v - <z, v> z.
inline Vec complex_orthogonal(const Vec& z, const Vec& v) {
  return v - scale(z, inner(z, v));
}

inline Complex unit_phase(Complex c) {
  const double r = std::abs(c);
  return r > 0.0 ? c / r : Complex{1.0, 0.0};
}

} // namespace cplx

} // namespace prequant
