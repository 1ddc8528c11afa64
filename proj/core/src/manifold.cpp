#include "prequant/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "prequant/errors.hpp"

namespace prequant {

Sphere::Sphere(int dim, int lens_order) : dim_(dim), lens_order_(lens_order) {
  if (dim < 1 || dim + 1 > kMaxAmbient) throw InputError("Sphere: unsupported dimension");
  if (lens_order < 1) throw InputError("Sphere: lens order must be >= 1");
  if (lens_order > 1 && (dim + 1) % 2 != 0)
    throw InputError("Sphere: lens identification needs an even ambient dimension");
}

std::string Sphere::tag() const {
  if (lens_order_ > 1) {
    if (dim_ == 3) return "L(" + std::to_string(lens_order_) + ",1)";
    return "S^" + std::to_string(dim_) + "/Z" + std::to_string(lens_order_);
  }
  return "S^" + std::to_string(dim_);
}

double Sphere::constraint_residual(const Vec& x) const { return std::fabs(x.norm() - 1.0); }

double Sphere::tangent_residual(const Vec& p, const Vec& v) const {
  return std::fabs(p.dot(v)) / std::max(1.0, v.norm());
}

Vec Sphere::tangent_project(const Vec& p, const Vec& w) const { return w - p.dot(w) * p; }

Vec Sphere::retract(const Vec& x) const { return x / x.norm(); }

Vec Sphere::align(const Vec& ref, const Vec& q) const {
  if (lens_order_ == 1) return q;
  Vec best = q;
  double best_d = (q - ref).norm();
  for (int k = 1; k < lens_order_; ++k) {
    const Vec cand = cplx::scale(q, std::polar(1.0, kTwoPi * k / lens_order_));
    const double d = (cand - ref).norm();
    if (d < best_d) {
      best_d = d;
      best = cand;
    }
  }
  return best;
}

double Sphere::distance(const Vec& p, const Vec& q) const { return (align(p, q) - p).norm(); }

ProjectiveSpace::ProjectiveSpace(int n) : n_(n) {
  if (n < 1 || 2 * n + 2 > kMaxAmbient) throw InputError("ProjectiveSpace: unsupported dimension");
}

std::string ProjectiveSpace::tag() const { return "CP^" + std::to_string(n_); }

double ProjectiveSpace::constraint_residual(const Vec& x) const {
  return std::fabs(x.norm() - 1.0);
}

double ProjectiveSpace::tangent_residual(const Vec& p, const Vec& v) const {
  return std::abs(cplx::inner(p, v)) / std::max(1.0, v.norm());
}

Vec ProjectiveSpace::tangent_project(const Vec& p, const Vec& w) const {
  return cplx::complex_orthogonal(p, w);
}

Vec ProjectiveSpace::retract(const Vec& x) const { return x / x.norm(); }

Vec ProjectiveSpace::canonical(const Vec& x) const {
  // Ties within rounding go to the lowest index so the gauge is stable.
  double max_mod = 0.0;
  for (int j = 0; j <= n_; ++j) max_mod = std::max(max_mod, std::abs(cplx::get(x, j)));
  int lead = 0;
  for (int j = 0; j <= n_; ++j) {
    if (std::abs(cplx::get(x, j)) >= max_mod * (1.0 - 1e-12)) {
      lead = j;
      break;
    }
  }
  return cplx::scale(x, std::conj(cplx::unit_phase(cplx::get(x, lead))));
}

Vec ProjectiveSpace::align(const Vec& ref, const Vec& q) const {
  return cplx::scale(q, cplx::unit_phase(cplx::inner(q, ref)));
}

Vec ProjectiveSpace::transfer_tangent(const Vec& from, const Vec& to, const Vec& v) const {
  // to = e^{i phi} from  =>  the same class tangent is e^{i phi} v.
  return cplx::scale(v, cplx::unit_phase(cplx::inner(from, to)));
}

double ProjectiveSpace::distance(const Vec& p, const Vec& q) const {
  // Direct difference keeps full precision for nearby classes.
  return (align(p, q) - p).norm();
}

} // namespace prequant
