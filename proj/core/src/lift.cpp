#include "prequant/lift.hpp"

#include <cmath>
#include <string>

#include "prequant/errors.hpp"

namespace prequant {

bool LatticeVector::is_zero() const {
  for (long long c : coeffs)
    if (c != 0) return false;
  return true;
}

LatticeVector LatticeVector::basis(int rank, int index) {
  LatticeVector v{std::vector<long long>(rank, 0)};
  v.coeffs.at(index) = 1;
  return v;
}

TorusActionSpec normalize_moment_map(const TorusActionSpec& action) {
  const Vec& b0 = action.fixed_point.ambient();
  for (int i = 0; i < action.rank; ++i) {
    const double speed = action.generators[i].at(b0).norm();
    if (speed >= 1e-8)
      throw PreconditionError("normalize_moment_map: generator " + std::to_string(i) +
                              " does not fix the normalization point (|X_B(b0)| = " + std::to_string(speed) + ")");
  }
  TorusActionSpec out = action;
  for (int i = 0; i < action.rank; ++i) out.moment_shift[i] = -action.raw_moment[i].at(b0);
  out.normalized = true;
  return out;
}

Tangent horizontal_lift(const BundleModel& bundle, const Point& p, const Tangent& v) {
  const Vec& z = p.ambient();
  const Vec& rep = v.base().ambient();
  const double gap = bundle.base_space()->distance(bundle.project(z), rep);
  if (gap > 1e-8)
    throw InputError("horizontal_lift: base vector is not based at pi(p) (distance " + std::to_string(gap) + ")");
  return Tangent(p, bundle.horizontal_lift(z, rep, v.vec()));
}

LiftedField lift_field(const BundlePtr& bundle, const TorusActionSpec& action, std::span<const double> x,
                       std::optional<double> offset) {
  if (!action.normalized && !offset)
    throw PreconditionError("lift_field: moment map is not normalized; pass an explicit offset");
  if (static_cast<int>(x.size()) != action.rank)
    throw InputError("lift_field: expected " + std::to_string(action.rank) + " coefficients");

  std::vector<double> coeffs(x.begin(), x.end());
  const double c = offset.value_or(0.0);
  const VectorField base_field = action.generator(coeffs);
  // The action spec is copied into the closure so the field stays valid on its own.
  auto spec = std::make_shared<const TorusActionSpec>(action);
  VectorField field(bundle->total_space(), [bundle, spec, base_field, coeffs, c](const Vec& z) {
    const Vec b = bundle->project(z);
    const Vec horizontal = bundle->horizontal_lift(z, b, base_field.at(b));
    return Vec(horizontal - (spec->moment(coeffs, b) + c) * bundle->reeb(z));
  });
  return LiftedField{std::move(coeffs), false, std::move(field), c};
}

LiftedField lift_field(const BundlePtr& bundle, const TorusActionSpec& action, const LatticeVector& x,
                       std::optional<double> offset) {
  const std::vector<double> real = x.to_real();
  LiftedField out = lift_field(bundle, action, std::span<const double>(real), offset);
  out.lattice = true;
  return out;
}

namespace {

Vec horizontal_gradient(const ManifoldPtr& total, const ScalarField& h, const Vec& z) {
  const Vec zn = z / z.norm();
  Vec grad = Vec::Zero(z.size());
  for (int k = 0; k < z.size(); ++k) {
    Vec e = Vec::Zero(z.size());
    e[k] = 1.0;
    grad[k] = directional_derivative(h, zn, total->tangent_project(zn, e));
  }
  return cplx::complex_orthogonal(zn, grad);
}

} // namespace

VectorField contact_vector_field(const BundlePtr& bundle, const ScalarField& h) {
  const ManifoldPtr total = bundle->total_space();
  const double scale = kPi / bundle->level();
  VectorField field(total, [bundle, total, h, scale](const Vec& z) {
    const Vec grad = horizontal_gradient(total, h, z);
    return Vec(h.at(z) * bundle->reeb(z) + scale * cplx::mul_i(grad));
  });

  // Self-check of the defining equations at one probe point.
  Vec z = Vec::Zero(total->ambient_dim());
  for (int k = 0; k < z.size(); ++k) z[k] = std::cos(0.9 * k + 0.3);
  z.normalize();
  const Vec y = field.at(z);
  const Vec grad = horizontal_gradient(total, h, z);
  Vec probe = Vec::Zero(z.size());
  for (int k = 0; k < z.size(); ++k) probe[k] = std::sin(1.7 * k + 0.2);
  probe = cplx::complex_orthogonal(z, probe);
  const double alpha_defect = std::fabs(bundle->alpha(z, y) - h.at(z));
  const double symplectic_defect = std::fabs(bundle->dalpha(z, y, probe) + grad.dot(probe));
  if (alpha_defect > 1e-8 || symplectic_defect > 1e-6)
    throw Error("contact_vector_field: d alpha is degenerate on ker alpha (defects " +
                std::to_string(alpha_defect) + ", " + std::to_string(symplectic_defect) + ")");
  return field;
}

} // namespace prequant
