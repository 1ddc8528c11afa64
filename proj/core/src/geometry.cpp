#include "prequant/geometry.hpp"

#include <cmath>
#include <string>

#include "prequant/errors.hpp"

namespace prequant {

namespace {

void check_dim(const Manifold& space, const Vec& v, const char* what) {
  if (v.size() != space.ambient_dim())
    throw InputError(std::string(what) + ": expected ambient dimension " +
                     std::to_string(space.ambient_dim()) + ", got " + std::to_string(v.size()));
}

void check_same_space(const ManifoldPtr& a, const ManifoldPtr& b, const char* what) {
  if (a.get() != b.get() && a->tag() != b->tag())
    throw InputError(std::string(what) + ": objects live on different spaces (" + a->tag() +
                     " vs " + b->tag() + ")");
}

} // namespace

Point::Point(ManifoldPtr space, Vec ambient) : space_(std::move(space)), ambient_(std::move(ambient)) {
  if (!space_) throw InputError("Point: null space");
  check_dim(*space_, ambient_, "Point");
  const double r = space_->constraint_residual(ambient_);
  if (!(r < kPointTolerance))
    throw InputError("Point: constraint residual " + std::to_string(r) + " on " + space_->tag());
}

Point Point::on(ManifoldPtr space, const Vec& raw) {
  check_dim(*space, raw, "Point::on");
  Vec x = space->canonical(space->retract(raw));
  return Point(std::move(space), std::move(x));
}

Tangent::Tangent(Point base, Vec vec) : base_(std::move(base)), vec_(std::move(vec)) {
  check_dim(base_.space(), vec_, "Tangent");
  const double r = base_.space().tangent_residual(base_.ambient(), vec_);
  if (!(r < kTangentTolerance))
    throw InputError("Tangent: vector leaves the tangent space by " + std::to_string(r));
}

VectorField VectorField::zero(ManifoldPtr space) {
  const int n = space->ambient_dim();
  return VectorField(std::move(space), [n](const Vec&) -> Vec { return Vec::Zero(n); });
}

Tangent VectorField::operator()(const Point& p) const {
  check_same_space(space_, p.space_ptr(), "VectorField");
  return Tangent(p, space_->tangent_project(p.ambient(), eval_(p.ambient())));
}

double TwoForm::operator()(const Tangent& u, const Tangent& v) const {
  return eval_(u.base().ambient(), u.vec(), v.vec());
}

Tangent tangent_project(const Point& p, const Vec& w) {
  check_dim(p.space(), w, "tangent_project");
  return Tangent(p, p.space().tangent_project(p.ambient(), w));
}

Vec directional_derivative(const VectorField& field, const Vec& p, const Vec& dir, double h) {
  const double len = dir.norm();
  if (len == 0.0) return Vec::Zero(p.size());
  const Manifold& m = field.space();
  const Vec u = dir / len;
  auto at = [&](double s) { return field.at(m.retract(p + s * u)); };
  const Vec d = (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
  return len * d;
}

double directional_derivative(const ScalarField& f, const Vec& p, const Vec& dir, double h) {
  const double len = dir.norm();
  if (len == 0.0) return 0.0;
  const Manifold& m = *f.space_ptr();
  const Vec u = dir / len;
  auto at = [&](double s) { return f.at(m.retract(p + s * u)); };
  return len * (-at(2 * h) + 8.0 * at(h) - 8.0 * at(-h) + at(-2 * h)) / (12.0 * h);
}

namespace {

struct FlowState {
  Vec x;
  Vec v;
};

/// One RK4 step of x' = Y(x), V' = DY(x) V.
FlowState variational_step(const VectorField& Y, const FlowState& s0, double t, double spatial) {
  auto rhs = [&](const FlowState& s) {
    return FlowState{Y.at(s.x), directional_derivative(Y, s.x, s.v, spatial)};
  };
  auto axpy = [](const FlowState& s, double a, const FlowState& k) {
    return FlowState{s.x + a * k.x, s.v + a * k.v};
  };
  const FlowState k1 = rhs(s0);
  const FlowState k2 = rhs(axpy(s0, 0.5 * t, k1));
  const FlowState k3 = rhs(axpy(s0, 0.5 * t, k2));
  const FlowState k4 = rhs(axpy(s0, t, k3));
  return FlowState{s0.x + t / 6.0 * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
                   s0.v + t / 6.0 * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v)};
}

double pulled_back_difference(const VectorField& Y, const OneForm& form, const Vec& p, const Vec& v,
                              double h, double spatial) {
  const FlowState fwd = variational_step(Y, {p, v}, h, spatial);
  const FlowState bwd = variational_step(Y, {p, v}, -h, spatial);
  const Manifold& m = Y.space();
  constexpr double kDrift = 1e-6;
  if (m.constraint_residual(fwd.x) > kDrift || m.constraint_residual(bwd.x) > kDrift)
    throw IntegrationError("lie_derivative_oneform: flow left the constraint set (residual " +
                           std::to_string(std::max(m.constraint_residual(fwd.x),
                                                   m.constraint_residual(bwd.x))) +
                           ")");
  return (form.at(fwd.x, fwd.v) - form.at(bwd.x, bwd.v)) / (2.0 * h);
}

} // namespace

double lie_derivative_oneform(const VectorField& Y, const OneForm& form, const Point& p,
                              const Tangent& v, const LieDerivativeOptions& opts) {
  if (!(opts.h > 0.0 && opts.h <= 1e-3))
    throw InputError("lie_derivative_oneform: step must lie in (0, 1e-3]");
  check_same_space(Y.space_ptr(), p.space_ptr(), "lie_derivative_oneform");
  check_same_space(form.space_ptr(), p.space_ptr(), "lie_derivative_oneform");
  check_same_space(v.base().space_ptr(), p.space_ptr(), "lie_derivative_oneform");

  const double coarse = pulled_back_difference(Y, form, p.ambient(), v.vec(), opts.h, opts.spatial_step);
  if (!opts.richardson) return coarse;
  const double fine =
      pulled_back_difference(Y, form, p.ambient(), v.vec(), 0.5 * opts.h, opts.spatial_step);
  return (4.0 * fine - coarse) / 3.0;
}

Tangent lie_bracket(const VectorField& X, const VectorField& Y, const Point& p, double h) {
  if (!(h > 0.0 && h <= 1e-2)) throw InputError("lie_bracket: step must lie in (0, 1e-2]");
  check_same_space(X.space_ptr(), p.space_ptr(), "lie_bracket");
  check_same_space(Y.space_ptr(), p.space_ptr(), "lie_bracket");
  const Vec& x = p.ambient();
  const Vec bracket = directional_derivative(Y, x, X.at(x), h) - directional_derivative(X, x, Y.at(x), h);
  return tangent_project(p, bracket);
}

double exterior_derivative(const OneForm& form, const Point& p, const Tangent& u, const Tangent& v,
                           double h) {
  if (!(h > 0.0 && h <= 1e-2)) throw InputError("exterior_derivative: step must lie in (0, 1e-2]");
  const Manifold& m = p.space();
  const Vec& x = p.ambient();
  // d/ds form_{r(x + s a)}(b), central difference with displacement h.
  auto derivative = [&](const Vec& a, const Vec& b) {
    const double len = a.norm();
    if (len == 0.0) return 0.0;
    const Vec dir = a / len;
    return len * (form.at(m.retract(x + h * dir), b) - form.at(m.retract(x - h * dir), b)) / (2.0 * h);
  };
  return derivative(u.vec(), v.vec()) - derivative(v.vec(), u.vec());
}

double pfaffian(const Eigen::MatrixXd& m) {
  const auto n = m.rows();
  if (n != m.cols() || n % 2 != 0) throw InputError("pfaffian: need an even square matrix");
  if (n == 0) return 1.0;
  double acc = 0.0;
  for (Eigen::Index j = 1; j < n; ++j) {
    if (m(0, j) == 0.0) continue;
    Eigen::MatrixXd minor(n - 2, n - 2);
    Eigen::Index r = 0;
    for (Eigen::Index a = 1; a < n; ++a) {
      if (a == j) continue;
      Eigen::Index c = 0;
      for (Eigen::Index b = 1; b < n; ++b) {
        if (b == j) continue;
        minor(r, c++) = m(a, b);
      }
      ++r;
    }
    const double sign = (j % 2 == 1) ? 1.0 : -1.0;
    acc += sign * m(0, j) * pfaffian(minor);
  }
  return acc;
}

double contact_volume(const OneForm& alpha, const TwoForm& dalpha, const Point& p,
                      std::span<const Tangent> basis) {
  const int dim = p.space().dim();
  if (dim % 2 != 1) throw InputError("contact_volume: manifold dimension must be odd");
  if (static_cast<int>(basis.size()) != dim)
    throw InputError("contact_volume: expected " + std::to_string(dim) + " probe vectors, got " +
                     std::to_string(basis.size()));
  for (const Tangent& t : basis) {
    if ((t.base().ambient() - p.ambient()).norm() > kPointTolerance)
      throw InputError("contact_volume: probe vector based at a different point");
  }
  const int n = (dim - 1) / 2;
  double factorial = 1.0;
  for (int k = 2; k <= n; ++k) factorial *= k;

  const Vec& x = p.ambient();
  Eigen::MatrixXd full(dim, dim);
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      full(a, b) = a == b ? 0.0 : dalpha.at(x, basis[a].vec(), basis[b].vec());

  double acc = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double a = alpha.at(x, basis[i].vec());
    if (a == 0.0) continue;
    Eigen::MatrixXd minor(dim - 1, dim - 1);
    for (int r = 0, rr = 0; r < dim; ++r) {
      if (r == i) continue;
      for (int c = 0, cc = 0; c < dim; ++c) {
        if (c == i) continue;
        minor(rr, cc++) = full(r, c);
      }
      ++rr;
    }
    acc += (i % 2 == 0 ? 1.0 : -1.0) * a * factorial * pfaffian(minor);
  }
  return acc;
}

} // namespace prequant
