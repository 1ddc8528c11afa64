#pragma once

#include <functional>
#include <span>
#include <string>

#include "prequant/linalg.hpp"
#include "prequant/manifold.hpp"

namespace prequant {

/// Point tolerances. Points are rejected if they sit further than this from
/// their constraint set.
inline constexpr double kPointTolerance = 1e-12;
inline constexpr double kTangentTolerance = 1e-10;

/// A point of a registered manifold, stored as an ambient representative.
class Point {
public:
  /// Validates that `ambient` lies on `space` (residual < kPointTolerance).
  Point(ManifoldPtr space, Vec ambient);

  /// Retracts `raw` onto `space` and takes its canonical representative.
  static Point on(ManifoldPtr space, const Vec& raw);

  const Vec& ambient() const { return ambient_; }
  const Manifold& space() const { return *space_; }
  const ManifoldPtr& space_ptr() const { return space_; }
  std::string space_tag() const { return space_->tag(); }

private:
  ManifoldPtr space_;
  Vec ambient_;
};

/// A tangent vector at a point, in ambient coordinates.
class Tangent {
public:
  /// Validates tangency to kTangentTolerance.
  Tangent(Point base, Vec vec);

  static Tangent zero(const Point& base) {
    return Tangent(base, Vec::Zero(base.ambient().size()));
  }

  const Point& base() const { return base_; }
  const Vec& vec() const { return vec_; }
  double norm() const { return vec_.norm(); }

private:
  Point base_;
  Vec vec_;
};

/// Point -> tangent map. The evaluator works on ambient representatives and
/// must be a smooth extension to a neighbourhood of the manifold; on spaces
/// with a phase identification it must be equivariant.
class VectorField {
public:
  using Evaluator = std::function<Vec(const Vec&)>;

  VectorField(ManifoldPtr space, Evaluator eval) : space_(std::move(space)), eval_(std::move(eval)) {}

  static VectorField zero(ManifoldPtr space);

  Vec at(const Vec& x) const { return eval_(x); }
  Tangent operator()(const Point& p) const;

  const Manifold& space() const { return *space_; }
  const ManifoldPtr& space_ptr() const { return space_; }

private:
  ManifoldPtr space_;
  Evaluator eval_;
};

/// Real-valued function on a manifold.
class ScalarField {
public:
  using Evaluator = std::function<double(const Vec&)>;

  ScalarField(ManifoldPtr space, Evaluator eval) : space_(std::move(space)), eval_(std::move(eval)) {}

  double at(const Vec& x) const { return eval_(x); }
  double operator()(const Point& p) const { return eval_(p.ambient()); }
  const ManifoldPtr& space_ptr() const { return space_; }

private:
  ManifoldPtr space_;
  Evaluator eval_;
};

/// A one-form. The evaluator must be linear in its (ambient) vector argument.
class OneForm {
public:
  using Evaluator = std::function<double(const Vec& p, const Vec& v)>;

  OneForm(ManifoldPtr space, Evaluator eval) : space_(std::move(space)), eval_(std::move(eval)) {}

  double at(const Vec& p, const Vec& v) const { return eval_(p, v); }
  double operator()(const Tangent& v) const { return eval_(v.base().ambient(), v.vec()); }
  const ManifoldPtr& space_ptr() const { return space_; }

private:
  ManifoldPtr space_;
  Evaluator eval_;
};

/// An antisymmetric bilinear form on tangent vectors.
class TwoForm {
public:
  using Evaluator = std::function<double(const Vec& p, const Vec& u, const Vec& v)>;

  TwoForm(ManifoldPtr space, Evaluator eval) : space_(std::move(space)), eval_(std::move(eval)) {}

  double at(const Vec& p, const Vec& u, const Vec& v) const { return eval_(p, u, v); }
  double operator()(const Tangent& u, const Tangent& v) const;
  const ManifoldPtr& space_ptr() const { return space_; }

private:
  ManifoldPtr space_;
  Evaluator eval_;
};

/// Orthogonal projection of w onto the tangent space at p.
Tangent tangent_project(const Point& p, const Vec& w);

/// Fourth-order central difference of a field along the curve
/// t -> retract(p + t dir). Equals DY(p)[dir] for tangent `dir`.
Vec directional_derivative(const VectorField& field, const Vec& p, const Vec& dir, double h = 1e-3);

/// Same for a scalar function.
double directional_derivative(const ScalarField& f, const Vec& p, const Vec& dir, double h = 1e-3);

struct LieDerivativeOptions {
  double h = 1e-4;          ///< time step of the flow pullback, 0 < h <= 1e-3
  bool richardson = false;  ///< combine steps h and h/2
  double spatial_step = 1e-3;
};

/// (L_Y form)_p(v) by central differencing of the pulled-back form
/// t -> form_{phi_t p}(D phi_t v). The flow and its linearisation are
/// advanced together by one RK4 step of the variational equation.
double lie_derivative_oneform(const VectorField& Y, const OneForm& form, const Point& p,
                              const Tangent& v, const LieDerivativeOptions& opts = {});

/// Jacobi-Lie bracket [X, Y] = DY.X - DX.Y, projected to the tangent space.
Tangent lie_bracket(const VectorField& X, const VectorField& Y, const Point& p, double h = 1e-3);

/// Finite-difference exterior derivative of a one-form, evaluated on tangent
/// vectors u, v at p. The form is extended off the manifold by retraction.
double exterior_derivative(const OneForm& form, const Point& p, const Tangent& u, const Tangent& v,
                           double h = 1e-4);

/// Pfaffian of an antisymmetric matrix of even size (expansion along the first row).
double pfaffian(const Eigen::MatrixXd& m);

/// Value of alpha ^ (d alpha)^n on 2n+1 tangent vectors, using the
/// determinant convention (theta_1 ^ ... ^ theta_k)(v) = det(theta_i(v_j)).
/// Linearly dependent vectors give 0. Throws InputError on a wrong count or a
/// non-tangent vector.
double contact_volume(const OneForm& alpha, const TwoForm& dalpha, const Point& p,
                      std::span<const Tangent> basis);

} // namespace prequant
