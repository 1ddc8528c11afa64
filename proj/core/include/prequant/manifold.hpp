#pragma once

#include <memory>
#include <string>

#include "prequant/linalg.hpp"

namespace prequant {

/// A constraint submanifold of a real ambient space, possibly with a
/// discrete or U(1) identification of ambient representatives.
///
/// Every query takes an ambient representative. Implementations must be
/// pure: no caches, no mutable state.
class Manifold {
public:
  virtual ~Manifold() = default;

  virtual std::string tag() const = 0;
  virtual int ambient_dim() const = 0;
  /// Intrinsic real dimension.
  virtual int dim() const = 0;

  /// Distance of x from the constraint set (|x| - 1 for every registered space).
  virtual double constraint_residual(const Vec& x) const = 0;
  /// Size of the component of v that is not tangent at the representative p.
  virtual double tangent_residual(const Vec& p, const Vec& v) const = 0;
  /// Orthogonal projection of w onto the tangent space at p.
  virtual Vec tangent_project(const Vec& p, const Vec& w) const = 0;
  /// Closest point of the constraint set.
  virtual Vec retract(const Vec& x) const = 0;
  /// Deterministic representative of the equivalence class of x.
  virtual Vec canonical(const Vec& x) const { return x; }
  /// Representative of q's class closest to ref.
  virtual Vec align(const Vec& /*ref*/, const Vec& q) const { return q; }
  /// Re-expresses a tangent vector given at representative `from` at the
  /// equivalent representative `to`.
  virtual Vec transfer_tangent(const Vec& /*from*/, const Vec& /*to*/, const Vec& v) const {
    return v;
  }
  /// Distance between classes.
  virtual double distance(const Vec& p, const Vec& q) const = 0;
};

using ManifoldPtr = std::shared_ptr<const Manifold>;

/// Unit sphere S^dim in R^{dim+1}. With lens_order n > 1 the ambient space is
/// read as C^{(dim+1)/2} and points are identified modulo the phase subgroup
/// Z_n, giving the lens space L(n, 1) when dim = 3.
class Sphere final : public Manifold {
public:
  explicit Sphere(int dim, int lens_order = 1);

  std::string tag() const override;
  int ambient_dim() const override { return dim_ + 1; }
  int dim() const override { return dim_; }
  int lens_order() const { return lens_order_; }

  double constraint_residual(const Vec& x) const override;
  double tangent_residual(const Vec& p, const Vec& v) const override;
  Vec tangent_project(const Vec& p, const Vec& w) const override;
  Vec retract(const Vec& x) const override;
  Vec align(const Vec& ref, const Vec& q) const override;
  double distance(const Vec& p, const Vec& q) const override;

private:
  int dim_;
  int lens_order_;
};

/// Complex projective space CP^n, represented by unit vectors of C^{n+1}.
/// Tangent vectors at a representative z are the vectors complex-orthogonal
/// to z. The canonical representative has its first coordinate of largest
/// modulus real and positive.
class ProjectiveSpace final : public Manifold {
public:
  explicit ProjectiveSpace(int n);

  std::string tag() const override;
  int ambient_dim() const override { return 2 * n_ + 2; }
  int dim() const override { return 2 * n_; }
  int complex_dim() const { return n_; }

  double constraint_residual(const Vec& x) const override;
  double tangent_residual(const Vec& p, const Vec& v) const override;
  Vec tangent_project(const Vec& p, const Vec& w) const override;
  Vec retract(const Vec& x) const override;
  Vec canonical(const Vec& x) const override;
  Vec align(const Vec& ref, const Vec& q) const override;
  Vec transfer_tangent(const Vec& from, const Vec& to, const Vec& v) const override;
  double distance(const Vec& p, const Vec& q) const override;

private:
  int n_;
};

} // namespace prequant
