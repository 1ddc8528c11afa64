#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "prequant/geometry.hpp"
#include "prequant/phase.hpp"

namespace prequant {

/// A prequantum circle bundle P -> B realised on an odd sphere
/// P = S^{2m-1} in C^m, possibly divided by the phase subgroup Z_level.
///
/// Conventions shared by every model:
///   circle action   theta . z = exp(2 pi i theta / level) z     (period 1 on P)
///   Reeb field      R(z) = (2 pi i / level) z
///   connection      alpha_z(v) = (level / 2 pi) Im <z, v>
///   curvature       d alpha(u, v) = (level / pi) Im <u, v>
/// The horizontal space at z is the complex-orthogonal complement of z.
class BundleModel : public std::enable_shared_from_this<BundleModel> {
public:
  virtual ~BundleModel() = default;

  /// Registered identifier, e.g. "s2:3" or "cpn:2".
  virtual std::string id() const = 0;

  /// Level of the bundle: the integral of omega over the generator of H_2(B).
  int level() const { return level_; }
  /// Complex dimension m of the ambient C^m holding P.
  int complex_dim() const { return m_; }

  const ManifoldPtr& total_space() const { return total_; }
  const ManifoldPtr& base_space() const { return base_; }
  int total_dim() const { return total_->dim(); }
  int base_dim() const { return base_->dim(); }

  /// pi(z) as the canonical base representative.
  virtual Vec project(const Vec& z) const = 0;
  /// d pi_z(w), expressed at the representative project(z).
  virtual Vec push_forward(const Vec& z, const Vec& w) const = 0;
  /// Horizontal vector at z projecting to v, where v is a tangent vector
  /// given at the base representative `base_rep` of pi(z).
  virtual Vec horizontal_lift(const Vec& z, const Vec& base_rep, const Vec& v) const = 0;
  /// Symplectic form on B at representative b.
  virtual double omega(const Vec& b, const Vec& u, const Vec& v) const = 0;

  double alpha(const Vec& z, const Vec& v) const;
  double dalpha(const Vec& z, const Vec& u, const Vec& v) const;
  Vec reeb(const Vec& z) const;
  Vec circle_act(double theta, const Vec& z) const;

  OneForm alpha_form() const;
  /// Closed-form curvature d alpha.
  TwoForm dalpha_form() const;
  TwoForm omega_form() const;
  VectorField reeb_field() const;

protected:
  BundleModel(int complex_dim, int level, ManifoldPtr total, ManifoldPtr base);

  /// Checks the Z_level invariance of the structure at a few fixed points.
  void verify_lens_invariance() const;

private:
  int m_;
  int level_;
  ManifoldPtr total_;
  ManifoldPtr base_;
};

using BundlePtr = std::shared_ptr<const BundleModel>;

/// Hamiltonian torus action on the base of a bundle, in a lattice basis.
///
/// Generator i has period-1 flow. The moment component is
/// Phi_i = raw_moment_i + moment_shift_i, with the convention
/// d Phi^X = iota(X_B) omega.
struct TorusActionSpec {
  int rank = 0;
  std::vector<VectorField> generators;
  std::vector<ScalarField> raw_moment;
  std::vector<double> moment_shift;
  Point fixed_point;
  bool normalized = false;

  double moment(int i, const Vec& b) const;
  /// Phi^X(b) = sum_i X_i Phi_i(b).
  double moment(std::span<const double> x, const Vec& b) const;
  /// The base field X_B = sum_i X_i generator_i.
  VectorField generator(std::span<const double> x) const;
};

struct ModelInstance {
  BundlePtr bundle;
  TorusActionSpec action;
};

/// Level-n bundle over S^2: P = L(n,1) represented on S^3, B = unit sphere,
/// omega = (n / 4 pi) area, projection the Hopf map. The action is the
/// rotation about the third axis with moment n (x_3 + 1) / 2, normalized at
/// the south pole.
ModelInstance make_s2_bundle(int n);

/// Same bundle with the rotation-equivariant moment map n x_3 / 2 (not normalized).
ModelInstance make_s2_equivariant_action(int n);

/// Tautological-dual bundle S^{2n+1} -> CP^n with the rank-n coordinate torus.
/// Moment Phi_j = |z_j|^2 normalized at [1:0:...:0].
ModelInstance make_cpn_bundle(int n_dim);

/// Same bundle with the centred moment map |z_j|^2 - 1/(n+1) (not normalized).
ModelInstance make_cpn_centred_action(int n_dim);

/// Builds a model from "s2:<n>" or "cpn:<n_dim>".
ModelInstance make_model(const std::string& id);

/// Parses and validates a model identifier without building it. Throws
/// InputError with a message such as "level must be >= 1".
void validate_model_id(const std::string& id);

/// Identifier forms accepted by make_model.
std::vector<std::string> model_id_forms();

Point project(const BundleModel& bundle, const Point& p);
Point circle_act(const BundleModel& bundle, double theta, const Point& p);

/// The phase theta in [0, 1) with circle_act(theta, p) = q, modulo the lens
/// identification. Throws DomainError when the base points differ by more
/// than `tolerance`.
Phase fiber_phase(const BundleModel& bundle, const Vec& p, const Vec& q, double tolerance = 1e-8);
Phase fiber_phase(const BundleModel& bundle, const Point& p, const Point& q, double tolerance = 1e-8);

enum class CurvatureRoute { exact, finite_difference };

/// alpha ^ (d alpha)^n on a probe basis of T_p P.
double contact_volume_check(const BundleModel& bundle, const Point& p, std::span<const Tangent> basis,
                            CurvatureRoute route = CurvatureRoute::exact);

} // namespace prequant
