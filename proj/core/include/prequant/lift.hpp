#pragma once

#include <optional>
#include <span>
#include <vector>

#include "prequant/geometry.hpp"
#include "prequant/models.hpp"

namespace prequant {

/// Integer coordinates of an element of the integral lattice ker(exp) of the torus.
struct LatticeVector {
  std::vector<long long> coeffs;

  std::vector<double> to_real() const { return {coeffs.begin(), coeffs.end()}; }
  bool is_zero() const;
  /// Standard basis vector e_index of a rank-`rank` lattice.
  static LatticeVector basis(int rank, int index);
};

/// X_P = X_B^h - (Phi^X o pi + offset) R.
struct LiftedField {
  std::vector<double> source;  ///< coordinates of X in the Lie algebra
  bool lattice = false;        ///< source came from a LatticeVector
  VectorField field;
  double offset = 0.0;
};

/// Shifts every moment component so that it vanishes at the fixed point.
/// Throws PreconditionError if the fixed point is moved by some generator.
TorusActionSpec normalize_moment_map(const TorusActionSpec& action);

/// Unique horizontal vector at p projecting to v. v must be based at (a
/// representative of) pi(p).
Tangent horizontal_lift(const BundleModel& bundle, const Point& p, const Tangent& v);

/// Lift of a torus generator. Without an explicit offset the action must be
/// normalized; otherwise PreconditionError.
LiftedField lift_field(const BundlePtr& bundle, const TorusActionSpec& action, std::span<const double> x,
                       std::optional<double> offset = std::nullopt);
LiftedField lift_field(const BundlePtr& bundle, const TorusActionSpec& action, const LatticeVector& x,
                       std::optional<double> offset = std::nullopt);

/// Contact vector field of a contact Hamiltonian h: the field Y with
/// alpha(Y) = h and L_Y alpha = dh(R) alpha. Its horizontal part is
/// (pi / level) i grad_H h, using d alpha = (level / pi) Im<.,.> on ker alpha.
VectorField contact_vector_field(const BundlePtr& bundle, const ScalarField& h);

} // namespace prequant
