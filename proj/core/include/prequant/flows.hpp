#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "prequant/geometry.hpp"
#include "prequant/lift.hpp"
#include "prequant/models.hpp"
#include "prequant/phase.hpp"

namespace prequant {

struct FlowConfig {
  double step = 1e-3;
  double max_time = 100.0;
  /// Allowed constraint drift per step before projection, and the base-return
  /// tolerance used by closure and holonomy.
  double tolerance = 1e-6;

  void validate() const;
};

/// Classical RK4 with projection onto the constraint set after every step.
/// Works on ambient representatives and does not canonicalize, so the
/// trajectory is continuous on spaces with a phase identification.
Vec integrate_flow(const VectorField& field, const Vec& x, double time, const FlowConfig& cfg = {});

/// Point-level wrapper: the result is the canonical representative.
Point integrate_flow(const VectorField& field, const Point& p, double time, const FlowConfig& cfg = {});

/// Samples x(t_k), t_k = k time / segments, k = 0..segments, using at most
/// cfg.step per RK4 step.
std::vector<Vec> integrate_trajectory(const VectorField& field, const Vec& x, double time, int segments,
                                      const FlowConfig& cfg = {});

/// Curve [0,1] -> B. Evaluators must be smooth on a neighbourhood of [0,1].
struct PathSpec {
  ManifoldPtr space;
  std::function<Vec(double)> eval;

  Vec at(double s) const { return eval(s); }

  /// s -> retract((1-s) from + s to + sin(pi s) bump), continuous through the
  /// ambient representatives given.
  static PathSpec interpolating(ManifoldPtr space, const Vec& from, const Vec& to, const Vec& bump);
  static PathSpec constant(ManifoldPtr space, const Vec& point);
};

/// Closed curve [0,1] -> B, optionally with a known velocity.
struct LoopSpec {
  ManifoldPtr space;
  std::function<Vec(double)> eval;
  std::function<Vec(double)> velocity;  ///< may be empty: finite differences are used

  Vec at(double t) const { return eval(t); }
  /// Tangent at the representative at(t).
  Vec tangent(double t) const;
  double closure_gap() const;

  /// t -> flow(field, t)(start). The orbit is tabulated at `samples` + 1
  /// equally spaced times and interpolated by cubic Hermite polynomials.
  static LoopSpec from_flow(const VectorField& field, const Vec& start, int samples, const FlowConfig& cfg = {});
  static LoopSpec constant(ManifoldPtr space, const Vec& point);
};

struct HolonomyResult {
  Phase phase;
  double transport_residual = 0.0;  ///< max |alpha(p')| along the transport
};

/// Phase by which the time-1 flow of a lattice lift misses its start: the
/// theta with circle_act(theta, endpoint) = p. Zero under correct normalization.
/// Throws DomainError if the source is not a lattice vector or the base point
/// does not return.
Phase closure_defect(const BundleModel& bundle, const LiftedField& lifted, const Vec& p, const FlowConfig& cfg = {});
Phase closure_defect(const BundleModel& bundle, const LiftedField& lifted, const Point& p,
                     const FlowConfig& cfg = {});

/// Parallel transport of p0 around the loop by p' = horizontal_lift(p, loop'(t)).
/// The phase is fiber_phase(p0, endpoint).
HolonomyResult holonomy(const BundleModel& bundle, const LoopSpec& loop, const Vec& p0, const FlowConfig& cfg = {});
HolonomyResult holonomy(const BundleModel& bundle, const LoopSpec& loop, const Point& p0,
                        const FlowConfig& cfg = {});

struct DiskIntegralOptions {
  double convergence = 1e-7;
  int max_doublings = 4;
  double path_step = 1e-5;  ///< finite-difference step in the path parameter
};

/// Integral of omega over D(t, s) = flow(X_B, t)(path(s)), oriented by
/// (d/dt, d/ds). Composite 4-point Gauss-Legendre in s, periodic trapezoid in
/// t, grid doubling until successive values agree.
double disk_integral(const BundleModel& bundle, const TorusActionSpec& action, const LatticeVector& x,
                     const PathSpec& path, int grid, const FlowConfig& cfg = {},
                     const DiskIntegralOptions& opts = {});

} // namespace prequant
