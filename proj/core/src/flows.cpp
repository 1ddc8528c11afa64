#include "prequant/flows.hpp"

#include <array>
#include <cmath>
#include <sstream>
#include <string>

#include "prequant/errors.hpp"
#include "prequant/parallel.hpp"

namespace prequant {

void FlowConfig::validate() const {
  if (!(step > 0.0)) throw InputError("FlowConfig: step must be positive");
  if (!(tolerance > 0.0)) throw InputError("FlowConfig: tolerance must be positive");
  if (!(max_time > 0.0)) throw InputError("FlowConfig: max_time must be positive");
}

namespace {

Vec rk4_step(const VectorField& field, const Vec& x, double h) {
  const Vec k1 = field.at(x);
  const Vec k2 = field.at(x + 0.5 * h * k1);
  const Vec k3 = field.at(x + 0.5 * h * k2);
  const Vec k4 = field.at(x + h * k3);
  return x + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

/// Advances x by `steps` projected RK4 steps of size h.
Vec advance(const VectorField& field, Vec x, double h, int steps, double tolerance, double t0) {
  const Manifold& m = field.space();
  for (int i = 0; i < steps; ++i) {
    const Vec next = rk4_step(field, x, h);
    const double drift = m.constraint_residual(next);
    if (!(drift <= tolerance)) {
      std::ostringstream msg;
      msg << "integrate_flow: constraint drift " << drift << " exceeds tolerance " << tolerance << " at t = "
          << t0 + (i + 1) * h << " on " << m.tag();
      throw IntegrationError(msg.str());
    }
    x = m.retract(next);
  }
  return x;
}

} // namespace

Vec integrate_flow(const VectorField& field, const Vec& x, double time, const FlowConfig& cfg) {
  cfg.validate();
  if (x.size() != field.space().ambient_dim()) throw InputError("integrate_flow: dimension mismatch");
  if (std::fabs(time) > cfg.max_time) throw InputError("integrate_flow: time exceeds max_time");
  if (time == 0.0) return x;
  const int steps = std::max(1, static_cast<int>(std::ceil(std::fabs(time) / cfg.step - 1e-9)));
  return advance(field, x, time / steps, steps, cfg.tolerance, 0.0);
}

Point integrate_flow(const VectorField& field, const Point& p, double time, const FlowConfig& cfg) {
  if (p.space().tag() != field.space().tag()) throw InputError("integrate_flow: point and field on different spaces");
  return Point::on(p.space_ptr(), integrate_flow(field, p.ambient(), time, cfg));
}

std::vector<Vec> integrate_trajectory(const VectorField& field, const Vec& x, double time, int segments,
                                      const FlowConfig& cfg) {
  cfg.validate();
  if (segments < 1) throw InputError("integrate_trajectory: need at least one segment");
  if (std::fabs(time) > cfg.max_time) throw InputError("integrate_trajectory: time exceeds max_time");
  const double dt = time / segments;
  const int per = std::max(1, static_cast<int>(std::ceil(std::fabs(dt) / cfg.step - 1e-9)));
  std::vector<Vec> out;
  out.reserve(segments + 1);
  out.push_back(x);
  for (int k = 0; k < segments; ++k) out.push_back(advance(field, out.back(), dt / per, per, cfg.tolerance, k * dt));
  return out;
}

PathSpec PathSpec::interpolating(ManifoldPtr space, const Vec& from, const Vec& to, const Vec& bump) {
  auto m = space;
  return PathSpec{std::move(space), [m, from, to, bump](double s) {
                    return m->retract((1.0 - s) * from + s * to + std::sin(kPi * s) * bump);
                  }};
}

PathSpec PathSpec::constant(ManifoldPtr space, const Vec& point) {
  return PathSpec{std::move(space), [point](double) { return point; }};
}

Vec LoopSpec::tangent(double t) const {
  const Vec x = at(t);
  if (velocity) return space->tangent_project(x, velocity(t));
  constexpr double h = 1e-4;
  auto rel = [&](double s) { return Vec(space->align(x, at(t + s))); };
  const Vec d = (-rel(2 * h) + 8.0 * rel(h) - 8.0 * rel(-h) + rel(-2 * h)) / (12.0 * h);
  return space->tangent_project(x, d);
}

double LoopSpec::closure_gap() const { return space->distance(at(0.0), at(1.0)); }

LoopSpec LoopSpec::from_flow(const VectorField& field, const Vec& start, int samples, const FlowConfig& cfg) {
  if (samples < 4) throw InputError("LoopSpec::from_flow: need at least 4 samples");
  auto table = std::make_shared<const std::vector<Vec>>(integrate_trajectory(field, start, 1.0, samples, cfg));
  auto m = field.space_ptr();
  auto eval = [table, field, m, samples](double t) -> Vec {
    t -= std::floor(t);
    const double pos = t * samples;
    int k = std::min(samples - 1, static_cast<int>(std::floor(pos)));
    const double u = pos - k;
    const Vec& x0 = (*table)[k];
    if (u == 0.0) return x0;
    // The closing sample is aligned with the opening one so wrap-around stays continuous.
    const Vec x1 = m->align(x0, (*table)[k + 1]);
    const double dt = 1.0 / samples;
    const Vec v0 = field.at(x0);
    const Vec v1 = field.at(x1);
    const double u2 = u * u;
    const double u3 = u2 * u;
    const Vec x = (2 * u3 - 3 * u2 + 1) * x0 + (u3 - 2 * u2 + u) * dt * v0 + (-2 * u3 + 3 * u2) * x1 +
                  (u3 - u2) * dt * v1;
    return m->retract(x);
  };
  LoopSpec loop{m, eval, {}};
  loop.velocity = [eval, field](double t) { return field.at(eval(t)); };
  return loop;
}

LoopSpec LoopSpec::constant(ManifoldPtr space, const Vec& point) {
  const int n = space->ambient_dim();
  return LoopSpec{std::move(space), [point](double) { return point; }, [n](double) -> Vec { return Vec::Zero(n); }};
}

Phase closure_defect(const BundleModel& bundle, const LiftedField& lifted, const Vec& p, const FlowConfig& cfg) {
  if (!lifted.lattice) throw DomainError("closure_defect: generator is not a lattice vector");
  const Vec end = integrate_flow(lifted.field, p, 1.0, cfg);
  const double gap = bundle.base_space()->distance(bundle.project(p), bundle.project(end));
  if (!(gap <= cfg.tolerance))
    throw DomainError("closure_defect: base point does not return after time 1 (distance " + std::to_string(gap) + ")");
  return fiber_phase(bundle, end, p, cfg.tolerance);
}

Phase closure_defect(const BundleModel& bundle, const LiftedField& lifted, const Point& p, const FlowConfig& cfg) {
  return closure_defect(bundle, lifted, p.ambient(), cfg);
}

HolonomyResult holonomy(const BundleModel& bundle, const LoopSpec& loop, const Vec& p0, const FlowConfig& cfg) {
  cfg.validate();
  const double gap = loop.closure_gap();
  if (!(gap <= 1e-8)) throw InputError("holonomy: loop is not closed (gap " + std::to_string(gap) + ")");
  const double start_gap = bundle.base_space()->distance(bundle.project(p0), loop.at(0.0));
  if (!(start_gap <= cfg.tolerance))
    throw InputError("holonomy: start point does not lie over the loop (distance " + std::to_string(start_gap) + ")");

  const Manifold& total = *bundle.total_space();
  double residual = 0.0;
  auto rhs = [&](double t, const Vec& p) {
    const Vec w = bundle.horizontal_lift(p, loop.at(t), loop.tangent(t));
    residual = std::max(residual, std::fabs(bundle.alpha(p, w)));
    return w;
  };
  const int steps = std::max(1, static_cast<int>(std::ceil(1.0 / cfg.step - 1e-9)));
  const double h = 1.0 / steps;
  Vec p = p0;
  for (int i = 0; i < steps; ++i) {
    const double t = i * h;
    const Vec k1 = rhs(t, p);
    const Vec k2 = rhs(t + 0.5 * h, p + 0.5 * h * k1);
    const Vec k3 = rhs(t + 0.5 * h, p + 0.5 * h * k2);
    const Vec k4 = rhs(t + h, p + h * k3);
    const Vec next = p + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(total.constraint_residual(next) <= cfg.tolerance))
      throw IntegrationError("holonomy: transport left the total space at t = " + std::to_string(t + h));
    p = total.retract(next);
  }
  return HolonomyResult{fiber_phase(bundle, p0, p, cfg.tolerance), residual};
}

HolonomyResult holonomy(const BundleModel& bundle, const LoopSpec& loop, const Point& p0, const FlowConfig& cfg) {
  return holonomy(bundle, loop, p0.ambient(), cfg);
}

namespace {

constexpr std::array<double, 4> kGaussNodes = {-0.8611363115940526, -0.3399810435848563, 0.3399810435848563,
                                               0.8611363115940526};
constexpr std::array<double, 4> kGaussWeights = {0.3478548451374538, 0.6521451548625461, 0.6521451548625461,
                                                 0.3478548451374538};

double disk_quadrature(const BundleModel& bundle, const VectorField& field, const PathSpec& path, int grid,
                       const FlowConfig& cfg, double ds) {
  const Manifold& base = *bundle.base_space();
  const int panels = (grid + 3) / 4;
  const std::size_t nodes = static_cast<std::size_t>(panels) * 4;
  std::vector<double> values(nodes, 0.0);
  std::vector<double> weights(nodes, 0.0);
  parallel_for(nodes, [&](std::size_t idx) {
    const int panel = static_cast<int>(idx / 4);
    const int q = static_cast<int>(idx % 4);
    const double s = (panel + 0.5 * (1.0 + kGaussNodes[q])) / panels;
    weights[idx] = 0.5 * kGaussWeights[q] / panels;

    const Vec b = path.at(s);
    const Vec bp = base.align(b, path.at(s + ds));
    const Vec bm = base.align(b, path.at(s - ds));
    const auto mid = integrate_trajectory(field, b, 1.0, grid, cfg);
    const auto plus = integrate_trajectory(field, bp, 1.0, grid, cfg);
    const auto minus = integrate_trajectory(field, bm, 1.0, grid, cfg);
    double acc = 0.0;
    for (int k = 0; k < grid; ++k) {
      const Vec& d = mid[k];
      const Vec d_s = base.tangent_project(d, (base.align(d, plus[k]) - base.align(d, minus[k])) / (2.0 * ds));
      const Vec d_t = base.tangent_project(d, field.at(d));
      acc += bundle.omega(d, d_t, d_s);
    }
    values[idx] = acc / grid;
  });
  double total = 0.0;
  for (std::size_t i = 0; i < nodes; ++i) total += weights[i] * values[i];
  return total;
}

} // namespace

double disk_integral(const BundleModel& bundle, const TorusActionSpec& action, const LatticeVector& x,
                     const PathSpec& path, int grid, const FlowConfig& cfg, const DiskIntegralOptions& opts) {
  if (grid < 16) throw InputError("disk_integral: grid must be >= 16");
  const double start_gap = bundle.base_space()->distance(path.at(0.0), action.fixed_point.ambient());
  if (!(start_gap <= 1e-8))
    throw PreconditionError("disk_integral: path must start at the normalization point (distance " +
                            std::to_string(start_gap) + ")");
  const std::vector<double> coeffs = x.to_real();
  const VectorField field = action.generator(coeffs);

  double previous = disk_quadrature(bundle, field, path, grid, cfg, opts.path_step);
  double current = previous;
  for (int d = 0; d < opts.max_doublings; ++d) {
    grid *= 2;
    current = disk_quadrature(bundle, field, path, grid, cfg, opts.path_step);
    if (std::fabs(current - previous) < opts.convergence) return current;
    if (d + 1 < opts.max_doublings) previous = current;
  }
  if (opts.max_doublings == 0) return previous;
  std::ostringstream msg;
  msg.precision(12);
  msg << "disk_integral: no convergence after " << opts.max_doublings << " doublings (last values " << previous
      << ", " << current << ")";
  throw QuadratureError(msg.str());
}

} // namespace prequant
