#include "prequant/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>

#include "prequant/errors.hpp"
#include "prequant/parallel.hpp"
#include "prequant/sampling.hpp"

namespace prequant {

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::hypothesis_failure:
      return "hypothesis-failure";
  }
  return "fail";
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

/// Collects named sub-defects with their own tolerances.
class Parts {
public:
  void add(const std::string& name, double defect, double tolerance) {
    auto it = std::find_if(parts_.begin(), parts_.end(), [&](const Part& p) { return p.name == name; });
    if (it == parts_.end()) {
      parts_.push_back({name, defect, tolerance});
    } else {
      it->defect = std::max(it->defect, defect);
    }
  }

  /// Fills max_defect/status/notes of a report whose tolerance is `tolerance`
  /// and whose default tolerance is `nominal`; part tolerances scale with the ratio.
  void finish(CheckReport& r, double nominal, const std::string& extra = {}) const {
    const double scale = r.tolerance / nominal;
    double worst = 0.0;
    std::string notes;
    for (const Part& p : parts_) {
      const double tol = p.tolerance * scale;
      const double d = std::isfinite(p.defect) ? p.defect : std::numeric_limits<double>::infinity();
      worst = std::max(worst, d * r.tolerance / tol);
      if (!notes.empty()) notes += "; ";
      notes += p.name + "=" + sci(p.defect) + " (tol " + sci(tol) + ")";
    }
    r.max_defect = worst;
    r.status = worst < r.tolerance ? CheckStatus::pass : CheckStatus::fail;
    r.notes = extra.empty() ? notes : (notes.empty() ? extra : notes + "; " + extra);
  }

private:
  struct Part {
    std::string name;
    double defect;
    double tolerance;
  };
  std::vector<Part> parts_;
};

/// Per-sample maxima, filled by index so parallel runs reduce deterministically.
struct SampleMax {
  explicit SampleMax(std::size_t n) : values(n, 0.0) {}
  double max() const { return values.empty() ? 0.0 : *std::max_element(values.begin(), values.end()); }
  std::vector<double> values;
};

Vec horizontal_probe(Sampler& rng, const Vec& z) {
  return cplx::complex_orthogonal(z, rng.gaussian(static_cast<int>(z.size())));
}

std::vector<Point> sample_points(const ManifoldPtr& space, int n, Sampler& rng) {
  std::vector<Point> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) pts.push_back(rng.point(space));
  return pts;
}

std::vector<LatticeVector> probe_lattice_vectors(int rank) {
  std::vector<LatticeVector> out;
  for (int i = 0; i < rank; ++i) out.push_back(LatticeVector::basis(rank, i));
  if (rank > 1) out.push_back(LatticeVector{std::vector<long long>(rank, 1)});
  return out;
}

double max_pairwise_bracket(const std::vector<VectorField>& fields, const std::vector<Point>& pts) {
  SampleMax worst(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    double m = 0.0;
    for (std::size_t a = 0; a < fields.size(); ++a)
      for (std::size_t b = a + 1; b < fields.size(); ++b)
        m = std::max(m, lie_bracket(fields[a], fields[b], pts[i]).norm());
    worst.values[i] = m;
  });
  return worst.max();
}

struct Clock {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

CheckReport make_report(const std::string& name, double tolerance, int samples, std::uint64_t seed) {
  CheckReport r;
  r.name = name;
  r.tolerance = tolerance;
  r.samples = samples;
  r.seed = seed;
  return r;
}

} // namespace

std::vector<ContactHamiltonian> test_hamiltonians(const ModelInstance& model) {
  const BundlePtr bundle = model.bundle;
  const ManifoldPtr total = bundle->total_space();
  auto spec = std::make_shared<const TorusActionSpec>(model.action);
  std::vector<ContactHamiltonian> out;
  out.push_back({"moment", ScalarField(total, [bundle, spec](const Vec& z) { return spec->moment(0, bundle->project(z)); }),
                 true});
  out.push_back({"hermitian",
                 ScalarField(total, [](const Vec& z) { return (cplx::get(z, 0) * std::conj(cplx::get(z, 1))).real(); }),
                 true});
  out.push_back({"re-z0", ScalarField(total, [](const Vec& z) { return z[0]; }), false});
  out.push_back({"im-z0z1", ScalarField(total, [](const Vec& z) { return (cplx::get(z, 0) * cplx::get(z, 1)).imag(); }),
                 false});
  out.push_back({"mixed", ScalarField(total,
                                      [](const Vec& z) {
                                        const Complex z0 = cplx::get(z, 0);
                                        return (z0 * z0).real() + std::norm(cplx::get(z, 1));
                                      }),
                 false});
  return out;
}

std::pair<CheckReport, LemmaTwoWitness> check_lemma2(const BundlePtr& bundle, const VectorField& Y, int samples,
                                                     std::uint64_t seed, double tolerance) {
  constexpr double kHypothesis = 1e-4;
  Clock clock;
  CheckReport report = make_report("lemma2", tolerance, samples, seed);
  Sampler rng = Sampler::stream(seed, fnv1a("lemma2"));
  const ManifoldPtr total = bundle->total_space();
  const auto pts = sample_points(total, samples, rng);
  std::vector<std::pair<Vec, Vec>> probes;
  for (const Point& p : pts) probes.emplace_back(horizontal_probe(rng, p.ambient()), horizontal_probe(rng, p.ambient()));

  const OneForm alpha = bundle->alpha_form();
  const VectorField reeb = bundle->reeb_field();
  auto extracted_f = [bundle, Y, alpha, total](const Vec& z) {
    const Point p(total, z);
    return lie_derivative_oneform(Y, alpha, p, Tangent(p, bundle->reeb(z)));
  };

  SampleMax f(pts.size()), xi(pts.size()), bracket(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Point& p = pts[i];
    f.values[i] = std::fabs(extracted_f(p.ambient()));
    double x = 0.0;
    for (const Vec& u : {probes[i].first, probes[i].second})
      x = std::max(x, std::fabs(lie_derivative_oneform(Y, alpha, p, Tangent(p, u))) / std::max(1.0, u.norm()));
    xi.values[i] = x;
    bracket.values[i] = lie_bracket(Y, reeb, p).norm();
  });

  LemmaTwoWitness witness{Y, extracted_f, bracket.max(), xi.max(), f.max()};
  const std::string measured = "max|f|=" + sci(witness.max_f) + "; |[Y,R]|=" + sci(witness.commutes_with_r) +
                               "; xi-defect=" + sci(witness.xi_preserved);
  if (witness.commutes_with_r >= kHypothesis || witness.xi_preserved >= kHypothesis) {
    report.status = CheckStatus::hypothesis_failure;
    report.max_defect = std::max(witness.commutes_with_r, witness.xi_preserved);
    report.notes = "hypothesis violated (" +
                   std::string(witness.commutes_with_r >= kHypothesis ? "Y does not commute with R"
                                                                      : "Y does not preserve ker alpha") +
                   "); " + measured;
  } else {
    report.max_defect = witness.max_f;
    report.status = witness.max_f < tolerance ? CheckStatus::pass : CheckStatus::fail;
    report.notes = measured;
  }
  report.wall_time = clock.seconds();
  return {report, witness};
}

CheckReport check_equivariance(const BundlePtr& bundle, const TorusActionSpec& action, const LatticeVector& x,
                               int samples, std::uint64_t seed, const FlowConfig& cfg, double tolerance) {
  Clock clock;
  CheckReport report = make_report("equivariance", tolerance, samples, seed);
  if (!action.normalized) throw PreconditionError("check_equivariance: action must be normalized");
  Sampler rng = Sampler::stream(seed, fnv1a("equivariance"));
  const auto pts = sample_points(bundle->total_space(), samples, rng);
  const LiftedField lifted = lift_field(bundle, action, x);
  const VectorField base_field = action.generator(lifted.source);
  const VectorField reeb = bundle->reeb_field();
  const Manifold& base = *bundle->base_space();

  SampleMax proj(pts.size()), bracket(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Vec& z = pts[i].ambient();
    const Vec b = bundle->project(z);
    double m = 0.0;
    Vec up = z;
    Vec down = b;
    double t_prev = 0.0;
    for (double t : {0.25, 0.5, 1.0}) {
      up = integrate_flow(lifted.field, up, t - t_prev, cfg);
      down = integrate_flow(base_field, down, t - t_prev, cfg);
      t_prev = t;
      m = std::max(m, base.distance(bundle->project(up), down));
    }
    proj.values[i] = m;
    bracket.values[i] = lie_bracket(lifted.field, reeb, pts[i]).norm();
  });
  Parts parts;
  parts.add("projection", proj.max(), 1e-5);
  parts.add("bracket-R", bracket.max(), 1e-5);
  parts.finish(report, 1e-5);
  report.wall_time = clock.seconds();
  return report;
}

CheckReport so3_obstruction_demo(int n, int samples, std::uint64_t seed, const FlowConfig& cfg, double tolerance) {
  Clock clock;
  CheckReport report = make_report("so3-demo", tolerance, samples, seed);
  const ModelInstance model = make_s2_equivariant_action(n);
  Sampler rng = Sampler::stream(seed, fnv1a("so3-demo"));
  const auto pts = sample_points(model.bundle->total_space(), samples, rng);
  // The rotation-equivariant moment is used as is: offset 0 on an un-normalized spec.
  const LiftedField lifted = lift_field(model.bundle, model.action, LatticeVector::basis(1, 0), 0.0);
  const Phase expected(n / 2.0);
  SampleMax defect(pts.size());
  std::vector<double> measured(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Phase d = closure_defect(*model.bundle, lifted, pts[i], cfg);
    measured[i] = d.value();
    defect.values[i] = circular_distance(d, expected);
  });
  report.max_defect = defect.max();
  report.status = report.max_defect < tolerance ? CheckStatus::pass : CheckStatus::fail;
  const double observed = measured.empty() ? 0.0 : measured.front();
  report.notes = "level=" + std::to_string(n) + "; closure phase=" + sci(observed) + "; predicted n/2 mod 1=" +
                 sci(expected.value()) + "; " +
                 (expected.value() > 0.25 ? "obstruction present: the rotation lift does not close"
                                          : "no obstruction at even level");
  report.wall_time = clock.seconds();
  return report;
}

CheckReport dimension_bound_check(const BundlePtr& bundle, const TorusActionSpec& action, int samples,
                                  std::uint64_t seed, double tolerance) {
  Clock clock;
  CheckReport report = make_report("dimension-bound", tolerance, samples, seed);
  Sampler rng = Sampler::stream(seed, fnv1a("dimension-bound"));
  const auto pts = sample_points(bundle->total_space(), samples, rng);
  std::vector<VectorField> fields{bundle->reeb_field()};
  for (int i = 0; i < action.rank; ++i) fields.push_back(lift_field(bundle, action, LatticeVector::basis(action.rank, i)).field);
  const double bracket = max_pairwise_bracket(fields, pts);

  const int torus = action.rank + 1;
  const int twice_bound = bundle->total_dim() + 1;
  const bool within = 2 * torus <= twice_bound;
  const bool saturated = 2 * torus == twice_bound;
  Parts parts;
  parts.add("bracket", bracket, 1e-5);
  parts.add("bound", within ? 0.0 : 1.0, 1e-5);
  parts.finish(report, 1e-5,
               "k+1=" + std::to_string(torus) + "; (dim P+1)/2=" + std::to_string(twice_bound / 2) +
                   (saturated ? "; saturated" : "; not saturated"));
  report.wall_time = clock.seconds();
  return report;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"connection-axioms", "contact-condition", "lattice-closure",
                                              "shift-defect",      "holonomy-disk",     "moment-identity",
                                              "lemma2",            "equivariance",      "bracket-torus",
                                              "so3-demo",          "dimension-bound"};
  return names;
}

bool is_check_name(const std::string& name) {
  const auto& names = check_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

double default_tolerance(const std::string& name) {
  static const std::map<std::string, double> table{
      {"connection-axioms", 1e-6}, {"contact-condition", 1e-6}, {"lattice-closure", 1e-5},
      {"shift-defect", 1e-4},      {"holonomy-disk", 1e-4},     {"moment-identity", 1e-5},
      {"lemma2", 1e-5},            {"equivariance", 1e-5},      {"bracket-torus", 1e-5},
      {"so3-demo", 1e-4},          {"dimension-bound", 1e-5}};
  const auto it = table.find(name);
  if (it == table.end()) throw InputError("unknown check '" + name + "'");
  return it->second;
}

bool check_applies(const std::string& name, const std::string& model_id) {
  if (name == "so3-demo") return model_id.rfind("s2:", 0) == 0;
  return is_check_name(name);
}

std::vector<std::string> default_suite() {
  std::vector<std::string> out;
  for (const auto& n : check_names())
    if (n != "so3-demo") out.push_back(n);
  return out;
}

namespace {

CheckReport connection_axioms(const ModelInstance& model, const CheckOptions& o, double tol) {
  const BundleModel& bundle = *model.bundle;
  CheckReport r = make_report("connection-axioms", tol, o.samples, o.seed);
  Sampler rng = Sampler::stream(o.seed, fnv1a(r.name));
  const auto pts = sample_points(bundle.total_space(), o.samples, rng);
  std::vector<std::array<Vec, 3>> probes;
  for (const Point& p : pts)
    probes.push_back({rng.tangent(p).vec(), horizontal_probe(rng, p.ambient()), horizontal_probe(rng, p.ambient())});
  const OneForm alpha = bundle.alpha_form();
  const VectorField reeb = bundle.reeb_field();
  SampleMax a_r(pts.size()), lie(pts.size()), curv(pts.size()), period(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    const Point& p = pts[i];
    const Vec& z = p.ambient();
    a_r.values[i] = std::fabs(bundle.alpha(z, bundle.reeb(z)) - 1.0);
    lie.values[i] = std::fabs(lie_derivative_oneform(reeb, alpha, p, Tangent(p, probes[i][0])));
    const Tangent u(p, probes[i][1]);
    const Tangent v(p, probes[i][2]);
    const double fd = exterior_derivative(alpha, p, u, v);
    const double pulled = bundle.omega(bundle.project(z), bundle.push_forward(z, u.vec()), bundle.push_forward(z, v.vec()));
    curv.values[i] = std::fabs(fd - pulled);
    period.values[i] = bundle.total_space()->distance(bundle.circle_act(1.0, z), z);
  });
  Parts parts;
  parts.add("alpha(R)-1", a_r.max(), 1e-10);
  parts.add("L_R alpha", lie.max(), 1e-6);
  parts.add("d alpha - pullback omega", curv.max(), 1e-6);
  parts.add("circle period", period.max(), 1e-10);
  parts.finish(r, 1e-6);
  return r;
}

std::vector<Tangent> orthonormal_tangent_basis(const Point& p, Sampler& rng) {
  const Manifold& m = p.space();
  std::vector<Vec> vecs;
  while (static_cast<int>(vecs.size()) < m.dim()) {
    Vec v = m.tangent_project(p.ambient(), rng.gaussian(m.ambient_dim()));
    for (const Vec& w : vecs) v -= w.dot(v) * w;
    if (v.norm() > 1e-6) vecs.push_back(v / v.norm());
  }
  std::vector<Tangent> out;
  for (const Vec& v : vecs) out.emplace_back(p, v);
  return out;
}

CheckReport contact_condition(const ModelInstance& model, const CheckOptions& o, double tol) {
  const BundleModel& bundle = *model.bundle;
  CheckReport r = make_report("contact-condition", tol, o.samples, o.seed);
  Sampler rng = Sampler::stream(o.seed, fnv1a(r.name));
  const auto pts = sample_points(bundle.total_space(), o.samples, rng);
  std::vector<std::vector<Tangent>> bases;
  for (const Point& p : pts) bases.push_back(orthonormal_tangent_basis(p, rng));
  std::vector<double> exact(pts.size()), routes(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    exact[i] = contact_volume_check(bundle, pts[i], bases[i], CurvatureRoute::exact);
    const double fd = contact_volume_check(bundle, pts[i], bases[i], CurvatureRoute::finite_difference);
    routes[i] = std::fabs(fd - exact[i]);
  });
  double min_volume = std::numeric_limits<double>::infinity();
  for (double v : exact) min_volume = std::min(min_volume, std::fabs(v));
  Parts parts;
  parts.add("exact vs finite-difference volume", *std::max_element(routes.begin(), routes.end()), 1e-6);
  // Non-degeneracy: |alpha ^ (d alpha)^n| on an orthonormal frame must exceed 0.01.
  parts.add("degeneracy 0.01/min|vol|", 0.01 / min_volume, 1.0);
  parts.finish(r, 1e-6, "min|vol|=" + sci(min_volume));
  return r;
}

CheckReport lattice_closure(const ModelInstance& model, const CheckOptions& o, double tol) {
  CheckReport r = make_report("lattice-closure", tol, o.samples, o.seed);
  Sampler rng = Sampler::stream(o.seed, fnv1a(r.name));
  const auto pts = sample_points(model.bundle->total_space(), o.samples, rng);
  const auto generators = probe_lattice_vectors(model.action.rank);
  std::vector<LiftedField> lifts;
  for (const auto& x : generators) lifts.push_back(lift_field(model.bundle, model.action, x));
  SampleMax defect(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) {
    double m = 0.0;
    for (const auto& lifted : lifts)
      m = std::max(m, circular_distance(closure_defect(*model.bundle, lifted, pts[i], o.flow), Phase(0.0)));
    defect.values[i] = m;
  });
  Parts parts;
  parts.add("closure", defect.max(), 1e-5);
  parts.finish(r, 1e-5, "generators=" + std::to_string(lifts.size()));
  return r;
}

CheckReport shift_defect(const ModelInstance& model, const CheckOptions& o, double tol) {
  CheckReport r = make_report("shift-defect", tol, o.samples, o.seed);
  Sampler rng = Sampler::stream(o.seed, fnv1a(r.name));
  const auto pts = sample_points(model.bundle->total_space(), o.samples, rng);
  const auto generators = probe_lattice_vectors(model.action.rank);
  double shift = 0.0;
  double spread = 0.0;
  std::string measured;
  for (double c : o.offsets) {
    double worst_c = 0.0;
    for (const auto& x : generators) {
      const LiftedField lifted = lift_field(model.bundle, model.action, x, c);
      std::vector<Phase> phases(pts.size());
      parallel_for(pts.size(), [&](std::size_t i) { phases[i] = closure_defect(*model.bundle, lifted, pts[i], o.flow); });
      for (const Phase& ph : phases) {
        const double d = circular_distance(ph, Phase(c));
        worst_c = std::max(worst_c, d);
        spread = std::max(spread, circular_distance(ph, phases.front()));
      }
      if (&x == &generators.front() && !phases.empty()) {
        if (!measured.empty()) measured += ", ";
        measured += "c=" + sci(c) + " -> " + sci(phases.front().value());
      }
    }
    shift = std::max(shift, worst_c);
  }
  Parts parts;
  parts.add("shift law", shift, 1e-4);
  parts.add("spread over points", spread, 1e-5);
  parts.finish(r, 1e-4, measured);
  return r;
}

struct DiskSample {
  Point p;
  LatticeVector x;
  PathSpec path;
  PathSpec alternative;
};

/// Bump whose interpolating path stays away from the ambient origin, so the
/// retracted path has bounded speed.
Vec tame_bump(Sampler& rng, const Vec& from, const Vec& to, int dim, double sigma) {
  for (;;) {
    const Vec bump = rng.gaussian(dim, sigma);
    double lowest = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= 64; ++k) {
      const double s = k / 64.0;
      lowest = std::min(lowest, ((1.0 - s) * from + s * to + std::sin(kPi * s) * bump).norm());
    }
    if (lowest > 0.5) return bump;
  }
}

std::vector<DiskSample> disk_samples(const ModelInstance& model, const CheckOptions& o, const std::string& name) {
  Sampler rng = Sampler::stream(o.seed, fnv1a(name));
  const ManifoldPtr base = model.bundle->base_space();
  const Vec& b0 = model.action.fixed_point.ambient();
  std::vector<DiskSample> out;
  for (int i = 0; i < o.samples; ++i) {
    const Point p = rng.point(model.bundle->total_space());
    const Vec b = model.bundle->project(p.ambient());
    LatticeVector x{std::vector<long long>(model.action.rank, 0)};
    while (x.is_zero())
      for (auto& c : x.coeffs) c = rng.integer(-2, 2);
    const Vec bump1 = tame_bump(rng, b0, b, base->ambient_dim(), 0.3);
    const Vec bump2 = tame_bump(rng, b0, b, base->ambient_dim(), 0.6);
    out.push_back({p, x, PathSpec::interpolating(base, b0, b, bump1), PathSpec::interpolating(base, b0, b, bump2)});
  }
  return out;
}

LoopSpec orbit_loop(const ModelInstance& model, const LatticeVector& x, const Vec& b, const FlowConfig& cfg) {
  const int steps = std::max(1, static_cast<int>(std::ceil(1.0 / cfg.step - 1e-9)));
  return LoopSpec::from_flow(model.action.generator(x.to_real()), b, 2 * steps, cfg);
}

CheckReport holonomy_disk(const ModelInstance& model, const CheckOptions& o, double tol) {
  CheckReport r = make_report("holonomy-disk", tol, o.samples, o.seed);
  const BundleModel& bundle = *model.bundle;
  const auto samples = disk_samples(model, o, r.name);
  SampleMax identity(samples.size()), residual(samples.size());
  // Samples are evaluated in order; disk_integral fans out internally.
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const DiskSample& s = samples[i];
    const Vec b = bundle.project(s.p.ambient());
    const HolonomyResult hol = holonomy(bundle, orbit_loop(model, s.x, b, o.flow), s.p, o.flow);
    const double disk = disk_integral(bundle, model.action, s.x, s.path, 16, o.flow);
    identity.values[i] = circular_distance(hol.phase, Phase(disk));
    residual.values[i] = hol.transport_residual;
  }
  Parts parts;
  parts.add("holonomy vs disk", identity.max(), 1e-4);
  parts.add("transport residual", residual.max(), 1e-8);
  std::string extra;
  if (bundle.id().rfind("s2:", 0) == 0) {
    // Equator traversed by the rotation bounds the southern hemisphere: phase n/2 mod 1.
    Vec east(3);
    east << 1.0, 0.0, 0.0;
    Vec z(4);
    z << 1.0 / std::sqrt(2.0), 0.0, 1.0 / std::sqrt(2.0), 0.0;
    const HolonomyResult eq = holonomy(bundle, orbit_loop(model, LatticeVector::basis(1, 0), east, o.flow), z, o.flow);
    const Phase expected(bundle.level() / 2.0);
    parts.add("equator", circular_distance(eq.phase, expected), 1e-4);
    extra = "equator phase=" + sci(eq.phase.value());
  }
  parts.finish(r, 1e-4, extra);
  return r;
}

CheckReport moment_identity(const ModelInstance& model, const CheckOptions& o, double tol) {
  CheckReport r = make_report("moment-identity", tol, o.samples, o.seed);
  const BundleModel& bundle = *model.bundle;
  const auto samples = disk_samples(model, o, r.name);
  SampleMax identity(samples.size());
  double independence = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const DiskSample& s = samples[i];
    const std::vector<double> x = s.x.to_real();
    const double disk = disk_integral(bundle, model.action, s.x, s.path, 16, o.flow);
    const double predicted = model.action.moment(x, s.path.at(1.0)) - model.action.moment(x, s.path.at(0.0));
    identity.values[i] = std::fabs(disk - predicted);
    if (i < 5) {
      const double other = disk_integral(bundle, model.action, s.x, s.alternative, 16, o.flow);
      independence = std::max(independence, distance_to_integer(disk - other));
    }
  }
  Parts parts;
  parts.add("disk - (Phi(b) - Phi(b0))", identity.max(), 1e-5);
  parts.add("path independence mod Z", independence, 1e-4);
  parts.finish(r, 1e-5);
  return r;
}

CheckReport lemma2_suite(const ModelInstance& model, const CheckOptions& o, double tol) {
  Clock clock;
  CheckReport r = make_report("lemma2", tol, o.samples, o.seed);
  std::vector<std::pair<std::string, VectorField>> fields{{"R", model.bundle->reeb_field()}};
  for (int i = 0; i < model.action.rank; ++i)
    fields.emplace_back("X_P(e" + std::to_string(i + 1) + ")",
                        lift_field(model.bundle, model.action, LatticeVector::basis(model.action.rank, i)).field);
  const auto catalog = test_hamiltonians(model);
  for (const auto& name : o.hamiltonians) {
    const auto it = std::find_if(catalog.begin(), catalog.end(), [&](const auto& h) { return h.name == name; });
    if (it == catalog.end()) throw InputError("unknown contact Hamiltonian '" + name + "'");
    fields.emplace_back("Y(" + name + ")", contact_vector_field(model.bundle, it->h));
  }
  double worst = 0.0;
  bool hypothesis_failed = false;
  std::string notes;
  for (const auto& [label, field] : fields) {
    const auto [rep, witness] = check_lemma2(model.bundle, field, o.samples, o.seed, tol);
    if (rep.status == CheckStatus::hypothesis_failure) hypothesis_failed = true;
    else worst = std::max(worst, witness.max_f);
    if (!notes.empty()) notes += " | ";
    notes += label + ": " + to_string(rep.status) + ", max|f|=" + sci(witness.max_f) +
             ", |[Y,R]|=" + sci(witness.commutes_with_r);
  }
  r.notes = notes;
  if (hypothesis_failed) {
    r.status = CheckStatus::hypothesis_failure;
    r.max_defect = std::numeric_limits<double>::infinity();
  } else {
    r.max_defect = worst;
    r.status = worst < tol ? CheckStatus::pass : CheckStatus::fail;
  }
  r.wall_time = clock.seconds();
  return r;
}

CheckReport equivariance_suite(const ModelInstance& model, const CheckOptions& o, double tol) {
  CheckReport r = make_report("equivariance", tol, o.samples, o.seed);
  double worst = 0.0;
  std::string notes;
  for (const auto& x : probe_lattice_vectors(model.action.rank)) {
    const CheckReport one = check_equivariance(model.bundle, model.action, x, o.samples, o.seed, o.flow, tol);
    worst = std::max(worst, one.max_defect);
    if (!notes.empty()) notes += " | ";
    notes += one.notes;
  }
  r.max_defect = worst;
  r.status = worst < tol ? CheckStatus::pass : CheckStatus::fail;
  r.notes = notes;
  return r;
}

CheckReport bracket_torus(const ModelInstance& model, const CheckOptions& o, double tol) {
  CheckReport r = make_report("bracket-torus", tol, o.samples, o.seed);
  Sampler rng = Sampler::stream(o.seed, fnv1a(r.name));
  const auto pts = sample_points(model.bundle->total_space(), o.samples, rng);
  std::vector<VectorField> fields{model.bundle->reeb_field()};
  for (int i = 0; i < model.action.rank; ++i)
    fields.push_back(lift_field(model.bundle, model.action, LatticeVector::basis(model.action.rank, i)).field);
  r.max_defect = max_pairwise_bracket(fields, pts);
  r.status = r.max_defect < tol ? CheckStatus::pass : CheckStatus::fail;
  r.notes = "fields=" + std::to_string(fields.size());
  return r;
}

} // namespace

CheckReport run_check(const std::string& name, const ModelInstance& model, const CheckOptions& o) {
  Clock clock;
  const double tol = o.tolerance.value_or(default_tolerance(name));
  CheckReport r;
  try {
    if (!check_applies(name, model.bundle->id()))
      throw InputError("check '" + name + "' is not defined for model " + model.bundle->id());
    if (name == "connection-axioms") r = connection_axioms(model, o, tol);
    else if (name == "contact-condition") r = contact_condition(model, o, tol);
    else if (name == "lattice-closure") r = lattice_closure(model, o, tol);
    else if (name == "shift-defect") r = shift_defect(model, o, tol);
    else if (name == "holonomy-disk") r = holonomy_disk(model, o, tol);
    else if (name == "moment-identity") r = moment_identity(model, o, tol);
    else if (name == "lemma2") r = lemma2_suite(model, o, tol);
    else if (name == "equivariance") r = equivariance_suite(model, o, tol);
    else if (name == "bracket-torus") r = bracket_torus(model, o, tol);
    else if (name == "so3-demo") r = so3_obstruction_demo(model.bundle->level(), o.samples, o.seed, o.flow, tol);
    else r = dimension_bound_check(model.bundle, model.action, o.samples, o.seed, tol);
  } catch (const Error& e) {
    r = make_report(name, tol, o.samples, o.seed);
    r.status = CheckStatus::fail;
    r.max_defect = std::numeric_limits<double>::infinity();
    r.notes = std::string("error: ") + e.what();
  }
  r.seed = o.seed;
  r.samples = o.samples;
  r.wall_time = clock.seconds();
  return r;
}

} // namespace prequant
