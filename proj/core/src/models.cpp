#include "prequant/models.hpp"

#include <charconv>
#include <cmath>
#include <functional>

#include <Eigen/Cholesky>
#include <Eigen/Geometry>

#include "prequant/errors.hpp"

namespace prequant {

BundleModel::BundleModel(int complex_dim, int level, ManifoldPtr total, ManifoldPtr base)
    : m_(complex_dim), level_(level), total_(std::move(total)), base_(std::move(base)) {}

double BundleModel::alpha(const Vec& z, const Vec& v) const {
  return level_ / kTwoPi * cplx::inner(z, v).imag();
}

double BundleModel::dalpha(const Vec& /*z*/, const Vec& u, const Vec& v) const {
  return level_ / kPi * cplx::inner(u, v).imag();
}

Vec BundleModel::reeb(const Vec& z) const { return (kTwoPi / level_) * cplx::mul_i(z); }

Vec BundleModel::circle_act(double theta, const Vec& z) const {
  return cplx::scale(z, std::polar(1.0, kTwoPi * theta / level_));
}

OneForm BundleModel::alpha_form() const {
  const int level = level_;
  return OneForm(total_, [level](const Vec& z, const Vec& v) {
    return level / kTwoPi * cplx::inner(z, v).imag();
  });
}

TwoForm BundleModel::dalpha_form() const {
  const int level = level_;
  return TwoForm(total_, [level](const Vec&, const Vec& u, const Vec& v) {
    return level / kPi * cplx::inner(u, v).imag();
  });
}

TwoForm BundleModel::omega_form() const {
  auto self = shared_from_this();
  return TwoForm(base_, [self](const Vec& b, const Vec& u, const Vec& v) { return self->omega(b, u, v); });
}

VectorField BundleModel::reeb_field() const {
  const double speed = kTwoPi / level_;
  return VectorField(total_, [speed](const Vec& z) { return Vec(speed * cplx::mul_i(z)); });
}

void BundleModel::verify_lens_invariance() const {
  if (level_ == 1) return;
  const Complex g = std::polar(1.0, kTwoPi / level_);
  for (int k = 0; k < 4; ++k) {
    Vec z(2 * m_);
    Vec v(2 * m_);
    for (int j = 0; j < 2 * m_; ++j) {
      z[j] = std::cos(1.3 * (j + 1) + 0.7 * k);
      v[j] = std::sin(2.1 * (j + 1) - 0.4 * k);
    }
    z.normalize();
    v = total_->tangent_project(z, v);
    const Vec gz = cplx::scale(z, g);
    const Vec gv = cplx::scale(v, g);
    const double d_alpha = std::fabs(alpha(gz, gv) - alpha(z, v));
    const double d_reeb = (reeb(gz) - cplx::scale(reeb(z), g)).norm();
    const double d_proj = base_->distance(project(gz), project(z));
    if (d_alpha > 1e-12 || d_reeb > 1e-12 || d_proj > 1e-12)
      throw Error("bundle " + id() + " is not invariant under the lens identification");
  }
}

namespace {

/// Level-n bundle L(n,1) -> S^2 via the Hopf map.
class LensBundle final : public BundleModel {
public:
  explicit LensBundle(int n)
      : BundleModel(2, n, std::make_shared<Sphere>(3, n), std::make_shared<Sphere>(2)) {
    verify_lens_invariance();
  }

  std::string id() const override { return "s2:" + std::to_string(level()); }

  Vec project(const Vec& z) const override {
    const Complex z0 = cplx::get(z, 0);
    const Complex z1 = cplx::get(z, 1);
    const Complex c = std::conj(z0) * z1;
    Vec x(3);
    x << 2.0 * c.real(), 2.0 * c.imag(), std::norm(z0) - std::norm(z1);
    return x;
  }

  Vec push_forward(const Vec& z, const Vec& w) const override {
    const Complex z0 = cplx::get(z, 0);
    const Complex z1 = cplx::get(z, 1);
    const Complex w0 = cplx::get(w, 0);
    const Complex w1 = cplx::get(w, 1);
    const Complex dc = std::conj(w0) * z1 + std::conj(z0) * w1;
    Vec x(3);
    x << 2.0 * dc.real(), 2.0 * dc.imag(), 2.0 * (std::conj(z0) * w0).real() - 2.0 * (std::conj(z1) * w1).real();
    return x;
  }

  Vec horizontal_lift(const Vec& z, const Vec& /*base_rep*/, const Vec& v) const override {
    // The horizontal plane at z is spanned over R by Jz = (-conj z1, conj z0) and i Jz.
    Vec jz(4);
    cplx::set(jz, 0, -std::conj(cplx::get(z, 1)));
    cplx::set(jz, 1, std::conj(cplx::get(z, 0)));
    const Vec ijz = cplx::mul_i(jz);
    Eigen::Matrix<double, 3, 2> jac;
    jac.col(0) = push_forward(z, jz);
    jac.col(1) = push_forward(z, ijz);
    const Eigen::Vector2d c = (jac.transpose() * jac).ldlt().solve(jac.transpose() * Eigen::Vector3d(v));
    return c[0] * jz + c[1] * ijz;
  }

  double omega(const Vec& b, const Vec& u, const Vec& v) const override {
    const Eigen::Vector3d x(b);
    const Eigen::Vector3d a(u);
    const Eigen::Vector3d c(v);
    return level() / (4.0 * kPi) * x.dot(a.cross(c));
  }
};

/// S^{2n+1} -> CP^n at level 1.
class ProjectiveBundle final : public BundleModel {
public:
  explicit ProjectiveBundle(int n)
      : BundleModel(n + 1, 1, std::make_shared<Sphere>(2 * n + 1), std::make_shared<ProjectiveSpace>(n)),
        n_(n) {}

  std::string id() const override { return "cpn:" + std::to_string(n_); }

  Vec project(const Vec& z) const override { return base_space()->canonical(z); }

  Vec push_forward(const Vec& z, const Vec& w) const override {
    const Vec b = project(z);
    const Complex gauge = cplx::unit_phase(cplx::inner(z, b));
    return cplx::scale(cplx::complex_orthogonal(z / z.norm(), w), gauge);
  }

  Vec horizontal_lift(const Vec& z, const Vec& base_rep, const Vec& v) const override {
    const Complex gauge = cplx::unit_phase(cplx::inner(base_rep, z));
    return cplx::complex_orthogonal(z / z.norm(), cplx::scale(v, gauge));
  }

  double omega(const Vec& /*b*/, const Vec& u, const Vec& v) const override {
    return cplx::inner(u, v).imag() / kPi;
  }

private:
  int n_;
};

Vec unit_axis(int dim, int index) {
  Vec v = Vec::Zero(dim);
  v[index] = 1.0;
  return v;
}

TorusActionSpec s2_action(const BundlePtr& bundle, int n, double moment_offset, bool normalized) {
  const ManifoldPtr base = bundle->base_space();
  VectorField rotation(base, [](const Vec& x) {
    Vec v(3);
    v << -kTwoPi * x[1], kTwoPi * x[0], 0.0;
    return v;
  });
  ScalarField moment(base, [n, moment_offset](const Vec& x) { return n * (x[2] + 1.0) / 2.0 + moment_offset; });
  Vec south(3);
  south << 0.0, 0.0, -1.0;
  return TorusActionSpec{1, {rotation}, {moment}, {0.0}, Point(base, south), normalized};
}

TorusActionSpec cpn_action(const BundlePtr& bundle, int n, double moment_offset, bool normalized) {
  const ManifoldPtr base = bundle->base_space();
  std::vector<VectorField> generators;
  std::vector<ScalarField> moments;
  for (int j = 1; j <= n; ++j) {
    generators.emplace_back(base, [j](const Vec& b) {
      Vec v = Vec::Zero(b.size());
      cplx::set(v, j, Complex{0.0, -kTwoPi} * cplx::get(b, j));
      return cplx::complex_orthogonal(b / b.norm(), v);
    });
    moments.emplace_back(base, [j, moment_offset](const Vec& b) {
      return std::norm(cplx::get(b, j)) / b.squaredNorm() + moment_offset;
    });
  }
  return TorusActionSpec{n, std::move(generators), std::move(moments), std::vector<double>(n, 0.0),
                         Point(base, unit_axis(2 * n + 2, 0)), normalized};
}

void check_s2_level(int n) {
  if (n < 1) throw InputError("level must be >= 1");
}

void check_cpn_dim(int n_dim) {
  if (n_dim < 1 || n_dim > 3) throw InputError("cpn dimension must be in [1, 3]");
}

} // namespace

double TorusActionSpec::moment(int i, const Vec& b) const {
  return raw_moment.at(i).at(b) + moment_shift.at(i);
}

double TorusActionSpec::moment(std::span<const double> x, const Vec& b) const {
  if (static_cast<int>(x.size()) != rank) throw InputError("moment: coefficient count does not match the rank");
  double acc = 0.0;
  for (int i = 0; i < rank; ++i)
    if (x[i] != 0.0) acc += x[i] * moment(i, b);
  return acc;
}

VectorField TorusActionSpec::generator(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != rank)
    throw InputError("generator: coefficient count does not match the rank");
  std::vector<double> coeffs(x.begin(), x.end());
  auto gens = generators;
  const int dim = fixed_point.space().ambient_dim();
  return VectorField(fixed_point.space_ptr(), [coeffs, gens, dim](const Vec& b) {
    Vec acc = Vec::Zero(dim);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0.0) acc += coeffs[i] * gens[i].at(b);
    return acc;
  });
}

ModelInstance make_s2_bundle(int n) {
  check_s2_level(n);
  auto bundle = std::make_shared<const LensBundle>(n);
  return {bundle, s2_action(bundle, n, 0.0, true)};
}

ModelInstance make_s2_equivariant_action(int n) {
  check_s2_level(n);
  auto bundle = std::make_shared<const LensBundle>(n);
  return {bundle, s2_action(bundle, n, -n / 2.0, false)};
}

ModelInstance make_cpn_bundle(int n_dim) {
  check_cpn_dim(n_dim);
  auto bundle = std::make_shared<const ProjectiveBundle>(n_dim);
  return {bundle, cpn_action(bundle, n_dim, 0.0, true)};
}

ModelInstance make_cpn_centred_action(int n_dim) {
  check_cpn_dim(n_dim);
  auto bundle = std::make_shared<const ProjectiveBundle>(n_dim);
  return {bundle, cpn_action(bundle, n_dim, -1.0 / (n_dim + 1), false)};
}

namespace {

struct ParsedId {
  std::string family;
  int parameter;
};

ParsedId parse_model_id(const std::string& id) {
  const auto colon = id.find(':');
  if (colon == std::string::npos) throw InputError("unknown model '" + id + "' (expected s2:<n> or cpn:<n>)");
  ParsedId out{id.substr(0, colon), 0};
  if (out.family != "s2" && out.family != "cpn")
    throw InputError("unknown model family '" + out.family + "' (expected s2 or cpn)");
  const std::string digits = id.substr(colon + 1);
  const char* first = digits.data();
  const char* last = digits.data() + digits.size();
  const auto [ptr, ec] = std::from_chars(first, last, out.parameter);
  if (digits.empty() || ec != std::errc() || ptr != last)
    throw InputError("model '" + id + "': parameter must be an integer");
  return out;
}

} // namespace

void validate_model_id(const std::string& id) {
  const ParsedId parsed = parse_model_id(id);
  if (parsed.family == "s2")
    check_s2_level(parsed.parameter);
  else
    check_cpn_dim(parsed.parameter);
}

ModelInstance make_model(const std::string& id) {
  const ParsedId parsed = parse_model_id(id);
  if (parsed.family == "s2") return make_s2_bundle(parsed.parameter);
  return make_cpn_bundle(parsed.parameter);
}

std::vector<std::string> model_id_forms() {
  return {"s2:<n>      level-n bundle L(n,1) -> S^2, n >= 1",
          "cpn:<n_dim> S^(2n+1) -> CP^n with the coordinate torus, 1 <= n_dim <= 3"};
}

Point project(const BundleModel& bundle, const Point& p) {
  return Point::on(bundle.base_space(), bundle.project(p.ambient()));
}

Point circle_act(const BundleModel& bundle, double theta, const Point& p) {
  return Point::on(bundle.total_space(), bundle.circle_act(theta, p.ambient()));
}

Phase fiber_phase(const BundleModel& bundle, const Vec& p, const Vec& q, double tolerance) {
  const double gap = bundle.base_space()->distance(bundle.project(p), bundle.project(q));
  if (!(gap <= tolerance))
    throw DomainError("fiber_phase: points lie on different fibers (base distance " + std::to_string(gap) + ")");
  const double turns = std::arg(cplx::inner(p, q)) / kTwoPi;
  return Phase(bundle.level() * turns);
}

Phase fiber_phase(const BundleModel& bundle, const Point& p, const Point& q, double tolerance) {
  return fiber_phase(bundle, p.ambient(), q.ambient(), tolerance);
}

double contact_volume_check(const BundleModel& bundle, const Point& p, std::span<const Tangent> basis,
                            CurvatureRoute route) {
  const OneForm alpha = bundle.alpha_form();
  if (route == CurvatureRoute::exact) return contact_volume(alpha, bundle.dalpha_form(), p, basis);
  const ManifoldPtr total = bundle.total_space();
  TwoForm fd(total, [alpha, total](const Vec& z, const Vec& u, const Vec& v) {
    const Point pz(total, z);
    return exterior_derivative(alpha, pz, Tangent(pz, u), Tangent(pz, v));
  });
  return contact_volume(alpha, fd, p, basis);
}

} // namespace prequant
