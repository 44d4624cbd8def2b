#include "circlekit/builders.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

#include "circlekit/errors.hpp"
#include "circlekit/hypergraph.hpp"

namespace circlekit::construct {

namespace {

graph::Graph cycle_graph(std::size_t n) {
  graph::Graph g(n);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Scalar ceil_of(const Scalar& s) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), s.raw().get_num_mpz_t(), s.raw().get_den_mpz_t());
  return Scalar(mpq_class(q));
}

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Accepts a candidate base only if its contact graph is exactly C_n and it
// passes the full verification for girth n and three colors.
std::optional<Constellation> accept_cycle(std::vector<geom::Circle> circles, const geom::CosAngle& angle) {
  const std::size_t n = circles.size();
  std::vector<Provenance> provenance;
  for (std::size_t i = 0; i < n; ++i) provenance.push_back({Role::base, 0, 0, i});
  StepRecord meta;
  meta.construction = "base";
  meta.angle = angle;
  meta.g = n;
  meta.k = 3;
  meta.base = circles;
  Constellation c;
  try {
    c = make_constellation(std::move(circles), std::move(provenance), std::move(meta));
  } catch (const DegenerateInput&) {
    return std::nullopt;
  }
  if (!(contact_graph(c.circles(), angle) == cycle_graph(n))) return std::nullopt;
  if (!verify_constellation(c, n, 3, angle).passed()) return std::nullopt;
  return c;
}

// A path of n - 1 unit circles along the x-axis closed by one circle above
// its midpoint: (n - 2)^2 + y^2 = (1 + rho)^2 is a Pythagorean closure with
// y = (n - 2)(s - 1/s)/2 and 1 + rho = (n - 2)(s + 1/s)/2.
std::optional<Constellation> tangency_cycle(int n) {
  const Scalar half_span = Scalar(n - 2, 2);
  for (long s = 2; s <= 32; ++s) {
    const Scalar sc(s), inv(1, s);
    const Scalar y = half_span * (sc - inv);
    const Scalar rho = half_span * (sc + inv) - Scalar(1);
    if (rho.sign() <= 0) continue;
    std::vector<geom::Circle> circles;
    for (int j = 0; j + 1 < n; ++j) circles.emplace_back(Scalar(2 * j), Scalar(0), Scalar(1));
    circles.emplace_back(Scalar(n - 2), y, rho);
    if (auto c = accept_cycle(std::move(circles), geom::CosAngle::tangency())) return c;
  }
  return std::nullopt;
}

// Neighbours with radii r and rs meet at the angle iff 1 + s^2 +- 2cs is a
// square; the spacing is then r times its root. Reciprocals stay admissible.
std::optional<Scalar> spacing_factor(const Scalar& s, const Scalar& c, int sign) {
  const Scalar q = Scalar(1) + s * s + Scalar(2 * sign) * c * s;
  if (q.sign() <= 0) return std::nullopt;
  return q.exact_sqrt();
}

struct Step {
  Scalar ratio;
  int sign;
};

std::optional<Step> admissible(const Scalar& s, const Scalar& c) {
  for (int sign : {1, -1})
    if (spacing_factor(s, c, sign)) return Step{s, sign};
  return std::nullopt;
}

// Odd number of radius ratios with product 1: one unit ratio when equal
// circles can meet at the angle, else a triple a, b, 1/(ab), padded with
// reciprocal pairs.
std::optional<std::vector<Step>> closing_ratios(int steps, const Scalar& c) {
  std::vector<Step> out;
  if (auto unit = admissible(Scalar(1), c)) {
    out.assign(static_cast<std::size_t>(steps), *unit);
    return out;
  }
  if (steps < 3) return std::nullopt;
  // 1 + s^2 +- 2cs = w^2 is (s +- c)^2 + e = w^2 with e = 1 - c^2, so every
  // admissible ratio is s = (e/t - t)/2 -+ c for some rational t > 0.
  const Scalar e = Scalar(1) - c * c;
  std::vector<Step> pool;
  std::set<Scalar> seen;
  for (long h = 1; h <= 40 && pool.size() < 400; ++h)
    for (long p = 1; p <= h; ++p) {
      if (std::gcd(p, h) != 1) continue;
      for (const Scalar& t : {Scalar(p, h), Scalar(h, p)})
        for (int sign : {1, -1}) {
          const Scalar s = (e / t - t) / Scalar(2) - Scalar(sign) * c;
          if (s.sign() <= 0 || s == Scalar(1) || !seen.insert(s).second) continue;
          if (auto st = admissible(s, c)) pool.push_back(*st);
        }
      }
  for (const auto& a : pool)
    for (const auto& b : pool) {
      auto last = admissible(Scalar(1) / (a.ratio * b.ratio), c);
      if (!last) continue;
      out = {a, b, *last};
      for (int i = 3; i < steps; i += 2) {
        out.push_back(a);
        out.push_back(*admissible(Scalar(1) / a.ratio, c));
      }
      return out;
    }
  return std::nullopt;
}

// Collinear path of n - 1 circles whose radii return to 1 at the far end,
// closed by a circle on the perpendicular bisector: with K = X^2/4 - 1 + c^2,
// (rho +- c)^2 - y^2 = K is parametrized by rho +- c = (K/u + u)/2,
// y = |K/u - u|/2.
std::optional<Constellation> symmetric_theta_cycle(int n, const geom::CosAngle& angle, const Scalar& c) {
  const auto ratios = closing_ratios(n - 2, c);
  if (!ratios) return std::nullopt;
  std::vector<geom::Circle> path{{Scalar(0), Scalar(0), Scalar(1)}};
  for (const auto& st : *ratios) {
    const auto& prev = path.back();
    const Scalar gap = prev.r() * *spacing_factor(st.ratio, c, st.sign);
    path.emplace_back(prev.cx() + gap, Scalar(0), prev.r() * st.ratio);
  }
  const Scalar half = path.back().cx() / Scalar(2);
  const Scalar K = half * half - Scalar(1) + c * c;
  for (int sign : {1, -1})
    for (long q = 1; q <= 12; ++q)
      for (long p = 1; p <= 12 * q; ++p) {
        const Scalar u(p, q);
        const Scalar y = abs((K / u - u) / Scalar(2));
        const Scalar rho = (K / u + u) / Scalar(2) - Scalar(sign) * c;
        if (y.sign() <= 0 || rho.sign() <= 0) continue;
        auto circles = path;
        circles.emplace_back(half, y, rho);
        if (auto out = accept_cycle(std::move(circles), angle)) return out;
      }
  return std::nullopt;
}

// Triangle fallback: circles 1 and v on the x-axis, the third circle found by
// a small-height search on the conic its radius must satisfy.
std::optional<Constellation> searched_theta_triangle(const geom::CosAngle& angle, const Scalar& c) {
  for (long steps = 2; steps <= 8; ++steps)
    for (long j = 1; j < steps; ++j) {
      const Scalar t = c + (Scalar(1) - c) * Scalar(j, steps);
      const Scalar v = Scalar(2) * (t - c) / (Scalar(1) - t * t);
      const Scalar d = Scalar(1) + t * v;
      for (long q = 1; q <= 40; ++q)
        for (long p = 1; p <= 18 * q; ++p) {
          const Scalar rho(p, q);
          const Scalar near = Scalar(1) + rho * rho + Scalar(2) * c * rho;
          const Scalar far = v * v + rho * rho + Scalar(2) * c * v * rho;
          const Scalar x = (near - far + d * d) / (Scalar(2) * d);
          const Scalar y2 = near - x * x;
          if (y2.sign() <= 0) continue;
          const auto y = y2.exact_sqrt();
          if (!y) continue;
          if (auto out = accept_cycle({{Scalar(0), Scalar(0), Scalar(1)}, {d, Scalar(0), v}, {x, *y, rho}}, angle))
            return out;
        }
    }
  return std::nullopt;
}

std::optional<Constellation> theta_cycle(int n, const geom::CosAngle& angle) {
  const auto cos = angle.cos();
  if (!cos) throw PreconditionViolation("cos(theta) must be rational to build a theta base");
  if (n == 3 && angle.is_right()) {
    // Pairwise orthogonal with centres at heights 0, 1, 2.
    if (auto out = accept_cycle({{Scalar(0), Scalar(0), Scalar(1)},
                                 {Scalar(1), Scalar(1), Scalar(1)},
                                 {Scalar(-1), Scalar(2), Scalar(2)}},
                                angle))
      return out;
  }
  if (auto out = symmetric_theta_cycle(n, angle, *cos)) return out;
  if (n == 3) return searched_theta_triangle(angle, *cos);
  return std::nullopt;
}

}  // namespace

Constellation base_odd_cycle(int n, const geom::CosAngle& angle) {
  if (n < 3 || n % 2 == 0) throw PreconditionViolation("odd cycle length must be odd and at least 3");
  auto out = angle.is_tangency() ? tangency_cycle(n) : theta_cycle(n, angle);
  if (!out) throw SearchFailed("no rational realization of C_" + std::to_string(n) + " found");
  return std::move(*out);
}

// ---- tangency step ----

ramsey::Template extract_template(const std::vector<geom::Circle>& circles) {
  std::vector<PointN> points;
  points.reserve(circles.size());
  for (const auto& c : circles) points.push_back({c.cx(), c.cy(), c.r()});
  return ramsey::Template(std::move(points));
}

ramsey::Template extract_template(const Constellation& c) { return extract_template(c.circles()); }

namespace {

Scalar planar_distance2(const PointN& p, const PointN& q) { return square(p[0] - q[0]) + square(p[1] - q[1]); }

}  // namespace

ramsey::Constraint constraint_by_name(const std::string& name) {
  if (name == "delta") return ramsey::distinctness_constraint();
  if (name == "f_a") return {"f_a", [](const PointN& p, const PointN& q) { return planar_distance2(p, q); }};
  if (name == "f_b")
    return {"f_b", [](const PointN& p, const PointN& q) { return planar_distance2(p, q) - square(p[2] - q[2]); }};
  throw ParseError("unknown constraint '" + name + "'");
}

ramsey::ConstraintFamily constraints_by_name(std::span<const std::string> names) {
  ramsey::ConstraintFamily out;
  for (const auto& n : names) out.push_back(constraint_by_name(n));
  return out;
}

ramsey::ConstraintFamily tangency_constraints() {
  return {constraint_by_name("delta"), constraint_by_name("f_a"), constraint_by_name("f_b")};
}

std::vector<geom::Point2> choose_directions(std::span<const PointN> x, std::size_t count) {
  // Forbidden slopes dy/dx of planar differences; vertical handled apart.
  std::set<Scalar> slopes;
  bool vertical = false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const Scalar dx = x[i][0] - x[j][0];
      const Scalar dy = x[i][1] - x[j][1];
      if (dx.is_zero() && dy.is_zero())
        throw PreconditionViolation("two points of X share a planar position");
      if (dx.is_zero()) {
        vertical = true;
      } else {
        slopes.insert(dy / dx);
      }
    }
  std::vector<geom::Point2> out;
  geom::HalfTangentSequence seq;
  while (out.size() < count) {
    const auto r = geom::Rotation::from_half_tangent(seq.next());
    const bool parallel = r.c().is_zero() ? vertical : slopes.contains(r.s() / r.c());
    if (!parallel) out.push_back({r.c(), r.s()});
  }
  return out;
}

geom::Circle large_circle(const PointN& p, const Scalar& R) {
  const Scalar r = R - p[2];
  if (r.sign() <= 0) throw RadiusNotPositive("R = " + R.str() + " does not exceed r' = " + p[2].str());
  return {p[0], p[1], r};
}

geom::Circle small_circle(const geom::Circle& source, const geom::HomotheticMap& h, const geom::Point2& direction,
                          const Scalar& R) {
  const auto image = geom::apply_homothety(h, {source.cx(), source.cy(), source.r()});
  const Scalar reach = R - h.translation()[2];
  if (reach.sign() <= 0)
    throw RadiusNotPositive("R = " + R.str() + " does not exceed r* = " + h.translation()[2].str());
  return {image[0] + reach * direction.x, image[1] + reach * direction.y, h.lambda() * source.r()};
}

std::optional<Scalar> LinearPolynomial::root() const {
  if (slope.is_zero()) return std::nullopt;
  return -constant / slope;
}

LinearPolynomial tangency_polynomial(const Scalar& a, const Scalar& b, const Scalar& c, const geom::Point2& direction) {
  return {a * a + b * b - c * c, Scalar(2) * (a * direction.x + b * direction.y - c)};
}

Scalar TangencyPlan::radius_floor() const {
  Scalar out;
  for (const auto& p : x) out = std::max(out, p[2]);
  return out;
}

TangencyPlan plan_tangency(const std::vector<geom::Circle>& base, const ramsey::GallaiCertificate& cert) {
  if (!(cert.tmpl == extract_template(base)))
    throw PreconditionViolation("certificate template does not match the base family");
  TangencyPlan plan{base, cert.x, {}, {}, {}};
  std::unordered_map<PointN, std::size_t, PointHash> index;
  for (std::size_t i = 0; i < cert.x.size(); ++i) index.emplace(cert.x[i], i);
  for (const auto& copy : cert.copies) {
    std::vector<std::size_t> points;
    for (const auto& p : copy.points) {
      const auto it = index.find(p);
      if (it == index.end()) throw VerificationFailed("copy point " + to_string(p) + " is not in X");
      points.push_back(it->second);
    }
    plan.copy_maps.push_back(copy.map);
    plan.copy_points.push_back(std::move(points));
  }
  plan.directions = choose_directions(plan.x, plan.copy_maps.size());
  return plan;
}

Constellation assemble(const TangencyPlan& plan, const Scalar& R) {
  std::vector<geom::Circle> circles;
  std::vector<Provenance> provenance;
  for (std::size_t i = 0; i < plan.x.size(); ++i) {
    circles.push_back(large_circle(plan.x[i], R));
    provenance.push_back({Role::large, i, 0, 0});
  }
  for (std::size_t t = 0; t < plan.copy_maps.size(); ++t)
    for (std::size_t s = 0; s < plan.base.size(); ++s) {
      circles.push_back(small_circle(plan.base[s], plan.copy_maps[t], plan.directions[t], R));
      provenance.push_back({Role::small, plan.copy_points[t][s], t, s});
    }
  StepRecord meta;
  meta.construction = "tangency-step";
  meta.base = plan.base;
  for (std::size_t s = 0; s < plan.base.size(); ++s) meta.template_owner.push_back(s);
  meta.x = plan.x;
  meta.copy_maps = plan.copy_maps;
  meta.copy_points = plan.copy_points;
  meta.R = R;
  meta.directions = plan.directions;
  return make_constellation(std::move(circles), std::move(provenance), std::move(meta));
}

std::vector<Scalar> stray_radii(const TangencyPlan& plan) {
  const Scalar floor = plan.radius_floor();
  std::set<Scalar> roots;
  for (std::size_t t = 0; t < plan.copy_maps.size(); ++t) {
    const Scalar& rstar = plan.copy_maps[t].translation()[2];
    for (std::size_t s = 0; s < plan.base.size(); ++s) {
      const std::size_t own = plan.copy_points[t][s];
      const auto& p = plan.x[own];
      for (std::size_t q = 0; q < plan.x.size(); ++q) {
        if (q == own) continue;
        const auto& o = plan.x[q];
        const Scalar a = p[0] - o[0], b = p[1] - o[1];
        // In terms of s = R - r*: external c = r' - r'', internal c = 2r* - r' - r''.
        for (const Scalar& c : {p[2] - o[2], Scalar(2) * rstar - p[2] - o[2]}) {
          const auto root = tangency_polynomial(a, b, c, plan.directions[t]).root();
          if (!root) continue;
          const Scalar R = *root + rstar;
          if (R > floor) roots.insert(R);
        }
      }
    }
  }
  return {roots.begin(), roots.end()};
}

AssemblyCheck check_assembly(const Constellation& c) {
  const auto circles = c.circles();
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      if (geom::concentric(circles[i], circles[j]))
        return {false, "circles " + std::to_string(i) + " and " + std::to_string(j) + " are concentric"};
      if (geom::internally_tangent(circles[i], circles[j]))
        return {false, "circles " + std::to_string(i) + " and " + std::to_string(j) + " are internally tangent"};
    }
  const auto structure = verify_structure(c);
  if (!structure.passed()) {
    const auto& d = structure.deviations.front();
    return {false, d.kind + " tangency between circles " + std::to_string(d.first) + " and " +
                       std::to_string(d.second)};
  }
  return {true, {}};
}

RadiusChoice choose_R(const TangencyPlan& plan, std::span<const Scalar> leading, int max_doublings) {
  const Scalar floor = plan.radius_floor();
  RadiusChoice choice;
  const auto try_radius = [&](const Scalar& R) {
    if (R <= floor) return false;
    try {
      return check_assembly(assemble(plan, R)).passed;
    } catch (const DegenerateInput&) {
      return false;
    }
  };
  for (const auto& R : leading) {
    if (try_radius(R)) {
      choice.R = R;
      return choice;
    }
    choice.rejected.push_back(R);
  }
  Scalar R = floor + Scalar(1);
  for (int i = 0; i <= max_doublings; ++i, R = R * Scalar(2)) {
    if (try_radius(R)) {
      choice.R = R;
      return choice;
    }
    choice.rejected.push_back(R);
  }
  throw SearchFailed("no admissible R after " + std::to_string(max_doublings) + " doublings");
}

namespace {

ramsey::GallaiCertificate obtain_certificate(const ramsey::GallaiProvider& provider,
                                             const ramsey::CertificateRequest& request,
                                             const std::optional<ramsey::GallaiCertificate>& supplied) {
  if (supplied) return ramsey::ImportProvider(*supplied).provide(request);
  return provider.provide(request);
}

void require_verified_base(const Constellation& base, std::size_t g, int k, const geom::CosAngle& angle,
                           const graph::SearchBudget& budget) {
  const auto report = verify_constellation(base, g, k, angle, budget);
  if (!report.passed())
    throw PreconditionViolation("base family fails verification for g = " + std::to_string(g) +
                                ", k = " + std::to_string(k));
}

}  // namespace

Constellation induction_step_tangency(const Constellation& base, std::size_t g, int k,
                                      const ramsey::GallaiProvider& provider, const StepOptions& options) {
  require_verified_base(base, g, k, geom::CosAngle::tangency(), options.budget);
  const auto circles = base.circles();
  const ramsey::CertificateRequest request{extract_template(circles), tangency_constraints(), k, ceil_div(g, 3),
                                           options.sampling, options.budget};
  const auto cert = obtain_certificate(provider, request, options.certificate);
  const auto plan = plan_tangency(circles, cert);
  const auto choice = choose_R(plan);
  auto out = assemble(plan, choice.R);

  if (const auto t = shared_tangency_points(out.circles()); !t.empty())
    throw VerificationFailed("circles " + std::to_string(t.front().first) + " and " +
                             std::to_string(t.front().second) + " share a tangency point with a third circle");

  out.meta.g = g;
  out.meta.k = k + 1;
  out.meta.seed = options.sampling.seed;
  out.meta.provider = options.certificate ? "import" : provider.name();
  return out;
}

// ---- theta step ----

ThetaTemplate theta_template(const std::vector<geom::Circle>& base, const geom::CosAngle& angle,
                             const geom::Rotation& rotation) {
  if (angle.is_tangency()) throw PreconditionViolation("the theta step needs a positive angle");
  const auto cos = angle.cos();
  if (!cos) throw PreconditionViolation("cos(theta) must be rational");
  if (angle.is_right())
    for (std::size_t i = 0; i < base.size(); ++i)
      for (std::size_t j = i + 1; j < base.size(); ++j)
        if (geom::concentric(base[i], base[j]))
          throw PreconditionViolation("a right-angle step needs a family without concentric circles");

  ThetaTemplate out{ramsey::Template({}), {}, {}};
  std::vector<PointN> values;
  for (std::size_t i = 0; i < base.size(); ++i) {
    out.rotated.push_back(rotation.apply(base[i]));
    const auto& c = out.rotated.back();
    if (angle.is_right()) {
      values.push_back({c.cy()});
      out.owner.push_back(i);
    } else {
      values.push_back({c.cy() - c.r() * *cos});
      values.push_back({c.cy() + c.r() * *cos});
      out.owner.insert(out.owner.end(), {i, i});
    }
  }
  std::set<Scalar> distinct;
  for (const auto& v : values)
    if (!distinct.insert(v[0]).second)
      throw CollisionAfterRotation("two lines at height " + v[0].str() + " after rotation");
  out.tmpl = ramsey::Template(std::move(values));
  return out;
}

geom::Rotation find_rotation(const std::vector<geom::Circle>& base, const geom::CosAngle& angle, int max_tries) {
  geom::HalfTangentSequence seq;
  for (int i = 0; i < max_tries; ++i) {
    const auto rotation = geom::Rotation::from_half_tangent(seq.next());
    try {
      theta_template(base, angle, rotation);
      return rotation;
    } catch (const CollisionAfterRotation&) {
    }
  }
  throw SearchFailed("no collision-free rotation in " + std::to_string(max_tries) + " tries");
}

void validate_inversion(const Inversion& inv, std::span<const Scalar> lines, std::span<const geom::Circle> circles) {
  const auto& o = inv.center;
  if (inv.k2.sign() <= 0) throw InversionCenterInvalid("inversion power must be positive");
  for (const auto& y : lines)
    if (y == o.y) throw InversionCenterInvalid("centre lies on the line at height " + y.str());
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (circles[i].contains_on_boundary(o))
      throw InversionCenterInvalid("centre lies on circle " + std::to_string(i));
    if (circles[i].cx() == o.x)
      throw InversionCenterInvalid("centre lies on the vertical line through centre " + std::to_string(i));
  }
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      const auto a = circles[i].center(), b = circles[j].center();
      if (a == b) continue;
      if (((b.x - a.x) * (o.y - a.y) - (b.y - a.y) * (o.x - a.x)).is_zero())
        throw InversionCenterInvalid("centre is collinear with centres " + std::to_string(i) + " and " +
                                     std::to_string(j));
    }
}

Inversion find_inversion(std::span<const Scalar> lines, std::span<const geom::Circle> circles) {
  // Below everything, so only the collinearity and vertical conditions can bite.
  Scalar lo, left, right;
  bool first = true;
  for (const auto& y : lines) {
    lo = first ? y : std::min(lo, y);
    first = false;
  }
  for (const auto& c : circles) {
    lo = first ? c.cy() - c.r() : std::min(lo, c.cy() - c.r());
    left = first ? c.cx() : std::min(left, c.cx());
    right = first ? c.cx() : std::max(right, c.cx());
    first = false;
  }
  const Scalar mid = (left + right) / Scalar(2);
  for (long i = 0; i < 10'000; ++i) {
    const Scalar dx = Scalar(2 * i + 1, 7) * Scalar(i % 2 == 0 ? 1 : -1);
    const Inversion inv{{mid + dx, lo - Scalar(1) - Scalar(i % 5, 3)}, Scalar(1)};
    try {
      validate_inversion(inv, lines, circles);
      return inv;
    } catch (const InversionCenterInvalid&) {
    }
  }
  throw SearchFailed("no valid inversion centre found");
}

std::size_t verify_inversion_pointwise(const Inversion& inv, std::span<const Scalar> lines,
                                       std::span<const geom::Circle> circles,
                                       std::span<const geom::Circle> line_images,
                                       std::span<const geom::Circle> circle_images) {
  if (lines.size() != line_images.size() || circles.size() != circle_images.size())
    throw VerificationFailed("image count does not match");
  std::size_t checked = 0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (long j = -2; j <= 2; ++j) {
      const geom::Point2 p{inv.center.x + Scalar(j), lines[i]};
      if (!line_images[i].contains_on_boundary(geom::invert_point(inv.center, inv.k2, p)))
        throw VerificationFailed("image of a point of line " + std::to_string(i) + " is off its circle");
      ++checked;
    }
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (const auto& p : geom::rational_points_on(circles[i])) {
      if (!circle_images[i].contains_on_boundary(geom::invert_point(inv.center, inv.k2, p)))
        throw VerificationFailed("image of a point of circle " + std::to_string(i) + " is off its circle");
      ++checked;
    }
  return checked;
}

Constellation induction_step_theta(const Constellation& base, const geom::CosAngle& angle, std::size_t g, int k,
                                   const ramsey::GallaiProvider& provider, const ThetaOptions& options) {
  require_verified_base(base, g, k, angle, options.step.budget);
  const auto base_circles = base.circles();
  const auto rotation = options.rotation ? *options.rotation : find_rotation(base_circles, angle);
  const auto tt = theta_template(base_circles, angle, rotation);

  const ramsey::CertificateRequest request{tt.tmpl, {ramsey::distinctness_constraint()}, k, ceil_div(g, 2),
                                           options.step.sampling, options.step.budget};
  const auto cert = obtain_certificate(provider, request, options.step.certificate);
  if (!(cert.tmpl == tt.tmpl)) throw PreconditionViolation("certificate template does not match the line heights");

  std::vector<Scalar> lines;
  std::unordered_map<Scalar, std::size_t> line_index;
  for (const auto& p : cert.x) {
    line_index.emplace(p[0], lines.size());
    lines.push_back(p[0]);
  }

  // Copies side by side, each inside a slab of width D around T * D.
  Scalar reach;
  for (const auto& copy : cert.copies)
    for (const auto& c : tt.rotated) reach = std::max(reach, copy.map.lambda() * (abs(c.cx()) + c.r()));
  const Scalar slab = Scalar(2) * ceil_of(reach) + Scalar(1);

  StepRecord meta;
  meta.construction = "theta-step";
  meta.g = g;
  meta.k = k + 1;
  meta.angle = angle;
  meta.seed = options.step.sampling.seed;
  meta.provider = options.step.certificate ? "import" : provider.name();
  meta.base = tt.rotated;
  meta.template_owner = tt.owner;
  meta.x = cert.x;
  meta.rotation = rotation;

  std::vector<geom::Circle> placed;
  std::vector<Provenance> provenance;
  for (std::size_t t = 0; t < cert.copies.size(); ++t) {
    const auto& map = cert.copies[t].map;
    const Scalar offset = slab * Scalar(t);
    meta.offsets.push_back(offset);
    meta.copy_maps.push_back(map);
    std::vector<std::size_t> points;
    for (const auto& p : cert.copies[t].points) points.push_back(line_index.at(p[0]));
    meta.copy_points.push_back(std::move(points));
    for (std::size_t s = 0; s < tt.rotated.size(); ++s) {
      const auto& c = tt.rotated[s];
      placed.emplace_back(offset + map.lambda() * c.cx(), map.translation()[0] + map.lambda() * c.cy(),
                          map.lambda() * c.r());
      provenance.push_back({Role::small, 0, t, s});
    }
  }

  const auto inv = options.inversion ? *options.inversion : find_inversion(lines, placed);
  validate_inversion(inv, lines, placed);
  meta.inversion_center = inv.center;
  meta.inversion_k2 = inv.k2;

  std::vector<geom::Circle> line_images, circle_images;
  for (const auto& y : lines) line_images.push_back(geom::invert_line(inv.center, inv.k2, {y}));
  for (const auto& c : placed) circle_images.push_back(geom::invert_circle(inv.center, inv.k2, c));
  verify_inversion_pointwise(inv, lines, placed, line_images, circle_images);

  std::vector<geom::Circle> circles = line_images;
  std::vector<Provenance> all;
  for (std::size_t i = 0; i < lines.size(); ++i) all.push_back({Role::line, i, 0, 0});
  circles.insert(circles.end(), circle_images.begin(), circle_images.end());
  all.insert(all.end(), provenance.begin(), provenance.end());
  auto out = make_constellation(std::move(circles), std::move(all), std::move(meta));

  const auto structure = verify_structure(out);
  if (!structure.passed()) {
    const auto& d = structure.deviations.front();
    throw VerificationFailed(d.kind + " edge between circles " + std::to_string(d.first) + " and " +
                             std::to_string(d.second));
  }
  const auto out_circles = out.circles();
  for (std::size_t i = 0; i < out_circles.size(); ++i)
    for (std::size_t j = i + 1; j < out_circles.size(); ++j)
      if (geom::concentric(out_circles[i], out_circles[j]))
        throw VerificationFailed("circles " + std::to_string(i) + " and " + std::to_string(j) + " are concentric");
  return out;
}

}  // namespace circlekit::construct
