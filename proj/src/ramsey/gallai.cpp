#include "circlekit/gallai.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <unordered_map>

#include "circlekit/errors.hpp"
#include "circlekit/hypergraph.hpp"

namespace circlekit::ramsey {

Template::Template(std::vector<PointN> points) : points_(std::move(points)) {
  if (!points_.empty()) dimension_ = points_.front().size();
  for (const auto& p : points_)
    if (p.size() != dimension_) throw DegenerateInput("template points have mixed dimensions");
  for (std::size_t i = 0; i < points_.size(); ++i)
    for (std::size_t j = i + 1; j < points_.size(); ++j)
      if (points_[i] == points_[j]) throw DegenerateInput("template points must be pairwise distinct");
}

Constraint distinctness_constraint() {
  return {"delta", [](const PointN& p, const PointN& q) {
            Scalar s;
            for (std::size_t i = 0; i < p.size(); ++i) s += square(p[i] - q[i]);
            return s;
          }};
}

std::vector<std::string> constraint_names(const ConstraintFamily& family) {
  std::vector<std::string> out;
  for (const auto& c : family) out.push_back(c.name);
  return out;
}

bool has_constraint(const ConstraintFamily& family, const std::string& name) {
  return std::any_of(family.begin(), family.end(), [&](const Constraint& c) { return c.name == name; });
}

std::optional<ConstraintViolation> find_violation(const ConstraintFamily& family, std::span<const PointN> points) {
  for (const auto& f : family)
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = 0; j < points.size(); ++j)
        if (i != j && f.evaluate(points[i], points[j]).is_zero()) return ConstraintViolation{f.name, i, j};
  return std::nullopt;
}

PointN zeta(std::span<const Scalar> gamma, const CubePoint& x, const Template& tmpl) {
  if (gamma.size() != x.dimension())
    throw DimensionMismatch("gamma has length " + std::to_string(gamma.size()) + " but the cube point has " +
                            std::to_string(x.dimension()) + " coordinates");
  PointN out(tmpl.dimension(), Scalar(0));
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    const auto symbol = static_cast<std::size_t>(x.coords[i]);
    if (symbol < 1 || symbol > tmpl.size()) throw DimensionMismatch("cube symbol exceeds template size");
    const auto& t = tmpl[symbol - 1];
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += gamma[i] * t[j];
  }
  return out;
}

GammaSample sample_gamma(const Template& tmpl, const CubeSet& h, const ConstraintFamily& constraints,
                         const GammaSampling& sampling) {
  if (tmpl.size() != static_cast<std::size_t>(h.m()))
    throw DimensionMismatch("template size does not match the cube alphabet");
  std::mt19937_64 rng(sampling.seed);
  std::uniform_int_distribution<long> numerator(1, sampling.numerator_max);
  std::uniform_int_distribution<long> denominator(1, sampling.denominator_max);
  std::vector<PointN> images(h.size());
  for (int attempt = 1; attempt <= sampling.max_tries; ++attempt) {
    std::vector<Scalar> gamma;
    gamma.reserve(static_cast<std::size_t>(h.n()));
    for (int i = 0; i < h.n(); ++i) {
      const long num = numerator(rng);
      const long den = denominator(rng);
      gamma.emplace_back(num, den);
    }
    for (std::size_t i = 0; i < h.size(); ++i) images[i] = zeta(gamma, h[i], tmpl);
    if (!find_violation(constraints, images)) return {std::move(gamma), attempt};
  }
  throw TriesExhausted("no admissible gamma in " + std::to_string(sampling.max_tries) +
                       " tries; a constraint may vanish on the template itself");
}

GallaiCertificate lift_gallai(const Template& tmpl, const ConstraintFamily& constraints, const CubeSet& h,
                              std::span<const CombinatorialLine> lines, int k, std::size_t g,
                              const GammaSampling& sampling, const graph::SearchBudget& budget) {
  if (tmpl.size() != static_cast<std::size_t>(h.m()))
    throw DimensionMismatch("template size does not match the cube alphabet");
  if (auto bad = find_violation(constraints, tmpl.points()))
    throw PreconditionViolation("constraint " + bad->constraint + " does not respect the template");

  std::vector<CombinatorialLine> inside;
  for (const auto& line : lines) {
    const auto pts = line.materialize();
    if (std::all_of(pts.begin(), pts.end(), [&](const CubePoint& p) { return h.contains(p); }))
      inside.push_back(line);
  }
  if (!verify_ramsey(h, inside, k, budget).ramsey)
    throw PreconditionViolation("H is not " + std::to_string(k) + "-Ramsey for its lines");
  const auto line_girth = berge_girth(lines_inside(h, inside));
  if (line_girth && *line_girth < g)
    throw PreconditionViolation("lines inside H have Berge girth " + std::to_string(*line_girth) + " < " +
                                std::to_string(g));

  const auto sample = sample_gamma(tmpl, h, constraints, sampling);
  const auto& gamma = sample.gamma;

  GallaiCertificate cert{tmpl, {}, {}, k, g, constraints, LiftProvenance{gamma, h}};
  cert.x.reserve(h.size());
  for (const auto& p : h.points()) cert.x.push_back(zeta(gamma, p, tmpl));

  for (const auto& line : inside) {
    PointN translation(tmpl.dimension(), Scalar(0));
    Scalar lambda;
    for (std::size_t i = 0; i < line.n(); ++i) {
      if (std::binary_search(line.active().begin(), line.active().end(), i)) {
        lambda += gamma[i];
      } else {
        const auto& t = tmpl[static_cast<std::size_t>(line.fixed()[i]) - 1];
        for (std::size_t j = 0; j < translation.size(); ++j) translation[j] += gamma[i] * t[j];
      }
    }
    HomotheticCopy copy{geom::HomotheticMap::proper(std::move(translation), std::move(lambda)), {}};
    for (const auto& p : line.materialize()) copy.points.push_back(zeta(gamma, p, tmpl));
    cert.copies.push_back(std::move(copy));
  }
  return cert;
}

namespace {

using PointIndex = std::unordered_map<PointN, std::size_t, PointHash>;

PointIndex index_points(std::span<const PointN> x) {
  PointIndex index;
  index.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) index.emplace(x[i], i);
  return index;
}

}  // namespace

std::vector<graph::Hyperedge> copies_as_edges(std::span<const PointN> x, std::span<const HomotheticCopy> copies) {
  const auto index = index_points(x);
  std::vector<graph::Hyperedge> out;
  out.reserve(copies.size());
  for (const auto& copy : copies) {
    graph::Hyperedge edge;
    for (const auto& p : copy.points) {
      const auto it = index.find(p);
      if (it == index.end()) throw VerificationFailed("copy point " + to_string(p) + " is not in X");
      edge.push_back(it->second);
    }
    out.push_back(std::move(edge));
  }
  return out;
}

CertificateReport verify_certificate(const GallaiCertificate& cert, bool check_all_copies,
                                     const graph::SearchBudget& budget) {
  CertificateReport report;
  const auto index = index_points(cert.x);
  if (index.size() != cert.x.size()) {
    report.copies_consistent = false;
    report.copies_detail = "X contains repeated points";
  }

  std::set<std::vector<std::size_t>> seen_sets;
  for (std::size_t c = 0; c < cert.copies.size() && report.copies_consistent; ++c) {
    const auto& copy = cert.copies[c];
    const auto tag = "copy " + std::to_string(c) + ": ";
    if (copy.map.lambda().sign() <= 0 || copy.map.dimension() != cert.tmpl.dimension() ||
        copy.points.size() != cert.tmpl.size()) {
      report.copies_consistent = false;
      report.copies_detail = tag + "map is not a homothety of the template";
      break;
    }
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < copy.points.size(); ++i) {
      if (geom::apply_homothety(copy.map, cert.tmpl[i]) != copy.points[i]) {
        report.copies_consistent = false;
        report.copies_detail = tag + "point " + std::to_string(i) + " is not the image of the template point";
        break;
      }
      const auto it = index.find(copy.points[i]);
      if (it == index.end()) {
        report.copies_consistent = false;
        report.copies_detail = tag + "point " + to_string(copy.points[i]) + " is not in X";
        break;
      }
      members.push_back(it->second);
    }
    std::sort(members.begin(), members.end());
    if (report.copies_consistent && !seen_sets.insert(members).second) {
      report.copies_consistent = false;
      report.copies_detail = tag + "duplicates an earlier copy";
    }
  }

  report.violation = find_violation(cert.constraints, cert.x);
  report.respects = !report.violation.has_value();

  std::vector<graph::Hyperedge> edges;
  if (check_all_copies) {
    edges = copies_as_edges(cert.x, enumerate_copies(cert.x, cert.tmpl));
  } else if (report.copies_consistent) {
    edges = copies_as_edges(cert.x, cert.copies);
  } else {
    report.girth_ok = false;
    report.ramsey = false;
    return report;
  }
  report.copies_checked = edges.size();
  report.copy_girth = berge_girth(edges);
  report.girth_ok = !report.copy_girth || *report.copy_girth >= cert.g;

  auto search = graph::find_avoiding_coloring(cert.x.size(), edges, cert.k, budget);
  report.trace = search.trace;
  report.ramsey = !search.coloring.has_value();
  report.avoiding_coloring = std::move(search.coloring);
  return report;
}

std::optional<geom::HomotheticMap> fit_homothety(std::span<const PointN> points, const Template& tmpl) {
  if (points.size() != tmpl.size()) return std::nullopt;
  if (points.empty()) return geom::HomotheticMap::relaxed({}, Scalar(1));
  const std::size_t d = tmpl.dimension();
  for (const auto& p : points)
    if (p.size() != d) return std::nullopt;

  // Coordinatewise: p_ij = p_1j where t_ij = t_1j, otherwise a common ratio lambda.
  std::optional<Scalar> lambda;
  for (std::size_t i = 1; i < points.size(); ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Scalar dt = tmpl[i][j] - tmpl[0][j];
      const Scalar dp = points[i][j] - points[0][j];
      if (dt.is_zero()) {
        if (!dp.is_zero()) return std::nullopt;
        continue;
      }
      const Scalar ratio = dp / dt;
      if (lambda && *lambda != ratio) return std::nullopt;
      lambda = ratio;
    }
  }
  const Scalar l = lambda.value_or(Scalar(1));
  PointN translation(d);
  for (std::size_t j = 0; j < d; ++j) translation[j] = points[0][j] - l * tmpl[0][j];
  return geom::HomotheticMap::relaxed(std::move(translation), l);
}

bool proportional(std::span<const PointN> points, const Template& tmpl, bool allow_degenerate) {
  const auto h = fit_homothety(points, tmpl);
  if (!h) return false;
  return allow_degenerate || h->lambda().sign() > 0;
}

std::vector<HomotheticCopy> enumerate_copies(std::span<const PointN> x, const Template& tmpl,
                                             std::uint64_t max_pairs) {
  std::vector<HomotheticCopy> out;
  const std::size_t m = tmpl.size();
  if (m == 0 || x.size() < m) return out;
  if (static_cast<std::uint64_t>(x.size()) * x.size() > max_pairs)
    throw BudgetExceeded("|X|^2 exceeds the copy enumeration budget");
  const auto index = index_points(x);

  if (m == 1) {
    for (const auto& p : x) {
      PointN translation(p.size());
      for (std::size_t j = 0; j < p.size(); ++j) translation[j] = p[j] - tmpl[0][j];
      out.push_back({geom::HomotheticMap::proper(std::move(translation), Scalar(1)), {p}});
    }
    return out;
  }

  const std::size_t d = tmpl.dimension();
  std::size_t pivot = 0;
  while (pivot < d && tmpl[0][pivot] == tmpl[1][pivot]) ++pivot;
  const Scalar pivot_gap = tmpl[0][pivot] - tmpl[1][pivot];

  std::set<std::vector<std::size_t>> seen;
  for (std::size_t a = 0; a < x.size(); ++a) {
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (a == b) continue;
      // Solve x[a] = p* + lambda t_1, x[b] = p* + lambda t_2.
      const Scalar lambda = (x[a][pivot] - x[b][pivot]) / pivot_gap;
      if (lambda.sign() <= 0) continue;
      bool consistent = true;
      for (std::size_t j = 0; j < d && consistent; ++j)
        consistent = (x[a][j] - x[b][j]) == lambda * (tmpl[0][j] - tmpl[1][j]);
      if (!consistent) continue;
      PointN translation(d);
      for (std::size_t j = 0; j < d; ++j) translation[j] = x[a][j] - lambda * tmpl[0][j];
      auto map = geom::HomotheticMap::proper(std::move(translation), lambda);
      HomotheticCopy copy{map, {}};
      std::vector<std::size_t> members;
      bool inside = true;
      for (std::size_t i = 0; i < m && inside; ++i) {
        auto p = geom::apply_homothety(map, tmpl[i]);
        const auto it = index.find(p);
        if (it == index.end()) {
          inside = false;
        } else {
          members.push_back(it->second);
          copy.points.push_back(std::move(p));
        }
      }
      if (!inside) continue;
      std::sort(members.begin(), members.end());
      if (seen.insert(members).second) out.push_back(std::move(copy));
    }
  }
  return out;
}

GallaiCertificate rebase_certificate(const GallaiCertificate& cert, const Template& target) {
  const std::size_t m = target.size();
  if (m != cert.tmpl.size() || target.dimension() != cert.tmpl.dimension())
    throw ProviderFailed("certificate template has a different size or dimension");
  std::vector<std::size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    // Does target_i = g(old_{perm(i)}) for a proper homothety g?
    std::vector<PointN> reordered;
    for (auto p : perm) reordered.push_back(cert.tmpl[p]);
    const auto g_inv = fit_homothety(reordered, target);  // old_{perm(i)} = g_inv(target_i)
    if (!g_inv || g_inv->lambda().sign() <= 0) continue;

    GallaiCertificate out = cert;
    out.tmpl = target;
    for (auto& copy : out.copies) {
      // New map: h o g_inv.
      const auto& h = copy.map;
      PointN translation(target.dimension());
      for (std::size_t j = 0; j < translation.size(); ++j)
        translation[j] = h.translation()[j] + h.lambda() * g_inv->translation()[j];
      std::vector<PointN> points;
      for (auto p : perm) points.push_back(copy.points[p]);
      copy = {geom::HomotheticMap::proper(std::move(translation), h.lambda() * g_inv->lambda()), std::move(points)};
    }
    return out;
  } while (m <= 8 && std::next_permutation(perm.begin(), perm.end()));
  throw ProviderFailed("certificate template is not a homothetic image of the requested template");
}

}  // namespace circlekit::ramsey
