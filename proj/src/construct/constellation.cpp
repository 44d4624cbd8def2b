#include "circlekit/constellation.hpp"

#include <map>
#include <set>
#include <unordered_map>

#include "circlekit/errors.hpp"

namespace circlekit::construct {

std::string role_name(Role role) {
  switch (role) {
    case Role::base: return "base";
    case Role::large: return "large";
    case Role::small: return "small";
    case Role::line: return "line";
  }
  return "base";
}

Role parse_role(const std::string& name) {
  if (name == "base") return Role::base;
  if (name == "large") return Role::large;
  if (name == "small") return Role::small;
  if (name == "line") return Role::line;
  throw ParseError("unknown provenance role '" + name + "'");
}

std::vector<geom::Circle> Constellation::circles() const {
  std::vector<geom::Circle> out;
  out.reserve(members.size());
  for (const auto& m : members) out.push_back(m.circle);
  return out;
}

Constellation make_constellation(std::vector<geom::Circle> circles, std::vector<Provenance> provenance,
                                 StepRecord meta) {
  if (circles.size() != provenance.size()) throw DegenerateInput("one provenance tag per circle required");
  std::set<std::tuple<Scalar, Scalar, Scalar>> seen;
  Constellation c{{}, std::move(meta)};
  c.members.reserve(circles.size());
  for (std::size_t i = 0; i < circles.size(); ++i) {
    if (!seen.emplace(circles[i].cx(), circles[i].cy(), circles[i].r()).second)
      throw DegenerateInput("circle " + std::to_string(i) + " repeats an earlier circle");
    c.members.push_back({i, std::move(circles[i]), provenance[i]});
  }
  return c;
}

graph::Graph contact_graph(std::span<const geom::Circle> circles, const geom::CosAngle& angle) {
  if (angle.is_tangency()) return graph::tangency_graph(circles, true);
  return graph::theta_graph(circles, angle);
}

namespace {

using PointKey = std::pair<Scalar, Scalar>;

std::vector<PairIssue> shared_points(const graph::Graph& g, std::span<const geom::Circle> circles) {
  std::vector<PairIssue> out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    std::map<PointKey, std::size_t> seen;
    for (auto u : g.neighbors(v)) {
      const auto p = geom::tangency_point(circles[v], circles[u]);
      const auto [it, fresh] = seen.emplace(PointKey{p.x, p.y}, u);
      if (!fresh && it->second < u) out.push_back({it->second, u, "triple"});
    }
  }
  return out;
}

}  // namespace

std::vector<PairIssue> shared_tangency_points(std::span<const geom::Circle> circles) {
  return shared_points(graph::tangency_graph(circles, true), circles);
}

ConstellationReport verify_constellation(const Constellation& c, std::size_t g, int k, const geom::CosAngle& angle,
                                         const graph::SearchBudget& budget) {
  ConstellationReport report;
  report.g = g;
  report.k = k;
  report.circles = c.size();
  const auto circles = c.circles();
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j) {
      if (geom::concentric(circles[i], circles[j])) report.concentric.push_back({i, j, "concentric"});
      if (angle.is_tangency() && geom::internally_tangent(circles[i], circles[j]))
        report.internal.push_back({i, j, "internal"});
    }
  const auto graph = contact_graph(circles, angle);
  report.edges = graph.edges();
  if (angle.is_tangency()) report.triple = shared_points(graph, circles);
  report.girth = graph::girth(graph);
  report.chromatic = graph::chromatic_number(graph, budget);
  return report;
}

namespace {

void add_predicted(std::set<graph::Edge>& out, std::size_t u, std::size_t v) {
  if (u == v) return;
  out.emplace(std::min(u, v), std::max(u, v));
}

}  // namespace

StructureReport verify_structure(const Constellation& c, const graph::Graph& base_graph) {
  StructureReport report;
  std::set<graph::Edge> predicted;
  const auto& meta = c.meta;
  const auto provenance_issue = [&](std::size_t member, const std::string& what) {
    report.deviations.push_back({member, member, "provenance: " + what});
  };

  std::unordered_map<std::size_t, std::size_t> large_by_point, line_by_point;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> small_by_copy_source;
  std::vector<std::size_t> base_members;
  for (std::size_t i = 0; i < c.members.size(); ++i) {
    const auto& p = c.members[i].provenance;
    switch (p.role) {
      case Role::base: base_members.push_back(i); break;
      case Role::large: large_by_point[p.point] = i; break;
      case Role::line: line_by_point[p.point] = i; break;
      case Role::small: small_by_copy_source[{p.copy, p.source}] = i; break;
    }
  }

  // Per-copy (or plain base) images of the base graph.
  for (std::size_t a = 0; a < base_members.size(); ++a)
    for (std::size_t b = a + 1; b < base_members.size(); ++b) {
      const auto sa = c.members[base_members[a]].provenance.source;
      const auto sb = c.members[base_members[b]].provenance.source;
      if (base_graph.has_edge(sa, sb)) add_predicted(predicted, base_members[a], base_members[b]);
    }
  for (const auto& [key, member] : small_by_copy_source) {
    const auto [copy, source] = key;
    for (auto other : base_graph.neighbors(source)) {
      const auto it = small_by_copy_source.find({copy, other});
      if (it != small_by_copy_source.end()) add_predicted(predicted, member, it->second);
    }
  }

  // Attachments.
  for (const auto& [key, member] : small_by_copy_source) {
    const auto [copy, source] = key;
    if (meta.construction == "tangency-step") {
      const auto it = large_by_point.find(c.members[member].provenance.point);
      if (it == large_by_point.end()) {
        provenance_issue(member, "no large circle for its point");
        continue;
      }
      add_predicted(predicted, member, it->second);
    } else if (meta.construction == "theta-step") {
      if (copy >= meta.copy_points.size()) {
        provenance_issue(member, "copy index out of range");
        continue;
      }
      for (std::size_t i = 0; i < meta.template_owner.size(); ++i) {
        if (meta.template_owner[i] != source) continue;
        const auto it = line_by_point.find(meta.copy_points[copy][i]);
        if (it == line_by_point.end()) {
          provenance_issue(member, "no line for its template point");
          continue;
        }
        add_predicted(predicted, member, it->second);
      }
    }
  }
  report.predicted_edges = predicted.size();

  const auto actual = contact_graph(c.circles(), meta.angle).edges();
  const std::set<graph::Edge> actual_set(actual.begin(), actual.end());
  for (const auto& e : predicted)
    if (!actual_set.contains(e)) report.deviations.push_back({e.first, e.second, "missing"});
  for (const auto& e : actual_set)
    if (!predicted.contains(e)) report.deviations.push_back({e.first, e.second, "unexpected"});
  return report;
}

StructureReport verify_structure(const Constellation& c) {
  const auto& base = c.meta.base.empty() ? c.circles() : c.meta.base;
  return verify_structure(c, contact_graph(base, c.meta.angle));
}

}  // namespace circlekit::construct
