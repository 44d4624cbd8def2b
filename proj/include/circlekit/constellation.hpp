#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circlekit/gallai.hpp"
#include "circlekit/geometry.hpp"
#include "circlekit/graph.hpp"

namespace circlekit::construct {

/// Where a circle came from. Base circles belong to an odd-cycle base case;
/// large and small circles to a tangency step; line images and small circles
/// to a theta step.
enum class Role { base, large, small, line };

std::string role_name(Role role);
/// Throws ParseError.
Role parse_role(const std::string& name);

struct Provenance {
  Role role = Role::base;
  /// large: index into X. small (tangency step): index into X of the
  /// template point it was built from. line: index into Y.
  std::size_t point = 0;
  std::size_t copy = 0;    // small: which copy
  std::size_t source = 0;  // base, small: index of the base circle

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct Member {
  std::size_t id = 0;
  geom::Circle circle;
  Provenance provenance;

  friend bool operator==(const Member&, const Member&) = default;
};

/// Parameters that produced a constellation; enough to re-run or audit it.
struct StepRecord {
  std::string construction = "base";  // "base", "tangency-step" or "theta-step"
  std::size_t g = 0;
  int k = 0;
  geom::CosAngle angle = geom::CosAngle::tangency();
  std::uint64_t seed = 0;
  std::string provider;
  /// The family the step was applied to (after rotation for a theta step).
  std::vector<geom::Circle> base;
  /// Template point index -> base circle it came from.
  std::vector<std::size_t> template_owner;
  /// The certificate's point set: X in R^3 or Y in R.
  std::vector<PointN> x;
  std::vector<geom::HomotheticMap> copy_maps;
  /// Per copy, the X indices of its points in template order.
  std::vector<std::vector<std::size_t>> copy_points;
  std::optional<Scalar> R;
  std::vector<geom::Point2> directions;
  std::optional<geom::Rotation> rotation;
  std::vector<Scalar> offsets;
  std::optional<geom::Point2> inversion_center;
  std::optional<Scalar> inversion_k2;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Constellation {
  std::vector<Member> members;
  StepRecord meta;

  std::vector<geom::Circle> circles() const;
  std::size_t size() const { return members.size(); }

  friend bool operator==(const Constellation&, const Constellation&) = default;
};

/// Builds members with ids 0..n-1. Throws DegenerateInput on repeated circles.
Constellation make_constellation(std::vector<geom::Circle> circles, std::vector<Provenance> provenance,
                                 StepRecord meta);

/// The graph the constellation is judged by: tangency (both kinds) for the
/// tangency angle, otherwise the theta-graph.
graph::Graph contact_graph(std::span<const geom::Circle> circles, const geom::CosAngle& angle);

struct PairIssue {
  std::size_t first = 0;
  std::size_t second = 0;
  std::string kind;  // "concentric", "internal", "missing", "unexpected", "triple"
};

/// Pairs of circles that touch a common third circle at the same point, so
/// that three circles are tangent there.
std::vector<PairIssue> shared_tangency_points(std::span<const geom::Circle> circles);

struct ConstellationReport {
  std::size_t g = 0;
  int k = 0;
  std::size_t circles = 0;
  std::vector<graph::Edge> edges;
  std::vector<PairIssue> concentric;
  std::vector<PairIssue> internal;
  /// Tangency points shared by three or more circles, as (circle, circle) pairs
  /// that meet a common neighbour at the same point.
  std::vector<PairIssue> triple;
  std::optional<std::size_t> girth;
  graph::ChromaticResult chromatic;

  bool girth_ok() const { return !girth || *girth >= g; }
  bool chromatic_ok() const { return chromatic.lower >= k; }
  bool passed() const {
    return concentric.empty() && internal.empty() && triple.empty() && girth_ok() && chromatic_ok();
  }
};

/// Full check against (g, k): no concentric pairs; for the tangency angle also
/// no internal tangencies and no point shared by three tangent circles; girth
/// of the contact graph >= g; chromatic number >= k (exact when the budget
/// allows, else the certified lower bound).
ConstellationReport verify_constellation(const Constellation& c, std::size_t g, int k, const geom::CosAngle& angle,
                                         const graph::SearchBudget& budget = {});

struct StructureReport {
  std::vector<PairIssue> deviations;
  std::size_t predicted_edges = 0;
  bool passed() const { return deviations.empty(); }
};

/// Compares the contact graph with the edge set predicted from provenance:
/// per copy an image of the base graph, plus each small circle attached to
/// its large circle (tangency step) or to its own lines (theta step).
StructureReport verify_structure(const Constellation& c, const graph::Graph& base_graph);
/// Same, with the base graph computed from the recorded base family.
StructureReport verify_structure(const Constellation& c);

}  // namespace circlekit::construct
