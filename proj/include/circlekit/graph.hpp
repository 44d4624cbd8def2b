#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "circlekit/coloring.hpp"
#include "circlekit/geometry.hpp"

namespace circlekit::graph {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}
  /// Edges are normalized (u < v) and deduplicated. Self-loops throw.
  Graph(std::size_t n, std::span<const Edge> edges);

  void add_edge(std::size_t u, std::size_t v);
  bool has_edge(std::size_t u, std::size_t v) const;

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_[v]; }
  /// Sorted (u < v) edge list.
  std::vector<Edge> edges() const;

  std::vector<std::string> labels;

  friend bool operator==(const Graph& a, const Graph& b) { return a.adjacency_ == b.adjacency_; }

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::size_t edge_count_ = 0;
};

/// Edge iff externally tangent, or internally tangent when include_internal.
Graph tangency_graph(std::span<const geom::Circle> circles, bool include_internal);
/// Edge iff the pair intersects at the given angle.
Graph theta_graph(std::span<const geom::Circle> circles, const geom::CosAngle& a);

/// Length of a shortest cycle; nullopt for forests.
std::optional<std::size_t> girth(const Graph& g);

/// Either a proper coloring or a record of an exhausted search proving that
/// no proper coloring with `colors` colors exists.
class ColoringWitness {
 public:
  /// Throws VerificationFailed if the coloring is not proper for g or uses
  /// colors outside [0, colors).
  static ColoringWitness proper(const Graph& g, int colors, Coloring coloring);
  static ColoringWitness exhausted(int colors, SearchTrace trace);

  int colors() const { return colors_; }
  bool colorable() const { return coloring_.has_value(); }
  const std::optional<Coloring>& coloring() const { return coloring_; }
  const SearchTrace& trace() const { return trace_; }

 private:
  ColoringWitness(int colors, std::optional<Coloring> coloring, SearchTrace trace)
      : colors_(colors), coloring_(std::move(coloring)), trace_(trace) {}

  int colors_;
  std::optional<Coloring> coloring_;
  SearchTrace trace_;
};

/// Throws BudgetExceeded if the search does not finish within budget.
ColoringWitness is_k_colorable(const Graph& g, int k, const SearchBudget& budget = {});

struct ChromaticResult {
  /// Exact when `exact`; otherwise lower <= chi <= upper.
  int lower = 0;
  int upper = 0;
  bool exact = false;
  /// Proper coloring with `upper` colors.
  Coloring coloring;
  /// Exhaustion certificate for `lower - 1` colors (empty when lower <= 1).
  std::optional<ColoringWitness> below;
  std::vector<std::size_t> clique;

  int value() const { return upper; }
};

/// Exact chromatic number: greedy clique lower bound, greedy (saturation
/// order) upper bound, then exhaustive k-colorability tests from the lower
/// bound upward. On budget exhaustion returns the best bounds with exact = false.
ChromaticResult chromatic_number(const Graph& g, const SearchBudget& budget = {});

/// Greedy maximal clique, grown from every vertex; returns the largest found.
std::vector<std::size_t> greedy_clique(const Graph& g);

}  // namespace circlekit::graph
