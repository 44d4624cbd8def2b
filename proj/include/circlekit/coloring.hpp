#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace circlekit::graph {

/// Node limit for exhaustive searches. A search that would exceed it throws
/// BudgetExceeded instead of returning an unproven answer.
struct SearchBudget {
  std::uint64_t max_nodes = 200'000'000;
};

/// Audit trail of a completed search: how many branch nodes were visited and
/// an FNV-1a digest over the sequence of (vertex, color) decisions and
/// conflicts. Identical inputs give identical digests.
struct SearchTrace {
  std::uint64_t nodes = 0;
  std::uint64_t digest = 0xcbf29ce484222325ULL;

  friend bool operator==(const SearchTrace&, const SearchTrace&) = default;
};

using Coloring = std::vector<int>;
using Hyperedge = std::vector<std::size_t>;

struct AvoidingColoringResult {
  /// A coloring with no monochromatic edge, or nullopt when the search
  /// exhausted every coloring (the trace is then the proof of absence).
  std::optional<Coloring> coloring;
  SearchTrace trace;
};

/// Searches for a k-coloring of vertices 0..n-1 under which no edge is
/// monochromatic. Graph coloring is the special case of 2-element edges;
/// Ramsey verification asks whether such a coloring of a point set exists
/// for its family of lines or copies.
///
/// Backtracking with propagation: when an edge has a single uncolored vertex
/// and every other vertex has color c, c is removed from that vertex. Branches
/// on the vertex with fewest remaining colors (ties: most live edges) and only
/// tries one previously unused color, which quotients out color permutations.
/// Throws BudgetExceeded when max_nodes is hit.
AvoidingColoringResult find_avoiding_coloring(std::size_t n, std::span<const Hyperedge> edges, int k,
                                              const SearchBudget& budget = {});

/// True iff some edge is monochromatic under the coloring.
bool has_monochromatic_edge(std::span<const Hyperedge> edges, std::span<const int> coloring);

}  // namespace circlekit::graph
