#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "circlekit/coloring.hpp"

namespace circlekit::ramsey {

/// A cycle (T_1, ..., T_l) on a set family with distinct witnesses
/// x_i in T_i ∩ T_{i+1} (indices cyclic). `sets` are indices into the family,
/// `elements[i]` is the witness shared by sets[i] and sets[(i + 1) % l].
struct BergeCycle {
  std::vector<std::size_t> sets;
  std::vector<std::size_t> elements;

  std::size_t length() const { return sets.size(); }
};

/// Shortest Berge cycle, found as a shortest cycle of the bipartite
/// set/element incidence graph (whose length is twice the Berge length).
std::optional<BergeCycle> shortest_berge_cycle(std::span<const graph::Hyperedge> family);

/// Minimum Berge cycle length (>= 2); nullopt when the family has no cycle.
std::optional<std::size_t> berge_girth(std::span<const graph::Hyperedge> family);

}  // namespace circlekit::ramsey
