#include "circlekit/hypergraph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace circlekit::ramsey {

std::optional<BergeCycle> shortest_berge_cycle(std::span<const graph::Hyperedge> family) {
  constexpr auto kNone = std::numeric_limits<std::size_t>::max();
  const std::size_t sets = family.size();
  std::size_t elements = 0;
  for (const auto& s : family)
    for (auto x : s) elements = std::max(elements, x + 1);

  // Incidence graph: 0..sets-1 are sets, sets + x is element x.
  const std::size_t n = sets + elements;
  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t i = 0; i < sets; ++i) {
    auto members = family[i];
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    for (auto x : members) {
      adj[i].push_back(sets + x);
      adj[sets + x].push_back(i);
    }
  }

  std::size_t best = kNone;
  std::vector<std::size_t> best_cycle;
  std::vector<std::size_t> dist(n), parent(n);
  std::deque<std::size_t> queue;
  // Every cycle passes through a set node, so roots range over sets only.
  for (std::size_t root = 0; root < sets; ++root) {
    std::fill(dist.begin(), dist.end(), kNone);
    dist[root] = 0;
    parent[root] = kNone;
    queue.assign(1, root);
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      if (2 * dist[u] + 1 >= best) break;
      for (auto w : adj[u]) {
        if (dist[w] == kNone) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u] && dist[u] + dist[w] + 1 < best) {
          std::vector<std::size_t> left, right;
          for (auto v = u; v != kNone; v = parent[v]) left.push_back(v);
          for (auto v = w; v != kNone; v = parent[v]) right.push_back(v);
          // Paths meet at root; drop the shared tail.
          while (left.size() > 1 && right.size() > 1 && left[left.size() - 2] == right[right.size() - 2]) {
            left.pop_back();
            right.pop_back();
          }
          std::vector<std::size_t> cycle(left.rbegin(), left.rend());
          for (std::size_t i = 0; i + 1 < right.size(); ++i) cycle.push_back(right[i]);
          best = cycle.size();
          best_cycle = std::move(cycle);
        }
      }
    }
  }
  if (best == kNone) return std::nullopt;

  // Rotate so that the cycle starts at a set node, then split into sets/elements.
  auto start = std::find_if(best_cycle.begin(), best_cycle.end(), [&](std::size_t v) { return v < sets; });
  std::rotate(best_cycle.begin(), start, best_cycle.end());
  BergeCycle out;
  for (std::size_t i = 0; i < best_cycle.size(); ++i) {
    if (i % 2 == 0) {
      out.sets.push_back(best_cycle[i]);
    } else {
      out.elements.push_back(best_cycle[i] - sets);
    }
  }
  return out;
}

std::optional<std::size_t> berge_girth(std::span<const graph::Hyperedge> family) {
  const auto cycle = shortest_berge_cycle(family);
  if (!cycle) return std::nullopt;
  return cycle->length();
}

}  // namespace circlekit::ramsey
