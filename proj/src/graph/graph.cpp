#include "circlekit/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "circlekit/errors.hpp"

namespace circlekit::graph {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n) {
  for (const auto& [u, v] : edges) add_edge(u, v);
}

void Graph::add_edge(std::size_t u, std::size_t v) {
  if (u == v) throw DegenerateInput("self-loop at vertex " + std::to_string(u));
  if (u >= size() || v >= size()) throw DegenerateInput("edge endpoint out of range");
  auto& au = adjacency_[u];
  const auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return;
  au.insert(it, v);
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
}

bool Graph::has_edge(std::size_t u, std::size_t v) const {
  if (u >= size() || v >= size()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (std::size_t u = 0; u < size(); ++u)
    for (auto v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

Graph tangency_graph(std::span<const geom::Circle> circles, bool include_internal) {
  Graph g(circles.size());
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      if (geom::externally_tangent(circles[i], circles[j]) ||
          (include_internal && geom::internally_tangent(circles[i], circles[j])))
        g.add_edge(i, j);
  return g;
}

Graph theta_graph(std::span<const geom::Circle> circles, const geom::CosAngle& a) {
  Graph g(circles.size());
  for (std::size_t i = 0; i < circles.size(); ++i)
    for (std::size_t j = i + 1; j < circles.size(); ++j)
      if (geom::intersect_at_angle(circles[i], circles[j], a)) g.add_edge(i, j);
  return g;
}

std::optional<std::size_t> girth(const Graph& g) {
  constexpr auto kUnseen = std::numeric_limits<std::size_t>::max();
  std::size_t best = kUnseen;
  std::vector<std::size_t> dist(g.size()), parent(g.size());
  std::deque<std::size_t> queue;
  for (std::size_t root = 0; root < g.size(); ++root) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[root] = 0;
    parent[root] = kUnseen;
    queue.assign(1, root);
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop_front();
      if (2 * dist[u] + 1 >= best) break;
      for (auto w : g.neighbors(u)) {
        if (dist[w] == kUnseen) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (w != parent[u]) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  if (best == kUnseen) return std::nullopt;
  return best;
}

ColoringWitness ColoringWitness::proper(const Graph& g, int colors, Coloring coloring) {
  if (coloring.size() != g.size()) throw VerificationFailed("coloring size does not match graph");
  for (auto c : coloring)
    if (c < 0 || c >= colors) throw VerificationFailed("coloring uses a color outside the palette");
  for (const auto& [u, v] : g.edges())
    if (coloring[u] == coloring[v])
      throw VerificationFailed("coloring is not proper on edge " + std::to_string(u) + "-" + std::to_string(v));
  return ColoringWitness(colors, std::move(coloring), SearchTrace{});
}

ColoringWitness ColoringWitness::exhausted(int colors, SearchTrace trace) {
  return ColoringWitness(colors, std::nullopt, trace);
}

namespace {

std::vector<Hyperedge> as_hyperedges(const Graph& g) {
  std::vector<Hyperedge> out;
  out.reserve(g.edge_count());
  for (const auto& [u, v] : g.edges()) out.push_back({u, v});
  return out;
}

// Saturation-order greedy coloring (DSATUR without backtracking).
Coloring greedy_coloring(const Graph& g) {
  const std::size_t n = g.size();
  Coloring color(n, -1);
  std::vector<std::vector<bool>> seen(n);
  std::vector<int> saturation(n, 0);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      if (pick == n || saturation[v] > saturation[pick] ||
          (saturation[v] == saturation[pick] && g.neighbors(v).size() > g.neighbors(pick).size()))
        pick = v;
    }
    int c = 0;
    while (static_cast<std::size_t>(c) < seen[pick].size() && seen[pick][static_cast<std::size_t>(c)]) ++c;
    color[pick] = c;
    for (auto w : g.neighbors(pick)) {
      auto& s = seen[w];
      if (s.size() <= static_cast<std::size_t>(c)) s.resize(static_cast<std::size_t>(c) + 1, false);
      if (!s[static_cast<std::size_t>(c)]) {
        s[static_cast<std::size_t>(c)] = true;
        ++saturation[w];
      }
    }
  }
  return color;
}

}  // namespace

ColoringWitness is_k_colorable(const Graph& g, int k, const SearchBudget& budget) {
  const auto edges = as_hyperedges(g);
  auto result = find_avoiding_coloring(g.size(), edges, k, budget);
  if (result.coloring) return ColoringWitness::proper(g, k, std::move(*result.coloring));
  return ColoringWitness::exhausted(k, result.trace);
}

std::vector<std::size_t> greedy_clique(const Graph& g) {
  std::vector<std::size_t> best;
  for (std::size_t root = 0; root < g.size(); ++root) {
    std::vector<std::size_t> clique{root};
    std::vector<std::size_t> candidates = g.neighbors(root);
    std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
      return g.neighbors(a).size() > g.neighbors(b).size();
    });
    for (auto v : candidates)
      if (std::all_of(clique.begin(), clique.end(), [&](std::size_t u) { return g.has_edge(u, v); }))
        clique.push_back(v);
    if (clique.size() > best.size()) best = std::move(clique);
  }
  std::sort(best.begin(), best.end());
  return best;
}

ChromaticResult chromatic_number(const Graph& g, const SearchBudget& budget) {
  ChromaticResult result;
  if (g.size() == 0) {
    result.exact = true;
    return result;
  }
  result.clique = greedy_clique(g);
  result.lower = static_cast<int>(std::max<std::size_t>(1, result.clique.size()));
  result.coloring = greedy_coloring(g);
  result.upper = *std::max_element(result.coloring.begin(), result.coloring.end()) + 1;
  if (result.lower > 1) {
    // The clique already proves the bound; the exhausted search is an extra
    // audit trail and is simply omitted when the budget runs out.
    try {
      result.below = is_k_colorable(g, result.lower - 1, budget);
    } catch (const BudgetExceeded&) {
    }
  }
  try {
    for (int k = result.lower; k < result.upper; ++k) {
      auto w = is_k_colorable(g, k, budget);
      if (w.colorable()) {
        result.coloring = *w.coloring();
        result.upper = k;
        break;
      }
      result.lower = k + 1;
      result.below = std::move(w);
    }
  } catch (const BudgetExceeded&) {
    result.exact = result.lower == result.upper;
    return result;
  }
  result.exact = true;
  return result;
}

}  // namespace circlekit::graph
