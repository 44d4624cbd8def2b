#pragma once

// Brute-force reference implementations. Each one is deliberately naive and
// shares no code with the library algorithm it checks.

#include <algorithm>
#include <cstddef>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "circlekit/gallai.hpp"
#include "circlekit/geometry.hpp"
#include "circlekit/graph.hpp"

namespace oracle {

using circlekit::PointN;
using circlekit::Scalar;
using Edges = std::vector<std::pair<std::size_t, std::size_t>>;

inline bool proper(const Edges& edges, const std::vector<int>& color) {
  for (const auto& [u, v] : edges)
    if (color[u] == color[v]) return false;
  return true;
}

/// Chromatic number as the fewest blocks of a set partition of the vertices
/// with no edge inside a block. Every partition is visited once (restricted
/// growth strings), so this is an exhaustive minimum over all colorings.
inline int chromatic_number(std::size_t n, const Edges& edges) {
  if (n == 0) return 0;
  std::vector<int> rgs(n, 0);
  int best = static_cast<int>(n);
  std::function<void(std::size_t, int)> walk = [&](std::size_t i, int blocks) {
    if (i == n) {
      if (blocks < best && proper(edges, rgs)) best = blocks;
      return;
    }
    for (int b = 0; b <= blocks && b < best; ++b) {
      rgs[i] = b;
      walk(i + 1, std::max(blocks, b + 1));
    }
  };
  walk(0, 0);
  return best;
}

/// Shortest cycle via edge deletion: the shortest cycle through edge uv is
/// one more than the u-v distance once uv is removed.
inline std::optional<std::size_t> girth(std::size_t n, const Edges& edges) {
  std::optional<std::size_t> best;
  for (std::size_t skip = 0; skip < edges.size(); ++skip) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t e = 0; e < edges.size(); ++e)
      if (e != skip) {
        adj[edges[e].first].push_back(edges[e].second);
        adj[edges[e].second].push_back(edges[e].first);
      }
    const auto [s, t] = edges[skip];
    std::vector<std::size_t> dist(n, std::numeric_limits<std::size_t>::max());
    std::deque<std::size_t> q{s};
    dist[s] = 0;
    while (!q.empty()) {
      const auto v = q.front();
      q.pop_front();
      for (auto w : adj[v])
        if (dist[w] == std::numeric_limits<std::size_t>::max()) {
          dist[w] = dist[v] + 1;
          q.push_back(w);
        }
    }
    if (dist[t] != std::numeric_limits<std::size_t>::max() && (!best || dist[t] + 1 < *best)) best = dist[t] + 1;
  }
  return best;
}

/// Shortest Berge cycle by trying every sequence of distinct sets and every
/// choice of distinct witnesses.
inline std::optional<std::size_t> berge_girth(const std::vector<std::vector<std::size_t>>& family) {
  const std::size_t s = family.size();
  const auto shares = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> out;
    for (auto x : family[a])
      if (std::find(family[b].begin(), family[b].end(), x) != family[b].end()) out.push_back(x);
    return out;
  };
  for (std::size_t len = 2; len <= s; ++len) {
    std::vector<std::size_t> seq;
    std::vector<bool> used(s, false);
    bool found = false;
    std::function<bool(std::size_t, std::set<std::size_t>&)> witnesses = [&](std::size_t i,
                                                                              std::set<std::size_t>& taken) {
      if (i == len) return true;
      for (auto x : shares(seq[i], seq[(i + 1) % len])) {
        if (taken.contains(x)) continue;
        taken.insert(x);
        if (witnesses(i + 1, taken)) return true;
        taken.erase(x);
      }
      return false;
    };
    std::function<void()> extend = [&] {
      if (found) return;
      if (seq.size() == len) {
        std::set<std::size_t> taken;
        found = witnesses(0, taken);
        return;
      }
      for (std::size_t t = 0; t < s; ++t) {
        if (used[t]) continue;
        used[t] = true;
        seq.push_back(t);
        extend();
        seq.pop_back();
        used[t] = false;
      }
    };
    extend();
    if (found) return len;
  }
  return std::nullopt;
}

/// Every ordered tuple of distinct points of X tested for p_i = p* + lambda t_i
/// with lambda > 0; returned as sorted index sets.
inline std::set<std::vector<std::size_t>> copies_by_subsets(const std::vector<PointN>& x,
                                                            const circlekit::ramsey::Template& tmpl) {
  const std::size_t m = tmpl.size();
  const std::size_t d = tmpl.dimension();
  std::set<std::vector<std::size_t>> out;
  std::vector<std::size_t> pick;
  std::function<void()> walk = [&] {
    if (pick.size() == m) {
      std::optional<Scalar> lambda;
      for (std::size_t i = 1; i < m && !lambda; ++i)
        for (std::size_t c = 0; c < d && !lambda; ++c)
          if (tmpl[i][c] != tmpl[0][c])
            lambda = (x[pick[i]][c] - x[pick[0]][c]) / (tmpl[i][c] - tmpl[0][c]);
      if (m == 1) lambda = Scalar(1);
      if (!lambda || lambda->sign() <= 0) return;
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t c = 0; c < d; ++c)
          if (x[pick[i]][c] - *lambda * tmpl[i][c] != x[pick[0]][c] - *lambda * tmpl[0][c]) return;
      auto key = pick;
      std::sort(key.begin(), key.end());
      out.insert(key);
      return;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (std::find(pick.begin(), pick.end(), i) != pick.end()) continue;
      pick.push_back(i);
      walk();
      pick.pop_back();
    }
  };
  walk();
  return out;
}

/// True iff every k-coloring of 0..n-1 makes some hyperedge monochromatic,
/// by listing all k^n colorings. Fills `avoiding` with the first failure.
inline bool every_coloring_hits(std::size_t n, const std::vector<std::vector<std::size_t>>& edges, int k,
                                std::vector<int>* avoiding = nullptr) {
  std::vector<int> color(n, 0);
  while (true) {
    bool hit = false;
    for (const auto& e : edges) {
      if (std::all_of(e.begin(), e.end(), [&](std::size_t v) { return color[v] == color[e[0]]; })) {
        hit = true;
        break;
      }
    }
    if (!hit) {
      if (avoiding) *avoiding = color;
      return false;
    }
    std::size_t i = 0;
    while (i < n && ++color[i] == k) color[i++] = 0;
    if (i == n) return true;
  }
}

/// Generalized lines of [m]^n built from their definition: a nonempty active
/// coordinate set, a permutation of [m] per active coordinate, constants
/// elsewhere. Returned as point lists in order i = 1..m.
inline std::set<std::vector<std::vector<int>>> all_generalized_lines(int m, int n) {
  std::vector<std::vector<int>> perms;
  std::vector<int> p(m);
  for (int i = 0; i < m; ++i) p[i] = i + 1;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::set<std::vector<std::vector<int>>> out;
  // Each coordinate independently: a constant 1..m or one of the m! perms.
  const int choices = m + static_cast<int>(perms.size());
  std::vector<int> pick(n, 0);
  while (true) {
    bool active = false;
    for (int c : pick) active |= c >= m;
    if (active) {
      std::vector<std::vector<int>> line(m, std::vector<int>(n));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) line[i][j] = pick[j] < m ? pick[j] + 1 : perms[pick[j] - m][i];
      out.insert(line);
    }
    int j = 0;
    while (j < n && ++pick[j] == choices) pick[j++] = 0;
    if (j == n) break;
  }
  return out;
}

// ---- random generators shared by the property tests ----

inline Edges random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  Edges edges;
  std::bernoulli_distribution coin(p);
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return edges;
}

inline Scalar random_rational(std::mt19937_64& rng, long num_max, long den_max, bool allow_negative = true) {
  std::uniform_int_distribution<long> num(allow_negative ? -num_max : 1, num_max);
  std::uniform_int_distribution<long> den(1, den_max);
  return Scalar(num(rng), den(rng));
}

inline circlekit::graph::Graph to_graph(std::size_t n, const Edges& edges) {
  return circlekit::graph::Graph(n, edges);
}

}  // namespace oracle
