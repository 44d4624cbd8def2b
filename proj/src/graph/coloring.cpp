#include "circlekit/coloring.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "circlekit/errors.hpp"

namespace circlekit::graph {

namespace {

using Mask = std::uint64_t;

class AvoidingSearch {
 public:
  AvoidingSearch(std::size_t n, std::span<const Hyperedge> edges, int k, const SearchBudget& budget)
      : n_(n), k_(k), edges_(edges), budget_(budget) {
    color_.assign(n, -1);
    allowed_.assign(n, k == 64 ? ~Mask{0} : ((Mask{1} << k) - 1));
    vertex_edges_.resize(n);
    uncolored_.resize(edges.size());
    counts_.assign(edges.size() * static_cast<std::size_t>(k), 0);
    used_.assign(static_cast<std::size_t>(k), 0);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      uncolored_[e] = static_cast<int>(edges[e].size());
      for (auto v : edges[e]) vertex_edges_[v].push_back(e);
    }
  }

  AvoidingColoringResult run() {
    AvoidingColoringResult result;
    for (const auto& e : edges_) {
      if (e.size() <= 1) {
        result.trace = trace_;
        return result;
      }
    }
    if (search()) {
      Coloring out(n_);
      for (std::size_t v = 0; v < n_; ++v) out[v] = color_[v] < 0 ? 0 : color_[v];
      result.coloring = std::move(out);
    }
    result.trace = trace_;
    return result;
  }

 private:
  struct TrailEntry {
    bool assign;
    std::size_t v;
    int c;
  };

  void mix(std::uint64_t x) {
    trace_.digest ^= x;
    trace_.digest *= 1099511628211ULL;
  }

  int color_limit() const {
    // Colors are introduced in order 0, 1, 2, ...; the used colors form a prefix.
    int top = 0;
    while (top < k_ && used_[static_cast<std::size_t>(top)] > 0) ++top;
    return std::min(k_, top + 1);
  }

  bool forbid(std::size_t u, int c) {
    const Mask bit = Mask{1} << c;
    if (!(allowed_[u] & bit)) return true;
    allowed_[u] &= ~bit;
    trail_.push_back({false, u, c});
    if (allowed_[u] == 0) return false;
    if (std::popcount(allowed_[u]) == 1) queue_.push_back(u);
    return true;
  }

  bool assign(std::size_t v, int c) {
    color_[v] = c;
    ++used_[static_cast<std::size_t>(c)];
    trail_.push_back({true, v, c});
    bool ok = true;
    for (auto e : vertex_edges_[v]) {
      const auto size = static_cast<int>(edges_[e].size());
      int& cnt = counts_[e * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c)];
      --uncolored_[e];
      ++cnt;
      if (!ok) continue;  // keep counters consistent for undo, skip propagation
      if (cnt == size) {
        ok = false;
      } else if (uncolored_[e] == 1 && cnt == size - 1) {
        for (auto u : edges_[e]) {
          if (color_[u] < 0) {
            ok = forbid(u, c);
            break;
          }
        }
      }
    }
    return ok;
  }

  bool propagate() {
    while (!queue_.empty()) {
      const auto v = queue_.back();
      queue_.pop_back();
      if (color_[v] >= 0) continue;
      if (allowed_[v] == 0) return false;
      const int c = std::countr_zero(allowed_[v]);
      if (!assign(v, c)) return false;
    }
    return true;
  }

  void undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
      const auto t = trail_.back();
      trail_.pop_back();
      if (t.assign) {
        color_[t.v] = -1;
        --used_[static_cast<std::size_t>(t.c)];
        for (auto e : vertex_edges_[t.v]) {
          ++uncolored_[e];
          --counts_[e * static_cast<std::size_t>(k_) + static_cast<std::size_t>(t.c)];
        }
      } else {
        allowed_[t.v] |= Mask{1} << t.c;
      }
    }
  }

  std::optional<std::size_t> pick_vertex(Mask limit_mask) const {
    std::optional<std::size_t> best;
    int best_choices = 0;
    std::size_t best_degree = 0;
    for (std::size_t v = 0; v < n_; ++v) {
      if (color_[v] >= 0 || vertex_edges_[v].empty()) continue;
      const int choices = std::popcount(allowed_[v] & limit_mask);
      const std::size_t degree = vertex_edges_[v].size();
      if (!best || choices < best_choices || (choices == best_choices && degree > best_degree)) {
        best = v;
        best_choices = choices;
        best_degree = degree;
      }
    }
    return best;
  }

  bool search() {
    const int limit = color_limit();
    const Mask limit_mask = limit == 64 ? ~Mask{0} : ((Mask{1} << limit) - 1);
    const auto v = pick_vertex(limit_mask);
    if (!v) return true;
    const Mask choices = allowed_[*v] & limit_mask;
    for (int c = 0; c < k_; ++c) {
      if (!(choices & (Mask{1} << c))) continue;
      if (++trace_.nodes > budget_.max_nodes)
        throw BudgetExceeded("coloring search exceeded " + std::to_string(budget_.max_nodes) + " nodes");
      mix(*v);
      mix(static_cast<std::uint64_t>(c));
      const auto mark = trail_.size();
      queue_.clear();
      if (assign(*v, c) && propagate() && search()) return true;
      mix(~std::uint64_t{0});
      queue_.clear();
      undo_to(mark);
    }
    return false;
  }

  std::size_t n_;
  int k_;
  std::span<const Hyperedge> edges_;
  SearchBudget budget_;
  std::vector<int> color_;
  std::vector<Mask> allowed_;
  std::vector<std::vector<std::size_t>> vertex_edges_;
  std::vector<int> uncolored_;
  std::vector<int> counts_;
  std::vector<int> used_;
  std::vector<TrailEntry> trail_;
  std::vector<std::size_t> queue_;
  SearchTrace trace_;
};

}  // namespace

AvoidingColoringResult find_avoiding_coloring(std::size_t n, std::span<const Hyperedge> edges, int k,
                                              const SearchBudget& budget) {
  if (k < 1 || k > 64) throw PreconditionViolation("number of colors must be in [1, 64]");
  for (const auto& e : edges)
    for (auto v : e)
      if (v >= n) throw PreconditionViolation("edge refers to vertex outside the vertex set");
  return AvoidingSearch(n, edges, k, budget).run();
}

bool has_monochromatic_edge(std::span<const Hyperedge> edges, std::span<const int> coloring) {
  for (const auto& e : edges) {
    if (e.empty()) continue;
    const int c = coloring[e.front()];
    if (std::all_of(e.begin(), e.end(), [&](std::size_t v) { return coloring[v] == c; })) return true;
  }
  return false;
}

}  // namespace circlekit::graph
