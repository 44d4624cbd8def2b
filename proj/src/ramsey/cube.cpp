#include "circlekit/cube.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "circlekit/errors.hpp"
#include "circlekit/hypergraph.hpp"

namespace circlekit::ramsey {

CubeSet::CubeSet(int m, int n, std::vector<CubePoint> points) : m_(m), n_(n), points_(std::move(points)) {
  for (const auto& p : points_) {
    if (p.dimension() != static_cast<std::size_t>(n)) throw DegenerateInput("cube point has wrong dimension");
    for (int c : p.coords)
      if (c < 1 || c > m) throw DegenerateInput("cube coordinate outside [1, m]");
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

CubeSet CubeSet::full(int m, int n) {
  std::vector<CubePoint> points;
  CubePoint p{std::vector<int>(static_cast<std::size_t>(n), 1)};
  for (;;) {
    points.push_back(p);
    int i = n - 1;
    while (i >= 0 && p.coords[static_cast<std::size_t>(i)] == m) p.coords[static_cast<std::size_t>(i--)] = 1;
    if (i < 0) break;
    ++p.coords[static_cast<std::size_t>(i)];
  }
  return CubeSet(m, n, std::move(points));
}

std::optional<std::size_t> CubeSet::index_of(const CubePoint& p) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

CubeSet CubeSet::without(const CubePoint& p) const {
  CubeSet out(m_, n_);
  out.points_.reserve(points_.size());
  for (const auto& q : points_)
    if (q != p) out.points_.push_back(q);
  return out;
}

CombinatorialLine::CombinatorialLine(int m, std::vector<std::size_t> active, std::vector<int> fixed)
    : CombinatorialLine(m, std::move(active), std::move(fixed), {}) {}

CombinatorialLine::CombinatorialLine(int m, std::vector<std::size_t> active, std::vector<int> fixed,
                                     std::vector<std::vector<int>> permutations)
    : m_(m), active_(std::move(active)), fixed_(std::move(fixed)), permutations_(std::move(permutations)) {
  if (active_.empty()) throw DegenerateInput("a combinatorial line needs an active coordinate");
  std::sort(active_.begin(), active_.end());
  if (std::adjacent_find(active_.begin(), active_.end()) != active_.end())
    throw DegenerateInput("repeated active coordinate");
  for (auto j : active_) {
    if (j >= fixed_.size()) throw DegenerateInput("active coordinate out of range");
    fixed_[j] = 0;
  }
  for (std::size_t j = 0; j < fixed_.size(); ++j) {
    const bool is_active = std::binary_search(active_.begin(), active_.end(), j);
    if (!is_active && (fixed_[j] < 1 || fixed_[j] > m_)) throw DegenerateInput("fixed coordinate outside [1, m]");
  }
  if (!permutations_.empty()) {
    if (permutations_.size() != active_.size()) throw DegenerateInput("need one permutation per active coordinate");
    for (const auto& pi : permutations_) {
      auto sorted = pi;
      std::sort(sorted.begin(), sorted.end());
      for (int i = 0; i < m_; ++i)
        if (sorted.size() != static_cast<std::size_t>(m_) || sorted[static_cast<std::size_t>(i)] != i + 1)
          throw DegenerateInput("not a permutation of [m]");
    }
  }
}

bool CombinatorialLine::is_ordinary() const {
  for (const auto& pi : permutations_)
    for (int i = 0; i < m_; ++i)
      if (pi[static_cast<std::size_t>(i)] != i + 1) return false;
  return true;
}

std::vector<CubePoint> CombinatorialLine::materialize() const {
  std::vector<CubePoint> out;
  out.reserve(static_cast<std::size_t>(m_));
  for (int i = 1; i <= m_; ++i) {
    CubePoint p{fixed_};
    for (std::size_t a = 0; a < active_.size(); ++a)
      p.coords[active_[a]] = permutations_.empty() ? i : permutations_[a][static_cast<std::size_t>(i - 1)];
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<CombinatorialLine> enumerate_lines(int m, int n, const EnumerationBudget& budget) {
  if (m < 2 || n < 1) throw PreconditionViolation("enumerate_lines needs m >= 2 and n >= 1");
  std::uint64_t words = 1;
  for (int i = 0; i < n; ++i) {
    words *= static_cast<std::uint64_t>(m + 1);
    if (words > budget.max_items)
      throw BudgetExceeded("(m+1)^n exceeds enumeration budget of " + std::to_string(budget.max_items));
  }
  std::vector<CombinatorialLine> out;
  // Word over {0, 1..m}: 0 marks an active coordinate.
  std::vector<int> word(static_cast<std::size_t>(n), 0);
  for (;;) {
    std::vector<std::size_t> active;
    for (std::size_t j = 0; j < word.size(); ++j)
      if (word[j] == 0) active.push_back(j);
    if (!active.empty()) out.emplace_back(m, std::move(active), word);
    int i = n - 1;
    while (i >= 0 && word[static_cast<std::size_t>(i)] == m) word[static_cast<std::size_t>(i--)] = 0;
    if (i < 0) break;
    ++word[static_cast<std::size_t>(i)];
  }
  return out;
}

bool is_generalized_line(std::span<const CubePoint> points, int m) {
  if (points.size() != static_cast<std::size_t>(m) || m < 1) return false;
  const std::size_t n = points.front().dimension();
  for (const auto& p : points)
    if (p.dimension() != n) return false;
  bool any_active = false;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<int> values;
    for (const auto& p : points) values.push_back(p.coords[j]);
    std::sort(values.begin(), values.end());
    if (values.front() == values.back()) continue;
    for (int i = 0; i < m; ++i)
      if (values[static_cast<std::size_t>(i)] != i + 1) return false;
    any_active = true;
  }
  // With an active coordinate the points are pairwise distinct automatically.
  return any_active;
}

std::vector<graph::Hyperedge> lines_inside(const CubeSet& h, std::span<const CombinatorialLine> lines) {
  std::vector<graph::Hyperedge> out;
  for (const auto& line : lines) {
    graph::Hyperedge edge;
    bool inside = true;
    for (const auto& p : line.materialize()) {
      const auto idx = h.index_of(p);
      if (!idx) {
        inside = false;
        break;
      }
      edge.push_back(*idx);
    }
    if (inside) out.push_back(std::move(edge));
  }
  return out;
}

std::optional<CombinatorialLine> find_mono_line(const CubeSet& h, std::span<const int> coloring,
                                                std::span<const CombinatorialLine> lines) {
  if (coloring.size() != h.size()) throw PreconditionViolation("coloring must be total on H");
  for (const auto& line : lines) {
    std::optional<int> color;
    bool mono = true;
    for (const auto& p : line.materialize()) {
      const auto idx = h.index_of(p);
      if (!idx || (color && coloring[*idx] != *color)) {
        mono = false;
        break;
      }
      color = coloring[*idx];
    }
    if (mono) return line;
  }
  return std::nullopt;
}

RamseyVerdict verify_ramsey(const CubeSet& h, std::span<const CombinatorialLine> lines, int k,
                            const graph::SearchBudget& budget) {
  const auto edges = lines_inside(h, lines);
  auto search = graph::find_avoiding_coloring(h.size(), edges, k, budget);
  RamseyVerdict verdict;
  verdict.trace = search.trace;
  verdict.ramsey = !search.coloring.has_value();
  verdict.avoiding_coloring = std::move(search.coloring);
  return verdict;
}

SparsifyReport sparsify(const CubeSet& h, std::span<const CombinatorialLine> lines, std::size_t g, int k,
                        const graph::SearchBudget& budget) {
  if (!verify_ramsey(h, lines, k, budget).ramsey)
    throw PreconditionViolation("sparsify needs a k-Ramsey input set");
  SparsifyReport report{h, {}, std::nullopt};
  for (;;) {
    const auto edges = lines_inside(report.kept, lines);
    const auto cycle = shortest_berge_cycle(edges);
    report.line_girth = cycle ? std::optional<std::size_t>(cycle->length()) : std::nullopt;
    if (!cycle || cycle->length() >= g) return report;

    // Candidates: witnesses of the short cycle first, then remaining points of its lines.
    std::vector<std::size_t> candidates = cycle->elements;
    std::set<std::size_t> seen(candidates.begin(), candidates.end());
    for (auto s : cycle->sets)
      for (auto x : edges[s])
        if (seen.insert(x).second) candidates.push_back(x);

    bool removed = false;
    for (auto x : candidates) {
      const CubePoint victim = report.kept[x];
      CubeSet trial = report.kept.without(victim);
      if (verify_ramsey(trial, lines, k, budget).ramsey) {
        report.kept = std::move(trial);
        report.removed.push_back(victim);
        removed = true;
        break;
      }
    }
    if (!removed)
      throw SurrogateFailed("no point of a Berge cycle of length " + std::to_string(cycle->length()) +
                            " can be removed while keeping H " + std::to_string(k) + "-Ramsey");
  }
}

}  // namespace circlekit::ramsey
