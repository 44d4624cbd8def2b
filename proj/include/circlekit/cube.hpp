#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "circlekit/coloring.hpp"

namespace circlekit::ramsey {

/// A point of the cube [m]^n; coordinates are symbols 1..m.
struct CubePoint {
  std::vector<int> coords;

  std::size_t dimension() const { return coords.size(); }
  friend bool operator==(const CubePoint&, const CubePoint&) = default;
  friend auto operator<=>(const CubePoint&, const CubePoint&) = default;
};

/// Sorted, duplicate-free subset H of [m]^n.
class CubeSet {
 public:
  CubeSet(int m, int n) : m_(m), n_(n) {}
  /// Throws DegenerateInput on coordinates outside [1, m] or wrong dimension.
  CubeSet(int m, int n, std::vector<CubePoint> points);
  static CubeSet full(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<CubePoint>& points() const { return points_; }
  const CubePoint& operator[](std::size_t i) const { return points_[i]; }

  std::optional<std::size_t> index_of(const CubePoint& p) const;
  bool contains(const CubePoint& p) const { return index_of(p).has_value(); }
  CubeSet without(const CubePoint& p) const;

  friend bool operator==(const CubeSet&, const CubeSet&) = default;

 private:
  int m_;
  int n_;
  std::vector<CubePoint> points_;
};

/// A combinatorial line of [m]^n: active coordinates move together through
/// 1..m, the rest are fixed. With permutations it is a generalized line whose
/// active coordinate j takes value pi_j(i) at the i-th point.
class CombinatorialLine {
 public:
  /// fixed has length n; entries for active coordinates are ignored.
  CombinatorialLine(int m, std::vector<std::size_t> active, std::vector<int> fixed);
  CombinatorialLine(int m, std::vector<std::size_t> active, std::vector<int> fixed,
                    std::vector<std::vector<int>> permutations);

  int m() const { return m_; }
  std::size_t n() const { return fixed_.size(); }
  const std::vector<std::size_t>& active() const { return active_; }
  const std::vector<int>& fixed() const { return fixed_; }
  bool is_ordinary() const;

  /// The m points in order i = 1..m.
  std::vector<CubePoint> materialize() const;

  friend bool operator==(const CombinatorialLine&, const CombinatorialLine&) = default;

 private:
  int m_;
  std::vector<std::size_t> active_;
  std::vector<int> fixed_;
  std::vector<std::vector<int>> permutations_;  // empty, or one per active coordinate
};

struct EnumerationBudget {
  std::uint64_t max_items = 50'000'000;
};

/// All ordinary lines of [m]^n; there are (m+1)^n - m^n of them.
/// Throws BudgetExceeded if (m+1)^n exceeds the budget.
std::vector<CombinatorialLine> enumerate_lines(int m, int n, const EnumerationBudget& budget = {});

/// Every coordinate constant or a bijection onto [m], at least one bijective.
bool is_generalized_line(std::span<const CubePoint> points, int m);

/// Lines of the list whose points all lie in H, as index sets into H.
std::vector<graph::Hyperedge> lines_inside(const CubeSet& h, std::span<const CombinatorialLine> lines);

/// Indices of the lines lying inside H that are monochromatic under the
/// coloring (aligned with H's point order); returns the first such line.
std::optional<CombinatorialLine> find_mono_line(const CubeSet& h, std::span<const int> coloring,
                                                std::span<const CombinatorialLine> lines);

struct RamseyVerdict {
  bool ramsey = false;
  /// A coloring of H (aligned with H) avoiding monochromatic lines, when not Ramsey.
  std::optional<graph::Coloring> avoiding_coloring;
  graph::SearchTrace trace;
};

/// Does every k-coloring of H contain a monochromatic line lying inside H?
RamseyVerdict verify_ramsey(const CubeSet& h, std::span<const CombinatorialLine> lines, int k,
                            const graph::SearchBudget& budget = {});

struct SparsifyReport {
  CubeSet kept;
  std::vector<CubePoint> removed;
  /// Berge girth of the lines inside `kept` (nullopt = no cycles).
  std::optional<std::size_t> line_girth;
};

/// Greedy local repair: while the lines inside H contain a Berge cycle shorter
/// than g, delete a point of that cycle whose removal keeps H k-Ramsey.
/// Throws PreconditionViolation if H is not k-Ramsey to begin with and
/// SurrogateFailed when no deletion on a short cycle preserves the property.
SparsifyReport sparsify(const CubeSet& h, std::span<const CombinatorialLine> lines, std::size_t g, int k,
                        const graph::SearchBudget& budget = {});

}  // namespace circlekit::ramsey
