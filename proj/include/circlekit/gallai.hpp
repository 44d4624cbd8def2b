#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "circlekit/coloring.hpp"
#include "circlekit/cube.hpp"
#include "circlekit/geometry.hpp"
#include "circlekit/scalar.hpp"

namespace circlekit::ramsey {

/// Ordered finite point set t_1..t_m in R^d with pairwise distinct points.
class Template {
 public:
  /// Throws DegenerateInput on mixed dimensions or repeated points.
  explicit Template(std::vector<PointN> points);

  std::size_t size() const { return points_.size(); }
  std::size_t dimension() const { return dimension_; }
  const std::vector<PointN>& points() const { return points_; }
  const PointN& operator[](std::size_t i) const { return points_[i]; }

  friend bool operator==(const Template&, const Template&) = default;

 private:
  std::vector<PointN> points_;
  std::size_t dimension_ = 0;
};

/// Two-point polynomial constraint f(p, q), evaluated exactly.
struct Constraint {
  std::string name;
  std::function<Scalar(const PointN&, const PointN&)> evaluate;
};

using ConstraintFamily = std::vector<Constraint>;

/// delta(p, q) = sum_i (p_i - q_i)^2, nonzero exactly on distinct pairs.
Constraint distinctness_constraint();
std::vector<std::string> constraint_names(const ConstraintFamily& family);
bool has_constraint(const ConstraintFamily& family, const std::string& name);

struct ConstraintViolation {
  std::string constraint;
  std::size_t first = 0;   // index into the point list
  std::size_t second = 0;
};

/// First (constraint, ordered pair of distinct points) evaluating to zero.
std::optional<ConstraintViolation> find_violation(const ConstraintFamily& family, std::span<const PointN> points);

/// zeta_gamma(x) = sum_i gamma_i t_{x_i}. Throws DimensionMismatch.
PointN zeta(std::span<const Scalar> gamma, const CubePoint& x, const Template& tmpl);

struct GammaSampling {
  std::uint64_t seed = 1;
  int max_tries = 20;
  long numerator_max = 1000;
  long denominator_max = 100;
};

struct GammaSample {
  std::vector<Scalar> gamma;
  int tries = 0;
};

/// Rejection sampling of a positive rational gamma with every constraint
/// nonzero on every ordered pair of distinct images zeta_gamma(x), zeta_gamma(y),
/// x, y in H. Deterministic given the seed. Throws TriesExhausted.
GammaSample sample_gamma(const Template& tmpl, const CubeSet& h, const ConstraintFamily& constraints,
                         const GammaSampling& sampling);

/// Homothetic copy h(T) of the template, kept with its map.
struct HomotheticCopy {
  geom::HomotheticMap map;
  std::vector<PointN> points;  // h(t_1), ..., h(t_m)
};

struct LiftProvenance {
  std::vector<Scalar> gamma;
  CubeSet h;
};

struct GallaiCertificate {
  Template tmpl;
  std::vector<PointN> x;
  std::vector<HomotheticCopy> copies;
  int k = 1;
  std::size_t g = 2;
  ConstraintFamily constraints;
  std::optional<LiftProvenance> lift;
};

/// Lifts a k-Ramsey H subset of [m]^n through zeta_gamma: X = zeta(H), each line
/// L inside H becomes the copy with translation sum_{i not active} gamma_i t_{x_i}
/// and scale sum_{i active} gamma_i. Checks the Ramsey property and the line
/// girth (PreconditionViolation) before sampling gamma.
GallaiCertificate lift_gallai(const Template& tmpl, const ConstraintFamily& constraints, const CubeSet& h,
                              std::span<const CombinatorialLine> lines, int k, std::size_t g,
                              const GammaSampling& sampling, const graph::SearchBudget& budget = {});

struct CertificateReport {
  bool copies_consistent = true;
  std::string copies_detail;
  bool respects = true;
  std::optional<ConstraintViolation> violation;
  std::optional<std::size_t> copy_girth;
  bool girth_ok = true;
  bool ramsey = true;
  std::optional<graph::Coloring> avoiding_coloring;
  graph::SearchTrace trace;
  std::size_t copies_checked = 0;

  bool passed() const { return copies_consistent && respects && girth_ok && ramsey; }
};

/// Checks the three Gallai conditions: the constraint family respects X,
/// the copy family has Berge girth >= g, and every k-coloring of X has a
/// monochromatic copy. With check_all_copies the family is every homothetic
/// copy of the template in X rather than the certificate's own list.
CertificateReport verify_certificate(const GallaiCertificate& cert, bool check_all_copies,
                                     const graph::SearchBudget& budget = {});

/// Every homothetic copy (lambda > 0) of the template in X, one per point set.
std::vector<HomotheticCopy> enumerate_copies(std::span<const PointN> x, const Template& tmpl,
                                             std::uint64_t max_pairs = 100'000'000);

/// (p_1..p_m) proportional to (t_1..t_m): some p* and lambda with p_i = p* + lambda t_i.
/// Without allow_degenerate lambda must be positive.
bool proportional(std::span<const PointN> points, const Template& tmpl, bool allow_degenerate);

/// Copy point sets as index sets into X. Throws VerificationFailed if a copy
/// point is not in X.
std::vector<graph::Hyperedge> copies_as_edges(std::span<const PointN> x, std::span<const HomotheticCopy> copies);

/// The map p* + lambda t (lambda of any sign) sending the template onto the
/// points in order, if one exists. For a one-point template lambda is 1.
std::optional<geom::HomotheticMap> fit_homothety(std::span<const PointN> points, const Template& tmpl);

/// Re-expresses a certificate for a template that is a homothetic image of
/// the certificate's template up to reordering. Throws ProviderFailed if not.
GallaiCertificate rebase_certificate(const GallaiCertificate& cert, const Template& target);

}  // namespace circlekit::ramsey
