#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "circlekit/constellation.hpp"
#include "circlekit/providers.hpp"

namespace circlekit::construct {

// ---- base cases ----

/// Circles realizing the odd cycle C_n as a contact graph at the given angle,
/// with rational data. Verified before returning; throws SearchFailed if no
/// candidate passes and PreconditionViolation for even or small n.
Constellation base_odd_cycle(int n, const geom::CosAngle& angle = geom::CosAngle::tangency());

// ---- tangency step ----

/// Circles as (x, y, r) points, in circle order.
ramsey::Template extract_template(const std::vector<geom::Circle>& circles);
ramsey::Template extract_template(const Constellation& c);

/// {delta, f_a, f_b}: f_a vanishes on concentric pairs, f_b on internally
/// tangent pairs.
ramsey::ConstraintFamily tangency_constraints();
/// Persisted names "delta", "f_a", "f_b". Throws ParseError otherwise.
ramsey::Constraint constraint_by_name(const std::string& name);
ramsey::ConstraintFamily constraints_by_name(std::span<const std::string> names);

/// `count` distinct rational unit directions (angle in [0, pi)), none
/// parallel to the planar part of a difference of two points of X.
std::vector<geom::Point2> choose_directions(std::span<const PointN> x, std::size_t count);

/// The large circle c(x', y', R - r'). Throws RadiusNotPositive unless R > r'.
geom::Circle large_circle(const PointN& p, const Scalar& R);

/// The small circle for `source` in the copy h: centre (x', y') + (R - r*) u,
/// radius lambda r, where (x', y', r') = h(x, y, r) and r* is the third
/// translation component. Throws RadiusNotPositive unless R > r*.
geom::Circle small_circle(const geom::Circle& source, const geom::HomotheticMap& h, const geom::Point2& direction,
                          const Scalar& R);

/// f(s) = constant + slope * s, from expanding
/// (a + s cos)^2 + (b + s sin)^2 - (c + s)^2 with cos^2 + sin^2 = 1.
struct LinearPolynomial {
  Scalar constant;
  Scalar slope;

  bool identically_zero() const { return constant.is_zero() && slope.is_zero(); }
  /// The unique root when slope != 0.
  std::optional<Scalar> root() const;
};

LinearPolynomial tangency_polynomial(const Scalar& a, const Scalar& b, const Scalar& c, const geom::Point2& direction);

/// Everything a tangency step needs except R.
struct TangencyPlan {
  std::vector<geom::Circle> base;
  std::vector<PointN> x;
  std::vector<geom::HomotheticMap> copy_maps;
  std::vector<std::vector<std::size_t>> copy_points;
  std::vector<geom::Point2> directions;

  /// max r' over X; R must exceed it.
  Scalar radius_floor() const;
};

/// Checks the certificate against the base template and picks directions.
TangencyPlan plan_tangency(const std::vector<geom::Circle>& base, const ramsey::GallaiCertificate& cert);

/// The family C''_R: large circles (one per point of X, in X order), then the
/// small circles copy by copy in base order.
Constellation assemble(const TangencyPlan& plan, const Scalar& R);

/// Values R > max r' at which a small circle becomes tangent (either kind) to
/// a large circle other than its own, each the root of a linear polynomial
/// in R. These are the only such accidents; the doubling loop must avoid them.
std::vector<Scalar> stray_radii(const TangencyPlan& plan);

struct AssemblyCheck {
  bool passed = false;
  std::string detail;
};

/// Claim-level check of an assembled family: no concentric pairs, no internal
/// tangencies, and external tangencies exactly the predicted ones.
AssemblyCheck check_assembly(const Constellation& c);

struct RadiusChoice {
  Scalar R;
  std::vector<Scalar> rejected;
};

/// Tries the leading candidates first (those not above max r' are rejected
/// outright), then max r' + 1 doubled repeatedly, returning the first R whose
/// assembly passes check_assembly. Throws SearchFailed after max_doublings.
RadiusChoice choose_R(const TangencyPlan& plan, std::span<const Scalar> leading = {}, int max_doublings = 64);

struct StepOptions {
  ramsey::GammaSampling sampling{};
  graph::SearchBudget budget{};
  /// Certificate to use instead of asking the provider.
  std::optional<ramsey::GallaiCertificate> certificate;
};

/// One tangency induction step: certificate for (template, constraints,
/// ceil(g/3), k), directions, R, assembly and structural verification.
/// Throws PreconditionViolation if the base fails verification for (g, k).
Constellation induction_step_tangency(const Constellation& base, std::size_t g, int k,
                                      const ramsey::GallaiProvider& provider, const StepOptions& options = {});

// ---- theta step ----

struct ThetaTemplate {
  ramsey::Template tmpl;
  std::vector<std::size_t> owner;  // template index -> circle index
  std::vector<geom::Circle> rotated;
};

/// y-coordinates of the horizontal lines meeting each rotated circle at the
/// angle: y +- r cos(theta), or y alone at a right angle. Throws
/// CollisionAfterRotation when two values coincide and PreconditionViolation
/// when cos(theta) is irrational or the angle is the tangency angle.
ThetaTemplate theta_template(const std::vector<geom::Circle>& base, const geom::CosAngle& angle,
                             const geom::Rotation& rotation);

/// Identity first, then rotations along the half-tangent sequence.
geom::Rotation find_rotation(const std::vector<geom::Circle>& base, const geom::CosAngle& angle, int max_tries = 256);

struct Inversion {
  geom::Point2 center;
  Scalar k2;
};

/// Throws InversionCenterInvalid if the centre lies on a line or circle, on a
/// line through two circle centres, or on a vertical line through a centre.
void validate_inversion(const Inversion& inv, std::span<const Scalar> lines, std::span<const geom::Circle> circles);
/// Deterministic search near the configuration; k2 = 1.
Inversion find_inversion(std::span<const Scalar> lines, std::span<const geom::Circle> circles);

/// Checks that rational points of every line and circle land exactly on the
/// claimed images. Returns the number of points checked; throws
/// VerificationFailed on the first miss.
std::size_t verify_inversion_pointwise(const Inversion& inv, std::span<const Scalar> lines,
                                       std::span<const geom::Circle> circles,
                                       std::span<const geom::Circle> line_images,
                                       std::span<const geom::Circle> circle_images);

struct ThetaOptions {
  StepOptions step{};
  std::optional<geom::Rotation> rotation;
  std::optional<Inversion> inversion;
};

/// One theta induction step: template of line heights, 1-D certificate for
/// (T_0, ceil(g/2), k), copies spread apart horizontally, inversion, then
/// pointwise and structural verification.
Constellation induction_step_theta(const Constellation& base, const geom::CosAngle& angle, std::size_t g, int k,
                                   const ramsey::GallaiProvider& provider, const ThetaOptions& options = {});

}  // namespace circlekit::construct
