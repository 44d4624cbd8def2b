#pragma once

#include <optional>
#include <span>
#include <vector>

#include "circlekit/scalar.hpp"

namespace circlekit::geom {

struct Point2 {
  Scalar x;
  Scalar y;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend auto operator<=>(const Point2&, const Point2&) = default;
};

Scalar squared_distance(const Point2& a, const Point2& b);

/// Circle with exact center and strictly positive radius.
class Circle {
 public:
  /// Throws DegenerateInput unless r > 0.
  Circle(Scalar cx, Scalar cy, Scalar r);

  const Scalar& cx() const { return cx_; }
  const Scalar& cy() const { return cy_; }
  const Scalar& r() const { return r_; }
  Point2 center() const { return {cx_, cy_}; }

  /// True iff p lies exactly on the circle.
  bool contains_on_boundary(const Point2& p) const;

  friend bool operator==(const Circle&, const Circle&) = default;

 private:
  Scalar cx_;
  Scalar cy_;
  Scalar r_;
};

struct HorizontalLine {
  Scalar y;
  friend bool operator==(const HorizontalLine&, const HorizontalLine&) = default;
};

/// p -> translation + lambda * p. A proper map has lambda > 0; the relaxed
/// flavour (any lambda) exists for proportionality tests.
class HomotheticMap {
 public:
  static HomotheticMap proper(PointN translation, Scalar lambda);
  static HomotheticMap relaxed(PointN translation, Scalar lambda);
  static HomotheticMap identity(std::size_t d);

  const PointN& translation() const { return translation_; }
  const Scalar& lambda() const { return lambda_; }
  std::size_t dimension() const { return translation_.size(); }
  bool is_relaxed() const { return relaxed_; }

  friend bool operator==(const HomotheticMap&, const HomotheticMap&) = default;

 private:
  HomotheticMap(PointN translation, Scalar lambda, bool relaxed)
      : translation_(std::move(translation)), lambda_(std::move(lambda)), relaxed_(relaxed) {}

  PointN translation_;
  Scalar lambda_;
  bool relaxed_ = false;
};

/// Throws DimensionMismatch if p has the wrong dimension.
PointN apply_homothety(const HomotheticMap& h, const PointN& p);

/// An intersection angle stored as cos^2(theta), 0 <= cos2 <= 1, so every
/// predicate stays polynomial over the rationals.
class CosAngle {
 public:
  static CosAngle from_cos2(Scalar cos2);
  static CosAngle tangency() { return from_cos2(Scalar(1)); }
  static CosAngle right() { return from_cos2(Scalar(0)); }

  const Scalar& cos2() const { return cos2_; }
  bool is_right() const { return cos2_.is_zero(); }
  bool is_tangency() const { return cos2_ == Scalar(1); }
  /// cos(theta) when cos2 is a rational square.
  std::optional<Scalar> cos() const { return cos2_.exact_sqrt(); }

  friend bool operator==(const CosAngle&, const CosAngle&) = default;

 private:
  explicit CosAngle(Scalar cos2) : cos2_(std::move(cos2)) {}
  Scalar cos2_;
};

bool externally_tangent(const Circle& c1, const Circle& c2);
/// Distinct circles only: a circle is never tangent to itself.
bool internally_tangent(const Circle& c1, const Circle& c2);
bool concentric(const Circle& c1, const Circle& c2);
bool intersect_at_angle(const Circle& c1, const Circle& c2, const CosAngle& a);
bool line_circle_angle(const HorizontalLine& l, const Circle& c, const CosAngle& a);

/// Common point of two tangent circles. Throws NotTangent otherwise.
Point2 tangency_point(const Circle& c1, const Circle& c2);

/// Inversion p -> o + k2 (p - o) / |p - o|^2. Throws DegenerateInput at p == o.
Point2 invert_point(const Point2& o, const Scalar& k2, const Point2& p);
/// Throws CenterOnCircle if o lies on c.
Circle invert_circle(const Point2& o, const Scalar& k2, const Circle& c);
/// Image of a horizontal line: a circle through o. Throws CenterOnLine if o is on l.
Circle invert_line(const Point2& o, const Scalar& k2, const HorizontalLine& l);

/// A few rational points lying exactly on c (axis points and a Pythagorean point).
std::vector<Point2> rational_points_on(const Circle& c);

/// Rotation about the origin by a rational unit vector (c, s), c^2 + s^2 = 1.
class Rotation {
 public:
  Rotation(Scalar c, Scalar s);
  /// Rotation with (c, s) = ((1 - t^2)/(1 + t^2), 2t/(1 + t^2)).
  static Rotation from_half_tangent(const Scalar& t);
  static Rotation identity() { return {Scalar(1), Scalar(0)}; }

  const Scalar& c() const { return c_; }
  const Scalar& s() const { return s_; }
  Point2 apply(const Point2& p) const;
  Circle apply(const Circle& circle) const;

  friend bool operator==(const Rotation&, const Rotation&) = default;

 private:
  Scalar c_;
  Scalar s_;
};

/// Enumerates rational unit vectors ((1 - t^2)/(1 + t^2), 2t/(1 + t^2)) for
/// t = 0, 1, 1/2, 2, 1/3, 3, 2/3, 3/2, ... (t >= 0 in order of p + q), which
/// covers directions with angle in [0, pi).
class HalfTangentSequence {
 public:
  Scalar next();

 private:
  long sum_ = 1;
  long p_ = 0;
};

}  // namespace circlekit::geom
