#include "circlekit/geometry.hpp"

#include <numeric>

#include "circlekit/errors.hpp"

namespace circlekit::geom {

Scalar squared_distance(const Point2& a, const Point2& b) {
  return square(a.x - b.x) + square(a.y - b.y);
}

Circle::Circle(Scalar cx, Scalar cy, Scalar r) : cx_(std::move(cx)), cy_(std::move(cy)), r_(std::move(r)) {
  if (r_.sign() <= 0) throw DegenerateInput("circle radius must be positive, got " + r_.str());
}

bool Circle::contains_on_boundary(const Point2& p) const {
  return squared_distance(center(), p) == square(r_);
}

HomotheticMap HomotheticMap::proper(PointN translation, Scalar lambda) {
  if (lambda.sign() <= 0) throw DegenerateInput("homothetic map needs lambda > 0, got " + lambda.str());
  return HomotheticMap(std::move(translation), std::move(lambda), false);
}

HomotheticMap HomotheticMap::relaxed(PointN translation, Scalar lambda) {
  return HomotheticMap(std::move(translation), std::move(lambda), true);
}

HomotheticMap HomotheticMap::identity(std::size_t d) {
  return HomotheticMap(PointN(d, Scalar(0)), Scalar(1), false);
}

PointN apply_homothety(const HomotheticMap& h, const PointN& p) {
  if (p.size() != h.dimension())
    throw DimensionMismatch("point of dimension " + std::to_string(p.size()) + " for map of dimension " +
                            std::to_string(h.dimension()));
  PointN out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[i] = h.translation()[i] + h.lambda() * p[i];
  return out;
}

CosAngle CosAngle::from_cos2(Scalar cos2) {
  if (cos2.sign() < 0 || cos2 > Scalar(1)) throw DegenerateInput("cos^2 must lie in [0, 1], got " + cos2.str());
  return CosAngle(std::move(cos2));
}

bool externally_tangent(const Circle& c1, const Circle& c2) {
  return squared_distance(c1.center(), c2.center()) == square(c1.r() + c2.r());
}

bool internally_tangent(const Circle& c1, const Circle& c2) {
  if (c1 == c2) return false;
  return squared_distance(c1.center(), c2.center()) == square(c1.r() - c2.r());
}

bool concentric(const Circle& c1, const Circle& c2) { return c1.center() == c2.center(); }

bool intersect_at_angle(const Circle& c1, const Circle& c2, const CosAngle& a) {
  if (c1 == c2) return false;
  const Scalar d2 = squared_distance(c1.center(), c2.center());
  if (d2 < square(c1.r() - c2.r()) || d2 > square(c1.r() + c2.r())) return false;
  const Scalar r1s = square(c1.r());
  const Scalar r2s = square(c2.r());
  return square(r1s + r2s - d2) == Scalar(4) * r1s * r2s * a.cos2();
}

bool line_circle_angle(const HorizontalLine& l, const Circle& c, const CosAngle& a) {
  const Scalar h2 = square(c.cy() - l.y);
  const Scalar r2 = square(c.r());
  return h2 <= r2 && h2 == r2 * a.cos2();
}

Point2 tangency_point(const Circle& c1, const Circle& c2) {
  const Scalar dx = c2.cx() - c1.cx();
  const Scalar dy = c2.cy() - c1.cy();
  if (externally_tangent(c1, c2)) {
    const Scalar t = c1.r() / (c1.r() + c2.r());
    return {c1.cx() + t * dx, c1.cy() + t * dy};
  }
  if (internally_tangent(c1, c2)) {
    const Scalar t = c1.r() / (c1.r() - c2.r());
    return {c1.cx() + t * dx, c1.cy() + t * dy};
  }
  throw NotTangent("circles are not tangent");
}

Point2 invert_point(const Point2& o, const Scalar& k2, const Point2& p) {
  const Scalar d2 = squared_distance(o, p);
  if (d2.is_zero()) throw DegenerateInput("cannot invert the center of inversion");
  const Scalar f = k2 / d2;
  return {o.x + f * (p.x - o.x), o.y + f * (p.y - o.y)};
}

Circle invert_circle(const Point2& o, const Scalar& k2, const Circle& c) {
  if (k2.sign() <= 0) throw DegenerateInput("inversion power must be positive");
  const Scalar power = squared_distance(o, c.center()) - square(c.r());
  if (power.is_zero()) throw CenterOnCircle("inversion center lies on the circle");
  const Scalar f = k2 / power;
  return Circle(o.x + f * (c.cx() - o.x), o.y + f * (c.cy() - o.y), abs(f) * c.r());
}

Circle invert_line(const Point2& o, const Scalar& k2, const HorizontalLine& l) {
  if (k2.sign() <= 0) throw DegenerateInput("inversion power must be positive");
  const Scalar gap = l.y - o.y;
  if (gap.is_zero()) throw CenterOnLine("inversion center lies on the line");
  const Scalar offset = k2 / (Scalar(2) * gap);
  return Circle(o.x, o.y + offset, abs(offset));
}

std::vector<Point2> rational_points_on(const Circle& c) {
  const Scalar& r = c.r();
  const Scalar three_fifths = Scalar(3, 5) * r;
  const Scalar four_fifths = Scalar(4, 5) * r;
  return {
      {c.cx() + r, c.cy()},
      {c.cx(), c.cy() + r},
      {c.cx() - r, c.cy()},
      {c.cx(), c.cy() - r},
      {c.cx() + three_fifths, c.cy() + four_fifths},
      {c.cx() - four_fifths, c.cy() - three_fifths},
  };
}

Rotation::Rotation(Scalar c, Scalar s) : c_(std::move(c)), s_(std::move(s)) {
  if (square(c_) + square(s_) != Scalar(1)) throw DegenerateInput("rotation vector is not a unit vector");
}

Rotation Rotation::from_half_tangent(const Scalar& t) {
  const Scalar t2 = square(t);
  const Scalar den = Scalar(1) + t2;
  return {(Scalar(1) - t2) / den, Scalar(2) * t / den};
}

Point2 Rotation::apply(const Point2& p) const { return {c_ * p.x - s_ * p.y, s_ * p.x + c_ * p.y}; }

Circle Rotation::apply(const Circle& circle) const {
  const Point2 q = apply(circle.center());
  return Circle(q.x, q.y, circle.r());
}

Scalar HalfTangentSequence::next() {
  // Walk p/q with p + q = sum_, p from 0 upward, skipping non-reduced pairs.
  for (;;) {
    if (p_ > sum_ - 1) {
      ++sum_;
      p_ = 0;
    }
    const long p = p_++;
    const long q = sum_ - p;
    if (q <= 0) continue;
    if (std::gcd(p, q) != 1) continue;
    if (p == 0 && q != 1) continue;
    return Scalar(p, q);
  }
}

}  // namespace circlekit::geom
