#pragma once

#include <vector>

#include "melsolid/error.hpp"
#include "melsolid/vec.hpp"

namespace melsolid {

/// Relative tolerance used when deciding that two homogeneous tuples are
/// scale-equivalent (coincident points, coincident lines, singular maps).
inline constexpr double kHomogeneousTol = 1e-9;

/// Homogeneous point of the projective plane, (x, y, w) with w = 0 for
/// ideal points. Scale-equivalent tuples denote the same point.
struct HPoint2 {
  double x = 0.0;
  double y = 0.0;
  double w = 1.0;

  HPoint2() = default;
  HPoint2(double x_, double y_, double w_ = 1.0) : x(x_), y(y_), w(w_) {}
  static HPoint2 from_pixel(const Vec2& p) { return {p.x, p.y, 1.0}; }

  bool is_ideal(double tol = kHomogeneousTol) const;
  bool is_zero() const { return x == 0.0 && y == 0.0 && w == 0.0; }

  /// Unit Euclidean norm, first nonzero coordinate positive.
  HPoint2 normalized() const;
  /// Affine coordinates; requires a finite point.
  Vec2 affine() const;
};

/// Homogeneous line (a, b, c); incidence is a*x + b*y + c*w = 0.
/// The ideal line is (0, 0, 1).
struct HLine2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  HLine2() = default;
  HLine2(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {}

  bool is_ideal(double tol = kHomogeneousTol) const;
  HLine2 normalized() const;
};

/// Homogeneous point of projective 3-space; finite iff w != 0.
struct HPoint3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double w = 1.0;

  HPoint3() = default;
  HPoint3(double x_, double y_, double z_, double w_ = 1.0)
      : x(x_), y(y_), z(z_), w(w_) {}
  static HPoint3 from_vec(const Vec3& v) { return {v.x, v.y, v.z, 1.0}; }
  static HPoint3 direction(const Vec3& v) { return {v.x, v.y, v.z, 0.0}; }

  bool is_ideal(double tol = kHomogeneousTol) const;
  Vec3 affine() const;
};

/// Plane projective transformation given by a nonsingular 3x3 matrix.
struct Homography2 {
  Mat3 m;

  static Homography2 identity() { return {Mat3::identity()}; }
};

/// Incidence residual |l^ . p^| with both tuples normalized to unit
/// Euclidean norm. Zero iff the point lies on the line; scale-free.
double incidence_residual(const HLine2& l, const HPoint2& p);

/// Sine of the angle between the unit-normalized tuples; zero iff
/// scale-equivalent. The metric behind approx_equal.
double separation(const HPoint2& p, const HPoint2& q);
double separation(const HLine2& l, const HLine2& m);

bool approx_equal(const HPoint2& p, const HPoint2& q, double tol = kHomogeneousTol);
bool approx_equal(const HLine2& l, const HLine2& m, double tol = kHomogeneousTol);

/// Line through two distinct points. Throws CoincidentPoints when the
/// points are scale-equivalent within tolerance.
HLine2 join(const HPoint2& p, const HPoint2& q);

/// Intersection of two distinct lines; ideal when the lines are parallel.
/// Throws CoincidentLines when the lines are scale-equivalent.
HPoint2 meet(const HLine2& l, const HLine2& m);

/// Cross ratio value; infinity is an explicit variant, never an overflow.
struct CrossRatio {
  double value = 0.0;
  bool infinite = false;

  static CrossRatio finite(double v) { return {v, false}; }
  static CrossRatio infinity() { return {0.0, true}; }
};

struct CrossRatioOptions {
  /// Absolute collinearity tolerance, in the units of the input
  /// coordinates (pixels for measured data).
  double collinearity_tol_abs = 0.0;
  /// Relative collinearity tolerance, scaled by the point spread.
  double collinearity_tol_rel = 1e-9;
};

/// Signed cross ratio of four collinear points, x(ABCD) = (AC/BC)(BD/AD)
/// with signed parameters along the common line. Computed from 2x2
/// determinants of the homogeneous coordinates, so ideal points are
/// handled uniformly. For A,B,C,D in that order on the line the value
/// matches the unsigned distance formula.
///
/// Exactly one coincident pair yields the limit value: {A,B} or {C,D}
/// give 1, {A,C} or {B,D} give 0, {B,C} or {A,D} give the infinite
/// variant. Three or more coincident points throw DegenerateQuadruple;
/// points off a common line throw NotCollinear.
CrossRatio cross_ratio(const HPoint2& a, const HPoint2& b, const HPoint2& c,
                       const HPoint2& d, const CrossRatioOptions& opts = {});

/// h . p as homogeneous coordinates. Throws SingularHomography when
/// |det h| is below tolerance relative to the matrix norm.
HPoint2 apply_homography(const Homography2& h, const HPoint2& p);

/// Maximum perpendicular distance from the (finite) points to their
/// total-least-squares line, in input units. Zero iff exactly collinear.
/// Requires at least 3 finite points; throws TooFewPoints otherwise.
double collinearity_defect(const std::vector<HPoint2>& points);

}  // namespace melsolid
