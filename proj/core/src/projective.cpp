#include "melsolid/projective.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace melsolid {

namespace {

struct Triple {
  double v0, v1, v2;
};

Triple unit_triple(double v0, double v1, double v2) {
  double n = std::sqrt(v0 * v0 + v1 * v1 + v2 * v2);
  if (n == 0.0) return {0.0, 0.0, 0.0};
  v0 /= n;
  v1 /= n;
  v2 /= n;
  // Canonical sign: first nonzero coordinate positive.
  double lead = v0 != 0.0 ? v0 : (v1 != 0.0 ? v1 : v2);
  if (lead < 0.0) {
    v0 = -v0;
    v1 = -v1;
    v2 = -v2;
  }
  return {v0, v1, v2};
}

/// sin of the angle between two unit 3-tuples, i.e. |u x v|.
double sine_distance(const Triple& u, const Triple& v) {
  double cx = u.v1 * v.v2 - u.v2 * v.v1;
  double cy = u.v2 * v.v0 - u.v0 * v.v2;
  double cz = u.v0 * v.v1 - u.v1 * v.v0;
  return std::sqrt(cx * cx + cy * cy + cz * cz);
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

bool HPoint2::is_ideal(double tol) const {
  double n = std::sqrt(x * x + y * y + w * w);
  return n == 0.0 || std::abs(w) <= tol * n;
}

HPoint2 HPoint2::normalized() const {
  Triple t = unit_triple(x, y, w);
  return {t.v0, t.v1, t.v2};
}

Vec2 HPoint2::affine() const {
  if (is_ideal()) raise(ErrorCode::OutOfRange, "affine() on an ideal point");
  return {x / w, y / w};
}

bool HLine2::is_ideal(double tol) const {
  double n = std::sqrt(a * a + b * b + c * c);
  return n == 0.0 || std::hypot(a, b) <= tol * n;
}

HLine2 HLine2::normalized() const {
  Triple t = unit_triple(a, b, c);
  return {t.v0, t.v1, t.v2};
}

bool HPoint3::is_ideal(double tol) const {
  double n = std::sqrt(x * x + y * y + z * z + w * w);
  return n == 0.0 || std::abs(w) <= tol * n;
}

Vec3 HPoint3::affine() const {
  if (is_ideal()) raise(ErrorCode::OutOfRange, "affine() on an ideal 3D point");
  return {x / w, y / w, z / w};
}

double incidence_residual(const HLine2& l, const HPoint2& p) {
  Triple lu = unit_triple(l.a, l.b, l.c);
  Triple pu = unit_triple(p.x, p.y, p.w);
  return std::abs(lu.v0 * pu.v0 + lu.v1 * pu.v1 + lu.v2 * pu.v2);
}

double separation(const HPoint2& p, const HPoint2& q) {
  return sine_distance(unit_triple(p.x, p.y, p.w), unit_triple(q.x, q.y, q.w));
}

double separation(const HLine2& l, const HLine2& m) {
  return sine_distance(unit_triple(l.a, l.b, l.c), unit_triple(m.a, m.b, m.c));
}

bool approx_equal(const HPoint2& p, const HPoint2& q, double tol) {
  return separation(p, q) <= tol;
}

bool approx_equal(const HLine2& l, const HLine2& m, double tol) {
  return separation(l, m) <= tol;
}

HLine2 join(const HPoint2& p, const HPoint2& q) {
  if (p.is_zero() || q.is_zero())
    raise(ErrorCode::CoincidentPoints, "join with the zero tuple");
  if (approx_equal(p, q))
    raise(ErrorCode::CoincidentPoints, "join of scale-equivalent points");
  return {p.y * q.w - p.w * q.y, p.w * q.x - p.x * q.w, p.x * q.y - p.y * q.x};
}

HPoint2 meet(const HLine2& l, const HLine2& m) {
  if (approx_equal(l, m))
    raise(ErrorCode::CoincidentLines, "meet of scale-equivalent lines");
  return {l.b * m.c - l.c * m.b, l.c * m.a - l.a * m.c, l.a * m.b - l.b * m.a};
}

namespace {

/// Index of the coordinate to drop when reducing collinear points to the
/// line's 2D coordinate chart: the largest line coefficient.
int drop_index(const HLine2& l) {
  double aa = std::abs(l.a), ab = std::abs(l.b), ac = std::abs(l.c);
  if (aa >= ab && aa >= ac) return 0;
  if (ab >= ac) return 1;
  return 2;
}

std::array<double, 2> reduce(const HPoint2& p, int drop) {
  switch (drop) {
    case 0: return {p.y, p.w};
    case 1: return {p.x, p.w};
    default: return {p.x, p.y};
  }
}

double det2(const std::array<double, 2>& u, const std::array<double, 2>& v) {
  return u[0] * v[1] - u[1] * v[0];
}

}  // namespace

CrossRatio cross_ratio(const HPoint2& a, const HPoint2& b, const HPoint2& c,
                       const HPoint2& d, const CrossRatioOptions& opts) {
  const std::array<HPoint2, 4> pts = {a.normalized(), b.normalized(),
                                      c.normalized(), d.normalized()};

  // Coincidence bookkeeping: limits for one pair, error for three or more
  // mutually coincident points.
  bool eq[4][4] = {};
  int coincident_pairs = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      eq[i][j] = eq[j][i] = approx_equal(pts[i], pts[j]);
      if (eq[i][j]) ++coincident_pairs;
    }
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k)
        if (eq[i][j] && eq[j][k])
          raise(ErrorCode::DegenerateQuadruple, "three or more coincident points");

  if (coincident_pairs > 0) {
    // Indices: 0=A 1=B 2=C 3=D. Disjoint pairs always agree on the limit.
    if (eq[0][1] || eq[2][3]) return CrossRatio::finite(1.0);
    if (eq[0][2] || eq[1][3]) return CrossRatio::finite(0.0);
    return CrossRatio::infinity();  // {B,C} or {A,D}
  }

  // Support line through the best-separated pair.
  int si = 0, sj = 1;
  double best = -1.0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      HPoint2 cr{pts[i].y * pts[j].w - pts[i].w * pts[j].y,
                 pts[i].w * pts[j].x - pts[i].x * pts[j].w,
                 pts[i].x * pts[j].y - pts[i].y * pts[j].x};
      double sep = std::sqrt(cr.x * cr.x + cr.y * cr.y + cr.w * cr.w);
      if (sep > best) {
        best = sep;
        si = i;
        sj = j;
      }
    }
  HLine2 line = join(pts[si], pts[sj]).normalized();
  double mu = std::hypot(line.a, line.b);

  // Collinearity gate. Finite points: perpendicular distance to the
  // support line; ideal points: angle between direction and line.
  double spread = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (pts[i].is_ideal()) continue;
    for (int j = i + 1; j < 4; ++j) {
      if (pts[j].is_ideal()) continue;
      spread = std::max(spread, dist(pts[i].affine(), pts[j].affine()));
    }
  }
  const double gate =
      std::max(opts.collinearity_tol_abs, opts.collinearity_tol_rel * std::max(1.0, spread));
  for (int i = 0; i < 4; ++i) {
    if (i == si || i == sj) continue;
    if (pts[i].is_ideal()) {
      double dn = std::hypot(pts[i].x, pts[i].y);
      double sin_ang = mu > 0.0 ? std::abs(line.a * pts[i].x + line.b * pts[i].y) / (mu * dn) : 1.0;
      double ang_gate = std::max(opts.collinearity_tol_rel,
                                 gate / std::max(1.0, spread));
      if (sin_ang > ang_gate)
        raise(ErrorCode::NotCollinear,
              "ideal point off the support line (sin angle " + fmt(sin_ang) + ")");
    } else {
      double d = mu > 0.0
                     ? std::abs(line.a * pts[i].x + line.b * pts[i].y + line.c * pts[i].w) /
                           (mu * std::abs(pts[i].w))
                     : 0.0;
      if (d > gate)
        raise(ErrorCode::NotCollinear,
              "point off the support line by " + fmt(d) + " (gate " + fmt(gate) + ")");
    }
  }

  const int drop = drop_index(line);
  auto ra = reduce(pts[0], drop);
  auto rb = reduce(pts[1], drop);
  auto rc = reduce(pts[2], drop);
  auto rd = reduce(pts[3], drop);

  const double num = det2(ra, rc) * det2(rb, rd);
  const double den = det2(rb, rc) * det2(ra, rd);
  if (den == 0.0) return CrossRatio::infinity();
  return CrossRatio::finite(num / den);
}

HPoint2 apply_homography(const Homography2& h, const HPoint2& p) {
  double scale = frobenius_norm(h.m) / std::sqrt(3.0);
  if (scale == 0.0 || std::abs(det(h.m)) <= kHomogeneousTol * scale * scale * scale)
    raise(ErrorCode::SingularHomography, "matrix determinant vanishes within tolerance");
  Vec3 r = h.m * Vec3{p.x, p.y, p.w};
  return {r.x, r.y, r.z};
}

double collinearity_defect(const std::vector<HPoint2>& points) {
  std::vector<Vec2> finite;
  finite.reserve(points.size());
  for (const auto& p : points)
    if (!p.is_ideal()) finite.push_back(p.affine());
  if (finite.size() < 3)
    raise(ErrorCode::TooFewPoints, "need at least 3 finite points, got " +
                                       std::to_string(finite.size()));

  Vec2 centroid{0, 0};
  for (const auto& p : finite) centroid = centroid + p;
  centroid = centroid / static_cast<double>(finite.size());

  double sxx = 0, sxy = 0, syy = 0;
  for (const auto& p : finite) {
    Vec2 q = p - centroid;
    sxx += q.x * q.x;
    sxy += q.x * q.y;
    syy += q.y * q.y;
  }
  // Unit normal of the total-least-squares line: eigenvector of the
  // smallest eigenvalue of the scatter matrix.
  double tr = sxx + syy;
  double diff = sxx - syy;
  double disc = std::sqrt(diff * diff + 4.0 * sxy * sxy);
  double lmin = 0.5 * (tr - disc);
  Vec2 n;
  if (std::abs(sxy) > 0.0) {
    n = {lmin - syy, sxy};
  } else {
    n = sxx <= syy ? Vec2{1.0, 0.0} : Vec2{0.0, 1.0};
  }
  double nn = norm(n);
  if (nn == 0.0) n = {1.0, 0.0}; else n = n / nn;

  double defect = 0.0;
  for (const auto& p : finite)
    defect = std::max(defect, std::abs(dot(p - centroid, n)));
  return defect;
}

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::CoincidentPoints: return "CoincidentPoints";
    case ErrorCode::CoincidentLines: return "CoincidentLines";
    case ErrorCode::NotCollinear: return "NotCollinear";
    case ErrorCode::DegenerateQuadruple: return "DegenerateQuadruple";
    case ErrorCode::SingularHomography: return "SingularHomography";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::AlreadyTruncated: return "AlreadyTruncated";
    case ErrorCode::NotPentagon: return "NotPentagon";
    case ErrorCode::BehindEye: return "BehindEye";
    case ErrorCode::AtEye: return "AtEye";
    case ErrorCode::ZeroDirection: return "ZeroDirection";
    case ErrorCode::EmptyMesh: return "EmptyMesh";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::TooFewCorrespondences: return "TooFewCorrespondences";
    case ErrorCode::MissingLambda: return "MissingLambda";
    case ErrorCode::BadAnnotation: return "BadAnnotation";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

Mat3 rotation_about_axis(const Vec3& axis, double angle_rad) {
  Vec3 u = normalized(axis);
  double c = std::cos(angle_rad), s = std::sin(angle_rad), t = 1.0 - c;
  Mat3 r;
  r(0, 0) = c + u.x * u.x * t;
  r(0, 1) = u.x * u.y * t - u.z * s;
  r(0, 2) = u.x * u.z * t + u.y * s;
  r(1, 0) = u.y * u.x * t + u.z * s;
  r(1, 1) = c + u.y * u.y * t;
  r(1, 2) = u.y * u.z * t - u.x * s;
  r(2, 0) = u.z * u.x * t - u.y * s;
  r(2, 1) = u.z * u.y * t + u.x * s;
  r(2, 2) = c + u.z * u.z * t;
  return r;
}

Vec3 rotation_to_axis_angle(const Mat3& r) {
  double tr = r(0, 0) + r(1, 1) + r(2, 2);
  double cos_a = std::clamp((tr - 1.0) / 2.0, -1.0, 1.0);
  double angle = std::acos(cos_a);
  if (angle < 1e-12) return {0, 0, 0};
  if (kPi - angle < 1e-6) {
    // Near half-turn: axis from the diagonal of (R + I)/2.
    Vec3 u{std::sqrt(std::max(0.0, (r(0, 0) + 1.0) / 2.0)),
           std::sqrt(std::max(0.0, (r(1, 1) + 1.0) / 2.0)),
           std::sqrt(std::max(0.0, (r(2, 2) + 1.0) / 2.0))};
    if (r(0, 1) + r(1, 0) < 0) u.y = -u.y;
    if (r(0, 2) + r(2, 0) < 0) u.z = -u.z;
    return normalized(u) * angle;
  }
  Vec3 axis{r(2, 1) - r(1, 2), r(0, 2) - r(2, 0), r(1, 0) - r(0, 1)};
  return normalized(axis) * angle;
}

}  // namespace melsolid
