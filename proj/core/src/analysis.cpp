#include "melsolid/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace melsolid {

FaceReconstruction reconstruct_face(const std::array<HPoint2, 5>& pentagon,
                                    const MeasureOptions& opts) {
  const HPoint2& left = pentagon[0];
  const HPoint2& trunc_left = pentagon[1];
  const HPoint2& trunc_right = pentagon[2];
  const HPoint2& right = pentagon[3];
  const HPoint2& bottom = pentagon[4];

  const HLine2 side_left = join(left, trunc_left);
  const HLine2 side_right = join(right, trunc_right);

  const double sep = separation(side_left, side_right);
  const double condition = sep > 0.0 ? 1.0 / sep : std::numeric_limits<double>::infinity();
  if (!(condition <= opts.condition_max))
    raise(ErrorCode::IllConditioned,
          "extended cropped sides are nearly the same line (condition " +
              std::to_string(condition) + ")");

  FaceReconstruction rec;
  rec.apex_condition = condition;
  const HPoint2 apex = meet(side_left, side_right);  // may be ideal
  const HLine2 centerline = join(apex, bottom);
  const HPoint2 center = meet(centerline, join(left, right));
  const HPoint2 trunc_point = meet(centerline, join(trunc_left, trunc_right));
  rec.points = {apex.normalized(), trunc_point.normalized(), center.normalized(),
                bottom.normalized()};
  return rec;
}

std::array<HPoint2, 4> reconstruct_face_points(
    const std::array<HPoint2, 5>& pentagon, const MeasureOptions& opts) {
  return reconstruct_face(pentagon, opts).points;
}

MeasureSummary measure(const Annotation& annotation, const MeasureOptions& opts) {
  annotation.validate();
  if (annotation.faces.empty())
    raise(ErrorCode::BadAnnotation, "annotation has no faces to measure");

  MeasureSummary summary;
  for (const auto& face : annotation.faces) {
    try {
      std::array<HPoint2, 5> pentagon;
      for (size_t k = 0; k < 5; ++k)
        pentagon[k] = HPoint2::from_pixel(annotation.point(face.labels[k]));
      const FaceReconstruction rec = reconstruct_face(pentagon, opts);

      std::vector<HPoint2> finite;
      for (const auto& p : rec.points)
        if (!p.is_ideal()) finite.push_back(p);
      const double defect =
          finite.size() >= 3 ? collinearity_defect(finite) : 0.0;

      const CrossRatio cr =
          cross_ratio(rec.points[0], rec.points[1], rec.points[2], rec.points[3],
                      {.collinearity_tol_abs = opts.collinearity_tol_px,
                       .collinearity_tol_rel = 1e-9});
      if (cr.infinite)
        raise(ErrorCode::DegenerateQuadruple,
              "face yields an infinite cross ratio");

      summary.faces.push_back({face.id, rec.points[0], rec.points[1],
                               rec.points[2], rec.points[3], cr.value, defect,
                               rec.apex_condition});
    } catch (const Error& e) {
      summary.failures.push_back({face.id, e.code(), e.what()});
    }
  }

  const size_t count = summary.faces.size();
  if (count > 0) {
    double lo = summary.faces[0].lambda, hi = lo, sum = 0.0;
    for (const auto& m : summary.faces) {
      lo = std::min(lo, m.lambda);
      hi = std::max(hi, m.lambda);
      sum += m.lambda;
    }
    summary.mean = sum / static_cast<double>(count);
    summary.spread = hi - lo;
    if (count > 1) {
      double ss = 0.0;
      for (const auto& m : summary.faces) {
        const double d = m.lambda - summary.mean;
        ss += d * d;
      }
      summary.stddev = std::sqrt(ss / static_cast<double>(count - 1));
    }
  }
  return summary;
}

namespace {

HLine2 segment_line(const Segment2& s) {
  return join(HPoint2::from_pixel(s.p0), HPoint2::from_pixel(s.p1));
}

double angle_between_lines_deg(const HLine2& l, const HLine2& m) {
  // Line (a, b, c) has direction (b, -a).
  const double nl = std::hypot(l.a, l.b);
  const double nm = std::hypot(m.a, m.b);
  if (nl == 0.0 || nm == 0.0) return 0.0;
  const double s = std::abs(l.a * m.b - l.b * m.a) / (nl * nm);
  return rad2deg(std::asin(std::clamp(s, 0.0, 1.0)));
}

/// Rotation (degrees) of the segment about its midpoint needed to pass
/// through the target point; ideal targets ask for parallelism.
double aim_angle_deg(const Segment2& seg, const HPoint2& target) {
  const Vec2 mid = (seg.p0 + seg.p1) / 2.0;
  const Vec2 d = seg.p1 - seg.p0;
  Vec2 want;
  if (target.is_ideal()) {
    want = {target.x, target.y};
  } else {
    want = target.affine() - mid;
  }
  const double nd = norm(d);
  const double nw = norm(want);
  if (nd == 0.0 || nw == 0.0) return 0.0;
  const double s = std::abs(cross(d, want)) / (nd * nw);
  return rad2deg(std::asin(std::clamp(s, 0.0, 1.0)));
}

}  // namespace

ConcurrencyReport concurrency_defect(const Segment2& s1, const Segment2& s2,
                                     const Segment2& s3,
                                     const AnomalyOptions& opts) {
  const HLine2 l1 = segment_line(s1);
  const HLine2 l2 = segment_line(s2);
  const HLine2 l3 = segment_line(s3);
  if (approx_equal(l1, l3) || approx_equal(l2, l3))
    raise(ErrorCode::CoincidentLines, "two of the three segment lines coincide");

  ConcurrencyReport report;
  report.meet12 = meet(l1, l2).normalized();  // throws CoincidentLines for l1 ~ l2
  report.defect = incidence_residual(l3, report.meet12);
  report.meet_is_ideal = report.meet12.is_ideal() ||
                         angle_between_lines_deg(l1, l2) <= opts.parallel_angle_deg;
  report.defect_angle_deg = aim_angle_deg(s3, report.meet12);
  if (report.defect_angle_deg <= opts.parallel_angle_deg) {
    report.verdict = report.meet_is_ideal ? Concurrency::ConcurrentIdeal
                                          : Concurrency::ConcurrentOrdinary;
  } else {
    report.verdict = Concurrency::NonConcurrent;
  }
  return report;
}

ConvergenceReport convergence_direction_check(const Segment2& p_seg,
                                              const Segment2& q_seg,
                                              Side expected_side,
                                              const AnomalyOptions& opts) {
  const HLine2 lp = segment_line(p_seg);
  const HLine2 lq = segment_line(q_seg);

  ConvergenceReport report;
  report.expected_side = expected_side;
  report.angle_deg = angle_between_lines_deg(lp, lq);
  report.meet = meet(lp, lq).normalized();  // throws CoincidentLines

  if (report.meet.is_ideal() || report.angle_deg <= opts.parallel_angle_deg) {
    report.verdict = Convergence::Parallel;
    return report;
  }

  const Vec2 centroid =
      (p_seg.p0 + p_seg.p1 + q_seg.p0 + q_seg.p1) / 4.0;
  const Side actual =
      report.meet.affine().x < centroid.x ? Side::Left : Side::Right;
  report.actual_side = actual;
  report.verdict = actual == expected_side ? Convergence::ConvergesExpected
                                           : Convergence::ConvergesOpposite;
  return report;
}

const char* to_string(Concurrency c) {
  switch (c) {
    case Concurrency::ConcurrentOrdinary: return "concurrent-ordinary";
    case Concurrency::ConcurrentIdeal: return "concurrent-ideal";
    case Concurrency::NonConcurrent: return "non-concurrent";
  }
  return "?";
}

const char* to_string(Convergence c) {
  switch (c) {
    case Convergence::ConvergesExpected: return "converges-expected";
    case Convergence::ConvergesOpposite: return "converges-opposite";
    case Convergence::Parallel: return "parallel";
  }
  return "?";
}

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

std::optional<Side> side_from_string(const std::string& s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  return std::nullopt;
}

}  // namespace melsolid
