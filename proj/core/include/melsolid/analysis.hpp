#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "melsolid/annotation.hpp"
#include "melsolid/projective.hpp"

namespace melsolid {

struct MeasureOptions {
  /// Collinearity gate for measured pixel quadruples.
  double collinearity_tol_px = 0.5;
  /// Apex reconstruction is rejected when the meet of the extended
  /// cropped sides has condition number above this.
  double condition_max = 1e6;
};

/// Centerline quadruple recovered from a pentagonal face image:
/// A = meet of the two extended cropped sides (may be ideal when they are
/// parallel in the image), D = bottom vertex, C = meet of line(A,D) with
/// line(left,right), B = meet of line(A,D) with the truncation edge.
struct FaceReconstruction {
  std::array<HPoint2, 4> points;  // A, B, C, D
  double apex_condition = 1.0;    // 1/sin(angle between the cropped sides)
};

FaceReconstruction reconstruct_face(const std::array<HPoint2, 5>& pentagon,
                                    const MeasureOptions& opts = {});

/// Convenience wrapper returning just (A, B, C, D).
std::array<HPoint2, 4> reconstruct_face_points(
    const std::array<HPoint2, 5>& pentagon, const MeasureOptions& opts = {});

struct FaceMeasurement {
  std::string face_id;
  HPoint2 a, b, c, d;  // image points, normalized; a may be ideal
  double lambda = 0.0;
  double collinearity_defect = 0.0;
  double apex_condition = 1.0;
};

struct MeasurementFailure {
  std::string face_id;
  ErrorCode code;
  std::string message;
};

struct MeasureSummary {
  std::vector<FaceMeasurement> faces;
  std::vector<MeasurementFailure> failures;
  double mean = 0.0;    // arithmetic mean of per-face lambda
  double spread = 0.0;  // max - min
  double stddev = 0.0;  // sample standard deviation
};

/// Per-face cross ratios and their average for every face cycle in the
/// annotation. Per-face failures are collected, not fatal; an annotation
/// with no faces at all throws BadAnnotation.
MeasureSummary measure(const Annotation& annotation, const MeasureOptions& opts = {});

struct Segment2 {
  Vec2 p0;
  Vec2 p1;
};

struct AnomalyOptions {
  /// Angular threshold, degrees: segments within this of an exact pass
  /// through the common point count as concurrent, and line pairs within
  /// this of each other count as parallel.
  double parallel_angle_deg = 0.3;
};

enum class Concurrency { ConcurrentOrdinary, ConcurrentIdeal, NonConcurrent };

struct ConcurrencyReport {
  Concurrency verdict;
  /// Normalized incidence residual |l3^ . p^| of meet(l1,l2) with l3.
  double defect = 0.0;
  /// Rotation of segment 3 about its midpoint, in degrees, needed to pass
  /// through meet(l1,l2). This is what the verdict thresholds.
  double defect_angle_deg = 0.0;
  HPoint2 meet12;
  bool meet_is_ideal = false;
};

/// Are three segment lines concurrent at a common (possibly ideal) point?
/// Throws CoincidentLines when any two input lines are scale-equivalent.
ConcurrencyReport concurrency_defect(const Segment2& s1, const Segment2& s2,
                                     const Segment2& s3,
                                     const AnomalyOptions& opts = {});

enum class Side { Left, Right };
enum class Convergence { ConvergesExpected, ConvergesOpposite, Parallel };

struct ConvergenceReport {
  Convergence verdict;
  Side expected_side;
  std::optional<Side> actual_side;  // empty when parallel
  HPoint2 meet;
  double angle_deg = 0.0;  // angle between the two segment lines
};

/// Do two segment lines expected to image parallel 3D lines converge on
/// the expected side of the image? The side is judged from the meet's
/// x-coordinate relative to the centroid of the four segment endpoints.
ConvergenceReport convergence_direction_check(const Segment2& p_seg,
                                              const Segment2& q_seg,
                                              Side expected_side,
                                              const AnomalyOptions& opts = {});

const char* to_string(Concurrency c);
const char* to_string(Convergence c);
const char* to_string(Side s);
std::optional<Side> side_from_string(const std::string& s);

}  // namespace melsolid
