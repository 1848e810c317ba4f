#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "melsolid/analysis.hpp"
#include "melsolid/solid.hpp"
#include "melsolid/synth.hpp"
#include "test_helpers.hpp"

using namespace melsolid;
using melsolid::testing::make_rng;
using melsolid::testing::random_orbit_camera;
using melsolid::testing::uniform;

namespace {

std::array<HPoint2, 5> pentagon_image(const PentagonFace& face) {
  std::array<HPoint2, 5> out;
  for (int k = 0; k < 5; ++k)
    out[k] = HPoint2{face.vertices[k].x, face.vertices[k].y, 1.0};
  return out;
}

/// Canonical pentagon mapped into a pixel frame (similarity + y flip).
void add_face(Annotation& a, const std::string& id, const FaceShape& shape,
              double scale, const Vec2& center) {
  const PentagonFace face = pentagon_vertices(shape);
  static const char* suffix[5] = {"L", "TL", "TR", "R", "D"};
  AnnotationFace af;
  af.id = id;
  for (int k = 0; k < 5; ++k) {
    const std::string label = id + "_" + suffix[k];
    a.points[label] = {center.x + scale * face.vertices[k].x,
                       center.y - scale * face.vertices[k].y};
    af.labels[k] = label;
  }
  a.faces.push_back(af);
}

}  // namespace

TEST_CASE("reconstruction of the canonical golden pentagon") {
  const auto quad = reconstruct_face_points(
      pentagon_image(pentagon_vertices(golden_pentagon())));
  const CrossRatio cr = cross_ratio(quad[0], quad[1], quad[2], quad[3]);
  REQUIRE(!cr.infinite);
  CHECK(std::abs(cr.value - kPhi) <= 1e-12);
}

TEST_CASE("reconstruction matches the pentagon's analytic quadruple") {
  auto rng = make_rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const FaceShape shape{uniform(rng, 40, 90), uniform(rng, 1.05, 4.0)};
    const auto rec = reconstruct_face(pentagon_image(pentagon_vertices(shape)));
    const auto expected = pentagon_centerline_quadruple(shape);
    for (int k = 0; k < 4; ++k)
      CHECK(separation(rec.points[k], expected[k]) <= 1e-9);
  }
}

TEST_CASE("per-face lambda is exact on a perfect synthetic render") {
  auto rng = make_rng(606);
  for (int trial = 0; trial < 20; ++trial) {
    const FaceShape shape{uniform(rng, 50, 90), uniform(rng, 1.1, 3.0)};
    const Camera cam = random_orbit_camera(rng, synthetic_mesh(shape));
    const Annotation a = synthesize_annotation(shape, cam);
    const MeasureSummary summary = measure(a);
    CHECK(summary.failures.empty());
    REQUIRE(summary.faces.size() >= 2);  // the visible pentagons
    for (const auto& m : summary.faces)
      CHECK(std::abs(m.lambda - shape.lambda) <= 1e-9);
    CHECK(std::abs(summary.mean - shape.lambda) <= 1e-9);
  }
}

TEST_CASE("golden solid under a generic camera measures phi") {
  const FaceShape g = golden_pentagon();
  const Camera cam = Camera::look_at(Vec3{4.2, 2.8, 3.1}, Vec3{0, 0, 1.0},
                                     Vec3{0, 0, 1}, 1.0, 900.0, 1000.0, 1000.0);
  const MeasureSummary summary = measure(synthesize_annotation(g, cam));
  REQUIRE(summary.faces.size() >= 2);
  for (const auto& m : summary.faces) CHECK(std::abs(m.lambda - kPhi) <= 1e-9);
}

TEST_CASE("parallel cropped sides give an ideal apex and a finite lambda") {
  const std::array<HPoint2, 5> pentagon = {
      HPoint2{0, 0}, HPoint2{0, 2}, HPoint2{2, 3}, HPoint2{2, 1}, HPoint2{1, -2}};
  const auto rec = reconstruct_face(pentagon);
  CHECK(rec.points[0].is_ideal());
  const CrossRatio cr =
      cross_ratio(rec.points[0], rec.points[1], rec.points[2], rec.points[3]);
  REQUIRE(!cr.infinite);
  CHECK(cr.value == doctest::Approx(2.25).epsilon(1e-9));
}

TEST_CASE("nearly coincident cropped sides are rejected as ill-conditioned") {
  const std::array<HPoint2, 5> pentagon = {HPoint2{0, 0}, HPoint2{1, 0},
                                           HPoint2{3, 1e-9}, HPoint2{2, 1e-9},
                                           HPoint2{1.5, -2}};
  try {
    reconstruct_face(pentagon);
    FAIL("expected IllConditioned");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllConditioned);
  }
}

TEST_CASE("measure averages per-face cross ratios") {
  Annotation a;
  a.width = 2000;
  a.height = 1200;
  add_face(a, "F1", FaceShape{78.0, 1.63}, 180.0, {300, 400});
  add_face(a, "F2", FaceShape{80.0, 1.64}, 200.0, {900, 500});
  add_face(a, "F3", FaceShape{76.0, 1.59}, 160.0, {1500, 420});
  const MeasureSummary summary = measure(a);
  REQUIRE(summary.faces.size() == 3);
  CHECK(summary.failures.empty());
  CHECK(std::abs(summary.mean - 1.62) <= 1e-12);
  CHECK(std::abs(summary.spread - 0.05) <= 1e-12);
  const double expected_stddev =
      std::sqrt((0.01 * 0.01 + 0.02 * 0.02 + 0.03 * 0.03) / 2.0);
  CHECK(summary.stddev == doctest::Approx(expected_stddev).epsilon(1e-9));
}

TEST_CASE("measure with no faces fails") {
  Annotation a;
  a.width = 100;
  a.height = 100;
  a.points["x"] = {1, 1};
  try {
    measure(a);
    FAIL("expected BadAnnotation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadAnnotation);
  }
}

TEST_CASE("per-face failures are collected, not fatal") {
  Annotation a;
  a.width = 2000;
  a.height = 1200;
  add_face(a, "good", FaceShape{78.0, 1.6111}, 180.0, {300, 400});
  // Degenerate face: the truncation edge collapses to a point.
  a.points["bad_L"] = {900, 500};
  a.points["bad_TL"] = {950, 430};
  a.points["bad_TR"] = {950, 430};
  a.points["bad_R"] = {1000, 500};
  a.points["bad_D"] = {950, 650};
  AnnotationFace bad;
  bad.id = "bad";
  bad.labels = {"bad_L", "bad_TL", "bad_TR", "bad_R", "bad_D"};
  a.faces.push_back(bad);

  const MeasureSummary summary = measure(a);
  REQUIRE(summary.faces.size() == 1);
  CHECK(summary.faces[0].face_id == "good");
  REQUIRE(summary.failures.size() == 1);
  CHECK(summary.failures[0].face_id == "bad");
}

TEST_CASE("measured lambdas are invariant under pixel similarities") {
  const FaceShape shape{72.5, 1.8};
  const Camera cam = Camera::look_at(Vec3{5, 2, 3}, Vec3{0, 0, 0.9}, Vec3{0, 0, 1},
                                     1.0, 800.0, 1000.0, 1000.0);
  const Annotation base = synthesize_annotation(shape, cam);
  const MeasureSummary before = measure(base);
  REQUIRE(before.faces.size() == 6);

  auto rng = make_rng(777);
  for (int trial = 0; trial < 20; ++trial) {
    const double theta = uniform(rng, 0, 2 * kPi);
    const double s = uniform(rng, 0.2, 4.0);
    const Vec2 t{uniform(rng, -300, 300), uniform(rng, -300, 300)};
    Annotation mapped = base;
    for (auto& [label, p] : mapped.points) {
      const Vec2 q{s * (p.x * std::cos(theta) - p.y * std::sin(theta)) + t.x,
                   s * (p.x * std::sin(theta) + p.y * std::cos(theta)) + t.y};
      p = q;
    }
    const MeasureSummary after = measure(mapped);
    REQUIRE(after.faces.size() == 6);
    for (size_t k = 0; k < 6; ++k)
      CHECK(std::abs(after.faces[k].lambda - before.faces[k].lambda) <= 1e-9);
  }
}

namespace {

Segment2 annotated_segment(const Annotation& a, const SegmentRef& ref) {
  return {a.point(ref.p0), a.point(ref.p1)};
}

}  // namespace

TEST_CASE("segments of parallel 3D edges are concurrent") {
  auto rng = make_rng(2468);
  for (int trial = 0; trial < 20; ++trial) {
    const FaceShape shape{uniform(rng, 55, 88), uniform(rng, 1.2, 2.5)};
    const Camera cam = random_orbit_camera(rng, synthetic_mesh(shape));
    const Annotation a = synthesize_annotation(shape, cam);
    for (const auto& group : a.segment_groups) {
      if (group.kind != "triple") continue;
      const ConcurrencyReport report = concurrency_defect(
          annotated_segment(a, group.segments[0]),
          annotated_segment(a, group.segments[1]),
          annotated_segment(a, group.segments[2]));
      CHECK(report.defect <= 1e-9);
      CHECK(report.verdict != Concurrency::NonConcurrent);
    }
  }
}

TEST_CASE("three mutually parallel image segments are concurrent-ideal") {
  const Segment2 s1{{0, 0}, {10, 0}};
  const Segment2 s2{{0, 5}, {10, 5}};
  const Segment2 s3{{2, 9}, {12, 9}};
  const ConcurrencyReport report = concurrency_defect(s1, s2, s3);
  CHECK(report.verdict == Concurrency::ConcurrentIdeal);
  CHECK(report.meet_is_ideal);
  CHECK(report.defect <= 1e-12);
}

TEST_CASE("a diverging third segment is non-concurrent") {
  // l and m near-parallel; n visibly rotated away from their common point.
  const Segment2 l{{100, 500}, {400, 420}};
  const Segment2 m{{120, 700}, {420, 620}};
  const Segment2 n{{90, 900}, {390, 860}};
  const ConcurrencyReport report = concurrency_defect(l, m, n);
  CHECK(report.verdict == Concurrency::NonConcurrent);
  CHECK(report.defect_angle_deg > 0.3);
}

TEST_CASE("perturbing one endpoint flips a synthetic triple to non-concurrent") {
  const FaceShape shape{78.0, 1.6111};
  const Camera cam = Camera::look_at(Vec3{5, 2.5, 3.2}, Vec3{0, 0, 1.0},
                                     Vec3{0, 0, 1}, 1.0, 900.0, 1000.0, 1000.0);
  const Annotation a = synthesize_annotation(shape, cam);
  const auto& group = a.segment_groups[0];
  REQUIRE(group.kind == "triple");
  Segment2 s1 = annotated_segment(a, group.segments[0]);
  Segment2 s2 = annotated_segment(a, group.segments[1]);
  Segment2 s3 = annotated_segment(a, group.segments[2]);
  CHECK(concurrency_defect(s1, s2, s3).verdict != Concurrency::NonConcurrent);

  const Vec2 d = s3.p1 - s3.p0;
  const Vec2 unit_normal = Vec2{-d.y, d.x} / norm(d);
  s3.p1 = s3.p1 + unit_normal * 5.0;
  CHECK(concurrency_defect(s1, s2, s3).verdict == Concurrency::NonConcurrent);
}

TEST_CASE("coincident segment lines are rejected") {
  const Segment2 s1{{0, 0}, {10, 0}};
  const Segment2 s1b{{2, 0}, {8, 0}};
  const Segment2 s3{{0, 5}, {10, 6}};
  try {
    concurrency_defect(s1, s1b, s3);
    FAIL("expected CoincidentLines");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentLines);
  }
  try {
    convergence_direction_check(s1, s1b, Side::Left);
    FAIL("expected CoincidentLines");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentLines);
  }
}

TEST_CASE("convergence direction of a synthetic diagonal/edge pair") {
  auto rng = make_rng(1357);
  int checked = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const FaceShape shape{uniform(rng, 55, 88), uniform(rng, 1.2, 2.5)};
    const Camera cam = random_orbit_camera(rng, synthetic_mesh(shape));
    const Annotation a = synthesize_annotation(shape, cam);
    for (const auto& group : a.segment_groups) {
      if (group.kind != "pair" || !group.expected_side) continue;
      const auto side = side_from_string(*group.expected_side);
      REQUIRE(side.has_value());
      const ConvergenceReport report = convergence_direction_check(
          annotated_segment(a, group.segments[0]),
          annotated_segment(a, group.segments[1]), *side);
      if (report.verdict == Convergence::Parallel) continue;  // grazing view
      CHECK(report.verdict == Convergence::ConvergesExpected);
      ++checked;
    }
  }
  CHECK(checked > 10);
}

TEST_CASE("exactly parallel image lines are classified parallel") {
  const Segment2 p{{0, 0}, {10, 2}};
  const Segment2 q{{0, 5}, {10, 7}};
  const ConvergenceReport report = convergence_direction_check(p, q, Side::Left);
  CHECK(report.verdict == Convergence::Parallel);
}

TEST_CASE("wrong-side convergence is detected") {
  // Expected to meet on the left, but the lines actually close to the right.
  const Segment2 p{{0, 0}, {10, 1}};
  const Segment2 q{{0, 5}, {10, 4.5}};
  const ConvergenceReport report = convergence_direction_check(p, q, Side::Left);
  CHECK(report.verdict == Convergence::ConvergesOpposite);
  REQUIRE(report.actual_side.has_value());
  CHECK(*report.actual_side == Side::Right);
}
