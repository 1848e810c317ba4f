#include "melsolid/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

namespace melsolid {

SolidMesh synthetic_mesh(const FaceShape& shape) {
  shape.validate();
  if (!(shape.lambda > 1.0))
    raise(ErrorCode::OutOfRange, "synthetic solid needs lambda > 1");
  return truncate(build_rhombohedron(shape.alpha_deg), shape.lambda);
}

Annotation synthesize_annotation(const FaceShape& shape, const Camera& camera,
                                 double noise_sigma, std::uint64_t seed) {
  camera.validate();
  if (noise_sigma < 0.0) raise(ErrorCode::OutOfRange, "noise sigma must be >= 0");
  const SolidMesh mesh = synthetic_mesh(shape);

  Annotation a;
  a.width = camera.width > 0.0 ? camera.width : 1000.0;
  a.height = camera.height > 0.0 ? camera.height : 1000.0;
  {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "synthetic render: alpha=%.6f lambda=%.6f sigma=%.3f seed=%llu",
                  shape.alpha_deg, shape.lambda, noise_sigma,
                  static_cast<unsigned long long>(seed));
    a.provenance = buf;
  }

  for (const auto& vertex : mesh.vertices)
    a.points[vertex.label] = project(camera, HPoint3::from_vec(vertex.pos)).affine();

  // Face cycles are emitted only for pentagons an annotator could pick:
  // clearly front-facing and with no edge collapsing in the image.
  const Vec3 solid_centroid = mesh.centroid();
  for (const auto& face : mesh.faces) {
    if (!face.is_pentagon()) continue;
    Vec3 centroid{0, 0, 0}, normal{0, 0, 0};
    for (size_t k = 0; k < 5; ++k) {
      const Vec3& p = mesh.vertices[face.vertices[k]].pos;
      const Vec3& q = mesh.vertices[face.vertices[(k + 1) % 5]].pos;
      normal.x += (p.y - q.y) * (p.z + q.z);
      normal.y += (p.z - q.z) * (p.x + q.x);
      normal.z += (p.x - q.x) * (p.y + q.y);
      centroid = centroid + p;
    }
    centroid = centroid / 5.0;
    normal = normalized(normal);
    if (dot(normal, centroid - solid_centroid) < 0.0) normal = -normal;
    if (dot(normal, normalized(camera.eye - centroid)) < 0.05) continue;

    double min_edge_px = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < 5; ++k) {
      const Vec2& p = a.points.at(mesh.vertices[face.vertices[k]].label);
      const Vec2& q = a.points.at(mesh.vertices[face.vertices[(k + 1) % 5]].label);
      min_edge_px = std::min(min_edge_px, dist(p, q));
    }
    if (min_edge_px < 0.5) continue;

    AnnotationFace af;
    af.id = face.id;
    for (int k = 0; k < 5; ++k)
      af.labels[k] = mesh.vertices[face.vertices[k]].label;
    a.faces.push_back(std::move(af));
  }
  if (a.faces.empty())
    raise(ErrorCode::OutOfRange, "no pentagonal face is visible from this camera");

  // One triple of image segments per generator direction; the underlying
  // 3D edges are translates of one another.
  a.segment_groups.push_back(
      {"parallel-e1", "triple", {{"TL1", "L1"}, {"L2", "U3"}, {"L3", "U2"}}, {}});
  a.segment_groups.push_back(
      {"parallel-e2", "triple", {{"TL2", "L2"}, {"L3", "U1"}, {"L1", "U3"}}, {}});
  a.segment_groups.push_back(
      {"parallel-e3", "triple", {{"TL3", "L3"}, {"L1", "U2"}, {"L2", "U1"}}, {}});

  // Face diagonal L1-L2 and bottom cap edge TL1-TL2 are parallel in 3D;
  // record which side their vanishing point actually falls on.
  {
    SegmentGroup pair{"diag-bottom", "pair", {{"L1", "L2"}, {"TL1", "TL2"}}, {}};
    const int l1 = mesh.vertex_index("L1"), l2 = mesh.vertex_index("L2");
    const Vec3 direction = mesh.vertices[l2].pos - mesh.vertices[l1].pos;
    const HPoint2 vp = vanishing_point(camera, direction);
    if (!vp.is_ideal()) {
      const Vec2 centroid = (a.points.at("L1") + a.points.at("L2") +
                             a.points.at("TL1") + a.points.at("TL2")) /
                            4.0;
      pair.expected_side = vp.affine().x < centroid.x ? "left" : "right";
    }
    a.segment_groups.push_back(std::move(pair));
  }

  if (noise_sigma > 0.0) {
    std::mt19937_64 rng(seed);
    const auto gauss = [&rng]() {
      const double u1 =
          (static_cast<double>(rng()) + 1.0) / (static_cast<double>(rng.max()) + 2.0);
      const double u2 =
          static_cast<double>(rng()) / (static_cast<double>(rng.max()) + 1.0);
      return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    for (auto& [label, pixel] : a.points) {
      pixel.x += noise_sigma * gauss();
      pixel.y += noise_sigma * gauss();
    }
  }

  a.validate();
  return a;
}

}  // namespace melsolid
