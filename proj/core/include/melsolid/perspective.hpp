#pragma once

#include <string>

#include "melsolid/projective.hpp"
#include "melsolid/solid.hpp"
#include "melsolid/vec.hpp"

namespace melsolid {

/// Central-projection viewpoint and picture plane, plus the pixel map.
/// Image convention: pixel y points down; the principal point is at
/// (offset_x, offset_y).
struct Camera {
  Vec3 eye{0, 0, 0};
  Vec3 look{0, 0, -1};  // unit
  Vec3 up{0, 0, 1};     // unit, not parallel to look
  double focal = 1.0;   // eye-to-picture-plane distance
  double scale = 1.0;   // pixels per picture-plane unit
  double offset_x = 0.0;
  double offset_y = 0.0;
  double width = 0.0;  // image size in pixels, used by the SVG renderer
  double height = 0.0;

  void validate() const;

  /// Right-handed camera basis (right, down, look).
  Vec3 right() const { return normalized(cross(look, up)); }
  Vec3 down() const { return normalized(cross(look, right())); }

  /// World-to-camera rotation; rows are (right, down, look).
  Mat3 rotation() const;
  /// Camera with basis replaced by the given rotation (rows right/down/look).
  Camera with_rotation(const Mat3& r) const;

  static Camera look_at(const Vec3& eye, const Vec3& target, const Vec3& up,
                        double focal, double scale, double width, double height);
};

/// Central projection to pixel coordinates as a homogeneous image point.
/// Finite points must lie strictly in front of the eye (BehindEye /
/// AtEye otherwise); ideal inputs (w = 0) map to the direction's
/// vanishing point, which is itself ideal iff the direction is parallel
/// to the picture plane.
HPoint2 project(const Camera& camera, const HPoint3& p);

/// Image of the ideal point of a 3D direction. Throws ZeroDirection.
HPoint2 vanishing_point(const Camera& camera, const Vec3& direction);

struct RenderOptions {
  bool cull_backfaces = true;
  bool vertex_labels = false;
  /// Overlay the reconstructed centerline quadruple A,B,C,D on each
  /// rendered pentagonal face.
  bool centerlines = false;
};

/// Deterministic wireframe SVG (fixed 6-decimal coordinates). Convex
/// back-face culling doubles as hidden-line removal.
std::string render_svg(const SolidMesh& mesh, const Camera& camera,
                       const RenderOptions& options = {});

}  // namespace melsolid
