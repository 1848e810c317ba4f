#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "melsolid/projective.hpp"
#include "melsolid/vec.hpp"

namespace melsolid {

/// Shape parameters of the solid: acute rhombus angle alpha (degrees) and
/// centerline cross ratio lambda. lambda = 1 is the untruncated limit.
struct FaceShape {
  double alpha_deg = 0.0;
  double lambda = 1.0;

  /// Throws OutOfRange unless 0 < alpha <= 90 and lambda >= 1.
  void validate() const;
};

/// Truncation ratio r = BC/AC = 1/(2*lambda - 1), in (0, 1].
double truncation_ratio(double lambda);

/// Inverse of truncation_ratio: lambda = (1 + 1/r) / 2 for r in (0, 1].
double cross_ratio_of_truncation(double r);

/// Pentagonal face in canonical planar coordinates: rhombus center at the
/// origin, apex up, unit side. Vertex order: left, truncation-left,
/// truncation-right, right, bottom.
struct PentagonFace {
  std::array<Vec2, 5> vertices;

  const Vec2& left() const { return vertices[0]; }
  const Vec2& trunc_left() const { return vertices[1]; }
  const Vec2& trunc_right() const { return vertices[2]; }
  const Vec2& right() const { return vertices[3]; }
  const Vec2& bottom() const { return vertices[4]; }
};

/// Canonical pentagon for the given shape. Half-diagonals are
/// w = sin(alpha/2), h = cos(alpha/2); the truncation edge sits at height
/// r*h with half-width (1-r)*w.
PentagonFace pentagon_vertices(const FaceShape& shape);

/// Same construction parameterized by the truncation ratio directly
/// (r = 0, the cut through the center, is admitted here).
PentagonFace pentagon_vertices(double alpha_deg, double r);

/// The centerline quadruple of the canonical pentagon: A at the rhombus
/// apex, B at the truncation point, C at the center, D at the bottom.
/// cross_ratio(A,B,C,D) equals the shape's lambda.
std::array<HPoint2, 4> pentagon_centerline_quadruple(const FaceShape& shape);

/// The golden face shape (2*arctan(phi/2) degrees, phi).
FaceShape golden_pentagon();

/// Intersection of the 45-degree ray from the rhombus center with the
/// rhombus edge, in the golden-rectangle frame (half-diagonals phi/2
/// horizontal and 1 vertical). Both coordinates equal phi/(2+phi) = 1/sqrt(5),
/// which is the golden truncation ratio BC/AC.
Vec2 golden_ray_intersection();

/// Truncation ratio r = 1 - 2*cos(alpha) that makes the pentagon
/// concyclic (all five vertices on the circle through the left, right and
/// bottom vertices). Valid for 60 <= alpha <= 90 degrees.
double inscribed_truncation_ratio(double alpha_deg);

/// Ratios quantifying how close MacGillavry's 78-degree / 0.45 face is to
/// the golden face: tan(39 deg)/(phi/2) and 0.45*sqrt(5).
struct GoldenProximity {
  double half_width_ratio;
  double truncation_height_ratio;
};
GoldenProximity golden_proximity();

struct MeshVertex {
  std::string label;
  Vec3 pos;
};

struct MeshFace {
  std::string id;
  std::vector<int> vertices;  // indices into SolidMesh::vertices, ordered cycle

  bool is_pentagon() const { return vertices.size() == 5; }
};

/// Labeled polyhedron mesh. Untruncated: 8 vertices (B, T, L1-3, U1-3),
/// 6 rhombic faces (R12,R23,R31 at the bottom apex, S12,S23,S31 at the
/// top). Truncated: 12 vertices (TL1-3, TU1-3 replace the apexes),
/// 6 pentagons (P12..,Q12..) and 2 triangle caps (CB, CT).
struct SolidMesh {
  std::vector<MeshVertex> vertices;
  std::vector<MeshFace> faces;
  double alpha_deg = 0.0;
  double lambda = 1.0;
  bool truncated = false;
  Vec3 e1, e2, e3;     // unit generators
  double cut_t = 0.0;  // apex-edge cut fraction when truncated

  int vertex_index(std::string_view label) const;  // -1 when absent
  const MeshFace* find_face(std::string_view id) const;
  /// Unique undirected edges as index pairs (i < j), sorted.
  std::vector<std::pair<int, int>> edges() const;
  Vec3 centroid() const;
};

/// Rhombohedron (trigonal trapezohedron) with six congruent rhombi of
/// acute angle alpha, unit edges, main diagonal along +z, bottom apex at
/// the origin. The generator polar angle beta satisfies
/// cos^2(beta) = (2*cos(alpha) + 1)/3, so alpha must be below 120 degrees.
SolidMesh build_rhombohedron(double alpha_deg);

/// Crops congruent tetrahedra off both apexes by horizontal planes,
/// cutting each apex edge at fraction t = (2*lambda-2)/(2*lambda-1) from
/// the apex. Requires an untruncated mesh and lambda > 1.
SolidMesh truncate(const SolidMesh& mesh, double lambda);

/// Cross ratio of the centerline quadruple of a pentagonal face,
/// reconstructed inside the face plane: A = meet of the extended cropped
/// sides, C = meet of the diagonals, B = meet of centerline and
/// truncation edge, D = the far vertex.
double face_cross_ratio_3d(const SolidMesh& mesh, std::string_view face_id);

/// Plain-text mesh export (see docs/formats.md for the schema).
std::string mesh_to_text(const SolidMesh& mesh);

}  // namespace melsolid
