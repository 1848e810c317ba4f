#include "melsolid/solid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "melsolid/analysis.hpp"

namespace melsolid {

void FaceShape::validate() const {
  if (!(alpha_deg > 0.0 && alpha_deg <= 90.0))
    raise(ErrorCode::OutOfRange,
          "alpha must lie in (0, 90] degrees, got " + std::to_string(alpha_deg));
  if (!(lambda >= 1.0) || !std::isfinite(lambda))
    raise(ErrorCode::OutOfRange, "lambda must be >= 1, got " + std::to_string(lambda));
}

double truncation_ratio(double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda))
    raise(ErrorCode::OutOfRange, "lambda must be >= 1, got " + std::to_string(lambda));
  return 1.0 / (2.0 * lambda - 1.0);
}

double cross_ratio_of_truncation(double r) {
  if (!(r > 0.0 && r <= 1.0))
    raise(ErrorCode::OutOfRange, "truncation ratio must lie in (0, 1], got " +
                                     std::to_string(r));
  return 0.5 * (1.0 + 1.0 / r);
}

PentagonFace pentagon_vertices(double alpha_deg, double r) {
  if (!(alpha_deg > 0.0 && alpha_deg <= 90.0))
    raise(ErrorCode::OutOfRange, "alpha must lie in (0, 90] degrees");
  if (!(r >= 0.0 && r <= 1.0))
    raise(ErrorCode::OutOfRange, "truncation ratio must lie in [0, 1]");
  const double half = deg2rad(alpha_deg) / 2.0;
  const double w = std::sin(half);
  const double h = std::cos(half);
  PentagonFace f;
  f.vertices = {Vec2{-w, 0.0}, Vec2{-(1.0 - r) * w, r * h},
                Vec2{(1.0 - r) * w, r * h}, Vec2{w, 0.0}, Vec2{0.0, -h}};
  return f;
}

PentagonFace pentagon_vertices(const FaceShape& shape) {
  shape.validate();
  return pentagon_vertices(shape.alpha_deg, truncation_ratio(shape.lambda));
}

std::array<HPoint2, 4> pentagon_centerline_quadruple(const FaceShape& shape) {
  shape.validate();
  const double r = truncation_ratio(shape.lambda);
  const double h = std::cos(deg2rad(shape.alpha_deg) / 2.0);
  return {HPoint2{0.0, h}, HPoint2{0.0, r * h}, HPoint2{0.0, 0.0},
          HPoint2{0.0, -h}};
}

FaceShape golden_pentagon() {
  return {rad2deg(2.0 * std::atan(kPhi / 2.0)), kPhi};
}

Vec2 golden_ray_intersection() {
  // y = x against the edge line x/(phi/2) + y = 1.
  const double x = kPhi / (2.0 + kPhi);
  return {x, x};
}

double inscribed_truncation_ratio(double alpha_deg) {
  if (!(alpha_deg >= 60.0 && alpha_deg <= 90.0))
    raise(ErrorCode::OutOfRange,
          "no concyclic truncation outside [60, 90] degrees, got " +
              std::to_string(alpha_deg));
  // Clamp roundoff at the endpoints (cos(60 deg) is not exactly 1/2).
  return std::clamp(1.0 - 2.0 * std::cos(deg2rad(alpha_deg)), 0.0, 1.0);
}

GoldenProximity golden_proximity() {
  return {std::tan(deg2rad(39.0)) / (kPhi / 2.0), 0.45 * std::sqrt(5.0)};
}

int SolidMesh::vertex_index(std::string_view label) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i].label == label) return static_cast<int>(i);
  return -1;
}

const MeshFace* SolidMesh::find_face(std::string_view id) const {
  for (const auto& f : faces)
    if (f.id == id) return &f;
  return nullptr;
}

std::vector<std::pair<int, int>> SolidMesh::edges() const {
  std::set<std::pair<int, int>> unique;
  for (const auto& f : faces) {
    const size_t n = f.vertices.size();
    for (size_t k = 0; k < n; ++k) {
      int a = f.vertices[k];
      int b = f.vertices[(k + 1) % n];
      unique.insert({std::min(a, b), std::max(a, b)});
    }
  }
  return {unique.begin(), unique.end()};
}

Vec3 SolidMesh::centroid() const {
  Vec3 c{0, 0, 0};
  for (const auto& v : vertices) c = c + v.pos;
  return c / static_cast<double>(vertices.size());
}

SolidMesh build_rhombohedron(double alpha_deg) {
  if (!(alpha_deg > 0.0 && alpha_deg < 120.0))
    raise(ErrorCode::OutOfRange,
          "no 3D realization: alpha must lie in (0, 120) degrees, got " +
              std::to_string(alpha_deg));
  const double cos_alpha = std::cos(deg2rad(alpha_deg));
  const double cos2_beta = (2.0 * cos_alpha + 1.0) / 3.0;
  const double cos_beta = std::sqrt(cos2_beta);
  const double sin_beta = std::sqrt(1.0 - cos2_beta);

  SolidMesh mesh;
  mesh.alpha_deg = alpha_deg;
  const auto gen = [&](int k) {
    const double az = deg2rad(120.0 * k);
    return Vec3{sin_beta * std::cos(az), sin_beta * std::sin(az), cos_beta};
  };
  mesh.e1 = gen(0);
  mesh.e2 = gen(1);
  mesh.e3 = gen(2);
  const Vec3 top = mesh.e1 + mesh.e2 + mesh.e3;

  mesh.vertices = {
      {"B", {0, 0, 0}},          {"L1", mesh.e1},
      {"L2", mesh.e2},           {"L3", mesh.e3},
      {"U1", top - mesh.e1},     {"U2", top - mesh.e2},
      {"U3", top - mesh.e3},     {"T", top},
  };
  const auto idx = [&](std::string_view label) { return mesh.vertex_index(label); };
  // Bottom rhombi share the bottom apex; the far corner of pair (i,j) is U_k.
  mesh.faces = {
      {"R12", {idx("B"), idx("L1"), idx("U3"), idx("L2")}},
      {"R23", {idx("B"), idx("L2"), idx("U1"), idx("L3")}},
      {"R31", {idx("B"), idx("L3"), idx("U2"), idx("L1")}},
      {"S12", {idx("T"), idx("U1"), idx("L3"), idx("U2")}},
      {"S23", {idx("T"), idx("U2"), idx("L1"), idx("U3")}},
      {"S31", {idx("T"), idx("U3"), idx("L2"), idx("U1")}},
  };
  return mesh;
}

SolidMesh truncate(const SolidMesh& mesh, double lambda) {
  if (mesh.truncated)
    raise(ErrorCode::AlreadyTruncated, "mesh is already truncated");
  if (mesh.vertices.empty()) raise(ErrorCode::EmptyMesh, "empty mesh");
  if (!(lambda > 1.0) || !std::isfinite(lambda))
    raise(ErrorCode::OutOfRange,
          "truncation needs lambda > 1, got " + std::to_string(lambda));

  const double t = (2.0 * lambda - 2.0) / (2.0 * lambda - 1.0);
  const Vec3 top = mesh.e1 + mesh.e2 + mesh.e3;
  const Vec3 e[3] = {mesh.e1, mesh.e2, mesh.e3};

  SolidMesh out;
  out.alpha_deg = mesh.alpha_deg;
  out.lambda = lambda;
  out.truncated = true;
  out.e1 = mesh.e1;
  out.e2 = mesh.e2;
  out.e3 = mesh.e3;
  out.cut_t = t;

  for (int i = 0; i < 3; ++i)
    out.vertices.push_back({"L" + std::to_string(i + 1), e[i]});
  for (int i = 0; i < 3; ++i)
    out.vertices.push_back({"U" + std::to_string(i + 1), top - e[i]});
  for (int i = 0; i < 3; ++i)
    out.vertices.push_back({"TL" + std::to_string(i + 1), e[i] * t});
  for (int i = 0; i < 3; ++i)
    out.vertices.push_back({"TU" + std::to_string(i + 1), top - e[i] * t});

  const auto idx = [&](const std::string& label) { return out.vertex_index(label); };
  const auto pent = [&](const char* prefix, int i, int j, int k,
                        const char* ring, const char* cut, const char* far_ring) {
    const auto n = [](const char* base, int v) {
      return std::string(base) + std::to_string(v);
    };
    MeshFace f;
    f.id = std::string(prefix) + std::to_string(i) + std::to_string(j);
    // Canonical pentagon order: left, trunc-left, trunc-right, right, bottom.
    f.vertices = {idx(n(ring, i)), idx(n(cut, i)), idx(n(cut, j)),
                  idx(n(ring, j)), idx(n(far_ring, k))};
    return f;
  };
  out.faces = {
      pent("P", 1, 2, 3, "L", "TL", "U"),
      pent("P", 2, 3, 1, "L", "TL", "U"),
      pent("P", 3, 1, 2, "L", "TL", "U"),
      pent("Q", 1, 2, 3, "U", "TU", "L"),
      pent("Q", 2, 3, 1, "U", "TU", "L"),
      pent("Q", 3, 1, 2, "U", "TU", "L"),
      {"CB", {idx("TL1"), idx("TL2"), idx("TL3")}},
      {"CT", {idx("TU1"), idx("TU2"), idx("TU3")}},
  };
  return out;
}

double face_cross_ratio_3d(const SolidMesh& mesh, std::string_view face_id) {
  const MeshFace* face = mesh.find_face(face_id);
  if (face == nullptr)
    raise(ErrorCode::NotPentagon, "no face with id '" + std::string(face_id) + "'");
  if (!face->is_pentagon())
    raise(ErrorCode::NotPentagon,
          "face '" + std::string(face_id) + "' is not a pentagon");

  // In-plane chart of the face.
  const Vec3 origin = mesh.vertices[face->vertices[0]].pos;
  std::array<Vec3, 5> p;
  for (int k = 0; k < 5; ++k)
    p[k] = mesh.vertices[face->vertices[k]].pos - origin;
  const Vec3 u = normalized(p[3]);  // left -> right
  Vec3 n = cross(p[3], p[4]);
  if (norm(n) == 0.0) n = cross(p[3], p[1]);
  const Vec3 v = normalized(cross(normalized(n), u));

  std::array<HPoint2, 5> q;
  for (int k = 0; k < 5; ++k) q[k] = HPoint2{dot(p[k], u), dot(p[k], v), 1.0};

  const auto abcd = reconstruct_face_points(q);
  const CrossRatio cr = cross_ratio(abcd[0], abcd[1], abcd[2], abcd[3]);
  if (cr.infinite)
    raise(ErrorCode::OutOfRange, "degenerate face: infinite cross ratio");
  return cr.value;
}

std::string mesh_to_text(const SolidMesh& mesh) {
  std::ostringstream os;
  char buf[96];
  os << "melsolid-mesh 1\n";
  std::snprintf(buf, sizeof buf, "alpha %.9f\n", mesh.alpha_deg);
  os << buf;
  std::snprintf(buf, sizeof buf, "lambda %.9f\n", mesh.lambda);
  os << buf;
  os << "truncated " << (mesh.truncated ? 1 : 0) << "\n";
  os << "vertices " << mesh.vertices.size() << "\n";
  for (const auto& vtx : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "v %s %.9f %.9f %.9f\n", vtx.label.c_str(),
                  vtx.pos.x, vtx.pos.y, vtx.pos.z);
    os << buf;
  }
  os << "faces " << mesh.faces.size() << "\n";
  for (const auto& f : mesh.faces) {
    os << "f " << f.id;
    for (int vi : f.vertices) os << " " << mesh.vertices[vi].label;
    os << "\n";
  }
  return os.str();
}

}  // namespace melsolid
