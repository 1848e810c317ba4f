#include "melsolid/perspective.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <vector>

#include "melsolid/analysis.hpp"

namespace melsolid {

namespace {
constexpr double kDepthEps = 1e-12;

std::string fnum(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}
}  // namespace

void Camera::validate() const {
  if (std::abs(norm(look) - 1.0) > 1e-6)
    raise(ErrorCode::OutOfRange, "camera look direction must be unit length");
  if (std::abs(norm(up) - 1.0) > 1e-6)
    raise(ErrorCode::OutOfRange, "camera up direction must be unit length");
  if (norm(cross(look, up)) <= 1e-9)
    raise(ErrorCode::OutOfRange, "camera up is parallel to look");
  if (!(focal > 0.0))
    raise(ErrorCode::OutOfRange, "camera focal must be positive");
  if (scale == 0.0) raise(ErrorCode::OutOfRange, "camera scale must be nonzero");
}

Mat3 Camera::rotation() const {
  Mat3 r;
  const Vec3 rows[3] = {right(), down(), look};
  for (int i = 0; i < 3; ++i) {
    r(i, 0) = rows[i].x;
    r(i, 1) = rows[i].y;
    r(i, 2) = rows[i].z;
  }
  return r;
}

Camera Camera::with_rotation(const Mat3& r) const {
  Camera c = *this;
  c.look = normalized(r.row(2));
  c.up = normalized(-r.row(1));
  return c;
}

Camera Camera::look_at(const Vec3& eye, const Vec3& target, const Vec3& up,
                       double focal, double scale, double width, double height) {
  Camera c;
  c.eye = eye;
  c.look = normalized(target - eye);
  // Orthogonalize up against look.
  Vec3 u = up - c.look * dot(up, c.look);
  if (norm(u) <= 1e-12)
    raise(ErrorCode::OutOfRange, "look-at up direction is parallel to look");
  c.up = normalized(u);
  c.focal = focal;
  c.scale = scale;
  c.width = width;
  c.height = height;
  c.offset_x = width / 2.0;
  c.offset_y = height / 2.0;
  c.validate();
  return c;
}

HPoint2 project(const Camera& camera, const HPoint3& p) {
  const Vec3 r = camera.right();
  const Vec3 dwn = camera.down();
  const double sf = camera.scale * camera.focal;

  if (p.is_ideal()) {
    const Vec3 d{p.x, p.y, p.z};
    const double depth = dot(d, camera.look);
    return {sf * dot(d, r) + camera.offset_x * depth,
            sf * dot(d, dwn) + camera.offset_y * depth, depth};
  }

  const Vec3 q = p.affine() - camera.eye;
  const double qn = norm(q);
  if (qn <= kDepthEps) raise(ErrorCode::AtEye, "point coincides with the eye");
  const double depth = dot(q, camera.look);
  if (depth <= kDepthEps * qn)
    raise(ErrorCode::BehindEye, "point is not strictly in front of the eye");
  return {sf * dot(q, r) + camera.offset_x * depth,
          sf * dot(q, dwn) + camera.offset_y * depth, depth};
}

HPoint2 vanishing_point(const Camera& camera, const Vec3& direction) {
  if (norm(direction) == 0.0)
    raise(ErrorCode::ZeroDirection, "vanishing point of the zero direction");
  return project(camera, HPoint3::direction(direction));
}

namespace {

struct FaceGeom {
  Vec3 normal;  // outward
  Vec3 point;
};

FaceGeom face_geometry(const SolidMesh& mesh, const MeshFace& face, const Vec3& solid_centroid) {
  // Newell normal; orientation fixed outward from the solid centroid.
  Vec3 n{0, 0, 0};
  const size_t count = face.vertices.size();
  Vec3 fc{0, 0, 0};
  for (size_t i = 0; i < count; ++i) {
    const Vec3& a = mesh.vertices[face.vertices[i]].pos;
    const Vec3& b = mesh.vertices[face.vertices[(i + 1) % count]].pos;
    n.x += (a.y - b.y) * (a.z + b.z);
    n.y += (a.z - b.z) * (a.x + b.x);
    n.z += (a.x - b.x) * (a.y + b.y);
    fc = fc + a;
  }
  fc = fc / static_cast<double>(count);
  if (dot(n, fc - solid_centroid) < 0.0) n = -n;
  return {normalized(n), fc};
}

}  // namespace

std::string render_svg(const SolidMesh& mesh, const Camera& camera,
                       const RenderOptions& options) {
  if (mesh.vertices.empty()) raise(ErrorCode::EmptyMesh, "cannot render an empty mesh");
  camera.validate();
  if (!(camera.width > 0.0 && camera.height > 0.0))
    raise(ErrorCode::OutOfRange, "camera image size must be positive for rendering");

  std::vector<Vec2> px(mesh.vertices.size());
  for (size_t i = 0; i < mesh.vertices.size(); ++i)
    px[i] = project(camera, HPoint3::from_vec(mesh.vertices[i].pos)).affine();

  const Vec3 solid_centroid = mesh.centroid();
  std::vector<bool> face_visible(mesh.faces.size(), true);
  if (options.cull_backfaces) {
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
      const FaceGeom g = face_geometry(mesh, mesh.faces[f], solid_centroid);
      face_visible[f] = dot(g.normal, camera.eye - g.point) > 0.0;
    }
  }

  // An edge is drawn when any adjacent face is visible (exact for convex solids).
  std::map<std::pair<int, int>, bool> edge_drawn;
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    const auto& verts = mesh.faces[f].vertices;
    for (size_t k = 0; k < verts.size(); ++k) {
      const int a = verts[k];
      const int b = verts[(k + 1) % verts.size()];
      auto key = std::make_pair(std::min(a, b), std::max(a, b));
      edge_drawn[key] = edge_drawn[key] || face_visible[f];
    }
  }

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fnum(camera.width)
     << "\" height=\"" << fnum(camera.height) << "\" viewBox=\"0 0 "
     << fnum(camera.width) << " " << fnum(camera.height) << "\">\n";

  os << "<g class=\"edges\" stroke=\"#1a1a1a\" stroke-width=\"1.5\" fill=\"none\">\n";
  for (const auto& [key, drawn] : edge_drawn) {
    if (!drawn) continue;
    const Vec2& a = px[key.first];
    const Vec2& b = px[key.second];
    os << "<line class=\"edge\" data-edge=\"" << mesh.vertices[key.first].label
       << "-" << mesh.vertices[key.second].label << "\" x1=\"" << fnum(a.x)
       << "\" y1=\"" << fnum(a.y) << "\" x2=\"" << fnum(b.x) << "\" y2=\""
       << fnum(b.y) << "\"/>\n";
  }
  os << "</g>\n";

  if (options.centerlines) {
    os << "<g class=\"centerlines\" stroke=\"#b03030\" stroke-width=\"0.8\" "
          "fill=\"#b03030\" font-size=\"11\">\n";
    for (size_t f = 0; f < mesh.faces.size(); ++f) {
      if (!mesh.faces[f].is_pentagon() || !face_visible[f]) continue;
      std::array<HPoint2, 5> q;
      for (int k = 0; k < 5; ++k)
        q[k] = HPoint2::from_pixel(px[mesh.faces[f].vertices[k]]);
      const auto abcd = reconstruct_face_points(q);
      const Vec2 d = abcd[3].affine();
      Vec2 a_draw;
      if (abcd[0].is_ideal()) {
        // Extend from D through B by twice the image diagonal.
        Vec2 dir = abcd[1].affine() - d;
        const double len = norm(dir);
        const double reach = 2.0 * std::hypot(camera.width, camera.height);
        a_draw = len > 0.0 ? d + dir * (reach / len) : d;
      } else {
        a_draw = abcd[0].affine();
      }
      os << "<g class=\"centerline\" data-face=\"" << mesh.faces[f].id << "\">\n";
      os << "<line x1=\"" << fnum(a_draw.x) << "\" y1=\"" << fnum(a_draw.y)
         << "\" x2=\"" << fnum(d.x) << "\" y2=\"" << fnum(d.y) << "\"/>\n";
      static const char* names[4] = {"A", "B", "C", "D"};
      for (int k = 0; k < 4; ++k) {
        if (abcd[k].is_ideal()) continue;
        const Vec2 v = abcd[k].affine();
        os << "<circle class=\"qpoint\" cx=\"" << fnum(v.x) << "\" cy=\""
           << fnum(v.y) << "\" r=\"2\"/>\n";
        os << "<text class=\"qlabel\" x=\"" << fnum(v.x + 4.0) << "\" y=\""
           << fnum(v.y - 4.0) << "\">" << names[k] << "</text>\n";
      }
      os << "</g>\n";
    }
    os << "</g>\n";
  }

  if (options.vertex_labels) {
    os << "<g class=\"vlabels\" fill=\"#1040a0\" font-size=\"12\">\n";
    for (size_t i = 0; i < mesh.vertices.size(); ++i) {
      os << "<text class=\"vlabel\" x=\"" << fnum(px[i].x + 5.0) << "\" y=\""
         << fnum(px[i].y + 5.0) << "\">" << mesh.vertices[i].label << "</text>\n";
    }
    os << "</g>\n";
  }

  os << "</svg>\n";
  return os.str();
}

}  // namespace melsolid
