#include "melsolid/annotation.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace melsolid {

using nlohmann::json;

void Annotation::validate() const {
  if (!(width > 0.0 && height > 0.0))
    raise(ErrorCode::BadAnnotation, "image size must be positive");
  for (const auto& face : faces) {
    std::set<std::string> distinct(face.labels.begin(), face.labels.end());
    if (distinct.size() != 5)
      raise(ErrorCode::BadAnnotation,
            "face '" + face.id + "' needs 5 distinct labels");
    for (const auto& label : face.labels)
      if (!points.count(label))
        raise(ErrorCode::BadAnnotation,
              "face '" + face.id + "' references unknown point '" + label + "'");
  }
  for (const auto& group : segment_groups) {
    if (group.kind != "pair" && group.kind != "triple")
      raise(ErrorCode::BadAnnotation,
            "segment group '" + group.id + "' has unknown kind '" + group.kind + "'");
    const size_t expected = group.kind == "pair" ? 2 : 3;
    if (group.segments.size() != expected)
      raise(ErrorCode::BadAnnotation,
            "segment group '" + group.id + "' needs " + std::to_string(expected) +
                " segments");
    for (const auto& seg : group.segments)
      for (const auto& label : {seg.p0, seg.p1})
        if (!points.count(label))
          raise(ErrorCode::BadAnnotation, "segment group '" + group.id +
                                              "' references unknown point '" +
                                              label + "'");
    if (group.expected_side && *group.expected_side != "left" &&
        *group.expected_side != "right")
      raise(ErrorCode::BadAnnotation,
            "segment group '" + group.id + "': expected_side must be left|right");
  }
}

Vec2 Annotation::point(const std::string& label) const {
  auto it = points.find(label);
  if (it == points.end())
    raise(ErrorCode::BadAnnotation, "unknown point label '" + label + "'");
  return it->second;
}

namespace {

Vec2 parse_xy(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    raise(ErrorCode::BadAnnotation, what + " must be a [x, y] number pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

Annotation parse_annotation(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::BadAnnotation, std::string("invalid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("schema") || !j["schema"].is_number_integer())
      raise(ErrorCode::BadAnnotation, "missing integer 'schema' field");
    if (j["schema"].get<int>() != 1)
      raise(ErrorCode::BadAnnotation, "unsupported annotation schema version");

    Annotation a;
    const auto& image = j.at("image");
    a.width = image.at("width").get<double>();
    a.height = image.at("height").get<double>();
    a.provenance = j.value("provenance", "");

    for (const auto& [label, xy] : j.at("points").items())
      a.points[label] = parse_xy(xy, "point '" + label + "'");

    for (const auto& jf : j.value("faces", json::array())) {
      AnnotationFace face;
      face.id = jf.at("id").get<std::string>();
      const auto& labels = jf.at("labels");
      if (!labels.is_array() || labels.size() != 5)
        raise(ErrorCode::BadAnnotation,
              "face '" + face.id + "' must list exactly 5 labels");
      for (size_t k = 0; k < 5; ++k)
        face.labels[k] = labels[k].get<std::string>();
      a.faces.push_back(std::move(face));
    }

    for (const auto& jg : j.value("segment_groups", json::array())) {
      SegmentGroup group;
      group.id = jg.at("id").get<std::string>();
      group.kind = jg.at("kind").get<std::string>();
      for (const auto& js : jg.at("segments")) {
        if (!js.is_array() || js.size() != 2)
          raise(ErrorCode::BadAnnotation, "segment group '" + group.id +
                                              "': each segment is a label pair");
        group.segments.push_back({js[0].get<std::string>(), js[1].get<std::string>()});
      }
      if (jg.contains("expected_side"))
        group.expected_side = jg["expected_side"].get<std::string>();
      a.segment_groups.push_back(std::move(group));
    }

    a.validate();
    return a;
  } catch (const json::exception& e) {
    raise(ErrorCode::BadAnnotation, std::string("bad annotation: ") + e.what());
  }
}

std::string annotation_to_json_text(const Annotation& a, int indent) {
  json j;
  j["schema"] = 1;
  j["image"] = {{"width", a.width}, {"height", a.height}};
  if (!a.provenance.empty()) j["provenance"] = a.provenance;
  json points = json::object();
  for (const auto& [label, xy] : a.points) points[label] = {xy.x, xy.y};
  j["points"] = std::move(points);
  json faces = json::array();
  for (const auto& face : a.faces)
    faces.push_back({{"id", face.id}, {"labels", face.labels}});
  j["faces"] = std::move(faces);
  json groups = json::array();
  for (const auto& group : a.segment_groups) {
    json jg = {{"id", group.id}, {"kind", group.kind}};
    json segs = json::array();
    for (const auto& seg : group.segments) segs.push_back({seg.p0, seg.p1});
    jg["segments"] = std::move(segs);
    if (group.expected_side) jg["expected_side"] = *group.expected_side;
    groups.push_back(std::move(jg));
  }
  j["segment_groups"] = std::move(groups);
  return j.dump(indent) + "\n";
}

Annotation load_annotation(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open annotation file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_annotation(buf.str());
}

void save_annotation(const std::string& path, const Annotation& a) {
  std::ofstream out(path);
  if (!out) raise(ErrorCode::IoError, "cannot write annotation file '" + path + "'");
  out << annotation_to_json_text(a);
}

}  // namespace melsolid
