#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "melsolid/error.hpp"
#include "melsolid/vec.hpp"

namespace melsolid {

/// A labeled segment: two point labels from the annotation's point map.
struct SegmentRef {
  std::string p0;
  std::string p1;
};

/// Group of annotated segments used by the anomaly checks: triples for
/// the concurrency test, pairs for the convergence-direction test.
struct SegmentGroup {
  std::string id;
  std::string kind;  // "triple" | "pair"
  std::vector<SegmentRef> segments;
  std::optional<std::string> expected_side;  // "left" | "right", pairs only
};

struct AnnotationFace {
  std::string id;
  /// Canonical pentagon order: left, trunc-left, trunc-right, right, bottom.
  std::array<std::string, 5> labels;
};

/// Labeled image points picked from a picture, plus the face cycles and
/// segment groups built from them. Pixel y points down; coordinates are
/// sub-pixel reals.
struct Annotation {
  double width = 0.0;
  double height = 0.0;
  std::map<std::string, Vec2> points;
  std::vector<AnnotationFace> faces;
  std::vector<SegmentGroup> segment_groups;
  std::string provenance;

  /// Every referenced label exists; each face has 5 distinct labels.
  /// Throws BadAnnotation on violations.
  void validate() const;

  Vec2 point(const std::string& label) const;
};

/// Parse / serialize the documented JSON schema ("schema": 1).
/// parse throws BadAnnotation on malformed or wrong-schema input.
Annotation parse_annotation(const std::string& json_text);
std::string annotation_to_json_text(const Annotation& a, int indent = 2);

Annotation load_annotation(const std::string& path);
void save_annotation(const std::string& path, const Annotation& a);

}  // namespace melsolid
