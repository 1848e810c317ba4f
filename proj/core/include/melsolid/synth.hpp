#pragma once

#include <cstdint>

#include "melsolid/annotation.hpp"
#include "melsolid/perspective.hpp"
#include "melsolid/solid.hpp"

namespace melsolid {

/// Annotation of a rendered truncated solid: all 12 vertex labels, the
/// face cycles of the pentagons an annotator could actually pick (clearly
/// front-facing, no image-degenerate edges), three parallel-edge triples
/// (one per generator direction) and one face-diagonal / bottom-edge pair
/// with its true vanishing-point side. Exact for sigma = 0; otherwise
/// every point gets independent Gaussian pixel noise (deterministic per
/// seed).
Annotation synthesize_annotation(const FaceShape& shape, const Camera& camera,
                                 double noise_sigma = 0.0,
                                 std::uint64_t seed = 0);

/// The mesh the synthetic annotation was projected from.
SolidMesh synthetic_mesh(const FaceShape& shape);

}  // namespace melsolid
