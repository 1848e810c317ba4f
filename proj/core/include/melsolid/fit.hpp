#pragma once

#include <cstdint>
#include <vector>

#include "melsolid/annotation.hpp"
#include "melsolid/perspective.hpp"
#include "melsolid/solid.hpp"

namespace melsolid {

/// Controls for the derivative-free simplex search. Deterministic for a
/// fixed configuration; randomness only enters through seeded restarts.
struct FitConfig {
  int max_evals = 40000;      // total objective-evaluation budget
  int restarts = 4;           // deterministic re-inits around the best point
  int random_restarts = 0;    // extra seeded perturbed restarts
  std::uint64_t seed = 0;
  double reflect = 1.0;
  double expand = 2.0;
  double contract = 0.5;
  double shrink = 0.5;
  double ftol = 1e-18;        // simplex value-spread stop
  double rms_threshold = 2.0; // pixels; above this at budget end -> not converged
  bool trace = false;         // record the best objective value per iteration
};

struct FitResult {
  double alpha_deg = 0.0;
  double lambda = 1.0;
  Camera camera;
  double rms = 0.0;  // pixels
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  int matched_points = 0;
  /// Best simplex value after each iteration (non-increasing); filled
  /// when FitConfig::trace is set.
  std::vector<double> trace_best;
};

/// Fits (alpha, lambda, camera pose, focal, pixel scale and offsets) to
/// the annotation by minimizing the sum of squared pixel reprojection
/// errors over vertices matched by label to the parametric truncated
/// solid. Requires at least 8 matched labels (TooFewCorrespondences).
FitResult fit_model(const Annotation& annotation, const FaceShape& initial_shape,
                    const Camera& initial_camera, const FitConfig& config = {});

}  // namespace melsolid
