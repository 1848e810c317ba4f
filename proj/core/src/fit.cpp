#include "melsolid/fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <random>

namespace melsolid {

namespace {

constexpr int kDim = 12;
constexpr double kAlphaLo = 0.5, kAlphaHi = 90.0;
constexpr double kLambdaLo = 1.0 + 1e-9, kLambdaHi = 100.0;
constexpr double kPenaltyWeight = 1e6;
constexpr double kBehindEyeCost = 1e8;

using ParamVec = std::array<double, kDim>;

double clamp_with_penalty(double v, double lo, double hi, double& penalty) {
  const double c = std::clamp(v, lo, hi);
  const double excess = v - c;
  penalty += kPenaltyWeight * excess * excess;
  return c;
}

struct Correspondence {
  Vec2 target;        // annotated pixel
  std::string label;  // mesh vertex label
};

class ReprojectionObjective {
 public:
  ReprojectionObjective(std::vector<Correspondence> matches, const Camera& base)
      : matches_(std::move(matches)), base_(base), r0_(base.rotation()) {}

  static ParamVec pack(const FaceShape& shape, const Camera& cam) {
    return {shape.alpha_deg, shape.lambda, 0.0,       0.0,
            0.0,             cam.eye.x,    cam.eye.y, cam.eye.z,
            cam.focal,       cam.scale,    cam.offset_x, cam.offset_y};
  }

  struct Model {
    double alpha_deg;
    double lambda;
    Camera camera;
    double penalty;
  };

  Model unpack(const ParamVec& x) const {
    Model m;
    m.penalty = 0.0;
    m.alpha_deg = clamp_with_penalty(x[0], kAlphaLo, kAlphaHi, m.penalty);
    m.lambda = clamp_with_penalty(x[1], kLambdaLo, kLambdaHi, m.penalty);
    Camera cam = base_;
    const Vec3 w{x[2], x[3], x[4]};
    const double angle = norm(w);
    const Mat3 r = angle > 0.0 ? rotation_about_axis(w / angle, angle) * r0_ : r0_;
    cam = cam.with_rotation(r);
    cam.eye = {x[5], x[6], x[7]};
    cam.focal = clamp_with_penalty(x[8], 1e-6, 1e6, m.penalty);
    cam.scale = clamp_with_penalty(x[9], 1e-6, 1e9, m.penalty);
    cam.offset_x = x[10];
    cam.offset_y = x[11];
    m.camera = cam;
    return m;
  }

  double operator()(const ParamVec& x) const {
    const Model m = unpack(x);
    return sum_squared_error(m) + m.penalty;
  }

  double sum_squared_error(const Model& m) const {
    const SolidMesh mesh = truncate(build_rhombohedron(m.alpha_deg), m.lambda);
    const Vec3 r = m.camera.right();
    const Vec3 dwn = m.camera.down();
    const double sf = m.camera.scale * m.camera.focal;
    double sse = 0.0;
    for (const auto& match : matches_) {
      const int vi = mesh.vertex_index(match.label);
      const Vec3 q = mesh.vertices[vi].pos - m.camera.eye;
      const double depth = dot(q, m.camera.look);
      if (depth <= 1e-9) {
        sse += kBehindEyeCost * (1.0 + (1e-9 - depth));
        continue;
      }
      const double px = (sf * dot(q, r)) / depth + m.camera.offset_x;
      const double py = (sf * dot(q, dwn)) / depth + m.camera.offset_y;
      const double dx = px - match.target.x;
      const double dy = py - match.target.y;
      sse += dx * dx + dy * dy;
    }
    return sse;
  }

  size_t count() const { return matches_.size(); }

 private:
  std::vector<Correspondence> matches_;
  Camera base_;
  Mat3 r0_;
};

struct SearchState {
  ParamVec best_x{};
  double best_f = std::numeric_limits<double>::infinity();
  int evaluations = 0;
  int iterations = 0;
  std::vector<double>* trace = nullptr;
};

/// One Nelder-Mead run with a fixed evaluation budget. The best simplex
/// vertex is only ever replaced by a better one, so the tracked best
/// value descends monotonically.
void nelder_mead(const std::function<double(const ParamVec&)>& f,
                 const ParamVec& x0, const ParamVec& steps, const FitConfig& cfg,
                 int eval_budget, SearchState& state) {
  const int n = kDim;
  std::array<ParamVec, kDim + 1> xs;
  std::array<double, kDim + 1> fs;

  const auto eval = [&](const ParamVec& x) {
    ++state.evaluations;
    const double v = f(x);
    if (v < state.best_f) {
      state.best_f = v;
      state.best_x = x;
    }
    return v;
  };

  int used = 0;
  const auto budget_left = [&]() { return used < eval_budget; };
  const auto counted_eval = [&](const ParamVec& x) {
    ++used;
    return eval(x);
  };

  xs[0] = x0;
  fs[0] = counted_eval(xs[0]);
  for (int i = 0; i < n; ++i) {
    xs[i + 1] = x0;
    xs[i + 1][i] += steps[i];
    if (!budget_left()) return;
    fs[i + 1] = counted_eval(xs[i + 1]);
  }

  std::array<int, kDim + 1> order;
  while (budget_left()) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return fs[a] < fs[b]; });
    {
      std::array<ParamVec, kDim + 1> xs2;
      std::array<double, kDim + 1> fs2;
      for (int i = 0; i <= n; ++i) {
        xs2[i] = xs[order[i]];
        fs2[i] = fs[order[i]];
      }
      xs = xs2;
      fs = fs2;
    }
    ++state.iterations;
    if (state.trace) state.trace->push_back(fs[0]);
    if (fs[n] - fs[0] <= cfg.ftol * (1.0 + std::abs(fs[0]))) return;

    ParamVec centroid{};
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) centroid[j] += xs[i][j] / n;

    ParamVec xr;
    for (int j = 0; j < n; ++j)
      xr[j] = centroid[j] + cfg.reflect * (centroid[j] - xs[n][j]);
    const double fr = counted_eval(xr);

    if (fr < fs[0]) {
      if (!budget_left()) {
        xs[n] = xr;
        fs[n] = fr;
        continue;
      }
      ParamVec xe;
      for (int j = 0; j < n; ++j)
        xe[j] = centroid[j] + cfg.expand * (xr[j] - centroid[j]);
      const double fe = counted_eval(xe);
      if (fe < fr) {
        xs[n] = xe;
        fs[n] = fe;
      } else {
        xs[n] = xr;
        fs[n] = fr;
      }
    } else if (fr < fs[n - 1]) {
      xs[n] = xr;
      fs[n] = fr;
    } else {
      const bool outside = fr < fs[n];
      ParamVec xc;
      if (outside) {
        for (int j = 0; j < n; ++j)
          xc[j] = centroid[j] + cfg.contract * (xr[j] - centroid[j]);
      } else {
        for (int j = 0; j < n; ++j)
          xc[j] = centroid[j] - cfg.contract * (centroid[j] - xs[n][j]);
      }
      if (!budget_left()) return;
      const double fc = counted_eval(xc);
      if (fc < (outside ? fr : fs[n])) {
        xs[n] = xc;
        fs[n] = fc;
      } else {
        // Shrink toward the best vertex (which stays put).
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j)
            xs[i][j] = xs[0][j] + cfg.shrink * (xs[i][j] - xs[0][j]);
          if (!budget_left()) return;
          fs[i] = counted_eval(xs[i]);
        }
      }
    }
  }
}

}  // namespace

FitResult fit_model(const Annotation& annotation, const FaceShape& initial_shape,
                    const Camera& initial_camera, const FitConfig& config) {
  annotation.validate();
  initial_shape.validate();
  initial_camera.validate();
  if (!(initial_shape.lambda > 1.0))
    raise(ErrorCode::OutOfRange, "initial lambda must exceed 1 for a truncated solid");

  // Match annotation labels to the truncated solid's vertex labels.
  const SolidMesh probe =
      truncate(build_rhombohedron(initial_shape.alpha_deg), initial_shape.lambda);
  std::vector<Correspondence> matches;
  for (const auto& [label, pixel] : annotation.points)
    if (probe.vertex_index(label) >= 0) matches.push_back({pixel, label});
  if (matches.size() < 8)
    raise(ErrorCode::TooFewCorrespondences,
          "need at least 8 labeled vertex correspondences, got " +
              std::to_string(matches.size()));

  const ReprojectionObjective objective(matches, initial_camera);

  const ParamVec x0 = ReprojectionObjective::pack(initial_shape, initial_camera);
  ParamVec steps0;
  steps0[0] = 2.0;    // alpha, degrees
  steps0[1] = 0.05;   // lambda
  steps0[2] = steps0[3] = steps0[4] = 0.02;  // rotation, radians
  const double eye_scale = 0.02 * std::max(1.0, norm(initial_camera.eye));
  steps0[5] = steps0[6] = steps0[7] = eye_scale;
  steps0[8] = 0.02 * initial_camera.focal;
  steps0[9] = 0.02 * std::abs(initial_camera.scale);
  steps0[10] = steps0[11] =
      0.005 * std::max({annotation.width, annotation.height, 100.0});

  SearchState state;
  std::vector<double> trace;
  if (config.trace) state.trace = &trace;

  const int runs = 1 + std::max(0, config.restarts) + std::max(0, config.random_restarts);
  const int per_run = std::max(1, config.max_evals / runs);

  nelder_mead([&](const ParamVec& x) { return objective(x); }, x0, steps0, config,
              per_run + config.max_evals % runs, state);

  for (int k = 1; k <= config.restarts; ++k) {
    ParamVec steps;
    const double shrink = std::pow(0.3, k);
    for (int j = 0; j < kDim; ++j) steps[j] = steps0[j] * shrink;
    nelder_mead([&](const ParamVec& x) { return objective(x); }, state.best_x,
                steps, config, per_run, state);
  }

  if (config.random_restarts > 0) {
    std::mt19937_64 rng(config.seed);
    const auto gauss = [&rng]() {
      // Box-Muller; deterministic across platforms.
      const double u1 =
          (static_cast<double>(rng()) + 1.0) / (static_cast<double>(rng.max()) + 2.0);
      const double u2 =
          static_cast<double>(rng()) / (static_cast<double>(rng.max()) + 1.0);
      return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
    };
    for (int k = 0; k < config.random_restarts; ++k) {
      ParamVec start = state.best_x;
      for (int j = 0; j < kDim; ++j) start[j] += 0.5 * steps0[j] * gauss();
      nelder_mead([&](const ParamVec& x) { return objective(x); }, start, steps0,
                  config, per_run, state);
    }
  }

  const auto model = objective.unpack(state.best_x);
  FitResult result;
  result.alpha_deg = model.alpha_deg;
  result.lambda = model.lambda;
  result.camera = model.camera;
  result.rms =
      std::sqrt(objective.sum_squared_error(model) / static_cast<double>(objective.count()));
  result.iterations = state.iterations;
  result.evaluations = state.evaluations;
  result.matched_points = static_cast<int>(objective.count());
  const bool budget_exhausted = state.evaluations >= config.max_evals;
  result.converged = !(budget_exhausted && result.rms > config.rms_threshold);
  result.trace_best = std::move(trace);
  return result;
}

}  // namespace melsolid
