#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "melsolid/solid.hpp"

namespace melsolid {

/// How a theory's cross ratio is obtained from its source description.
enum class Derivation {
  ExplicitLambda,
  FromTruncationRatio,
  FromInscribedCircle,
  FromGrid,
  GoldenConstruction,
};

const char* to_string(Derivation d);
std::optional<Derivation> derivation_from_string(const std::string& s);

/// A published proposal for the shape of the solid. Some sources fix only
/// the rhombus angle, some only the truncation.
struct Theory {
  std::string name;
  std::optional<double> alpha_deg;  // the angle used for scoring
  /// Raw angle pair when the source is asymmetric or an interval.
  std::optional<std::pair<double, double>> alpha_range_deg;
  std::optional<double> lambda;       // explicit cross ratio, if given
  std::optional<double> trunc_ratio;  // BC/AC, if given
  std::optional<Derivation> derivation;
  std::string source;
  std::string notes;
};

/// Resolves the theory's cross ratio through its derivation. Throws
/// MissingLambda when the theory specifies neither a lambda nor a way to
/// derive one.
double theory_lambda(const Theory& theory);

/// The built-in catalog: Lynch, Schreiber, Weitzel, MacGillavry, Golden,
/// Golden-angle-72.
std::vector<Theory> builtin_theories();

struct Verdict {
  std::string theory;
  std::optional<double> theory_lambda_value;
  std::optional<double> theory_alpha_deg;
  std::optional<double> lambda_deviation_pct;  // |theory - measured|/measured * 100
  std::optional<double> alpha_deviation_pct;
  std::string assessment;
};

/// Percent deviations of one theory against the measured values.
/// Throws MissingLambda when the theory's lambda cannot be resolved.
Verdict score_theory(const Theory& theory, double measured_lambda,
                     std::optional<double> measured_alpha = {});

/// All theories scored and ranked: ascending lambda deviation, ties by
/// alpha deviation then name; theories without a resolvable lambda sort
/// last. Total order, deterministic.
std::vector<Verdict> compare_report(double measured_lambda,
                                    std::optional<double> measured_alpha,
                                    const std::vector<Theory>& theories);

/// User-supplied theory catalogs share the builtin schema ("schema": 1).
std::vector<Theory> parse_theories(const std::string& json_text);
std::vector<Theory> load_theories(const std::string& path);

}  // namespace melsolid
