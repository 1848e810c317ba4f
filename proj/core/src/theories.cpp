#include "melsolid/theories.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace melsolid {

using nlohmann::json;

const char* to_string(Derivation d) {
  switch (d) {
    case Derivation::ExplicitLambda: return "explicit-lambda";
    case Derivation::FromTruncationRatio: return "from-truncation-ratio";
    case Derivation::FromInscribedCircle: return "from-inscribed-circle";
    case Derivation::FromGrid: return "from-grid";
    case Derivation::GoldenConstruction: return "golden-construction";
  }
  return "?";
}

std::optional<Derivation> derivation_from_string(const std::string& s) {
  if (s == "explicit-lambda") return Derivation::ExplicitLambda;
  if (s == "from-truncation-ratio") return Derivation::FromTruncationRatio;
  if (s == "from-inscribed-circle") return Derivation::FromInscribedCircle;
  if (s == "from-grid") return Derivation::FromGrid;
  if (s == "golden-construction") return Derivation::GoldenConstruction;
  return std::nullopt;
}

double theory_lambda(const Theory& theory) {
  if (!theory.derivation) {
    if (theory.lambda) return *theory.lambda;
    raise(ErrorCode::MissingLambda,
          "theory '" + theory.name + "' fixes neither lambda nor a derivation");
  }
  switch (*theory.derivation) {
    case Derivation::ExplicitLambda:
      if (!theory.lambda)
        raise(ErrorCode::MissingLambda,
              "theory '" + theory.name + "' declares explicit-lambda without a value");
      return *theory.lambda;
    case Derivation::FromTruncationRatio:
      if (!theory.trunc_ratio)
        raise(ErrorCode::MissingLambda,
              "theory '" + theory.name + "' lacks a truncation ratio");
      return cross_ratio_of_truncation(*theory.trunc_ratio);
    case Derivation::FromInscribedCircle:
      if (!theory.alpha_deg)
        raise(ErrorCode::MissingLambda,
              "theory '" + theory.name + "' lacks the rhombus angle");
      return cross_ratio_of_truncation(inscribed_truncation_ratio(*theory.alpha_deg));
    case Derivation::FromGrid: {
      // Lattice quadruple at parameters 0, 1, 2, 4 along a grid line.
      const CrossRatio cr =
          cross_ratio(HPoint2{0, 0}, HPoint2{1, 0}, HPoint2{2, 0}, HPoint2{4, 0});
      return cr.value;
    }
    case Derivation::GoldenConstruction:
      return cross_ratio_of_truncation(golden_ray_intersection().x);
  }
  raise(ErrorCode::MissingLambda, "unreachable derivation");
}

std::vector<Theory> builtin_theories() {
  std::vector<Theory> list;

  Theory lynch;
  lynch.name = "Lynch";
  lynch.derivation = Derivation::FromGrid;
  lynch.source = "vertices projected orthogonally onto a 4x4 lattice";
  lynch.notes = "grid quadruple (0,1,2,4); the lattice fixes no rhombus angle";
  list.push_back(lynch);

  Theory schreiber;
  schreiber.name = "Schreiber";
  schreiber.alpha_deg = 72.0;
  schreiber.derivation = Derivation::FromInscribedCircle;
  schreiber.source = "72-degree rhombus with the face inscribed in a circle";
  list.push_back(schreiber);

  Theory weitzel;
  weitzel.name = "Weitzel";
  weitzel.alpha_deg = 77.65;  // mean of the asymmetric sketch angles
  weitzel.alpha_range_deg = {{75.8, 79.5}};
  weitzel.trunc_ratio = 0.57;
  weitzel.derivation = Derivation::FromTruncationRatio;
  weitzel.source = "sketchbook face: 79.5 +/- 0.5 deg, other corner 75.8 deg";
  weitzel.notes = "scored with the mean angle 77.65 deg; truncation 0.57 suggests "
                  "a circumscribed circle";
  list.push_back(weitzel);

  Theory macgillavry;
  macgillavry.name = "MacGillavry";
  macgillavry.alpha_deg = 78.0;  // her minimum, the usual working value
  macgillavry.alpha_range_deg = {{78.0, 80.0}};
  macgillavry.trunc_ratio = 0.45;
  macgillavry.derivation = Derivation::FromTruncationRatio;
  macgillavry.source = "perspective analysis: alpha 79 +/- 1 deg, BC/AC about 0.45";
  macgillavry.notes = "interval 79 +/- 1 deg stored separately from the working 78 deg";
  list.push_back(macgillavry);

  Theory golden;
  golden.name = "Golden";
  golden.alpha_deg = golden_pentagon().alpha_deg;
  golden.derivation = Derivation::GoldenConstruction;
  golden.source = "rhombus in a pair of golden rectangles, 45-degree truncation ray";
  golden.notes = "alpha = 2 arctan(phi/2), lambda = phi";
  list.push_back(golden);

  Theory golden72;
  golden72.name = "Golden-angle-72";
  golden72.alpha_deg = 72.0;  // 2 arccos(phi/2) is exactly 72 degrees
  golden72.source = "historical 72-degree cluster, alpha = 2 arccos(phi/2)";
  golden72.notes = "fixes only the angle; no truncation is implied";
  list.push_back(golden72);

  return list;
}

Verdict score_theory(const Theory& theory, double measured_lambda,
                     std::optional<double> measured_alpha) {
  if (!(measured_lambda >= 1.0))
    raise(ErrorCode::OutOfRange, "measured lambda must be >= 1");
  Verdict v;
  v.theory = theory.name;
  v.theory_alpha_deg = theory.alpha_deg;
  const double lambda = theory_lambda(theory);
  v.theory_lambda_value = lambda;
  v.lambda_deviation_pct = std::abs(lambda - measured_lambda) / measured_lambda * 100.0;
  if (measured_alpha && theory.alpha_deg)
    v.alpha_deviation_pct =
        std::abs(*theory.alpha_deg - *measured_alpha) / *measured_alpha * 100.0;

  std::ostringstream text;
  char buf[64];
  std::snprintf(buf, sizeof buf, "lambda %.4f deviates %.2f%% from measured %.4f",
                lambda, *v.lambda_deviation_pct, measured_lambda);
  text << buf;
  if (v.alpha_deviation_pct) {
    std::snprintf(buf, sizeof buf, "; alpha %.2f deg deviates %.2f%%",
                  *theory.alpha_deg, *v.alpha_deviation_pct);
    text << buf;
  }
  if (!theory.notes.empty()) text << " (" << theory.notes << ")";
  v.assessment = text.str();
  return v;
}

std::vector<Verdict> compare_report(double measured_lambda,
                                    std::optional<double> measured_alpha,
                                    const std::vector<Theory>& theories) {
  std::vector<Verdict> rows;
  rows.reserve(theories.size());
  for (const auto& theory : theories) {
    try {
      rows.push_back(score_theory(theory, measured_lambda, measured_alpha));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::MissingLambda) throw;
      Verdict v;
      v.theory = theory.name;
      v.theory_alpha_deg = theory.alpha_deg;
      if (measured_alpha && theory.alpha_deg)
        v.alpha_deviation_pct =
            std::abs(*theory.alpha_deg - *measured_alpha) / *measured_alpha * 100.0;
      v.assessment = "no cross ratio to score" +
                     (theory.notes.empty() ? "" : " (" + theory.notes + ")");
      rows.push_back(std::move(v));
    }
  }
  const auto key = [](const Verdict& v) {
    const double inf = std::numeric_limits<double>::infinity();
    return std::make_tuple(v.lambda_deviation_pct.value_or(inf),
                           v.alpha_deviation_pct.value_or(inf), v.theory);
  };
  std::stable_sort(rows.begin(), rows.end(),
                   [&](const Verdict& a, const Verdict& b) { return key(a) < key(b); });
  return rows;
}

std::vector<Theory> parse_theories(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    raise(ErrorCode::BadConfig, std::string("invalid theory JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("schema", 0) != 1)
      raise(ErrorCode::BadConfig, "theory file needs \"schema\": 1");
    std::vector<Theory> list;
    for (const auto& jt : j.at("theories")) {
      Theory t;
      t.name = jt.at("name").get<std::string>();
      if (jt.contains("alpha_deg")) t.alpha_deg = jt["alpha_deg"].get<double>();
      if (jt.contains("alpha_range_deg")) {
        const auto& r = jt["alpha_range_deg"];
        if (!r.is_array() || r.size() != 2)
          raise(ErrorCode::BadConfig, "alpha_range_deg must be a pair");
        t.alpha_range_deg = {{r[0].get<double>(), r[1].get<double>()}};
      }
      if (jt.contains("lambda")) t.lambda = jt["lambda"].get<double>();
      if (jt.contains("truncation_ratio"))
        t.trunc_ratio = jt["truncation_ratio"].get<double>();
      if (jt.contains("derivation")) {
        const auto d = derivation_from_string(jt["derivation"].get<std::string>());
        if (!d)
          raise(ErrorCode::BadConfig,
                "unknown derivation '" + jt["derivation"].get<std::string>() + "'");
        t.derivation = d;
      } else if (t.lambda) {
        t.derivation = Derivation::ExplicitLambda;
      }
      t.source = jt.value("source", "");
      t.notes = jt.value("notes", "");
      list.push_back(std::move(t));
    }
    return list;
  } catch (const json::exception& e) {
    raise(ErrorCode::BadConfig, std::string("bad theory file: ") + e.what());
  }
}

std::vector<Theory> load_theories(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorCode::IoError, "cannot open theory file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_theories(buf.str());
}

}  // namespace melsolid
