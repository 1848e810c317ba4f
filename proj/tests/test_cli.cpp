#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

const fs::path& work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "melsolid_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string command = std::string(MELSOLID_CLI_BIN) + " " + args + " > " +
                              out.string() + " 2> " + err.string();
  const int status = std::system(command.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out);
  result.err = slurp(err);
  return result;
}

}  // namespace

TEST_CASE("golden prints the canonical shape parameters") {
  const RunResult r = run_cli("golden");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("77.9469") != std::string::npos);
  CHECK(r.out.find("1.6180") != std::string::npos);
  CHECK(r.out.find("0.4472") != std::string::npos);
  CHECK(r.out.find("1.00095") != std::string::npos);
  CHECK(r.out.find("1.00623") != std::string::npos);
}

TEST_CASE("synth then measure round-trips the cross ratio") {
  const fs::path annotation = work_dir() / "synth_roundtrip.json";
  const RunResult synth = run_cli("synth --alpha 78 --lambda 1.6111 --out " +
                                  annotation.string());
  REQUIRE(synth.exit_code == 0);

  const RunResult measure =
      run_cli("measure --annotation " + annotation.string() + " --format json");
  REQUIRE(measure.exit_code == 0);
  const json report = json::parse(measure.out);
  CHECK(report["schema"] == 1);
  CHECK(report["kind"] == "measure");
  CHECK(report["summary"]["count"] == 6);
  CHECK(std::abs(report["summary"]["mean"].get<double>() - 1.6111) <= 1e-9);
}

TEST_CASE("synth output is byte-identical for a fixed seed") {
  const fs::path a1 = work_dir() / "det_a.json";
  const fs::path a2 = work_dir() / "det_b.json";
  REQUIRE(run_cli("synth --alpha 78 --lambda 1.6111 --noise 0.5 --seed 42 --out " +
                  a1.string())
              .exit_code == 0);
  REQUIRE(run_cli("synth --alpha 78 --lambda 1.6111 --noise 0.5 --seed 42 --out " +
                  a2.string())
              .exit_code == 0);
  CHECK(slurp(a1) == slurp(a2));
  // A different seed must change the file.
  const fs::path a3 = work_dir() / "det_c.json";
  REQUIRE(run_cli("synth --alpha 78 --lambda 1.6111 --noise 0.5 --seed 43 --out " +
                  a3.string())
              .exit_code == 0);
  CHECK(slurp(a1) != slurp(a3));
}

TEST_CASE("synth rejects invalid shape parameters") {
  const RunResult r = run_cli("synth --alpha 120 --lambda 1.6 --out " +
                              (work_dir() / "bad.json").string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("OutOfRange") != std::string::npos);
}

TEST_CASE("measure maps input problems to exit 2") {
  const fs::path bad = work_dir() / "malformed.json";
  std::ofstream(bad) << "{ this is not json";
  CHECK(run_cli("measure --annotation " + bad.string()).exit_code == 2);
  CHECK(run_cli("measure --annotation /nonexistent/nope.json").exit_code == 2);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("no-such-subcommand").exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
  CHECK(run_cli("measure").exit_code == 1);  // missing required --annotation
}

TEST_CASE("fit recovers synthetic parameters through the CLI") {
  const fs::path annotation = work_dir() / "fit_input.json";
  REQUIRE(run_cli("synth --alpha 78 --lambda 1.6111 --out " + annotation.string())
              .exit_code == 0);
  const RunResult fit = run_cli("fit --annotation " + annotation.string() +
                                " --alpha 75 --lambda 1.55 --format json");
  REQUIRE(fit.exit_code == 0);
  const json report = json::parse(fit.out);
  CHECK(std::abs(report["alpha_deg"].get<double>() - 78.0) <= 0.1);
  CHECK(std::abs(report["lambda"].get<double>() - 1.6111) <= 0.005);
  CHECK(report["converged"] == true);
}

TEST_CASE("fit with too few points exits 3") {
  const fs::path annotation = work_dir() / "fit_sparse.json";
  std::ofstream(annotation) << R"({
    "schema": 1,
    "image": {"width": 100, "height": 100},
    "points": {"L1": [10, 10], "L2": [20, 10], "L3": [15, 20]}
  })";
  const RunResult fit = run_cli("fit --annotation " + annotation.string());
  CHECK(fit.exit_code == 3);
  CHECK(fit.err.find("TooFewCorrespondences") != std::string::npos);
}

TEST_CASE("theories table against a measured value") {
  const RunResult r = run_cli("theories --lambda 1.62 --alpha 78");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("7.41") != std::string::npos);   // Lynch
  CHECK(r.out.find("11.67") != std::string::npos);  // Schreiber lambda
  CHECK(r.out.find("7.69") != std::string::npos);   // Schreiber alpha
  // Ranking: Golden first at measured 1.62.
  const size_t golden_pos = r.out.find("Golden");
  const size_t lynch_pos = r.out.find("Lynch");
  CHECK(golden_pos < lynch_pos);
}

TEST_CASE("theories with an exact grid match ranks Lynch first") {
  const RunResult r = run_cli("theories --lambda 1.5 --format json");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["rows"][0]["name"] == "Lynch");
  CHECK(report["rows"][0]["lambda_deviation_pct"].get<double>() <= 1e-12);
}

TEST_CASE("theories scores an annotation end to end") {
  const fs::path annotation = work_dir() / "theories_input.json";
  REQUIRE(run_cli("synth --alpha 77.9469 --lambda 1.618034 --out " +
                  annotation.string())
              .exit_code == 0);
  const RunResult r =
      run_cli("theories --annotation " + annotation.string() + " --format json");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(std::abs(report["measured_lambda"].get<double>() - 1.618034) <= 1e-6);
  CHECK(report["rows"][0]["name"] == "Golden");
}

TEST_CASE("theories accepts a user catalog file") {
  const fs::path extra = work_dir() / "extra_theories.json";
  std::ofstream(extra) << R"({
    "schema": 1,
    "theories": [{"name": "ExactMatch", "lambda": 1.6235}]
  })";
  const RunResult r = run_cli("theories --lambda 1.6235 --theories " +
                              extra.string() + " --format json");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  CHECK(report["rows"][0]["name"] == "ExactMatch");
  CHECK(report["rows"].size() == 7);

  const RunResult only = run_cli("theories --lambda 1.6235 --no-builtin --theories " +
                                 extra.string() + " --format json");
  REQUIRE(only.exit_code == 0);
  CHECK(json::parse(only.out)["rows"].size() == 1);
}

TEST_CASE("anomaly verdicts on a synthetic annotation") {
  const fs::path annotation = work_dir() / "anomaly_input.json";
  REQUIRE(run_cli("synth --alpha 78 --lambda 1.6111 --out " + annotation.string())
              .exit_code == 0);
  const RunResult r =
      run_cli("anomaly --annotation " + annotation.string() + " --format json");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);
  REQUIRE(report["groups"].size() == 4);
  for (const auto& group : report["groups"]) {
    if (group["kind"] == "triple") {
      const std::string verdict = group["verdict"].get<std::string>();
      CHECK(verdict.find("concurrent") == 0);
      CHECK(group["defect"].get<double>() <= 1e-9);
    } else {
      CHECK(group["verdict"] == "converges-expected");
    }
  }
}

TEST_CASE("mesh export through the CLI") {
  const RunResult r = run_cli("mesh --alpha 78 --lambda 1.6111");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("melsolid-mesh 1") == 0);
  CHECK(r.out.find("vertices 12") != std::string::npos);
  CHECK(r.out.find("faces 8") != std::string::npos);
  const RunResult untruncated = run_cli("mesh --alpha 90");
  CHECK(untruncated.out.find("vertices 8") != std::string::npos);
  CHECK(run_cli("mesh --alpha 180").exit_code == 2);
}

TEST_CASE("svg output is written and stable") {
  const fs::path svg1 = work_dir() / "render1.svg";
  const fs::path svg2 = work_dir() / "render2.svg";
  const fs::path a = work_dir() / "svg_annotation.json";
  REQUIRE(run_cli("synth --alpha 78 --lambda 1.6111 --out " + a.string() +
                  " --svg " + svg1.string())
              .exit_code == 0);
  REQUIRE(run_cli("synth --alpha 78 --lambda 1.6111 --out " + a.string() +
                  " --svg " + svg2.string())
              .exit_code == 0);
  const std::string svg = slurp(svg1);
  CHECK(svg == slurp(svg2));
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("class=\"edge\"") != std::string::npos);
  CHECK(svg.find("class=\"centerline\"") != std::string::npos);
}

TEST_CASE("MELSOLID_CONFIG environment variable selects the config") {
  const fs::path config = work_dir() / "env_config.json";
  std::ofstream(config) << R"({"schema": 1, "format": "json"})";
  setenv("MELSOLID_CONFIG", config.string().c_str(), 1);
  const RunResult r = run_cli("golden");
  unsetenv("MELSOLID_CONFIG");
  REQUIRE(r.exit_code == 0);
  const json report = json::parse(r.out);  // json because the config said so
  CHECK(report["kind"] == "golden");

  setenv("MELSOLID_CONFIG", (work_dir() / "missing_config.json").string().c_str(), 1);
  const RunResult missing = run_cli("golden");
  unsetenv("MELSOLID_CONFIG");
  CHECK(missing.exit_code == 2);
}

TEST_CASE("reports can be written to a file with --out") {
  const fs::path out = work_dir() / "golden_report.txt";
  const RunResult r = run_cli("golden --out " + out.string());
  REQUIRE(r.exit_code == 0);
  CHECK(slurp(out).find("77.9469") != std::string::npos);
}
