// End-to-end tests of the command-line tool: schemas, exit codes,
// determinism, and the zero-table cache. The binary path arrives through
// the PSIROOTS_CLI environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

const std::string& cli_path() {
  static const std::string p = [] {
    const char* env = std::getenv("PSIROOTS_CLI");
    REQUIRE_MESSAGE(env != nullptr, "PSIROOTS_CLI must point at the binary");
    return std::string(env);
  }();
  return p;
}

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    char tmpl[] = "/tmp/psiroots_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    return fs::path(tmpl);
  }();
  return dir;
}

// `env_prefix` lets a case inject DIGAMMA_ZEROS_CACHE=...; by default the
// variable is forced empty so cases do not interfere.
RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const fs::path out = scratch_dir() / ("out" + std::to_string(counter));
  const fs::path err = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = (env_prefix.empty() ? "DIGAMMA_ZEROS_CACHE= " : env_prefix + " ") +
                          "\"" + cli_path() + "\" " + args + " > \"" + out.string() +
                          "\" 2> \"" + err.string() + "\"";
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) {
    std::vector<std::string> fields;
    std::istringstream ls(line);
    std::string f;
    while (std::getline(ls, f, ',')) fields.push_back(f);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    rows.push_back(fields);
  }
  return rows;
}

double num(const std::string& s) { return std::strtod(s.c_str(), nullptr); }

}  // namespace

TEST_CASE("zeros command: psi table") {
  const auto r = run_cli("zeros --family psi --k-max 10 --format csv");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 12);
  CHECK(rows[0][0] == "index");
  CHECK(std::abs(num(rows[11][1]) - (-9.702672541)) <= 5e-9);
  CHECK(rows[11].size() == 8);
}

TEST_CASE("zeros command: psig positive zeros and single-row table") {
  const auto r = run_cli("zeros --family psig --k-max 2");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::abs(num(rows[1][1]) - 2.55766) <= 5e-5);
  CHECK(std::abs(num(rows[2][1]) - 1.39147) <= 5e-5);
  CHECK(std::abs(num(rows[3][1]) - (-0.3662934)) <= 5e-7);

  const auto single = run_cli("zeros --family psi --k-max 0");
  const auto srows = parse_csv(single.out);
  REQUIRE(srows.size() == 2);
  CHECK(std::abs(num(srows[1][1]) - 1.461632) <= 5e-6);
}

TEST_CASE("invalid arguments exit with code 2") {
  CHECK(run_cli("zeros --family bogus --k-max 3").exit_code == 2);
  CHECK(run_cli("zeros --family psi --k-max -3").exit_code == 2);
  CHECK(run_cli("zeros --family psi").exit_code == 2);
  CHECK(run_cli("sums --id bogus").exit_code == 2);
  CHECK(run_cli("sums --id psi-quad --k 10").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("sums command meets identity tolerances") {
  const auto r = run_cli("sums --id psi-quartic --k 10000");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][0] == "psi-quartic");
  CHECK(num(rows[1][8]) <= 1e-8);
}

TEST_CASE("sums --id all emits one row per identity") {
  const auto r = run_cli("sums --id all --k 200 --format json");
  CHECK(r.exit_code == 0);
  const json j = json::parse(r.out);
  REQUIRE(j.size() == 6);
  std::vector<std::string> ids;
  for (const auto& row : j) ids.push_back(row["id"].get<std::string>());
  for (const auto& want : {"psi-quad-shift", "psi-quad", "psi-quad-minus1",
                           "psi-quartic", "psig-quad", "psig-quartic"}) {
    CHECK(std::count(ids.begin(), ids.end(), want) == 1);
  }
}

TEST_CASE("extrema command") {
  const auto r = run_cli("extrema --n-max 0");
  CHECK(r.exit_code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 3);
  CHECK(std::abs(num(rows[1][1]) - 0.290957) <= 5e-6);
  CHECK(rows[1][2] == "max");
  CHECK(std::abs(num(rows[2][1]) - 1.53769) <= 5e-5);
  CHECK(rows[2][2] == "min");

  const auto rj = run_cli("extrema --n-max 5 --format json");
  CHECK(rj.exit_code == 0);
  const json j = json::parse(rj.out);
  REQUIRE(j.is_array());
  CHECK(j.size() == 12);  // positive pair + two roots per window
  double prev_gap = 1.0;
  for (const auto& row : j) {
    if (row["n"].get<int>() >= 2 && !row["gap"].is_null()) {
      CHECK(row["gap"].get<double>() < prev_gap);
      prev_gap = row["gap"].get<double>();
    }
  }
}

TEST_CASE("byte-identical output across thread counts and reruns") {
  const auto a = run_cli("zeros --family psig --k-max 60 --threads 1");
  const auto b = run_cli("zeros --family psig --k-max 60 --threads 2");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);

  const auto s1 = run_cli("sums --id psi-quad --k 100 --threads 2");
  const auto s2 = run_cli("sums --id psi-quad --k 100 --threads 1");
  CHECK(s1.exit_code == 0);
  CHECK(s1.out == s2.out);
}

TEST_CASE("--out writes the same bytes atomically") {
  const fs::path target = scratch_dir() / "zeros.csv";
  const auto direct = run_cli("zeros --family psi --k-max 7");
  const auto filed = run_cli("zeros --family psi --k-max 7 --out \"" + target.string() + "\"");
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(target) == direct.out);
}

TEST_CASE("zero-table cache reuse is byte-identical") {
  const fs::path cache = scratch_dir() / "cache";
  fs::create_directories(cache);
  const std::string env = "DIGAMMA_ZEROS_CACHE=\"" + cache.string() + "\"";

  const auto cold = run_cli("zeros --family psig --k-max 30", env);
  CHECK(cold.exit_code == 0);
  const fs::path entry = cache / "psig_k30.csv";
  CHECK(fs::exists(entry));

  const auto warm = run_cli("zeros --family psig --k-max 30", env);
  CHECK(warm.exit_code == 0);
  CHECK(warm.out == cold.out);

  const auto uncached = run_cli("zeros --family psig --k-max 30");
  CHECK(uncached.out == cold.out);

  // cache entries are keyed by k_max: a different table does not collide
  const auto other = run_cli("zeros --family psig --k-max 12", env);
  CHECK(other.exit_code == 0);
  CHECK(fs::exists(cache / "psig_k12.csv"));
}

TEST_CASE("verify failure injection trips the exit code and pass flag") {
  const auto r = run_cli("verify --inject-wrong-constant --threads 2");
  CHECK(r.exit_code == 1);
  const json j = json::parse(r.out);
  CHECK(j["pass"] == false);
  REQUIRE(j["identities"].size() == 6);
  // report completeness: all six identity ids present
  std::vector<std::string> want = {"psi-quad-shift", "psi-quad",  "psi-quad-minus1",
                                   "psi-quartic",    "psig-quad", "psig-quartic"};
  for (const auto& name : want) {
    bool found = false;
    for (const auto& row : j["identities"]) found = found || row["id"] == name;
    CHECK_MESSAGE(found, name);
  }
  CHECK(j["zeros_spot_checks"].size() == 10);
  CHECK(j["products"].size() == 6);
  for (const auto& row : j["identities"]) CHECK(row["within"] == false);
}
