#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string kCriteria = std::string(DEMATEL_DATA_DIR) + "/criteria.csv";
const std::string kSurvey = std::string(DEMATEL_DATA_DIR) + "/survey_synthetic_panel.csv";
const std::string kDrm = std::string(DEMATEL_DATA_DIR) + "/direct_relation.csv";

std::string q(const std::string& s) { return "\"" + s + "\""; }

const fs::path& scratch_root() {
  static const fs::path root = [] {
    fs::path r = fs::temp_directory_path() / "dematel_cli_tests";
    fs::remove_all(r);
    fs::create_directories(r);
    return r;
  }();
  return root;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = scratch_root() / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::string();
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_text(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out_file = scratch_root() / ("stdout_" + std::to_string(counter) + ".txt");
  const fs::path err_file = scratch_root() / ("stderr_" + std::to_string(counter) + ".txt");
  ++counter;

  std::string cmd = q(DEMATEL_CLI_PATH) + " " + args + " >" + q(out_file.string()) + " 2>" +
                    q(err_file.string());
  int rc = std::system(cmd.c_str());
  CliResult result;
  if (rc != -1 && WIFEXITED(rc)) result.exit_code = WEXITSTATUS(rc);
  result.out = read_text(out_file);
  result.err = read_text(err_file);
  return result;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

std::vector<std::string> tokenize(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> tokens;
  std::string token;
  while (in >> token) tokens.push_back(token);
  return tokens;
}

// First stdout table row whose leading token is `code`.
std::vector<std::string> find_row(const std::string& out, const std::string& code) {
  std::istringstream in(out);
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = tokenize(line);
    if (!tokens.empty() && tokens[0] == code) return tokens;
  }
  return {};
}

}  // namespace

TEST_CASE("validate accepts the shipped survey") {
  CliResult r = run_cli("validate --criteria " + q(kCriteria) + " --survey " + q(kSurvey));
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "expert E01: 90 cells, ok"));
  CHECK(contains(r.out, "expert E10: 90 cells, ok"));
  CHECK(contains(r.out, "10 experts, 10 criteria, complete"));
  CHECK(r.err.empty());
}

TEST_CASE("validate rejects an out-of-scale score and names the expert") {
  fs::path dir = fresh_dir("validate_bad");
  write_text(dir / "criteria.csv", "K1,First\nK2,Second\n");
  write_text(dir / "survey.csv", "expert_id,from,to,score\nE9,K1,K2,9\nE9,K2,K1,1\n");

  CliResult r = run_cli("validate --criteria " + q((dir / "criteria.csv").string()) +
                        " --survey " + q((dir / "survey.csv").string()));
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "error:"));
  CHECK(contains(r.err, "E9"));
  CHECK(contains(r.err, "9"));
}

TEST_CASE("validate reports unreadable inputs") {
  CliResult r = run_cli("validate --criteria /no/such/file.csv --survey " + q(kSurvey));
  CHECK(r.exit_code == 1);
  CHECK(contains(r.err, "cannot read"));
}

TEST_CASE("analyze on the aggregated matrix prints the published summary") {
  fs::path dir = fresh_dir("analyze_drm");
  CliResult r = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) + " --out " +
                        q(dir.string()));
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "alpha = 0.975256"));

  auto header = find_row(r.out, "code");
  CHECK(header == std::vector<std::string>{"code", "D", "R", "D+R", "D-R", "group"});
  auto c1 = find_row(r.out, "C1");
  CHECK(c1 == std::vector<std::string>{"C1", "10.4620", "9.0393", "19.5012", "1.4227", "cause"});
  auto c4 = find_row(r.out, "C4");
  REQUIRE(c4.size() == 6);
  CHECK(c4[5] == "effect");

  REQUIRE(fs::exists(dir / "report.json"));
  REQUIRE(fs::exists(dir / "digraph.dot"));
  REQUIRE(fs::exists(dir / "scatter.csv"));
  CHECK(contains(read_text(dir / "scatter.csv"), "C1,19.50125,1.4226752,cause"));
  CHECK(contains(read_text(dir / "digraph.dot"), "\"C2\" -> \"C1\" [label=\"0.9975\""));
}

TEST_CASE("analyze output is byte-identical across runs and input routes") {
  fs::path dir1 = fresh_dir("repeat_1");
  fs::path dir2 = fresh_dir("repeat_2");
  fs::path dir3 = fresh_dir("repeat_survey");

  CliResult r1 = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) + " --out " +
                         q(dir1.string()));
  CliResult r2 = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) + " --out " +
                         q(dir2.string()));
  CliResult r3 = run_cli("analyze --criteria " + q(kCriteria) + " --survey " + q(kSurvey) +
                         " --out " + q(dir3.string()));
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  REQUIRE(r3.exit_code == 0);

  CHECK(r1.out == r2.out);
  for (const char* name : {"report.json", "digraph.dot", "scatter.csv"}) {
    CAPTURE(name);
    CHECK(read_text(dir1 / name) == read_text(dir2 / name));
  }
  // The shipped survey aggregates to the shipped matrix, so the survey route
  // must produce the identical report.
  CHECK(read_text(dir3 / "report.json") == read_text(dir1 / "report.json"));
  CHECK(r3.out == r1.out);
}

TEST_CASE("analyze requires exactly one input route") {
  CliResult neither = run_cli("analyze --criteria " + q(kCriteria));
  CHECK(neither.exit_code != 0);
  CHECK(contains(neither.err, "--survey"));

  CliResult both = run_cli("analyze --criteria " + q(kCriteria) + " --survey " + q(kSurvey) +
                           " --drm " + q(kDrm) + " --out " +
                           q(fresh_dir("both_routes").string()));
  CHECK(both.exit_code != 0);
  CHECK(contains(both.err, "excludes"));
}

TEST_CASE("an alpha override above every entry empties the digraph") {
  fs::path dir = fresh_dir("override_high");
  CliResult r = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) +
                        " --alpha-override 99 --out " + q(dir.string()));
  REQUIRE(r.exit_code == 0);

  nlohmann::json doc = nlohmann::json::parse(read_text(dir / "report.json"));
  CHECK(doc["cut_threshold"].get<double>() == 99.0);
  CHECK(doc["alpha"].get<double>() == doctest::Approx(0.9752).epsilon(1e-3));
  CHECK(doc["edges"].empty());
  CHECK(!contains(read_text(dir / "digraph.dot"), "->"));
}

TEST_CASE("a negative alpha override is a usage error") {
  CliResult r = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) +
                        " --alpha-override -1 --out " + q(fresh_dir("override_neg").string()));
  CHECK(r.exit_code != 0);
  CHECK(contains(r.err, "--alpha-override"));
}

TEST_CASE("row-max normalization divides by the largest row sum") {
  fs::path dir = fresh_dir("row_max");
  CliResult r = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) +
                        " --norm row-max --out " + q(dir.string()));
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(read_text(dir / "report.json"));
  CHECK(doc["s"].get<double>() == 23.6);
}

TEST_CASE("explicit strength bounds partition the edge weights") {
  fs::path dir = fresh_dir("bounds");
  CliResult r = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) +
                        " --strength-bounds 1.0,1.05 --out " + q(dir.string()));
  REQUIRE(r.exit_code == 0);
  nlohmann::json doc = nlohmann::json::parse(read_text(dir / "report.json"));
  REQUIRE(!doc["edges"].empty());
  for (const auto& edge : doc["edges"]) {
    double w = edge["weight"].get<double>();
    std::string strength = edge["strength"].get<std::string>();
    if (w >= 1.05) {
      CHECK(strength == "strong");
    } else if (w >= 1.0) {
      CHECK(strength == "moderate");
    } else {
      CHECK(strength == "weak");
    }
  }
}

TEST_CASE("unperturbed sensitivity recovers the deterministic partition") {
  fs::path dir = fresh_dir("sens_flip0");
  fs::path out = dir / "stability.csv";
  CliResult r = run_cli("sensitivity --criteria " + q(kCriteria) + " --survey " + q(kSurvey) +
                        " --trials 50 --flip-probability 0 --out " + q(out.string()));
  REQUIRE(r.exit_code == 0);
  CHECK(r.err.empty());  // no degenerate trials to report
  CHECK(read_text(out) ==
        "code,cause_probability\n"
        "C1,1\nC2,1\nC3,1\nC4,0\nC5,0\nC6,0\nC7,0\nC8,0\nC9,0\nC10,1\n");
}

TEST_CASE("sensitivity output is reproducible and thread-count independent") {
  fs::path dir = fresh_dir("sens_threads");
  auto run = [&](const std::string& name, const std::string& extra) {
    fs::path out = dir / name;
    CliResult r = run_cli("sensitivity --criteria " + q(kCriteria) + " --survey " + q(kSurvey) +
                          " --trials 80 --flip-probability 0.25 --seed 11 " + extra + " --out " +
                          q(out.string()));
    REQUIRE(r.exit_code == 0);
    return read_text(out);
  };
  std::string one = run("t1.csv", "--threads 1");
  std::string four = run("t4.csv", "--threads 4");
  std::string four_again = run("t4b.csv", "--threads 4");
  CHECK(one == four);
  CHECK(four == four_again);
  CHECK(contains(one, "C1,"));
}

TEST_CASE("sensitivity requires a positive trial count") {
  CliResult r = run_cli("sensitivity --criteria " + q(kCriteria) + " --survey " + q(kSurvey) +
                        " --trials 0 --flip-probability 0.5");
  CHECK(r.exit_code != 0);
  CHECK(contains(r.err, "--trials"));
}

TEST_CASE("digraph and scatter re-export from the saved report byte-identically") {
  fs::path dir = fresh_dir("reexport");
  CliResult analyze = run_cli("analyze --criteria " + q(kCriteria) + " --drm " + q(kDrm) +
                              " --out " + q(dir.string()));
  REQUIRE(analyze.exit_code == 0);

  fs::path dot_out = dir / "re.dot";
  fs::path scatter_out = dir / "re.csv";
  CliResult dot = run_cli("digraph --report " + q((dir / "report.json").string()) + " --out " +
                          q(dot_out.string()));
  CliResult scatter = run_cli("scatter --report " + q((dir / "report.json").string()) + " --out " +
                              q(scatter_out.string()));
  REQUIRE(dot.exit_code == 0);
  REQUIRE(scatter.exit_code == 0);
  CHECK(read_text(dot_out) == read_text(dir / "digraph.dot"));
  CHECK(read_text(scatter_out) == read_text(dir / "scatter.csv"));
}

TEST_CASE("usage errors exit nonzero and help exits zero") {
  CHECK(run_cli("frobnicate").exit_code != 0);
  CHECK(run_cli("").exit_code != 0);

  CliResult help = run_cli("--help");
  CHECK(help.exit_code == 0);
  CHECK(contains(help.out, "analyze"));
  CHECK(contains(help.out, "sensitivity"));
}
