#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <vector>

#include "setflow/io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

// Runs the binary with the given arguments; stderr is folded into `out`.
Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" SETFLOW_BINARY "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

// Minimal well-formedness check: every start tag is closed in order and the
// document has one root element.
bool well_formed_xml(const std::string& doc) {
  std::vector<std::string> stack;
  int roots = 0;
  std::size_t pos = 0;
  while ((pos = doc.find('<', pos)) != std::string::npos) {
    const auto end = doc.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = doc.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (stack.empty()) ++roots;
    if (tag.back() != '/') stack.push_back(name);
  }
  return stack.empty() && roots == 1;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("setflow_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }

  fs::path scenario(const std::string& name, const std::string& extra = "", const std::string& rhs =
                        R"({"kind": "relax_to", "target": {"box": [[-1,1],[-1,1]]}})") {
    const fs::path p = dir / (name + ".json");
    write(p, R"({"grid_n": 64, "T": 4, "h": 0.01, "method": "rk4", "policy": "on_violation", "rhs": )" + rhs +
                 R"(, "initial": {"box": [[2,3],[1,2]]})" + extra + "}");
    return p;
  }

  fs::path dir;
};

}  // namespace

TEST_F(Cli, IntegrateWritesCsvWithContractingDistance) {
  const auto cfg = scenario("relax");
  const auto r = run("integrate " + cfg.string());
  ASSERT_EQ(r.status, 0) << r.out;
  const auto csv = slurp(dir / "relax.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')).substr(0, 30), "t,residual,regularized,v0,v1,v");
  EXPECT_EQ(count(csv, "\n"), 402u);

  std::istringstream dist(slurp(dir / "relax_distance.csv"));
  std::string line;
  std::getline(dist, line);
  EXPECT_EQ(line, "t,dist_to_target");
  double prev = 1e300;
  int rows = 0;
  while (std::getline(dist, line)) {
    const double d = std::stod(line.substr(line.find(',') + 1));
    EXPECT_LT(d, prev);
    prev = d;
    ++rows;
  }
  EXPECT_EQ(rows, 401);
}

TEST_F(Cli, IntegrateSvgsAreWellFormedWithOneElementPerFrame) {
  const auto cfg = scenario("figs");
  ASSERT_EQ(run("integrate " + cfg.string()).status, 0);
  const auto sets = slurp(dir / "figs_sets.svg");
  const auto sup = slurp(dir / "figs_support.svg");
  EXPECT_TRUE(well_formed_xml(sets));
  EXPECT_TRUE(well_formed_xml(sup));
  // frames at 0, 1/4, ..., 4
  EXPECT_EQ(count(sets, "<polygon"), 17u);
  EXPECT_EQ(count(sup, "<polyline"), 17u);
}

TEST_F(Cli, IntegrateIsDeterministic) {
  const auto a = scenario("a");
  const auto b = scenario("b");
  ASSERT_EQ(run("integrate " + a.string()).status, 0);
  ASSERT_EQ(run("integrate " + b.string()).status, 0);
  EXPECT_EQ(slurp(dir / "a.csv"), slurp(dir / "b.csv"));
  EXPECT_EQ(slurp(dir / "a_distance.csv"), slurp(dir / "b_distance.csv"));
  const auto first = slurp(dir / "a.csv");
  ASSERT_EQ(run("integrate " + a.string()).status, 0);
  EXPECT_EQ(slurp(dir / "a.csv"), first);
}

TEST_F(Cli, IntegrateConfigErrors) {
  write(dir / "broken.json", "{\"grid_n\": 64,");
  auto r = run("integrate " + (dir / "broken.json").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("error: config_error:"), std::string::npos);

  write(dir / "h0.json", R"({"grid_n": 64, "T": 1, "h": 0, "rhs": {"kind": "scale"}, "initial": {"box": [[0,1],[0,1]]}})");
  r = run("integrate " + (dir / "h0.json").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("\"h\" must be positive"), std::string::npos);

  EXPECT_EQ(run("integrate " + (dir / "missing.json").string()).status, 2);
  EXPECT_EQ(run("integrate").status, 2);
}

TEST_F(Cli, IntegrateFailureExitsThree) {
  std::string delta = "[";
  for (int i = 0; i < 64; ++i) delta += (i ? ",-5" : "-5");
  delta += "]";
  const auto cfg = scenario("shrink", R"(, "policy": "always")", R"({"kind": "constant", "delta": )" + delta + "}");
  const auto r = run("integrate " + cfg.string());
  EXPECT_EQ(r.status, 3) << r.out;
  EXPECT_NE(r.out.find("error: empty_intersection:"), std::string::npos);
}

TEST_F(Cli, ExampleSummaryAndOutputs) {
  const auto out = dir / "example";
  const auto r = run("example " + out.string());
  ASSERT_EQ(r.status, 0) << r.out;
  EXPECT_NE(r.out.find("classification: FirstType, SecondType, Neither"), std::string::npos) << r.out;
  const auto at = r.out.find("max_closed_form_error ");
  ASSERT_NE(at, std::string::npos);
  EXPECT_LE(std::stod(r.out.substr(at + 22)), 1e-6);

  EXPECT_TRUE(fs::exists(out / "curve1_hukuhara.csv"));
  EXPECT_FALSE(fs::exists(out / "curve1_second_type.csv"));
  EXPECT_TRUE(fs::exists(out / "curve2_second_type.csv"));
  EXPECT_FALSE(fs::exists(out / "curve2_hukuhara.csv"));
  EXPECT_FALSE(fs::exists(out / "curve3_hukuhara.csv"));
  EXPECT_FALSE(fs::exists(out / "curve3_second_type.csv"));
  for (int k = 1; k <= 3; ++k) {
    const std::string p = "curve" + std::to_string(k);
    for (const char* suffix : {"_sets.svg", "_support.svg", "_delta.svg", "_differential.svg"})
      EXPECT_TRUE(well_formed_xml(slurp(out / (p + suffix)))) << p << suffix;
    EXPECT_EQ(count(slurp(out / (p + "_sets.svg")), "<polygon"), 17u);
    EXPECT_EQ(count(slurp(out / (p + "_support.svg")), "<polyline"), 17u);
    EXPECT_EQ(count(slurp(out / (p + "_delta.svg")), "<polyline"), 15u);
  }
  EXPECT_EQ(count(slurp(out / "curve3_differential.svg"), "<polygon"), 0u);
  EXPECT_EQ(count(slurp(out / "curve1_differential.svg"), "<polygon"), 15u);
}

TEST_F(Cli, ExampleThirdDeltaLeavesTheConeInBothSigns) {
  const auto out = dir / "example";
  ASSERT_EQ(run("example " + out.string()).status, 0);
  std::ifstream in(out / "curve3_delta.csv");
  std::vector<double> times;
  std::vector<setflow::Vector<double>> rows;
  setflow::io::read_curve_rows(in, times, rows);
  ASSERT_EQ(rows.size(), 399u);
  const setflow::DirectionGrid<double> grid(64);
  for (const auto& row : rows) {
    const setflow::SupportDelta<double> d(grid, row);
    EXPECT_FALSE(setflow::is_in_cone(d, setflow::cone_tolerance(d.values())).in_cone);
    EXPECT_FALSE(setflow::is_in_cone(-d, setflow::cone_tolerance(d.values())).in_cone);
  }
  std::ifstream classes(out / "curve3_classes.csv");
  std::string line;
  std::getline(classes, line);
  EXPECT_EQ(line, "index,t,class");
}

TEST_F(Cli, ExampleFilesystemErrorExitsFour) {
  write(dir / "file", "x");
  const auto r = run("example " + (dir / "file" / "sub").string());
  EXPECT_EQ(r.status, 4);
  EXPECT_NE(r.out.find("error: io_error:"), std::string::npos);
}

TEST_F(Cli, CheckExampleFieldIsSatisfied) {
  const auto cfg = scenario("field", R"(, "check": {"omega": {"kind": "linear", "L": 1}, "pairs": 100, "state_samples": 64})");
  for (const char* kind : {"subtangent", "osl", "lipschitz", "horizon"}) {
    const auto r = run(std::string("check ") + kind + " " + cfg.string());
    EXPECT_EQ(r.status, 0) << kind << "\n" << r.out;
    EXPECT_TRUE(fs::exists(dir / ("field_" + std::string(kind) + ".csv")));
  }
  const auto sub = run("check subtangent " + cfg.string());
  EXPECT_NE(sub.out.find("contains_lambda_1 yes"), std::string::npos);
  // around sigma_Q itself the field is bounded by the ball radius
  const fs::path at_q = dir / "at_q.json";
  write(at_q, R"({"grid_n": 64, "T": 4, "h": 0.01, "rhs": {"kind": "relax_to", "target": {"box": [[-1,1],[-1,1]]}},
                  "initial": {"box": [[-1,1],[-1,1]]}, "check": {"radius": 1}})");
  const auto hor = run("check horizon " + at_q.string());
  EXPECT_NE(hor.out.find("bound_c 1\nhorizon_b 1\n"), std::string::npos) << hor.out;
}

TEST_F(Cli, CheckExpandingFieldViolatesZeroGrowth) {
  const auto cfg = scenario("expand", R"(, "check": {"omega": "zero", "pairs": 50})", R"({"kind": "scale", "factor": 1})");
  const auto r = run("check osl " + cfg.string());
  EXPECT_EQ(r.status, 1) << r.out;
  EXPECT_NE(r.out.find("witness a=("), std::string::npos);
  const auto csv = slurp(dir / "expand_osl.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,condition,ax,ay,bx,by,direction_index,snap_error,lhs,rhs,gap");
  EXPECT_GT(count(csv, "\n"), 1u);
}

TEST_F(Cli, CheckSeedOverrideChangesSamplesDeterministically) {
  const auto cfg = scenario("seeded", R"(, "check": {"omega": "zero", "pairs": 20})", R"({"kind": "scale", "factor": 1})");
  run("check osl " + cfg.string(), "SETFLOW_SEED=7");
  const auto a = slurp(dir / "seeded_osl.csv");
  run("check osl " + cfg.string(), "SETFLOW_SEED=7");
  EXPECT_EQ(a, slurp(dir / "seeded_osl.csv"));
  const auto r = run("check osl " + cfg.string(), "SETFLOW_SEED=8");
  EXPECT_NE(r.out.find("seed 8"), std::string::npos);
  EXPECT_NE(a, slurp(dir / "seeded_osl.csv"));
}

TEST_F(Cli, CheckErrors) {
  write(dir / "broken.json", "[");
  EXPECT_EQ(run("check osl " + (dir / "broken.json").string()).status, 2);
  EXPECT_EQ(run("check spin " + scenario("x").string()).status, 2);
}

TEST_F(Cli, Hausdorff) {
  write(dir / "a.json", R"({"box": [[2,3],[1,2]]})");
  write(dir / "q.json", R"({"box": [[-1,1],[-1,1]]})");
  auto r = run("hausdorff " + (dir / "a.json").string() + " " + (dir / "q.json").string() + " --n 256");
  ASSERT_EQ(r.status, 0) << r.out;
  const auto exact = std::stod(r.out.substr(r.out.find("exact ") + 6));
  const auto grid = std::stod(r.out.substr(r.out.find("grid_estimate ") + 14));
  EXPECT_NEAR(exact, std::sqrt(13.0), 1e-14);
  EXPECT_LE(grid, exact);
  EXPECT_GT(grid, exact - 1e-3);

  r = run("hausdorff " + (dir / "a.json").string() + " " + (dir / "a.json").string());
  EXPECT_NE(r.out.find("grid_estimate 0\nexact 0\n"), std::string::npos) << r.out;

  write(dir / "p.json", R"({"vertices": [[2,0]]})");
  write(dir / "o.json", R"({"vertices": [[0,0]]})");
  r = run("hausdorff " + (dir / "p.json").string() + " " + (dir / "o.json").string() + " --n 8");
  EXPECT_NE(r.out.find("grid_estimate 2\nexact 2\ngap 0\n"), std::string::npos) << r.out;

  write(dir / "bad.json", R"({"box": 1})");
  r = run("hausdorff " + (dir / "a.json").string() + " " + (dir / "bad.json").string());
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.out.find("error: parse_error:"), std::string::npos);
}
