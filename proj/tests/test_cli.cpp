#include "aspmtqs/cli/commands.hpp"
#include "aspmtqs/cli/compose.hpp"
#include "aspmtqs/cli/pipeline.hpp"
#include "aspmtqs/cli/report.hpp"
#include "aspmtqs/cli/svg.hpp"
#include "aspmtqs/spatial/catalog.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace aspmtqs;

namespace {

std::string scenario(const std::string& name) {
  return (std::filesystem::path(ASPMTQS_SCENARIOS) / (name + ".aspmtqs")).string();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

bool have_solver() {
  try {
    smt::resolve_solver(std::nullopt);
    return true;
  } catch (const SolverError&) {
    return false;
  }
}

std::string temp_program(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

const char* kCycle =
    ":- sorts s. :- objects a :: s. :- constants intensional p(s), q(s) :: boolean.\n"
    "p(a) <- q(a). q(a) <- p(a).\n";

}  // namespace

#define REQUIRE_SOLVER() \
  if (!have_solver()) GTEST_SKIP() << "no SMT solver available"

TEST(Command, ScenarioExitCodes) {
  REQUIRE_SOLVER();
  EXPECT_EQ(run({"solve", scenario("example1")}).code, cli::kSat);
  EXPECT_EQ(run({"solve", scenario("example1_equal_radii")}).code, cli::kUnsat);
  EXPECT_EQ(run({"entail", scenario("growth"), "rccEC(a, c, 1)"}).code, cli::kSat);
  EXPECT_EQ(run({"entail", scenario("motion"), "rccEC(a, c, 1)"}).code, cli::kUnsat);
  EXPECT_EQ(run({"entail", scenario("attach2"), "detach(car, trailer, 0)"}).code, cli::kSat);
}

TEST(Command, UsageAndPipelineErrors) {
  EXPECT_EQ(run({}).code, cli::kError);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kError);
  Outcome missing = run({"solve", "/nonexistent/program.aspmtqs"});
  EXPECT_EQ(missing.code, cli::kError);
  EXPECT_NE(missing.err.find("parse"), std::string::npos) << missing.err;
  Outcome bad = run({"solve", temp_program("aspmtqs_bad.aspmtqs", ":- sorts s. p(")});
  EXPECT_EQ(bad.code, cli::kError);
  EXPECT_NE(bad.err.find("1:"), std::string::npos) << bad.err;
  Outcome query = run({"entail", scenario("example1"), "rccZZ(a, b)"});
  EXPECT_EQ(query.code, cli::kError);
}

TEST(Command, TextReport) {
  REQUIRE_SOLVER();
  Outcome r = run({"solve", scenario("example1")});
  EXPECT_EQ(r.out.rfind("verdict: sat\n", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("timings (ms): parse="), std::string::npos);
  EXPECT_NE(r.out.find("  r(a) = "), std::string::npos);
  EXPECT_NE(r.out.find("  rccPP(a, c) = true"), std::string::npos);
}

TEST(Command, JsonReport) {
  REQUIRE_SOLVER();
  Outcome r = run({"solve", scenario("example1"), "--json"});
  ASSERT_EQ(r.code, cli::kSat);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["command"], "solve");
  EXPECT_EQ(j["verdict"], "sat");
  ASSERT_EQ(j["timings_ms"].size(), 4u);
  EXPECT_EQ(j["timings_ms"][0]["phase"], "parse");
  EXPECT_TRUE(j["model"]["reals"].contains("r(c)"));
  EXPECT_TRUE(j["model"]["reals"]["r(c)"].contains("approximate"));
  EXPECT_EQ(j["model"]["booleans"]["rccPP(a, c)"], true);
  EXPECT_TRUE(j["warnings"].is_array());

  Outcome e = run({"entail", scenario("growth"), "rccEC(a, c, 1)", "--json"});
  auto je = nlohmann::json::parse(e.out);
  EXPECT_EQ(je["verdict"], "entailed");
  EXPECT_TRUE(je["model"].is_null());
}

TEST(Command, OracleCommand) {
  std::string file = temp_program("aspmtqs_oracle.aspmtqs",
                                  ":- sorts s. :- objects a :: s.\n"
                                  ":- constants intensional p(s), q(s) :: boolean.\n"
                                  "p(a) <- not q(a). q(a) <- not p(a).\n");
  Outcome r = run({"oracle", file, "--json"});
  ASSERT_EQ(r.code, cli::kSat) << r.err;
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["models"].size(), 2u);
  EXPECT_EQ(run({"oracle", file, "--bound", "2"}).code, cli::kError);
}

TEST(Command, DumpGroundAndCheckTight) {
  Outcome tight = run({"solve", scenario("example1"), "--check-tight"});
  EXPECT_EQ(tight.code, cli::kSat);
  EXPECT_NE(tight.out.find("digraph dependencies {"), std::string::npos);
  EXPECT_NE(tight.out.find("tight: yes"), std::string::npos);

  Outcome loop = run({"solve", temp_program("aspmtqs_cycle.aspmtqs", kCycle), "--check-tight"});
  EXPECT_EQ(loop.code, cli::kUnsat);
  EXPECT_NE(loop.out.find("\"p(a)\" -> \"q(a)\""), std::string::npos);
  EXPECT_NE(loop.out.find("tight: no; cycle: p(a) -> q(a) -> p(a)"), std::string::npos) << loop.out;

  Outcome dump = run({"solve", scenario("example1"), "--dump-ground", "-", "--check-tight"});
  EXPECT_NE(dump.out.find(":- objects a :: circle;"), std::string::npos) << dump.out;
}

TEST(Pipeline, PhaseErrorsNameTheirPhase) {
  auto phase_of = [](const std::string& src) {
    try {
      cli::compile(src);
    } catch (const cli::PhaseError& e) {
      return e.phase();
    }
    return std::string("none");
  };
  EXPECT_EQ(phase_of(":- sorts s. p("), "parse");
  EXPECT_EQ(phase_of(":- sorts s. :- objects a :: s. :- constants intensional f(s) :: real.\n"
                     ":- variables Y :: real.\n<- Y > 0."),
            "ground");
  EXPECT_EQ(phase_of(kCycle), "complete");
  EXPECT_EQ(phase_of(":- sorts interval. :- objects i, j :: interval. rccEC(i, j)."), "ground");
}

TEST(Svg, ThreeCircles) {
  REQUIRE_SOLVER();
  auto c = cli::compile(std::string(":- sorts circle. :- objects a, b, c :: circle.\n"
                                    "rccDR(a, b). rccDR(b, c). rccPP(a, c).\n"));
  smt::SolverConfig cfg;
  cfg.path = smt::resolve_solver(std::nullopt);
  auto r = smt::run_solver(cli::script_for(c), cfg);
  ASSERT_TRUE(r.model);
  std::string svg = cli::render_svg(c.program, *r.model);
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  std::size_t circles = 0;
  for (std::size_t at = svg.find("<circle"); at != std::string::npos; at = svg.find("<circle", at + 1)) ++circles;
  EXPECT_EQ(circles, 3u);
  for (const char* id : {"id=\"a\"", "id=\"b\"", "id=\"c\""}) EXPECT_NE(svg.find(id), std::string::npos);
  EXPECT_NE(svg.find("viewBox="), std::string::npos);
}

TEST(Svg, NothingToDraw) {
  auto c = cli::compile(std::string(":- sorts circle. :- objects a :: circle.\n"));
  EXPECT_THROW(cli::render_svg(c.program, smt::Model{}), Error);
  auto i = cli::compile(std::string(":- sorts interval. :- objects i :: interval.\n"));
  smt::Model m;
  m.reals["lo(i)"] = {0, false, "0"};
  m.reals["hi(i)"] = {1, false, "1"};
  EXPECT_THROW(cli::render_svg(i.program, m), SpatialError);
}

TEST(Svg, StepArgumentSelectsTheState) {
  REQUIRE_SOLVER();
  Outcome r = run({"svg", scenario("growth"), "--step", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("<circle"), std::string::npos);
}

TEST(Compose, EqualityIsTheIdentity) {
  REQUIRE_SOLVER();
  cli::CompositionOptions o;
  o.base = "rcc5";
  o.solver.path = smt::resolve_solver(std::nullopt);
  o.solver.timeout_s = 30;
  o.jobs = 4;
  for (const auto& rel : spatial::base_set("rcc5")) {
    auto r = cli::compose("rccEQ", rel, o);
    EXPECT_EQ(r.members(), (std::vector<std::string>{rel}));
    EXPECT_TRUE(r.complete());
    for (const auto& cand : r.candidates)
      if (cand.verdict == smt::Verdict::Sat) {
        EXPECT_TRUE(cand.confirmed) << rel;
      }
  }
}

TEST(Compose, BeforeIsTransitive) {
  REQUIRE_SOLVER();
  cli::CompositionOptions o;
  o.solver.path = smt::resolve_solver(std::nullopt);
  o.jobs = 4;
  auto r = cli::compose("before", "before", o);
  EXPECT_EQ(r.base, "ia");
  EXPECT_EQ(r.members(), (std::vector<std::string>{"before"}));
  ASSERT_TRUE(r.complete());
  auto meets = cli::compose("meets", "meets", o);
  EXPECT_EQ(meets.members(), (std::vector<std::string>{"before"}));
}

TEST(Compose, MixedCatalogsAreRejected) {
  cli::CompositionOptions o;
  EXPECT_THROW(cli::compose("before", "rccPO", o), Error);
  EXPECT_THROW(cli::compose("nonsense", "before", o), Error);
}

TEST(Tool, ExecutableExitCode) {
  REQUIRE_SOLVER();
  std::string cmd = std::string("\"") + ASPMTQS_TOOL + "\" solve \"" + scenario("example1_equal_radii") + "\" > /dev/null";
  int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), cli::kUnsat);
}
