// Drives the installed command-line binary end to end: JSON report content,
// file artifacts, exit-code conventions, and byte-identical replay of every
// sampling command. The binary path is injected by the build as
// FREEREG_CLI_PATH.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cmath>
#include <filesystem>
#include <string>

#include "freereg/calculus.hpp"
#include "freereg/parser.hpp"
#include "freereg/poly.hpp"
#include "freereg/serialize.hpp"
#include "helpers.hpp"

using nlohmann::json;
using testutil::CmdResult;

namespace {

std::string cli() { return testutil::shell_quote(FREEREG_CLI_PATH); }

CmdResult run_cli(const std::string& args) { return testutil::run_cmd(cli() + " " + args); }

// Scratch directory for --out artifacts, one per test process.
std::string scratch(const std::string& leaf) {
  static std::filesystem::path dir = [] {
    std::filesystem::path d =
        std::filesystem::temp_directory_path() / ("freereg_cli_" + std::to_string(getpid()));
    std::filesystem::create_directories(d);
    return d;
  }();
  return (dir / leaf).string();
}

json load_json(const std::string& path) { return json::parse(testutil::slurp_file(path)); }

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

int count_occurrences(const std::string& text, const std::string& needle) {
  int n = 0;
  for (std::size_t at = text.find(needle); at != std::string::npos;
       at = text.find(needle, at + needle.size()))
    ++n;
  return n;
}

}  // namespace

TEST_CASE("derive reports quotients, the number operator, grading, and twists") {
  std::string out = scratch("derive.json");
  CmdResult r = run_cli("derive 'x1*x2*x1' --out " + testutil::shell_quote(out));
  REQUIRE(r.exit_code == 0);

  json report = load_json(out);
  CHECK(report["schema_version"] == 1);
  CHECK(report["command"] == "derive");
  CHECK(report["expr"] == "x1*x2*x1");
  CHECK(report["n"] == 2);

  freereg::NcPoly p = freereg::parse_poly("x1*x2*x1");
  REQUIRE(report["derivatives"].size() == 2);
  CHECK(report["derivatives"][0]["j"] == 1);
  CHECK(report["derivatives"][0]["tensor"] == freereg::tensor_to_json(freereg::diff(p, 1)));
  CHECK(report["derivatives"][1]["tensor"] == freereg::tensor_to_json(freereg::diff(p, 2)));
  CHECK(report["number_op"] == freereg::poly_to_json(freereg::number_op(p)));

  REQUIRE(report["homogeneous"].size() == 1);  // the word is homogeneous of degree 3
  CHECK(report["homogeneous"][0]["m"] == 3);
  REQUIRE(report["twists"].size() == 8);
  CHECK(report["twists"][0]["t"] == 0.0);
  CHECK(report["twists"][4]["t"] == 0.5);

  // without --out the same report lands on stdout
  CmdResult direct = run_cli("derive 'x1'");
  REQUIRE(direct.exit_code == 0);
  json stream = json::parse(direct.output);
  CHECK(stream["command"] == "derive");
  CHECK(stream["derivatives"].size() == 1);

  // --j restricts to a single quotient; out-of-range indices are user errors
  CmdResult only = run_cli("derive 'x1*x2*x1' --j 2");
  REQUIRE(only.exit_code == 0);
  json one = json::parse(only.output);
  REQUIRE(one["derivatives"].size() == 1);
  CHECK(one["derivatives"][0]["j"] == 2);
  CHECK(run_cli("derive 'x1*x2*x1' --j 3").exit_code == 2);
}

TEST_CASE("check verifies the derivation identities and reports each line") {
  std::string out = scratch("check.json");
  CmdResult r = run_cli("check 'x1*x2 + x2*x1' --exact-N 2 --float-N 30 --seed 7 --out " +
                        testutil::shell_quote(out));
  REQUIRE(r.exit_code == 0);
  CHECK(count_occurrences(r.output, "[PASS]") == 8);
  CHECK(count_occurrences(r.output, "[FAIL]") == 0);

  json report = load_json(out);
  CHECK(report["all_pass"] == true);
  REQUIRE(report["checks"].size() == 8);
  for (const auto& row : report["checks"]) CHECK(row["pass"] == true);
}

TEST_CASE("simulate writes three artifacts and replays byte-identically") {
  auto simulate = [&](const std::string& base, const std::string& env,
                      const std::string& seed) {
    CmdResult r = testutil::run_cmd(env + cli() + " simulate 'x1+x2' --N 60 --trials 3 --seed " +
                                    seed + " --bins 32 --out " + testutil::shell_quote(base));
    REQUIRE(r.exit_code == 0);
  };

  std::string a = scratch("simA"), b = scratch("simB"), c = scratch("simC"), d = scratch("simD");
  simulate(a, "", "11");
  simulate(b, "", "11");
  simulate(c, "FREEREG_THREADS=3 ", "11");
  simulate(d, "", "12");

  std::string measure = testutil::slurp_file(a + ".measure.csv");
  std::string hist = testutil::slurp_file(a + ".hist.csv");
  std::string meta = testutil::slurp_file(a + ".meta.json");
  REQUIRE(!measure.empty());
  REQUIRE(!hist.empty());
  REQUIRE(!meta.empty());
  CHECK(count_lines(measure) == 1 + 60 * 3);  // header + one eigenvalue per line
  CHECK(count_lines(hist) == 1 + 32);

  // same seed: identical bytes, with or without a thread cap
  CHECK(testutil::slurp_file(b + ".measure.csv") == measure);
  CHECK(testutil::slurp_file(b + ".hist.csv") == hist);
  CHECK(testutil::slurp_file(b + ".meta.json") == meta);
  CHECK(testutil::slurp_file(c + ".measure.csv") == measure);
  CHECK(testutil::slurp_file(c + ".hist.csv") == hist);
  CHECK(testutil::slurp_file(c + ".meta.json") == meta);
  CHECK(testutil::slurp_file(d + ".measure.csv") != measure);

  json parsed = load_json(a + ".meta.json");
  CHECK(parsed["command"] == "simulate");
  CHECK(parsed["bins"] == 32);
  CHECK(parsed["measure"]["seed"] == 11);
  CHECK(parsed["measure"]["points"] == 180);
  REQUIRE(parsed["support"].size() == 2);
  CHECK(double(parsed["support"][0]) < double(parsed["support"][1]));
}

TEST_CASE("moments reports exact rationals beside the sampled values") {
  std::string out = scratch("moments.json");
  CmdResult r = run_cli("moments 'x1' --k 4 --N 50 --trials 2 --seed 3 --out " +
                        testutil::shell_quote(out));
  REQUIRE(r.exit_code == 0);

  json report = load_json(out);
  CHECK(report["k"] == 4);
  CHECK(report["N"] == 50);
  CHECK(report["trials"] == 2);
  CHECK(report["seed"] == 3);
  REQUIRE(report["moments"].size() == 4);
  const char* expected[] = {"0/1", "1/1", "0/1", "2/1"};
  for (int j = 0; j < 4; ++j) {
    CHECK(report["moments"][j]["order"] == j + 1);
    CHECK(report["moments"][j]["exact"] == expected[j]);
    CHECK(std::abs(double(report["moments"][j]["exact_float"]) -
                   double(report["moments"][j]["sampled"])) ==
          doctest::Approx(double(report["moments"][j]["gap"])).epsilon(1e-12));
  }
  CHECK(double(report["max_gap"]) < 0.75);

  CmdResult anti = run_cli("moments 'x1*x2 + x2*x1' --k 2 --N 40 --trials 2");
  REQUIRE(anti.exit_code == 0);
  json stream = json::parse(anti.output);
  CHECK(stream["moments"][0]["exact"] == "0/1");
  CHECK(stream["moments"][1]["exact"] == "2/1");

  // the trace-table option must point at a readable file
  CHECK(run_cli("moments 'x1' --k 2 --trace-table /nonexistent/table.json").exit_code == 2);
}

TEST_CASE("entropy reports the pairwise log-energy and flags atomic spectra") {
  std::string out = scratch("entropy.json");
  CmdResult r = run_cli("entropy 'x1' --N 80 --trials 3 --seed 5 --out " +
                        testutil::shell_quote(out));
  REQUIRE(r.exit_code == 0);

  json report = load_json(out);
  REQUIRE(report["log_energy"].is_number());
  double e = report["log_energy"];
  CHECK(e > -0.6);  // the semicircle value is -1/4; this run is a small sample
  CHECK(e < 0.1);
  CHECK(double(report["chi"]) == doctest::Approx(e + double(report["constant"])).epsilon(1e-12));
  CHECK(double(report["constant"]) ==
        doctest::Approx(0.75 + 0.5 * std::log(2.0 * M_PI)).epsilon(1e-12));
  CHECK(report["atom_warning"] == false);
  CHECK(report["pair_count"] == 240 * 239);  // ordered pairs, diagonal excluded

  // constants give a purely atomic spectrum: sentinel string, not a number
  CmdResult atomic = run_cli("entropy '1' --N 40 --trials 2");
  REQUIRE(atomic.exit_code == 0);
  json flat = json::parse(atomic.output);
  CHECK(flat["log_energy"] == "-inf");
  CHECK(flat["chi"] == "-inf");
  CHECK(flat["atom_warning"] == true);
}

TEST_CASE("decay fits the local mass exponent and refuses empty windows") {
  std::string out = scratch("decay.json");
  CmdResult r = run_cli("decay 'x1' --t 0.0 --N 150 --trials 3 --seed 9 --eps-count 6 --out " +
                        testutil::shell_quote(out));
  REQUIRE(r.exit_code == 0);

  json report = load_json(out);
  CHECK(report["t"] == 0.0);
  CHECK(report["two_sided"] == true);
  REQUIRE(report["eps"].size() == 6);
  REQUIRE(report["masses"].size() == 6);
  double alpha = report["alpha_hat"];
  CHECK(std::isfinite(alpha));
  CHECK(alpha > 0.3);  // interior point of an absolutely continuous law
  CHECK(alpha < 1.7);
  CHECK(int(report["points_used"]) >= 2);

  CmdResult sided = run_cli("decay 'x1*x1' --t 0.0 --one-sided --N 150 --trials 3 --seed 9");
  REQUIRE(sided.exit_code == 0);
  CHECK(json::parse(sided.output)["two_sided"] == false);

  // far outside the support every window is empty: a resource error, not a report
  CmdResult sparse = run_cli("decay 'x1' --t 9.0 --N 60 --trials 2");
  CHECK(sparse.exit_code == 3);
  CHECK(sparse.output.find("error:") != std::string::npos);
}

TEST_CASE("atoms scan flags the two-point control and clears the semicircle") {
  std::string out = scratch("atoms.json");
  CmdResult r = run_cli("atoms --control --N 200 --trials 2 --seed 13 --eps 0.001 --out " +
                        testutil::shell_quote(out));
  REQUIRE(r.exit_code == 0);

  json report = load_json(out);
  CHECK(report["expr"] == "bernoulli");
  CHECK(report["flagged"] == true);
  CHECK(double(report["max_mass"]) == doctest::Approx(0.5).epsilon(0.1));
  CHECK(double(report["threshold"]) ==
        doctest::Approx(5.0 * std::pow(0.001, 0.4)).epsilon(1e-12));
  REQUIRE(report["window"].size() == 2);

  CmdResult clear = run_cli("atoms 'x1' --N 200 --trials 2 --seed 13 --eps 0.05");
  REQUIRE(clear.exit_code == 0);
  json smooth = json::parse(clear.output);
  CHECK(smooth["flagged"] == false);
  CHECK(double(smooth["max_mass"]) < 0.2);

  // an expression or --control is required
  CHECK(run_cli("atoms --N 50").exit_code == 2);
}

TEST_CASE("exit codes separate user errors from resource errors") {
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("").exit_code == 2);              // a subcommand is required
  CHECK(run_cli("frobnicate").exit_code == 2);    // unknown subcommand
  CHECK(run_cli("derive").exit_code == 2);        // missing expression
  CHECK(run_cli("derive 'x1' --bogus").exit_code == 2);
  CHECK(run_cli("moments 'x1' --k 0").exit_code == 2);
  CHECK(run_cli("simulate 'x1'").exit_code == 2);  // simulate requires --out
  CHECK(run_cli("simulate 'x1*x2' --out " + testutil::shell_quote(scratch("nonsa"))).exit_code ==
        2);  // not self-adjoint

  // malformed expressions carry the byte offset through to stderr
  CmdResult bad = run_cli("derive 'x1 + '");
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("(at byte 5)") != std::string::npos);

  // a product that would expand past the term budget is a resource error
  CmdResult huge = run_cli("derive '(x1+x2)^25'");
  CHECK(huge.exit_code == 3);
  CHECK(huge.output.find("error:") != std::string::npos);
}

TEST_CASE("every sampling command replays byte-identically under a fixed seed") {
  struct Probe {
    const char* name;
    std::string args;
  };
  const Probe probes[] = {
      {"moments", "moments 'x1+x2' --k 4 --N 40 --trials 2 --seed 21 --out "},
      {"entropy", "entropy 'x1' --N 40 --trials 2 --seed 21 --out "},
      {"decay", "decay 'x1' --t 0.0 --N 60 --trials 2 --seed 21 --out "},
      {"atoms", "atoms --control --N 60 --trials 2 --seed 21 --eps 0.01 --out "},
  };
  for (const Probe& probe : probes) {
    CAPTURE(probe.name);
    std::string first = scratch(std::string(probe.name) + "_first.json");
    std::string second = scratch(std::string(probe.name) + "_second.json");
    REQUIRE(run_cli(probe.args + testutil::shell_quote(first)).exit_code == 0);
    REQUIRE(run_cli(probe.args + testutil::shell_quote(second)).exit_code == 0);
    std::string bytes = testutil::slurp_file(first);
    REQUIRE(!bytes.empty());
    CHECK(bytes == testutil::slurp_file(second));
  }
}
