#include <doctest.h>

#include <json.hpp>

#include "test_util.hpp"

using testutil::TempDir;
using testutil::run_cli;

namespace {

const char* kCheapCrossSection =
    R"({"cross_section": {"resolution": 16, "richardson_resolutions": [8, 16]}})";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("help and version exit cleanly") {
  TempDir dir("cli_help");
  const auto help = run_cli("--help", dir);
  CHECK(help.exit_code == 0);
  CHECK(help.output.find("cross-section") != std::string::npos);
  CHECK(help.output.find("gap-scan") != std::string::npos);

  const auto version = run_cli("--version", dir);
  CHECK(version.exit_code == 0);
  CHECK(version.output.find("1.0.0") != std::string::npos);
}

TEST_CASE("usage errors are config errors (exit 2)") {
  TempDir dir("cli_usage");
  CHECK(run_cli("", dir).exit_code == 2);             // a subcommand is required
  CHECK(run_cli("frobnicate", dir).exit_code == 2);   // unknown subcommand
  CHECK(run_cli("bands --bogus", dir).exit_code == 2);  // unknown flag
  CHECK(run_cli("cross-section --config " + dir.file("missing.json"), dir).exit_code ==
        2);
  testutil::spit(dir.file("broken.json"), "{not json");
  CHECK(run_cli("cross-section --config " + dir.file("broken.json"), dir).exit_code ==
        2);
  testutil::spit(dir.file("bad_key.json"), R"({"cavern": {"color": "red"}})");
  const auto bad = run_cli("cross-section --config " + dir.file("bad_key.json"), dir);
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("color") != std::string::npos);
  testutil::spit(dir.file("ok.json"), "{}");
  CHECK(run_cli("cross-section --config " + dir.file("ok.json") + " --threads 0", dir)
            .exit_code == 2);
}

TEST_CASE("cross-section writes csv, dat, and a self-describing report") {
  TempDir dir("cli_cs");
  testutil::spit(dir.file("c.json"),
                 R"({"cross_section": {"resolution": 16,
                                       "richardson_resolutions": [8, 16]},
                     "output": {"formats": ["csv", "json"], "gnuplot": true}})");
  const auto r = run_cli("cross-section --config " + dir.file("c.json") + " --out " +
                             dir.file("out/nested"),
                         dir);
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  CHECK(r.output.find("M_1 = ") != std::string::npos);

  const auto csv = testutil::slurp(dir.file("out/nested/cross_section.csv"));
  CHECK(csv.rfind("k,M_k\n", 0) == 0);
  const auto dat = testutil::slurp(dir.file("out/nested/cross_section.dat"));
  CHECK(dat.rfind("# k M_k\n", 0) == 0);

  const auto report =
      nlohmann::json::parse(testutil::slurp(dir.file("out/nested/report.json")));
  CHECK(report.at("tool") == "wgband");
  CHECK(report.at("command") == "cross-section");
  CHECK(report.at("config_hash").get<std::string>().rfind("fnv1a64:", 0) == 0);
  CHECK(report.at("modules").size() == 7);
  const double M1 = report.at("results").at("M").at(0).get<double>();
  CHECK(M1 == doctest::Approx(2 * 9.8696044).epsilon(0.02));  // near 2 pi^2
}

TEST_CASE("identical config and seed reproduce identical bytes") {
  TempDir dir("cli_repro");
  testutil::spit(dir.file("c.json"), kCheapCrossSection);
  const std::string base = "cross-section --config " + dir.file("c.json") +
                           " --seed 123 --out ";
  REQUIRE(run_cli(base + dir.file("a"), dir).exit_code == 0);
  REQUIRE(run_cli(base + dir.file("b"), dir).exit_code == 0);
  CHECK(testutil::slurp(dir.file("a/cross_section.csv")) ==
        testutil::slurp(dir.file("b/cross_section.csv")));
  CHECK(testutil::slurp(dir.file("a/report.json")) ==
        testutil::slurp(dir.file("b/report.json")));
  CHECK(!testutil::slurp(dir.file("a/cross_section.csv")).empty());
}

TEST_CASE("verify reports pass lines and fails loudly when asked to") {
  TempDir dir("cli_verify");
  testutil::spit(dir.file("ok.json"),
                 R"({"verify": {"checks": ["coupling_identities"]}})");
  const auto ok = run_cli("verify --config " + dir.file("ok.json") + " --out " +
                              dir.file("vout"),
                          dir);
  INFO(ok.output);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("[PASS] coupling_identities") != std::string::npos);

  // An absurdly small bracketing budget must produce exit code 1.
  testutil::spit(dir.file("fail.json"),
                 R"({"verify": {"checks": ["bracketing"], "eta_points": 9,
                                "bracketing_C_upper": 1e-12},
                     "cavern": {"h": 0.2}})");
  const auto fail = run_cli("verify --config " + dir.file("fail.json") + " --out " +
                                dir.file("vfail"),
                            dir);
  INFO(fail.output);
  CHECK(fail.exit_code == 1);
  CHECK(fail.output.find("[FAIL] bracketing") != std::string::npos);
  CHECK(fail.output.find("verification FAILED") != std::string::npos);
}

}  // TEST_SUITE
