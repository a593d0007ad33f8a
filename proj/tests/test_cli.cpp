#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "polarconv/polarconv.hpp"

using namespace polarconv;

namespace {

const char* cli_path() { return std::getenv("POLARCONV_CLI"); }
const char* configs_dir() { return std::getenv("POLARCONV_CONFIGS"); }

int run_cli(const std::string& args) {
  std::string cmd = std::string("\"") + cli_path() + "\" " + args +
                    " > cli_last_stdout.txt 2> cli_last_stderr.txt";
  int st = std::system(cmd.c_str());
  if (st == -1) return -1;
  if (WIFEXITED(st)) return WEXITSTATUS(st);
  return -2;
}

bool file_exists(const std::string& path) {
  std::ifstream in(path);
  return static_cast<bool>(in);
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

} // namespace

TEST_CASE("config parser keeps entries in file order") {
  std::string text =
      "# experiment\n"
      "seed = 42\n"
      "\n"
      "space.kind = euclidean   # trailing comment\n"
      "space.dim = 3\n"
      "tol.delta = 1e-9\n"
      "map.x0 = 0.6, 0.2\n";
  ExperimentConfig cfg = ExperimentConfig::parse_text(text);
  REQUIRE(cfg.entries.size() == 5);
  REQUIRE(cfg.entries[0].first == "seed");
  REQUIRE(cfg.entries[1].first == "space.kind");
  REQUIRE(cfg.get("space.kind") == "euclidean");
  REQUIRE(cfg.get_int("space.dim") == 3);
  REQUIRE(cfg.get_double("tol.delta") == Catch::Approx(1e-9));
  REQUIRE(cfg.require_seed() == 42);
  REQUIRE(cfg.get_or("format", "report") == "report");
  std::vector<double> x0 = cfg.get_doubles("map.x0");
  REQUIRE(x0.size() == 2);
  REQUIRE(x0[0] == Catch::Approx(0.6));
  REQUIRE(x0[1] == Catch::Approx(0.2));
  REQUIRE(cfg.echo() ==
          "seed = 42\nspace.kind = euclidean\nspace.dim = 3\n"
          "tol.delta = 1e-9\nmap.x0 = 0.6, 0.2\n");
}

TEST_CASE("config parser rejects malformed input") {
  using Catch::Matchers::ContainsSubstring;
  using Catch::Matchers::MessageMatches;
  REQUIRE_THROWS_MATCHES(ExperimentConfig::parse_text("seed = 1\nbroken line\n"),
                         ConfigError, MessageMatches(ContainsSubstring("line 2")));
  REQUIRE_THROWS_MATCHES(ExperimentConfig::parse_text("seed =\n"), ConfigError,
                         MessageMatches(ContainsSubstring("empty key or value")));
  REQUIRE_THROWS_MATCHES(ExperimentConfig::parse_text("seed = 1\nbogus.key = 2\n"),
                         ConfigError, MessageMatches(ContainsSubstring("unknown key")));
  REQUIRE_THROWS_MATCHES(
      ExperimentConfig::parse_text("seed = 1\nseed = 2\n"), ConfigError,
      MessageMatches(ContainsSubstring("duplicate")));
  REQUIRE_THROWS_AS(ExperimentConfig::parse_text("seed = 1\ntol.delta = 0\n"),
                    ConfigError);
  REQUIRE_THROWS_AS(ExperimentConfig::parse_text("seed = 1\ntol.weak = -0.5\n"),
                    ConfigError);
  REQUIRE_THROWS_AS(ExperimentConfig::parse_text("seed = abc\n"), ConfigError);

  ExperimentConfig cfg = ExperimentConfig::parse_text("seed = 1\nsequence.a = 1.5\n");
  REQUIRE_THROWS_AS(cfg.get_int("sequence.a"), ConfigError);
  REQUIRE_THROWS_AS(cfg.get("name"), ConfigError);
  ExperimentConfig lists =
      ExperimentConfig::parse_text("seed = 1\nmap.x0 = 0.6,,0.2\n");
  REQUIRE_THROWS_AS(lists.get_doubles("map.x0"), ConfigError);
  ExperimentConfig noseed = ExperimentConfig::parse_text("space.dim = 2\n");
  REQUIRE_THROWS_AS(noseed.require_seed(), ConfigError);
}

TEST_CASE("seed override replaces or appends") {
  ExperimentConfig cfg = ExperimentConfig::parse_text("seed = 1\nspace.dim = 2\n");
  cfg.override_seed(99);
  REQUIRE(cfg.entries.size() == 2);
  REQUIRE(cfg.require_seed() == 99);

  ExperimentConfig bare = ExperimentConfig::parse_text("space.dim = 2\n");
  bare.override_seed(7);
  REQUIRE(bare.require_seed() == 7);
}

TEST_CASE("report builder emits the stable layout") {
  ReportBuilder rb;
  rb.section("alpha");
  rb.kv("count", 3);
  rb.kv("value", 0.125);
  rb.kv("flag", true);
  std::string text = rb.str();
  REQUIRE(text.rfind("polarconv-report v1\ntool-version = 0.1.0\n", 0) == 0);
  REQUIRE(text.find("\n[alpha]\ncount = 3\nvalue = 0.125\nflag = true\n") !=
          std::string::npos);
  REQUIRE(report_number(1e-9) == "1e-09");
  REQUIRE(report_number(0.5) == "0.5");
}

TEST_CASE("metadata stripping removes exactly the metadata section") {
  ReportBuilder rb;
  rb.section("alpha");
  rb.kv("a", 1);
  rb.section("metadata");
  rb.kv("wall-ms", 123);
  rb.section("omega");
  rb.kv("z", 2);
  std::string stripped = strip_metadata(rb.str());
  REQUIRE(stripped.find("[alpha]") != std::string::npos);
  REQUIRE(stripped.find("[omega]") != std::string::npos);
  REQUIRE(stripped.find("a = 1") != std::string::npos);
  REQUIRE(stripped.find("z = 2") != std::string::npos);
  REQUIRE(stripped.find("[metadata]") == std::string::npos);
  REQUIRE(stripped.find("wall-ms") == std::string::npos);
  REQUIRE(strip_metadata(stripped) == stripped);
}

TEST_CASE("cli certifies the shipped classify sample") {
  if (!cli_path() || !configs_dir()) SKIP("cli environment not set");
  std::string cfg = std::string(configs_dir()) + "/classify-l1-escalator.txt";
  std::remove("cli-classify-a.txt");
  int rc = run_cli("classify --config \"" + cfg + "\" --out cli-classify-a.txt");
  REQUIRE(rc == 0);
  std::string report = read_text_file("cli-classify-a.txt");
  REQUIRE(report.rfind("polarconv-report v1\n", 0) == 0);
  REQUIRE(report.find("[verdict]") != std::string::npos);
  REQUIRE(report.find("all-assertions-passed = true") != std::string::npos);
  REQUIRE(report.find("status = Certified") != std::string::npos);
  REQUIRE(report.find("[metadata]") != std::string::npos);
  REQUIRE(report.find("wall-ms") != std::string::npos);
}

TEST_CASE("cli reports are deterministic outside the metadata section") {
  if (!cli_path() || !configs_dir()) SKIP("cli environment not set");
  std::string cfg = std::string(configs_dir()) + "/classify-l1-escalator.txt";
  REQUIRE(run_cli("classify --config \"" + cfg + "\" --out cli-det-a.txt") == 0);
  REQUIRE(run_cli("classify --config \"" + cfg + "\" --out cli-det-b.txt") == 0);
  std::string a = strip_metadata(read_text_file("cli-det-a.txt"));
  std::string b = strip_metadata(read_text_file("cli-det-b.txt"));
  REQUIRE(a == b);
  REQUIRE_FALSE(a.empty());
}

TEST_CASE("cli csv format uses the documented columns") {
  if (!cli_path() || !configs_dir()) SKIP("cli environment not set");
  std::string cfg = std::string(configs_dir()) + "/classify-l1-escalator.txt";
  REQUIRE(run_cli("classify --config \"" + cfg + "\" --format csv --out cli-classify.csv") ==
          0);
  std::string csv = read_text_file("cli-classify.csv");
  REQUIRE(csv.rfind("mode,status,margin\n", 0) == 0);
  REQUIRE(csv.find("Polar,Certified,") != std::string::npos);
}

TEST_CASE("cli runs a registry fixture by name without a config") {
  if (!cli_path()) SKIP("cli environment not set");
  int rc = run_cli("examples --name reflection --out cli-example.txt");
  REQUIRE(rc == 0);
  std::string report = read_text_file("cli-example.txt");
  REQUIRE(report.find("[fixture reflection]") != std::string::npos);
  REQUIRE(report.find("pass = true") != std::string::npos);
}

TEST_CASE("cli rejects malformed configs without writing a report") {
  if (!cli_path()) SKIP("cli environment not set");
  write_file("cli-bad-config.txt", "seed = 1\nnot.a.key = 2\n");
  std::remove("cli-bad-out.txt");
  int rc = run_cli("classify --config cli-bad-config.txt --out cli-bad-out.txt");
  REQUIRE(rc == 2);
  REQUIRE_FALSE(file_exists("cli-bad-out.txt"));

  write_file("cli-noseed-config.txt", "space.kind = euclidean\nspace.dim = 2\n");
  int rc2 = run_cli("classify --config cli-noseed-config.txt --out cli-bad-out.txt");
  REQUIRE(rc2 == 2);
  REQUIRE_FALSE(file_exists("cli-bad-out.txt"));
}

TEST_CASE("cli rejects unknown fixtures and subcommands") {
  if (!cli_path()) SKIP("cli environment not set");
  REQUIRE(run_cli("examples --name no-such-fixture --out cli-unused.txt") == 2);
  REQUIRE(run_cli("frobnicate") == 2);
}
