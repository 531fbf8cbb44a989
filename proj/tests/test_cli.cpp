#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nzflow/io.hpp"
#include "nzflow/manifest.hpp"
#include "support/oracles.hpp"

using namespace nzflow;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string output;
};

// Runs the CLI with stdout+stderr captured.
CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() / ("nzflow_cli_" + std::to_string(counter++) + ".txt");
  const std::string cmd = std::string(NZFLOW_CLI_PATH) + " " + args + " > " + out.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  std::ifstream f(out);
  std::stringstream ss;
  ss << f.rdbuf();
  fs::remove(out);
  return {WEXITSTATUS(raw), ss.str()};
}

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("serialization round trips") {
  Rng rng(1);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Pairing p = sample_pairing(seed % 2 ? 4 : 10, seed);
    CHECK(pairing_from_json(to_json(p)).pairs == p.pairs);

    MultiGraph g = to_multigraph(p);
    const MultiGraph g2 = multigraph_from_json(to_json(g));
    CHECK(g2.n == g.n);
    REQUIRE(g2.edges.size() == g.edges.size());
    for (size_t i = 0; i < g.edges.size(); ++i) {
      CHECK(g2.edges[i].u == g.edges[i].u);
      CHECK(g2.edges[i].v == g.edges[i].v);
      CHECK(g2.edges[i].mult == g.edges[i].mult);
    }

    Orientation o;
    o.to_second.resize(p.num_pairs());
    for (auto& b : o.to_second) b = static_cast<std::uint8_t>(rng.coin());
    CHECK(orientation_from_json(p, to_json(p, o)).to_second == o.to_second);
  }
}

TEST_CASE("manifest round trip and pass-flag consistency") {
  RunManifest m;
  m.command_line = "nzflow moments --n 2";
  m.master_seed = 5;
  m.environment = "test";
  m.checks.push_back(CheckRecord::make("a", 1.0, 1.0, 1e-9, false));
  m.checks.push_back(CheckRecord::make("b", 2.0, 2.5, 0.6, false));
  m.started_at = "2024-01-01T00:00:00Z";
  m.finished_at = "2024-01-01T00:00:01Z";
  const RunManifest back = RunManifest::from_json(m.to_json());
  CHECK(back.command_line == m.command_line);
  CHECK(back.checks.size() == 2);
  CHECK(back.determinism_hash() == m.determinism_hash());

  Json tampered = m.to_json();
  tampered["content"]["checks"][1]["pass"] = false;
  CHECK_THROWS_AS(RunManifest::from_json(tampered), std::invalid_argument);
}

TEST_CASE("cli: usage errors exit 2") {
  CHECK(run_cli("bogus-subcommand").exit_code == 2);
  CHECK(run_cli("sample").exit_code == 2);          // missing --n
  CHECK(run_cli("moments --n 9").exit_code == 2);   // odd n -> domain error
  CHECK(run_cli("report").exit_code == 2);          // no manifests
  CHECK(run_cli("report /nonexistent/file.json").exit_code == 2);
}

TEST_CASE("cli: count over all pairings reproduces the exact mean", "[slow]") {
  const auto r = run_cli("count --n 2 --all-pairings");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("400/63") != std::string::npos);

  CHECK(run_cli("count --n 4 --all-pairings").exit_code == 3);  // enumeration cap
}

TEST_CASE("cli: moments subcommand") {
  const auto exact = run_cli("moments --n 2 --which second --mode exact");
  CHECK(exact.exit_code == 0);
  CHECK(exact.output.find("160/3") != std::string::npos);

  // a deliberately tight tolerance at small n must fail with exit 1
  CHECK(run_cli("moments --n 20 --which ratio --rel-tol 0.0001").exit_code == 1);
  // size cap in exact mode
  CHECK(run_cli("moments --n 50 --which second --mode exact").exit_code == 3);
  // csv sweep
  const auto csv = run_cli("moments --n 10 --n 20 --which first --mode log --format csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.output.find("n,which,mode") != std::string::npos);
}

TEST_CASE("cli: landscape spectrum", "[slow]") {
  const auto r = run_cli("landscape --check spectrum");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("-328125/4") != std::string::npos);
}

TEST_CASE("cli: conditioning series", "[slow]") {
  const auto r = run_cli("conditioning --series --k-max 50");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("1.0910894") != std::string::npos);
}

TEST_CASE("cli: sample, orient, count round trip", "[slow]") {
  const fs::path pairing = temp_file("nzflow_pairing.json");
  const fs::path orientation = temp_file("nzflow_orientation.json");
  const auto s = run_cli("sample --n 10 --seed 4 --simple --pairing-out " + pairing.string());
  REQUIRE(s.exit_code == 0);

  const auto o = run_cli("orient --in " + pairing.string() + " --seed 1 --orientation-out " +
                         orientation.string());
  CHECK(o.exit_code == 0);

  // certify the written orientation independently
  const Pairing p = pairing_from_json([&] {
    std::ifstream f(pairing);
    Json j;
    f >> j;
    return j;
  }());
  std::ifstream f(orientation);
  Json oj;
  f >> oj;
  const Orientation ori = orientation_from_json(p, oj);
  CHECK(validate(p, ori).valid);

  const auto c = run_cli("count --in " + pairing.string());
  CHECK(c.exit_code == 0);

  // an infeasible instance: budget exhaustion is a resource-cap exit
  const Pairing dead = oracle::pairing_from_edges(2, {{0, 0}, {0, 0}, {1, 1}, {1, 1}, {0, 1}});
  const fs::path dead_path = temp_file("nzflow_dead.json");
  {
    std::ofstream df(dead_path);
    df << to_json(dead).dump();
  }
  CHECK(run_cli("orient --in " + dead_path.string() + " --budget 20000").exit_code == 3);

  fs::remove(pairing);
  fs::remove(orientation);
  fs::remove(dead_path);
}

TEST_CASE("cli: manifests are deterministic modulo timestamps", "[slow]") {
  const fs::path m1 = temp_file("nzflow_m1.json");
  const fs::path m2 = temp_file("nzflow_m2.json");
  REQUIRE(run_cli("moments --n 20 --which second --mode log --threads 1 --out " + m1.string())
              .exit_code == 0);
  REQUIRE(run_cli("moments --n 20 --which second --mode log --threads 2 --out " + m2.string())
              .exit_code == 0);
  Json a, b;
  {
    std::ifstream f(m1);
    f >> a;
  }
  {
    std::ifstream f(m2);
    f >> b;
  }
  // worker count must not leak into results; only the command line differs
  a["content"]["command_line"] = "";
  b["content"]["command_line"] = "";
  CHECK(a["content"].dump() == b["content"].dump());

  // identical command + seed => identical content and hash
  Json c;
  {
    std::ifstream f(m2);
    f >> c;
  }
  REQUIRE(run_cli("moments --n 20 --which second --mode log --threads 2 --out " + m2.string())
              .exit_code == 0);
  Json c2;
  {
    std::ifstream f(m2);
    f >> c2;
  }
  CHECK(c["determinism_hash"] == c2["determinism_hash"]);
  CHECK(c["content"].dump() == c2["content"].dump());

  // consolidated report over the fresh manifests
  const auto rep = run_cli("report " + m1.string() + " " + m2.string());
  CHECK(rep.exit_code == 0);
  CHECK(rep.output.find("ALL CHECKS PASS") != std::string::npos);

  fs::remove(m1);
  fs::remove(m2);
}
