#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ac/errors.hpp"
#include "ac/run.hpp"

using namespace ac;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("aclab_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(in.good());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

TEST_CASE("flag parsing helpers") {
  const auto layers = parse_layers("0.5:+,1.2:-");
  REQUIRE(layers.size() == 2);
  CHECK(layers[0].radius == doctest::Approx(0.5));
  CHECK(layers[0].sign == 1);
  CHECK(layers[1].sign == -1);
  CHECK_THROWS_AS(parse_layers("abc:+"), ConfigError);
  CHECK_THROWS_AS(parse_layers("0.5:x"), ConfigError);
  const auto eps = parse_eps_list("0.2,0.1,0.05");
  REQUIRE(eps.size() == 3);
  CHECK(eps[2] == doctest::Approx(0.05));
  CHECK_THROWS_AS(parse_eps_list("0.2,oops"), ConfigError);
}

TEST_CASE("config files: schema violations are rejected") {
  const fs::path dir = fresh_dir("config");
  {
    std::ofstream out(dir / "empty.json");
  }
  RunConfig cfg;
  CHECK_THROWS_AS(apply_config_file(cfg, (dir / "empty.json").string()), ConfigError);
  {
    std::ofstream out(dir / "unknown.json");
    out << "{\"geometry\": \"clifford\", \"bogus_key\": 1}\n";
  }
  CHECK_THROWS_AS(apply_config_file(cfg, (dir / "unknown.json").string()), ConfigError);
  {
    std::ofstream out(dir / "badtype.json");
    out << "{\"nodes\": \"many\"}\n";
  }
  CHECK_THROWS_AS(apply_config_file(cfg, (dir / "badtype.json").string()), ConfigError);
  {
    std::ofstream out(dir / "good.json");
    out << "{\"geometry\": \"equatorial\", \"n\": 2, \"eps\": 0.15, \"nodes\": 400}\n";
  }
  CHECK_NOTHROW(apply_config_file(cfg, (dir / "good.json").string()));
  CHECK(cfg.geometry == "equatorial");
  CHECK(cfg.nodes == 400);
}

TEST_CASE("run validations exit with the usage code") {
  RunConfig cfg;
  cfg.subcommand = "bogus";
  cfg.out_dir = fresh_dir("usage1").string();
  CHECK(run(cfg) == exit_usage);
  cfg.subcommand = "solve";
  cfg.nodes = 8;
  cfg.out_dir = fresh_dir("usage2").string();
  CHECK(run(cfg) == exit_usage);
  cfg.nodes = 64;
  cfg.eps = 0.01;  // h > eps/4 for 64 nodes
  cfg.out_dir = fresh_dir("usage3").string();
  CHECK(run(cfg) == exit_usage);
}

TEST_CASE("solve -> spectrum -> measure pipeline and determinism") {
  const fs::path dir1 = fresh_dir("pipe1");
  RunConfig cfg;
  cfg.subcommand = "solve";
  cfg.geometry = "equatorial";
  cfg.n = 2;
  cfg.eps = 0.15;
  cfg.nodes = 500;
  cfg.out_dir = dir1.string();
  REQUIRE(run(cfg) == exit_ok);
  CHECK(fs::exists(dir1 / "profile.csv"));
  CHECK(fs::exists(dir1 / "solve.json"));
  CHECK(fs::exists(dir1 / "config.echo"));

  // byte-identical re-run
  const fs::path dir2 = fresh_dir("pipe2");
  cfg.out_dir = dir2.string();
  REQUIRE(run(cfg) == exit_ok);
  CHECK(slurp(dir1 / "profile.csv") == slurp(dir2 / "profile.csv"));
  CHECK(slurp(dir1 / "solve.json") == slurp(dir2 / "solve.json"));

  RunConfig scfg;
  scfg.subcommand = "spectrum";
  scfg.geometry = "equatorial";
  scfg.n = 2;
  scfg.eps = 0.15;
  scfg.solution_file = (dir1 / "profile.csv").string();
  scfg.out_dir = (dir1 / "spec").string();
  REQUIRE(run(scfg) == exit_ok);
  const auto spec = nlohmann::json::parse(slurp(dir1 / "spec" / "spectrum.json"));
  CHECK(spec["index"].get<int>() == 1);
  CHECK(spec["nullity"].get<int>() == 3);
  CHECK(fs::exists(dir1 / "spec" / "modes.csv"));

  RunConfig mcfg;
  mcfg.subcommand = "measure";
  mcfg.geometry = "equatorial";
  mcfg.n = 2;
  mcfg.eps = 0.15;
  mcfg.solution_file = (dir1 / "profile.csv").string();
  mcfg.out_dir = (dir1 / "mass").string();
  REQUIRE(run(mcfg) == exit_ok);
  const auto mass = nlohmann::json::parse(slurp(dir1 / "mass" / "mass.json"));
  CHECK(mass["energy_mass"].get<double>() > 0.0);
  CHECK(mass["connected"].get<bool>());
}

TEST_CASE("an unsettled flow exits with the numerical code") {
  const fs::path dir = fresh_dir("flow3");
  RunConfig cfg;
  cfg.subcommand = "solve";
  cfg.geometry = "equatorial";
  cfg.n = 2;
  cfg.eps = 0.15;
  cfg.nodes = 400;
  cfg.out_dir = (dir / "sol").string();
  REQUIRE(run(cfg) == exit_ok);
  RunConfig fcfg;
  fcfg.subcommand = "flow";
  fcfg.geometry = "equatorial";
  fcfg.n = 2;
  fcfg.eps = 0.15;
  fcfg.solution_file = (dir / "sol" / "profile.csv").string();
  fcfg.perturb = 0.01;
  fcfg.t_max = 0.1;  // far too short to settle
  fcfg.out_dir = (dir / "flow").string();
  CHECK(run(fcfg) == exit_numerical);
}

TEST_CASE("custom polynomial potential through the config file") {
  const fs::path dir = fresh_dir("poly");
  {
    std::ofstream out(dir / "cfg.json");
    // W = (1 - t^2)^2 / 2, a scaled quartic
    out << "{\"geometry\": \"clifford\", \"p\": 1, \"q\": 1, \"eps\": 0.15,\n"
           " \"nodes\": 400, \"potential\": \"halfwell\",\n"
           " \"potential_coeffs\": [0.5, 0.0, -1.0, 0.0, 0.5]}\n";
  }
  RunConfig cfg;
  apply_config_file(cfg, (dir / "cfg.json").string());
  cfg.subcommand = "solve";
  cfg.out_dir = (dir / "out").string();
  REQUIRE(run(cfg) == exit_ok);
  const auto j = nlohmann::json::parse(slurp(dir / "out" / "solve.json"));
  CHECK(j["converged"].get<bool>());
}

TEST_CASE("oracle-check subcommand") {
  RunConfig cfg;
  cfg.subcommand = "oracle-check";
  cfg.geometry = "equatorial";
  cfg.n = 2;
  cfg.nodes = 400;
  cfg.levels = 3;
  cfg.out_dir = fresh_dir("oracle").string();
  REQUIRE(run(cfg) == exit_ok);
  const auto j = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "oracle.json"));
  CHECK(j["multiplicities_match"].get<bool>());
  CHECK(j["max_rel_err"].get<double>() < 1e-2);
}

TEST_CASE("sweep subcommand: equipartition discrepancy shrinks with eps") {
  RunConfig cfg;
  cfg.subcommand = "sweep";
  cfg.geometry = "clifford";
  cfg.p = cfg.q = 1;
  cfg.eps_list = {0.2, 0.1, 0.05};
  cfg.nodes = 640;
  cfg.out_dir = fresh_dir("sweep").string();
  REQUIRE(run(cfg) == exit_ok);
  std::ifstream in(fs::path(cfg.out_dir) / "sweep.csv");
  REQUIRE(in.good());
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "eps,nodes,converged,energy,energy_mass,varifold_mass,discrepancy,relative_gap");
  std::vector<double> discrepancy, gap;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 8);
    CHECK(fields[2] == "1");
    discrepancy.push_back(std::stod(fields[6]));
    gap.push_back(std::stod(fields[7]));
  }
  REQUIRE(discrepancy.size() == 3);
  // trend over the default sweep: both the equipartition defect and the
  // distance to the limit area shrink as eps decreases
  CHECK(discrepancy[1] < discrepancy[0]);
  CHECK(discrepancy[2] < discrepancy[1]);
  CHECK(gap[2] < gap[0]);
  for (int k = 0; k < 3; ++k)
    CHECK(fs::exists(fs::path(cfg.out_dir) / ("profile_" + std::to_string(k) + ".csv")));
}

TEST_CASE("spectrum artifacts are byte-identical across re-runs") {
  const fs::path base = fresh_dir("specdet");
  RunConfig cfg;
  cfg.subcommand = "solve";
  cfg.geometry = "clifford";
  cfg.p = cfg.q = 1;
  cfg.eps = 0.15;
  cfg.nodes = 400;
  cfg.out_dir = (base / "sol").string();
  REQUIRE(run(cfg) == exit_ok);
  RunConfig scfg;
  scfg.subcommand = "spectrum";
  scfg.geometry = "clifford";
  scfg.p = scfg.q = 1;
  scfg.eps = 0.15;
  scfg.solution_file = (base / "sol" / "profile.csv").string();
  scfg.out_dir = (base / "s1").string();
  REQUIRE(run(scfg) == exit_ok);
  scfg.out_dir = (base / "s2").string();
  scfg.serial = true;  // execution policy must not leak into the artifact
  REQUIRE(run(scfg) == exit_ok);
  CHECK(slurp(base / "s1" / "spectrum.json") == slurp(base / "s2" / "spectrum.json"));
  CHECK(slurp(base / "s1" / "modes.csv") == slurp(base / "s2" / "modes.csv"));
}

TEST_CASE("report subcommand emits the pass table") {
  RunConfig cfg;
  cfg.subcommand = "report";
  cfg.geometry = "clifford";
  cfg.p = cfg.q = 1;
  cfg.eps_list = {0.2, 0.1};
  cfg.nodes = 320;
  cfg.out_dir = fresh_dir("report").string();
  const int rc = run(cfg);
  const auto j = nlohmann::json::parse(slurp(fs::path(cfg.out_dir) / "report.json"));
  REQUIRE(j["rows"].size() == 2);
  CHECK(j["rows"][1]["nullity"].get<int>() <= 4);
  CHECK((rc == exit_ok || rc == exit_acceptance_fail));
  if (rc == exit_ok) CHECK(j["pass"].get<bool>());
}
