#include "commands.hpp"
#include "run_config.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace fmo;
using namespace fmo::cli;

TEST_CASE("defaults reproduce the reference run") {
  const RunConfig c;
  CHECK(c.initial_kind == InitialKind::localized);
  CHECK(c.initial_site == 1);
  CHECK(c.params.truncation_N == 12);
  CHECK(c.params.temperature_K == 300.0);
  CHECK(c.params.lambda_cm[0] == 35.0);
  CHECK(c.params.gamma_inv_fs[0] == 50.0);
  CHECK(c.params.trap_rate_inv_ps == 1.0);
  CHECK(c.params.t_end_fs == 1000.0);
  CHECK(c.resolved_pairs().size() == 21);
  CHECK_NOTHROW(c.validate());
}

TEST_CASE("config text is applied key by key") {
  RunConfig c;
  apply_text(c,
             "# comment\n"
             "schema = 1\n"
             "initial.kind = fret   # trailing comment\n"
             "initial.site = 6\n"
             "model.truncation_N = 4\n"
             "model.lambda_cm = 1,2,3,4,5,6,7\n"
             "model.gamma_inv_fs = 80\n"
             "model.trap_rate_inv_ps = inf\n"
             "model.trap_sites = none\n"
             "time.t_end_fs = 20\n"
             "time.dt_out_fs = 0.5\n"
             "integrator.dense_output = false\n"
             "output.pairs = 5-6, 2-1\n"
             "analysis.death_threshold = 1e-5\n"
             "converge.n_min = 1\n"
             "converge.n_max = 3\n",
             "test");
  CHECK(c.initial_kind == InitialKind::fret);
  CHECK(c.initial_site == 6);
  CHECK(c.params.truncation_N == 4);
  CHECK(c.params.lambda_cm[6] == 7.0);
  CHECK(c.params.gamma_inv_fs[3] == 80.0);
  CHECK(std::isinf(c.params.trap_rate_inv_ps));
  CHECK(c.params.trap_sites.empty());
  CHECK(c.params.dt_out_fs == 0.5);
  CHECK_FALSE(c.integrator.dense_output);
  REQUIRE(c.pairs.size() == 2);
  CHECK(c.pairs[1] == PairIndex{1, 2});
  CHECK(c.death_threshold == 1e-5);
  CHECK(c.converge_n_max == 3);
  CHECK_NOTHROW(c.validate());

  // describe() round-trips through apply_text.
  RunConfig again;
  apply_text(again, describe(c), "describe");
  CHECK(describe(again) == describe(c));
}

TEST_CASE("config errors name the key") {
  RunConfig c;
  auto key_of = [&](const std::string& text) {
    try {
      apply_text(c, text, "test");
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("no error");
  };
  CHECK(key_of("model.nonsense = 1\n") == "model.nonsense");
  CHECK(key_of("model.truncation_N = twelve\n") == "model.truncation_N");
  CHECK(key_of("initial.kind = thermal\n") == "initial.kind");
  CHECK(key_of("schema = 2\n") == "schema");
  CHECK(key_of("model.lambda_cm = 1,2\n") == "model.lambda_cm");
  CHECK(key_of("output.pairs = 12\n") == "output.pairs");
  CHECK(key_of("no equals sign\n") == "test:1");
  CHECK_THROWS_AS(apply_override(c, "model.truncation_N"), ConfigError);

  RunConfig bad;
  bad.initial_site = 9;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.params.t_end_fs = 10.5;
  bad.params.dt_out_fs = 2.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = {};
  bad.pairs = {{3, 3}};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  CHECK_THROWS_AS(apply_file(bad, "/nonexistent/config.txt"), ConfigError);
}

TEST_CASE("number formatting") {
  CHECK(format_number(1.0) == "1.00000000000e+00");
  CHECK(format_number(-0.000123456789012345) == "-1.23456789012e-04");
}

TEST_CASE("simulate writes the documented files") {
  RunConfig c;
  apply_text(c, "model.truncation_N = 2\ntime.t_end_fs = 10\noutput.pairs = 1-2\n", "test");
  const auto dir = std::filesystem::temp_directory_path() / "fmoheom_cli_unit";
  std::filesystem::remove_all(dir);
  const Paths written = simulate(c, dir);
  REQUIRE(written.size() == 3);
  std::ifstream pops(dir / "populations.csv");
  std::string header, first;
  std::getline(pops, header);
  std::getline(pops, first);
  CHECK(header == "t_fs,rho_11,rho_22,rho_33,rho_44,rho_55,rho_66,rho_77,trace");
  CHECK(first.rfind("0.00000000000e+00,1.00000000000e+00,0.00000000000e+00", 0) == 0);
  std::ifstream measures(dir / "measures_1_2.csv");
  std::getline(measures, header);
  CHECK(header == "t_fs,B,C,l1,mu1,mu3");
  std::ifstream manifest(dir / "run_manifest.txt");
  std::stringstream body;
  body << manifest.rdbuf();
  CHECK(body.str().find("hierarchy_nodes = 36\n") != std::string::npos);
  std::filesystem::remove_all(dir);
}
