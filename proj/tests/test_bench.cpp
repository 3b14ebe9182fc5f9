#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "scope/bench/dataset_io.hpp"
#include "scope/bench/experiment.hpp"

#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

using namespace scope;
using namespace scope::bench;
using nlohmann::json;

namespace {

json small_config() {
  return json::parse(R"({
    "experiments": [{
      "name": "small",
      "model": "linear",
      "n": [40, 60],
      "p": 15,
      "s": 3,
      "snr": 4.0,
      "replications": 3,
      "methods": ["iht", "scope"],
      "base_seed": 7
    }]
  })");
}

std::string strip_runtime(const TrialRecord& r) {
  TrialRecord copy = r;
  copy.runtime_ms = 0.0;
  std::ostringstream out;
  write_csv_row(out, copy);
  return out.str();
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("scope_bench_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("accuracy metric") {
  const SupportSet truth({1, 4, 7}, 10);
  CHECK(accuracy(SupportSet({1, 4, 9}, 10), truth) == doctest::Approx(2.0 / 3.0));
  CHECK(accuracy(SupportSet({1, 4, 7}, 10), truth) == 1.0);
  CHECK(accuracy(SupportSet({0, 2, 3}, 10), truth) == 0.0);
  CHECK(accuracy(SupportSet({}, 10), truth) == 0.0);
  CHECK_THROWS_AS(accuracy(truth, SupportSet({}, 10)), std::invalid_argument);
}

TEST_CASE("config parsing") {
  const auto cfgs = parse_config(small_config());
  REQUIRE(cfgs.size() == 1);
  const auto& c = cfgs[0];
  CHECK(c.name == "small");
  CHECK(c.n == std::vector<Index>{40, 60});
  CHECK(c.p == std::vector<Index>{15});
  CHECK(c.methods == std::vector<Method>{Method::scope, Method::iht});
  CHECK(c.magnitude() == 100.0);
  CHECK(expand_grid(c).size() == 2);
  CHECK(expand_grid(c)[1].k_max == 3);

  auto doc = small_config();
  doc["experiments"][0]["model"] = "ising";
  doc["experiments"][0]["p"] = 6;
  CHECK(parse_config(doc)[0].magnitude() == 0.5);
}

TEST_CASE("config errors") {
  const auto fails = [](const std::function<void(json&)>& edit) {
    auto doc = small_config();
    edit(doc);
    CHECK_THROWS_AS(parse_config(doc), ConfigError);
  };
  fails([](json& d) { d["experiments"][0]["bogus"] = 1; });
  fails([](json& d) { d["experiments"][0]["model"] = "poisson"; });
  fails([](json& d) { d["experiments"][0]["methods"] = {"gurobi"}; });
  fails([](json& d) { d["experiments"][0]["methods"] = {"lasso"}; });
  fails([](json& d) { d["experiments"][0]["methods"] = json::array(); });
  fails([](json& d) { d["experiments"][0]["n"] = "forty"; });
  fails([](json& d) { d["experiments"][0]["s"] = 20; });
  fails([](json& d) { d["experiments"][0]["k_max"] = 4; });
  fails([](json& d) { d["experiments"][0]["snr"] = -1.0; });
  fails([](json& d) { d["experiments"][0]["replications"] = 0; });
  fails([](json& d) { d["experiments"][0].erase("model"); });
  fails([](json& d) { d["experiments"] = json::array(); });
  fails([](json& d) { d["experiments"].push_back(d["experiments"][0]); });
  fails([](json& d) {
    d["experiments"][0]["model"] = "ising";
    d["experiments"][0]["p"] = 21;
  });
  fails([](json& d) {
    d["experiments"][0]["methods"] = {"grasp"};
    d["experiments"][0]["s"] = 8;
  });
  CHECK_THROWS_AS(parse_config(json::array()), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("config files allow comments") {
  const auto dir = scratch_dir("comments");
  {
    std::ofstream f(dir / "c.json");
    f << "// header\n" << small_config().dump(2) << "\n";
  }
  CHECK(load_config(dir / "c.json").size() == 1);
  {
    std::ofstream f(dir / "bad.json");
    f << "{ \"experiments\": [ }";
  }
  CHECK_THROWS_AS(load_config(dir / "bad.json"), ConfigError);
}

TEST_CASE("seeds depend on the instance, not the method or splice limit") {
  const auto cfg = parse_config(small_config())[0];
  const GridPoint a{40, 15, 3, 3};
  GridPoint b = a;
  b.k_max = 1;
  CHECK(trial_seed(cfg, a, 0) == trial_seed(cfg, b, 0));
  CHECK(trial_seed(cfg, a, 0) != trial_seed(cfg, a, 1));
  GridPoint c = a;
  c.n = 60;
  CHECK(trial_seed(cfg, a, 0) != trial_seed(cfg, c, 0));
  auto shifted = cfg;
  shifted.base_seed += 1;
  CHECK(trial_seed(shifted, a, 0) == trial_seed(cfg, a, 0) + 1);
}

TEST_CASE("experiment rows are complete, ordered and reproducible") {
  const auto cfg = parse_config(small_config())[0];
  const auto rows = run_experiment(cfg);
  REQUIRE(rows.size() == 12);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    CHECK(r.point.n == (i < 6 ? 40 : 60));
    CHECK(r.method == ((i % 6) < 3 ? Method::scope : Method::iht));
    CHECK(r.error.empty());
    CHECK(r.support.size() == 3);
  }
  // the same instance is shared across methods
  CHECK(rows[0].seed == rows[3].seed);

  const auto again = run_experiment(cfg);
  RunOptions two;
  two.threads = 2;
  const auto threaded = run_experiment(cfg, two);
  RunOptions only;
  only.only_methods = {Method::iht};
  const auto subset = run_experiment(cfg, only);
  REQUIRE(subset.size() == 6);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(strip_runtime(rows[i]) == strip_runtime(again[i]));
    CHECK(strip_runtime(rows[i]) == strip_runtime(threaded[i]));
  }
  CHECK(strip_runtime(subset[0]) == strip_runtime(rows[3]));
  CHECK(strip_runtime(subset[5]) == strip_runtime(rows[11]));
}

TEST_CASE("solver failures become error rows") {
  auto doc = small_config();
  doc["experiments"][0]["methods"] = {"iht"};
  doc["experiments"][0]["iht_step"] = 1e200;
  doc["experiments"][0]["replications"] = 1;
  const auto rows = run_experiment(parse_config(doc)[0]);
  REQUIRE(rows.size() == 2);
  CHECK_FALSE(rows[0].error.empty());
  CHECK_FALSE(rows[0].converged);
  CHECK(rows[0].accuracy == 0.0);
  CHECK(std::isnan(rows[0].objective));
  std::ostringstream out;
  write_csv_row(out, rows[0]);
  CHECK(out.str().find(",nan,0,0,\n") != std::string::npos);
}

TEST_CASE("CSV formatting") {
  TrialRecord r;
  r.experiment = "e";
  r.model = Model::logistic;
  r.point = {100, 20, 3, 2};
  r.seed = 99;
  r.method = Method::grahtp2;
  r.accuracy = 2.0 / 3.0;
  r.runtime_ms = 1.23456;
  r.objective = 0.1;
  r.outer_iterations = 4;
  r.converged = true;
  r.support = SupportSet({1, 5, 9}, 20);
  std::ostringstream out;
  write_csv_row(out, r);
  CHECK(out.str() == "e,logistic,100,20,3,2,99,grahtp2,0.6666666667,1.235,0.10000000000000001,4,1,1;5;9\n");
}

TEST_CASE("run_grid writes atomically") {
  const auto dir = scratch_dir("grid");
  const auto cfgs = parse_config(small_config());
  CHECK(run_grid(cfgs, dir / "out.csv") == 12);
  std::ifstream in(dir / "out.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == kCsvHeader);
  int lines = 0;
  for (std::string line; std::getline(in, line);) ++lines;
  CHECK(lines == 12);
  CHECK_FALSE(std::filesystem::exists(dir / "out.csv.partial"));

  // an existing directory cannot be replaced by the result file
  std::filesystem::create_directories(dir / "blocked");
  std::filesystem::create_directories(dir / "blocked" / "inner");
  CHECK_THROWS(run_grid(cfgs, dir / "blocked"));
  CHECK_FALSE(std::filesystem::exists(dir / "blocked.partial"));
  CHECK_THROWS(run_grid(cfgs, dir / "missing" / "out.csv"));
  CHECK_FALSE(std::filesystem::exists(dir / "missing"));
}

TEST_CASE("matrix container round trip") {
  Matrix m(2, 3);
  m << 1.0 / 3.0, -2.5e-300, 7.0, 0.0, 1e300, -0.1;
  std::stringstream buf;
  write_matrix(buf, m);
  CHECK(read_matrix(buf) == m);

  const auto dir = scratch_dir("matrix");
  save_matrix(dir / "m.txt", m);
  CHECK(load_matrix(dir / "m.txt") == m);

  const auto bad = [](const std::string& text) {
    std::istringstream in(text);
    CHECK_THROWS(read_matrix(in));
  };
  bad("");
  bad("%scope-matrix 2\nrows 1\ncols 1\ndtype float64\n1\n");
  bad("%scope-matrix 1\nrows 1\ncols 2\ndtype float64\n1\n");
  bad("%scope-matrix 1\nrows 1\ncols 1\ndtype float32\n1\n");
  bad("%scope-matrix 1\nrows 1\ncols 1\ndtype float64\nabc\n");
  bad("%scope-matrix 1\nrows 1\ncols 1\ndtype float64\n1 2\n");
  CHECK_THROWS(load_matrix(dir / "absent.txt"));
}

TEST_CASE("truth sidecar round trip") {
  LinearGenConfig gc;
  gc.n = 30;
  gc.p = 12;
  gc.s_true = 4;
  gc.seed = 77;
  const auto truth = gen_linear(gc).truth;
  const auto doc = truth_to_json(truth);
  const TruthSpec back = truth_from_json(json::parse(doc.dump()));
  CHECK(back.p == 12);
  CHECK(back.s_true == 4);
  CHECK(back.support == truth.support);
  CHECK(back.theta_star.values == truth.theta_star.values);
  CHECK(back.seed == 77);
  CHECK(back.vartheta == truth.vartheta);

  auto broken = doc;
  broken["support"] = {0, 0, 1, 2};
  CHECK_THROWS(truth_from_json(broken));
  broken = doc;
  broken.erase("p");
  CHECK_THROWS(truth_from_json(broken));
}
