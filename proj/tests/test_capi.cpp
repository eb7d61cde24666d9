// Exercises the shared-library surface the CLI sits on.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <string>
#include <vector>

#include "sgc.h"

using nlohmann::json;

namespace {

std::string tmp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("version and error text are always available") {
  CHECK(sgc_version() != nullptr);
  CHECK(sgc_last_error() != nullptr);
}

TEST_CASE("graph create, query, component, io") {
  std::vector<int64_t> u = {0, 1, 3};
  std::vector<int64_t> v = {1, 2, 4};
  std::vector<double> w = {1.0, -1.0, 1.0};
  sgc_graph* g = nullptr;
  REQUIRE(sgc_graph_create(5, u.data(), v.data(), w.data(), 3, &g) == SGC_OK);
  CHECK(sgc_graph_nodes(g) == 5);
  CHECK(sgc_graph_edges(g) == 3);

  std::vector<int64_t> map(5, -2);
  sgc_graph* lcc = nullptr;
  REQUIRE(sgc_graph_largest_component(g, &lcc, map.data()) == SGC_OK);
  CHECK(sgc_graph_nodes(lcc) == 3);
  CHECK(map[0] == 0);
  CHECK(map[3] == -1);

  std::string path = tmp_path("sgc_capi_graph.txt");
  REQUIRE(sgc_graph_write(g, path.c_str()) == SGC_OK);
  sgc_graph* back = nullptr;
  REQUIRE(sgc_graph_read(path.c_str(), &back) == SGC_OK);
  CHECK(sgc_graph_nodes(back) == 5);
  CHECK(sgc_graph_edges(back) == 3);
  std::filesystem::remove(path);

  sgc_graph_free(back);
  sgc_graph_free(lcc);
  sgc_graph_free(g);
}

TEST_CASE("bad graphs produce status codes and messages") {
  int64_t u = 0, v = 0;
  double w = 1.0;
  sgc_graph* g = nullptr;
  CHECK(sgc_graph_create(3, &u, &v, &w, 1, &g) == SGC_ERROR_INVALID_ARGUMENT);
  CHECK(std::strlen(sgc_last_error()) > 0);
}

TEST_CASE("ssbm sample + cluster + metrics through the C API") {
  json params = {{"n", 300}, {"k", 3}, {"p", 0.08}, {"eta", 0.05}};
  sgc_graph* g = nullptr;
  sgc_partition* truth = nullptr;
  REQUIRE(sgc_ssbm_sample(params.dump().c_str(), 9, &g, &truth) == SGC_OK);
  CHECK(sgc_partition_nodes(truth) == 300);
  CHECK(sgc_partition_k(truth) == 3);

  json cfg = {{"method", "SPONGE_sym"}, {"k", 3}, {"seed", 5}};
  sgc_partition* pred = nullptr;
  std::vector<int64_t> map(300);
  char* record = nullptr;
  REQUIRE(sgc_cluster_graph(g, truth, cfg.dump().c_str(), &pred, map.data(), &record) ==
          SGC_OK);
  json rec = json::parse(record);
  sgc_string_free(record);
  CHECK(rec["valid"].get<bool>());
  CHECK(rec["ari"].get<double>() > 0.9);

  double ari_value = 0.0;
  // compare pred against the truth restricted to the component
  std::vector<int32_t> truth_labels(300);
  REQUIRE(sgc_partition_labels(truth, truth_labels.data()) == SGC_OK);
  std::vector<int32_t> truth_lcc;
  for (int64_t i = 0; i < 300; ++i) {
    if (map[i] >= 0) truth_lcc.push_back(truth_labels[i]);
  }
  sgc_partition* truth_sub = nullptr;
  REQUIRE(sgc_partition_create(truth_lcc.data(), truth_lcc.size(), 3, &truth_sub) ==
          SGC_OK);
  REQUIRE(sgc_ari(truth_sub, pred, &ari_value) == SGC_OK);
  CHECK(ari_value == doctest::Approx(rec["ari"].get<double>()));

  double rate = 0.0;
  std::vector<int32_t> perm(3);
  REQUIRE(sgc_misclustering(pred, truth_sub, &rate, perm.data()) == SGC_OK);
  CHECK(rate >= 0.0);

  sgc_partition_free(truth_sub);
  sgc_partition_free(pred);
  sgc_partition_free(truth);
  sgc_graph_free(g);
}

TEST_CASE("partition io round trip") {
  std::vector<int32_t> labels = {0, 1, 2, 1, 0};
  sgc_partition* p = nullptr;
  REQUIRE(sgc_partition_create(labels.data(), 5, 3, &p) == SGC_OK);
  std::string path = tmp_path("sgc_capi_labels.csv");
  REQUIRE(sgc_partition_write(p, path.c_str()) == SGC_OK);
  sgc_partition* back = nullptr;
  REQUIRE(sgc_partition_read(path.c_str(), &back) == SGC_OK);
  std::vector<int32_t> got(5);
  REQUIRE(sgc_partition_labels(back, got.data()) == SGC_OK);
  CHECK(got == labels);
  std::filesystem::remove(path);
  sgc_partition_free(back);
  sgc_partition_free(p);
}

TEST_CASE("experiment runs through the C API and emits deterministic files") {
  std::string csv1 = tmp_path("sgc_capi_grid1.csv");
  std::string json1 = tmp_path("sgc_capi_grid1.json");
  json cfg = {{"ssbm", {{"n", 200}, {"k", 2}, {"p", 0.08}, {"eta", 0.1}}},
              {"trials", 2},
              {"seed", 10},
              {"tau_plus_grid", {1.0}},
              {"tau_minus_grid", {0.0, 0.5}},
              {"out_csv", csv1},
              {"out_json", json1}};
  char* report = nullptr;
  REQUIRE(sgc_experiment("grid-tau", cfg.dump().c_str(), &report) == SGC_OK);
  json r = json::parse(report);
  sgc_string_free(report);
  CHECK(r["cells"].size() == 2);

  std::string first_csv = slurp(csv1);
  std::string first_json = slurp(json1);
  REQUIRE(sgc_experiment("grid-tau", cfg.dump().c_str(), &report) == SGC_OK);
  sgc_string_free(report);
  CHECK(slurp(csv1) == first_csv);
  CHECK(slurp(json1) == first_json);
  std::filesystem::remove(csv1);
  std::filesystem::remove(json1);

  CHECK(sgc_experiment("bogus", "{}", nullptr) == SGC_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("theory check through the C API") {
  char* report = nullptr;
  REQUIRE(sgc_theory_check(R"({"seed": 2, "draws": 2, "n_max": 200})", &report) == SGC_OK);
  json r = json::parse(report);
  sgc_string_free(report);
  CHECK(r["all_pass"].get<bool>());
}
