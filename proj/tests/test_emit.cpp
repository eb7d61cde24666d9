#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "sgc/emit.hpp"
#include "sgc/error.hpp"
#include "sgc/rng.hpp"

using namespace sgc;

TEST_CASE("empty table: header-only CSV") {
  Table t;
  t.columns = {"a", "b", "c"};
  CHECK(to_csv(t) == "a,b,c\n");
}

TEST_CASE("doubles round-trip through the CSV format") {
  Rng rng(12);
  Table t;
  t.columns = {"x", "y"};
  std::vector<double> xs, ys;
  for (int i = 0; i < 50; ++i) {
    xs.push_back(rng.uniform(-1e6, 1e6));
    ys.push_back(std::exp(rng.uniform(-30.0, 30.0)));
    t.rows.push_back({format_double(xs.back()), format_double(ys.back())});
  }
  auto path = (std::filesystem::temp_directory_path() / "sgc_emit_rt.csv").string();
  write_csv(t, path);
  Table back = read_csv(path);
  REQUIRE(back.rows.size() == 50);
  for (int i = 0; i < 50; ++i) {
    CHECK(std::stod(back.rows[i][0]) == xs[i]);
    CHECK(std::stod(back.rows[i][1]) == ys[i]);
  }
  std::filesystem::remove(path);
}

TEST_CASE("ragged rows are rejected") {
  Table t;
  t.columns = {"a", "b"};
  t.rows.push_back({"1"});
  CHECK_THROWS_AS(to_csv(t), Error);
}

TEST_CASE("2x2 heatmap has four cells and axis labels") {
  std::string svg = svg_heatmap({1.0, 2.0}, {0.1, 0.5}, {0.0, 0.3, 0.7, 1.0},
                                {false, false, false, true}, "tau_plus", "tau_minus",
                                "demo");
  size_t rects = 0;
  for (size_t at = svg.find("<rect"); at != std::string::npos;
       at = svg.find("<rect", at + 1)) {
    ++rects;
  }
  CHECK(rects == 5);  // 4 cells + background
  CHECK(svg.find("tau_plus") != std::string::npos);
  CHECK(svg.find("tau_minus") != std::string::npos);
  CHECK(svg.find("n/a") != std::string::npos);  // invalid cell annotation
  CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("curve svg contains one polyline per series") {
  std::string svg = svg_curves({0.1, 0.5, 1.0}, {"m1", "m2"},
                               {{0.2, 0.5, 0.9}, {0.1, 0.4, 0.8}}, "rho", "ari", "demo");
  size_t lines = 0;
  for (size_t at = svg.find("<polyline"); at != std::string::npos;
       at = svg.find("<polyline", at + 1)) {
    ++lines;
  }
  CHECK(lines == 2);
  CHECK(svg.find("m1") != std::string::npos);
  CHECK(svg.find("m2") != std::string::npos);
}
