#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <sstream>
#include <string>

#include "funtf/error.hpp"
#include "funtf/io.hpp"
#include "funtf/sampler.hpp"
#include "test_support.hpp"

using namespace funtf;

TEST_CASE("frame JSON round trip is exact") {
  Rng rng(1);
  const auto f = testing::random_unit_frame(3, 5, rng);
  const auto j = io::frame_to_json(f);
  CHECK(j.at("d") == 3);
  CHECK(j.at("N") == 5);
  CHECK(j.at("vectors").size() == 5);
  CHECK(j.at("vectors")[0].size() == 3);
  CHECK(io::frame_from_json(io::Json::parse(j.dump())) == f);
}

TEST_CASE("frame JSON errors") {
  CHECK_THROWS_AS(io::frame_from_json(io::Json::parse(R"({"d":2})")), InvalidArgument);
  CHECK_THROWS_AS(io::frame_from_json(io::Json::parse(R"({"d":2,"N":1,"vectors":[[[1,0],[0,0]]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(io::frame_from_json(io::Json::parse(R"({"d":2,"N":2,"vectors":[[[1,0]],[[0,0],[1,0]]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(io::frame_from_json(io::Json::parse(R"({"d":1,"N":1,"vectors":[[[1,"x"]]]})")),
                  InvalidArgument);
  CHECK_NOTHROW(io::frame_from_json(io::Json::parse(R"({"d":1,"N":1,"vectors":[[[1,0]]]})")));
}

TEST_CASE("record JSON fields") {
  auto cfg = SamplerConfig::make(3, 5, 8);
  cfg.check_full_spark = true;
  Rng rng(8);
  const auto r = EigenliftSampler(cfg).sample(rng, 4);
  const auto j = io::record_to_json(r, 8);
  for (const char* key : {"d", "N", "vectors", "index", "seed", "eigensteps", "angles", "coherence",
                          "tight_residual", "unit_norm_dev", "full_spark", "min_abs_det"}) {
    CHECK_MESSAGE(j.contains(key), key);
  }
  CHECK(j.at("index") == 4);
  CHECK(j.at("eigensteps").get<std::vector<double>>() == r.eigensteps.values);
  CHECK(io::frame_from_json(io::Json::parse(j.dump())) == r.frame);

  Rng rng2(8);
  const auto plain = io::record_to_json(EigenliftSampler(SamplerConfig::make(3, 5)).sample(rng2), 0);
  CHECK_FALSE(plain.contains("full_spark"));
}

TEST_CASE("torus and polytope JSON") {
  const TorusElement t(IndexSet(3, 5), {0.5, 1.5});
  const auto tj = io::torus_to_json(t);
  CHECK(tj.at("order").dump() == "[[2,1],[3,2]]");
  CHECK(tj.at("angles").get<std::vector<double>>() == t.angles);

  const auto h = hrep(3, 5);
  const auto hj = io::hrep_to_json(h, bounding_box(h));
  CHECK(hj.at("A").size() == static_cast<std::size_t>(h.rows()));
  CHECK(hj.at("b").size() == static_cast<std::size_t>(h.rows()));
  CHECK(hj.at("labels").size() == static_cast<std::size_t>(h.rows()));
  CHECK(hj.at("box").at("lo")[0].get<double>() == doctest::Approx(1.0));
  CHECK_FALSE(io::hrep_to_json(h).contains("box"));
}

TEST_CASE("CSV writers") {
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(std::strtod(io::format_double(2.0 / 3.0).c_str(), nullptr) == 2.0 / 3.0);

  std::ostringstream table;
  io::write_table_csv(table, complete_table({IndexSet(2, 4), {1.5}}));
  CHECK(table.str() == "1,0\n1.5,0.5\n2,1\n2,2\n");

  Histogram h{{0.0, 0.5, 1.0}, {3, 4}};
  std::ostringstream hist;
  io::write_histogram_csv(hist, h, "d=2,N=4");
  CHECK(hist.str() == "# d=2,N=4\nlower,upper,count\n0,0.5,3\n0.5,1,4\n");

  Eigen::MatrixXd g(2, 2);
  g << 0.25, 0.5, 0.75, 1.0;
  std::ostringstream grid;
  io::write_grid_csv(grid, g, "grid=2");
  CHECK(grid.str() == "# grid=2\n0.25,0.5\n0.75,1\n");
}
