#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "funtf/eigensteps.hpp"
#include "funtf/error.hpp"
#include "funtf/polytope.hpp"
#include "oracles.hpp"

using namespace funtf;

namespace {

std::vector<double> uniform_point(const std::vector<double>& lo, const std::vector<double>& hi, Rng& rng) {
  std::vector<double> x(lo.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform(lo[i], hi[i]);
  return x;
}

}  // namespace

TEST_CASE("d=3, N=5 membership matches the hand-written chains") {
  const auto h = hrep(3, 5);
  CHECK(h.dimension() == 2);

  CHECK(contains(h, std::vector<double>{1.3, 1.2}));
  CHECK(contains(h, std::vector<double>{1.589, 1.009}));
  CHECK(contains(h, std::vector<double>{1.361, 0.711}));
  CHECK_FALSE(contains(h, std::vector<double>{1.0, 1.5}));
  CHECK_FALSE(contains(h, std::vector<double>{0.9, 0.9}));
  CHECK(contains(h, std::vector<double>{5.0 / 3.0, 4.0 / 3.0}, 1e-12));

  Rng rng(1);
  for (int i = 0; i < 20000; ++i) {
    const std::vector<double> x{rng.uniform(0.0, 5.0 / 3.0), rng.uniform(0.0, 5.0 / 3.0)};
    CHECK(contains(h, x) == oracle::chains35_member(x[0], x[1]));
  }
  CHECK_THROWS_AS(contains(h, std::vector<double>{1.0}), InvalidArgument);
}

TEST_CASE("rows are sparse and labelled") {
  // at most three coordinates while each row-sum entry involves a single coordinate
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 6}, {2, 8}, {3, 5}, {3, 6}}) {
    const auto h = hrep(d, n);
    CHECK(static_cast<int>(h.labels.size()) == h.rows());
    for (int r = 0; r < h.rows(); ++r) CHECK((h.A.row(r).array() != 0.0).count() <= 3);
  }
  // in general a row couples two table entries, each a sum of at most d - 1 coordinates
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{3, 7}, {3, 9}, {4, 7}, {5, 9}}) {
    const auto h = hrep(d, n);
    CHECK(static_cast<int>(h.labels.size()) == h.rows());
    for (int r = 0; r < h.rows(); ++r) CHECK((h.A.row(r).array() != 0.0).count() <= 2 * (d - 1));
  }
}

TEST_CASE("membership agrees with table validation") {
  Rng rng(2);
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 4}, {2, 5}, {3, 5}, {3, 6}, {4, 7}}) {
    const auto h = hrep(d, n);
    const IndexSet s(d, n);
    const std::vector<double> lo(s.size(), 0.0), hi(s.size(), static_cast<double>(n) / d);
    int inside = 0;
    for (int i = 0; i < 20000; ++i) {
      const auto x = uniform_point(lo, hi, rng);
      const bool valid = validate_table(complete_table({s, x}), 0.0).empty();
      CHECK(contains(h, x) == valid);
      inside += valid;
    }
    CHECK(inside > 0);
  }
}

TEST_CASE("bounding box") {
  const auto box35 = bounding_box(hrep(3, 5));
  CHECK(box35.lo[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(box35.hi[0] == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(box35.lo[1] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(box35.hi[1] == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
  CHECK(box35.volume() == doctest::Approx(4.0 / 9.0));

  // in two dimensions propagation reaches the exact projection
  for (const int n : {5, 6}) {
    const auto h = hrep(2, n);
    if (h.dimension() != 2) continue;
    const auto box = bounding_box(h);
    const auto [lo, hi] = oracle::polygon_ranges(h.A, h.b);
    for (int i = 0; i < 2; ++i) {
      CHECK(box.lo[i] == doctest::Approx(lo[i]).epsilon(1e-12));
      CHECK(box.hi[i] == doctest::Approx(hi[i]).epsilon(1e-12));
    }
  }

  // the box always contains the polytope
  Rng rng(4);
  for (const auto& [d, n] : std::vector<std::pair<int, int>>{{2, 6}, {3, 6}, {3, 7}, {4, 7}}) {
    const auto h = hrep(d, n);
    const auto box = bounding_box(h);
    const std::vector<double> lo(h.dimension(), 0.0), hi(h.dimension(), static_cast<double>(n) / d);
    for (int i = 0; i < 20000; ++i) {
      const auto x = uniform_point(lo, hi, rng);
      if (!contains(h, x)) continue;
      for (int c = 0; c < h.dimension(); ++c) {
        CHECK(x[c] >= box.lo[c] - 1e-12);
        CHECK(x[c] <= box.hi[c] + 1e-12);
      }
    }
  }
}

TEST_CASE("d=3, N=5 area") {
  const auto h = hrep(3, 5);
  const auto box = bounding_box(h);
  const auto grid = oracle::grid_stats_2d(box.lo, box.hi, 2000,
                                          [](double x, double y) { return oracle::chains35_member(x, y); });
  // pentagon (1, 1), (4/3, 2/3), (5/3, 1), (5/3, 4/3), (4/3, 4/3)
  CHECK(grid.fraction * box.volume() == doctest::Approx(5.0 / 18.0).epsilon(1e-3));
}

TEST_CASE("rejection sampling") {
  const auto h = hrep(3, 5);
  const auto box = bounding_box(h);
  const auto grid = oracle::grid_stats_2d(box.lo, box.hi, 2000, [&](double x, double y) {
    return contains(h, std::vector<double>{x, y});
  });

  Rng rng(7);
  const int draws = 100000;
  std::uint64_t trials = 0;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (int i = 0; i < draws; ++i) {
    const auto draw = rejection_sample(h, box, rng);
    REQUIRE(contains(h, draw.point));
    REQUIRE(draw.trials >= 1);
    trials += draw.trials;
    sx += draw.point[0];
    sy += draw.point[1];
    sxx += draw.point[0] * draw.point[0];
    syy += draw.point[1] * draw.point[1];
  }
  const double rate = static_cast<double>(draws) / static_cast<double>(trials);
  const double se = std::sqrt(grid.fraction * (1.0 - grid.fraction) / static_cast<double>(trials));
  CHECK(std::abs(rate - grid.fraction) <= 3.0 * se + 1e-4);

  const double mx = sx / draws, my = sy / draws;
  CHECK(std::abs(mx - grid.mean[0]) <= 3.0 * std::sqrt((sxx / draws - mx * mx) / draws) + 1e-5);
  CHECK(std::abs(my - grid.mean[1]) <= 3.0 * std::sqrt((syy / draws - my * my) / draws) + 1e-5);

  Rng a(9), b(9);
  CHECK(rejection_sample(h, box, a).point == rejection_sample(h, box, b).point);

  // a box that misses the polytope
  const BoundingBox outside{{0.0, 0.0}, {0.1, 0.1}};
  CHECK_THROWS_AS(rejection_sample(h, outside, rng, 1000), SamplingError);
}

TEST_CASE("hit-and-run") {
  const auto h = hrep(3, 5);
  const auto box = bounding_box(h);
  const auto grid = oracle::grid_stats_2d(box.lo, box.hi, 2000, [&](double x, double y) {
    return contains(h, std::vector<double>{x, y});
  });

  const std::vector<double> start{4.0 / 3.0, 1.0};
  REQUIRE(contains(h, start, -1e-3));

  Rng rng(11);
  CHECK(hit_and_run(h, start, 0, rng) == start);
  CHECK_THROWS_AS(hit_and_run(h, std::vector<double>{1.0, 1.5}, 5, rng), InvalidArgument);
  CHECK_THROWS_AS(hit_and_run(h, start, -1, rng), InvalidArgument);

  const int chains = 10000;
  double sx = 0.0, sy = 0.0, sxx = 0.0, syy = 0.0;
  for (int c = 0; c < chains; ++c) {
    Rng chain = Rng::stream(13, static_cast<std::uint64_t>(c));
    const auto x = hit_and_run(h, start, 200, chain);
    REQUIRE(contains(h, x, 1e-12));
    sx += x[0];
    sy += x[1];
    sxx += x[0] * x[0];
    syy += x[1] * x[1];
  }
  const double mx = sx / chains, my = sy / chains;
  CHECK(std::abs(mx - grid.mean[0]) <= 3.0 * std::sqrt((sxx / chains - mx * mx) / chains) + 1e-5);
  CHECK(std::abs(my - grid.mean[1]) <= 3.0 * std::sqrt((syy / chains - my * my) / chains) + 1e-5);

  // higher dimensions stay feasible
  const auto h47 = hrep(4, 7);
  const auto box47 = bounding_box(h47);
  Rng r47(5);
  const auto x0 = rejection_sample(h47, box47, r47).point;
  const auto x = hit_and_run(h47, x0, 500, r47);
  CHECK(contains(h47, x, 1e-12));
}

TEST_CASE("N = d + 1 has no polytope") {
  CHECK_THROWS_AS(hrep(3, 4), InvalidArgument);
}
