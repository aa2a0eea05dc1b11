#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "funtf/eigensteps.hpp"
#include "funtf/error.hpp"
#include "test_support.hpp"

using namespace funtf;
using funtf::testing::basis;
using funtf::testing::frame_of;

namespace {

// Brute-force enumeration of the defining inequalities.
std::vector<TablePos> enumerate_pairs(int d, int n) {
  std::vector<TablePos> out;
  for (int j = 1; j <= d; ++j) {
    for (int k = 1; k <= n; ++k) {
      if (1 <= j && j <= d - 1 && j + 1 <= k && k <= j + n - d - 1) out.push_back({k, j});
    }
  }
  return out;
}

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> r) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(r.size()), static_cast<Eigen::Index>(r.begin()->size()));
  int i = 0;
  for (const auto& row : r) {
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

}  // namespace

TEST_CASE("index set") {
  const IndexSet s35(3, 5);
  REQUIRE(s35.size() == 2);
  CHECK(s35[0] == TablePos{2, 1});
  CHECK(s35[1] == TablePos{3, 2});

  const IndexSet s24(2, 4);
  REQUIRE(s24.size() == 1);
  CHECK(s24[0] == TablePos{2, 1});

  CHECK(IndexSet(4, 7).size() == 6);

  for (int d = 1; d <= 6; ++d) {
    for (int n = d + 2; n <= d + 8; ++n) {
      const IndexSet s(d, n);
      CHECK(static_cast<int>(s.size()) == IndexSet::torus_dimension(d, n));
      CHECK(s.pairs() == enumerate_pairs(d, n));
      for (std::size_t i = 0; i < s.size(); ++i) CHECK(s.position(s[i].k, s[i].j) == i);
      CHECK_FALSE(s.position(1, 1).has_value());
    }
  }

  CHECK_THROWS_AS(IndexSet(3, 4), InvalidArgument);
  CHECK_THROWS_AS(IndexSet(3, 3), InvalidArgument);
}

TEST_CASE("complete table at d=3, N=5") {
  const double t = 5.0 / 3.0;
  const auto table = complete_table({IndexSet(3, 5), {1.3, 1.2}});
  const auto expected = rows({{1, 0, 0},
                              {1.3, 0.7, 0},
                              {t, 1.2, 3 - t - 1.2},
                              {t, t, 2.0 / 3.0},
                              {t, t, t}});
  CHECK(testing::max_abs_diff(table.values(), expected) < 1e-15);

  const auto vertex = complete_table({IndexSet(3, 5), {t, 4.0 / 3.0}});
  const auto vexpected = rows({{1, 0, 0},
                               {t, 1.0 / 3.0, 0},
                               {t, 4.0 / 3.0, 0},
                               {t, t, 2.0 / 3.0},
                               {t, t, t}});
  CHECK(testing::max_abs_diff(vertex.values(), vexpected) < 1e-15);
  CHECK(validate_table(vertex, 1e-12).empty());

  CHECK_THROWS_AS(IndependentEigensteps(IndexSet(3, 5), {1.0}), InvalidArgument);
  CHECK_THROWS_AS(IndependentEigensteps(IndexSet(3, 5), {1.0, 2.0}), InvalidArgument);
}

TEST_CASE("complete table structure for random coordinates") {
  Rng rng(3);
  for (int d = 2; d <= 5; ++d) {
    for (int n = d + 2; n <= d + 5; ++n) {
      const IndexSet s(d, n);
      std::vector<double> x(s.size());
      for (double& v : x) v = rng.uniform(0.0, static_cast<double>(n) / d);
      const auto t = complete_table({s, x});
      CHECK(t(1, 1) == 1.0);
      for (int j = 2; j <= d; ++j) CHECK(t(1, j) == 0.0);
      for (int k = 1; k <= n; ++k) {
        CHECK(t.row(k).sum() == doctest::Approx(k).epsilon(1e-14));
        for (int j = k + 1; j <= d; ++j) CHECK(t(k, j) == 0.0);
        for (int j = 1; j <= d; ++j) {
          if (k > n - d && j <= k - (n - d)) CHECK(t(k, j) == static_cast<double>(n) / d);
        }
      }
      // projection is bit-exact
      CHECK(extract_independent(t).values == x);
    }
  }
}

TEST_CASE("extract independent reads canonical order") {
  const double t = 5.0 / 3.0;
  // completed table with x1 = 1.2 at mu_{3,2} and x2 = 1.3 at mu_{2,1}
  const EigenstepTable table(3, 5, rows({{1, 0, 0}, {1.3, 0.7, 0}, {t, 1.2, 3 - t - 1.2}, {t, t, 2.0 / 3.0}, {t, t, t}}));
  CHECK(extract_independent(table).values == std::vector<double>{1.3, 1.2});
}

TEST_CASE("eigensteps of small frames") {
  const auto e1 = basis(2, 0), e2 = basis(2, 1);
  CHECK(eigensteps_of(frame_of({e1, e2})).values() == rows({{1, 0}, {1, 1}}));
  CHECK(eigensteps_of(frame_of({e1, e1})).values() == rows({{1, 0}, {2, 0}}));
}

TEST_CASE("eigensteps of random unit-norm frames") {
  Rng rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int d = 2 + trial % 4;
    const int n = d + 1 + trial % 4;
    const auto f = testing::random_unit_frame(d, n, rng);
    const auto t = eigensteps_of(f);
    for (int k = 1; k <= n; ++k) {
      CHECK(std::abs(t.row(k).sum() - k) <= 1e-10);
      int nonzero = 0;
      for (int j = 1; j <= d; ++j) nonzero += t(k, j) != 0.0;
      CHECK(nonzero <= std::min(k, d));
    }
    // larger eigenvalue of the 2x2 Gram block
    CHECK(std::abs(t(2, 1) - (1.0 + std::abs(f.vector(0).dot(f.vector(1))))) <= 1e-10);
    // not tight, so only the terminal rows can fail
    for (const auto& v : validate_table(t, 1e-9)) CHECK(v.kind == Violation::Kind::Terminal);
  }
}

TEST_CASE("validate table reports violations") {
  CHECK(validate_table(complete_table({IndexSet(3, 5), {1.3, 1.2}}), 1e-12).empty());

  const auto bad = validate_table(complete_table({IndexSet(3, 5), {1.0, 1.5}}), 1e-12);
  REQUIRE_FALSE(bad.empty());
  const bool found = std::any_of(bad.begin(), bad.end(), [](const Violation& v) {
    return v.kind == Violation::Kind::Interlacing && v.description == "mu_{2,1} >= mu_{3,2}" &&
           std::abs(v.slack - 0.5) < 1e-12;
  });
  CHECK(found);

  const double tol = 1e-9;
  auto t = complete_table({IndexSet(3, 5), {1.3, 1.2}});
  t(2, 2) += 2 * tol;
  const auto perturbed = validate_table(t, tol);
  CHECK(std::any_of(perturbed.begin(), perturbed.end(), [](const Violation& v) {
    return v.kind == Violation::Kind::RowSum && v.k == 2;
  }));

  auto pad = complete_table({IndexSet(3, 5), {1.3, 1.2}});
  pad(1, 3) = 0.01;
  const auto padv = validate_table(pad, tol);
  CHECK(std::any_of(padv.begin(), padv.end(),
                    [](const Violation& v) { return v.kind == Violation::Kind::ZeroPadding; }));

  auto term = complete_table({IndexSet(3, 5), {1.3, 1.2}});
  term(5, 1) = 1.7;
  term(5, 3) = 5.0 - 1.7 - 5.0 / 3.0;
  const auto termv = validate_table(term, tol);
  CHECK(std::any_of(termv.begin(), termv.end(),
                    [](const Violation& v) { return v.kind == Violation::Kind::Terminal && v.k == 5; }));
}
