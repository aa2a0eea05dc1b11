#pragma once

// Independent reference computations used by the unit and acceptance suites.
// Nothing here calls into the code path it is used to check.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "funtf/frame.hpp"
#include "funtf/polytope.hpp"
#include "funtf/random.hpp"
#include "test_support.hpp"

namespace funtf::oracle {

/// The inequality chains of the d=3, N=5 eigenstep table written out by hand.
/// y = (mu_{2,1}, mu_{3,2}); in the hand-written table mu_{2,1} is called x2
/// and mu_{3,2} is called x1.
inline bool chains35_member(double mu21, double mu32) {
  const double x1 = mu32, x2 = mu21;
  const double t = 5.0 / 3.0;
  const double m33 = 3.0 - t - x1;  // row-sum entry of row 3
  const double m22 = 2.0 - x2;      // row-sum entry of row 2
  const bool rows3 = t >= x1 && x1 >= m33 && m33 >= 0.0;
  const bool rows2 = x2 >= m22 && m22 >= 0.0;
  const bool diag1 = x2 >= x1 && x1 >= 2.0 / 3.0;
  const bool diag2 = 1.0 >= m22 && m22 >= m33;
  const bool col1 = t >= x2 && x2 >= 1.0;
  const bool col2 = t >= x1 && x1 >= m22;
  const bool col3 = 2.0 / 3.0 >= m33;
  const bool nonneg = x1 >= 0.0 && x2 >= 0.0;
  return rows3 && rows2 && diag1 && diag2 && col1 && col2 && col3 && nonneg;
}

struct GridStats {
  double fraction;            ///< share of grid midpoints inside the polytope
  std::vector<double> mean;   ///< centroid of the inside midpoints
};

/// Midpoint grid of res^2 points over a 2-D box; membership by `inside`.
template <class Inside>
GridStats grid_stats_2d(const std::vector<double>& lo, const std::vector<double>& hi, int res,
                        Inside inside) {
  std::uint64_t count = 0;
  double sx = 0.0, sy = 0.0;
  for (int i = 0; i < res; ++i) {
    const double x = lo[0] + (hi[0] - lo[0]) * (i + 0.5) / res;
    for (int j = 0; j < res; ++j) {
      const double y = lo[1] + (hi[1] - lo[1]) * (j + 0.5) / res;
      if (inside(x, y)) {
        ++count;
        sx += x;
        sy += y;
      }
    }
  }
  const auto c = static_cast<double>(count);
  return {c / (static_cast<double>(res) * res), {sx / c, sy / c}};
}

/// Exact coordinate ranges of a 2-D polygon {A x <= b}: all pairwise line
/// intersections that satisfy every row are the vertices.
inline std::pair<std::vector<double>, std::vector<double>> polygon_ranges(const Eigen::MatrixXd& a,
                                                                          const Eigen::VectorXd& b) {
  std::vector<double> lo(2, std::numeric_limits<double>::infinity());
  std::vector<double> hi(2, -std::numeric_limits<double>::infinity());
  for (int r = 0; r < a.rows(); ++r) {
    for (int s = r + 1; s < a.rows(); ++s) {
      Eigen::Matrix2d m;
      m << a(r, 0), a(r, 1), a(s, 0), a(s, 1);
      if (std::abs(m.determinant()) < 1e-12) continue;
      const Eigen::Vector2d v = m.inverse() * Eigen::Vector2d(b(r), b(s));
      if (((a * v - b).array() <= 1e-12).all()) {
        for (int i = 0; i < 2; ++i) {
          lo[i] = std::min(lo[i], v(i));
          hi[i] = std::max(hi[i], v(i));
        }
      }
    }
  }
  return {lo, hi};
}

/// Secular-equation instance: S = U diag(spectrum) U^*, f a unit vector.
/// `weights[g]` is ||P_g f||^2 for each distinct eigenvalue group, computed
/// directly from U; `next` is the spectrum of S + f f^*, descending.
struct RankOneInstance {
  std::vector<double> spectrum;         ///< descending, with repeats
  std::vector<double> next;             ///< descending spectrum of S + f f^*
  std::vector<double> distinct;         ///< distinct eigenvalues of S
  std::vector<double> weights;          ///< projection weight per distinct eigenvalue
};

inline RankOneInstance rank_one_instance(const std::vector<double>& spectrum, Rng& rng) {
  const int d = static_cast<int>(spectrum.size());
  const CMatrix u = testing::random_unitary(d, rng);
  const CVector f = testing::gaussian_vector(d, rng).normalized();
  Eigen::VectorXd lam(d);
  for (int i = 0; i < d; ++i) lam(i) = spectrum[static_cast<std::size_t>(i)];
  const CMatrix s = u * lam.cast<Complex>().asDiagonal() * u.adjoint();
  const CMatrix s1 = s + f * f.adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(s1, Eigen::EigenvaluesOnly);

  RankOneInstance out;
  out.spectrum = spectrum;
  for (int i = d - 1; i >= 0; --i) out.next.push_back(solver.eigenvalues()(i));
  const CVector coords = u.adjoint() * f;  // f in the eigenbasis
  for (int i = 0; i < d; ++i) {
    const double w = std::norm(coords(i));
    if (out.distinct.empty() || out.distinct.back() != spectrum[static_cast<std::size_t>(i)]) {
      out.distinct.push_back(spectrum[static_cast<std::size_t>(i)]);
      out.weights.push_back(w);
    } else {
      out.weights.back() += w;
    }
  }
  return out;
}

}  // namespace funtf::oracle
