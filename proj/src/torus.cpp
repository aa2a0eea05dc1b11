#include "funtf/torus.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "funtf/error.hpp"
#include "funtf/lift.hpp"

namespace funtf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  return r < kTwoPi ? r : 0.0;
}

}  // namespace

TorusElement::TorusElement(IndexSet set, std::vector<double> raw_angles)
    : index_set(std::move(set)), angles(std::move(raw_angles)) {
  if (angles.size() != index_set.size()) {
    throw InvalidArgument("torus element needs " + std::to_string(index_set.size()) +
                          " angles, got " + std::to_string(angles.size()));
  }
  for (double& a : angles) {
    if (!std::isfinite(a)) throw InvalidArgument("torus angles must be finite");
    a = reduce_angle(a);
  }
}

double default_isolation_tolerance(int d, int N) { return 1e-10 * static_cast<double>(N) / d; }

FrameMatrix circle_action(const FrameMatrix& frame, int k, int j, double t, double tol_iso) {
  const int d = frame.dim();
  if (k < 1 || k > frame.size() || j < 1 || j > d) {
    throw InvalidArgument("circle action index (" + std::to_string(k) + "," + std::to_string(j) +
                          ") out of range");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(partial_frame_operator(frame, k));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of S_" + std::to_string(k) + " failed");
  }
  // j-th largest sits at ascending position d - j
  const auto& ev = solver.eigenvalues();
  const int pos = d - j;
  double gap = std::numeric_limits<double>::infinity();
  if (pos > 0) gap = std::min(gap, ev(pos) - ev(pos - 1));
  if (pos < d - 1) gap = std::min(gap, ev(pos + 1) - ev(pos));
  if (!(gap > tol_iso)) throw IsolationError(k, j, gap);

  const CVector u = canonical_phase(solver.eigenvectors().col(pos));
  const Complex factor = std::polar(1.0, t) - 1.0;
  CMatrix out = frame.matrix();
  for (int i = 0; i < k; ++i) {
    const Complex proj = u.dot(out.col(i));  // u^* f_i
    out.col(i) += (factor * proj) * u;
  }
  return FrameMatrix(std::move(out));
}

FrameMatrix torus_action(const FrameMatrix& frame, const TorusElement& theta, double tol_iso) {
  if (theta.index_set.dim() != frame.dim() || theta.index_set.frame_size() != frame.size()) {
    throw InvalidArgument("torus element and frame have different (d, N)");
  }
  FrameMatrix current = frame;
  for (std::size_t i = 0; i < theta.index_set.size(); ++i) {
    const auto [k, j] = theta.index_set[i];
    current = circle_action(current, k, j, theta.angles[i], tol_iso);
  }
  return current;
}

TorusElement random_torus_element(const IndexSet& index_set, Rng& rng) {
  std::vector<double> angles(index_set.size());
  for (double& a : angles) a = rng.uniform(0.0, kTwoPi);
  return {index_set, std::move(angles)};
}

}  // namespace funtf
