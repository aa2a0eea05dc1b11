#include "funtf/lift.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "funtf/error.hpp"

namespace funtf {

std::vector<std::vector<int>> group_descending(std::span<const double> values, double tol_group) {
  std::vector<std::vector<int>> groups;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == 0 || values[i - 1] - values[i] > tol_group) groups.emplace_back();
    groups.back().push_back(static_cast<int>(i));
  }
  return groups;
}

SpectralDecomposition decompose(const CMatrix& hermitian, double tol_group) {
  const auto d = hermitian.rows();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition failed");
  }
  SpectralDecomposition out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  out.groups = group_descending({out.eigenvalues.data(), static_cast<std::size_t>(d)}, tol_group);
  return out;
}

CVector canonical_phase(const CVector& v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double a = std::abs(v(i));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (best_abs <= 0.0) return v;
  return v * (std::conj(v(best)) / best_abs);
}

namespace {

double raw_limit_weight(std::span<const double> row_k, std::span<const double> row_k1, double mu,
                        double tol_group) {
  if (row_k.size() != row_k1.size()) throw InvalidArgument("eigenstep rows differ in length");
  auto near = [&](double a) { return std::abs(a - mu) <= tol_group; };
  const auto m_k = std::count_if(row_k.begin(), row_k.end(), near);
  const auto m_k1 = std::count_if(row_k1.begin(), row_k1.end(), near);
  if (m_k == 0) {
    throw InvalidArgument("limit weight requested at " + std::to_string(mu) +
                          ", which is not an eigenvalue of S_k");
  }
  if (m_k1 >= m_k) return 0.0;
  if (m_k1 < m_k - 1) {
    throw InvalidArgument("eigenstep rows do not interlace at " + std::to_string(mu) +
                          " (multiplicity drops by more than one)");
  }
  double num = 1.0;
  for (double a : row_k1) {
    if (!near(a)) num *= mu - a;
  }
  double den = 1.0;
  for (double b : row_k) {
    if (!near(b)) den *= mu - b;
  }
  return -num / den;
}

}  // namespace

double limit_weight(std::span<const double> row_k, std::span<const double> row_k1, double mu,
                    double tol_group) {
  const double w = raw_limit_weight(row_k, row_k1, mu, tol_group);
  if (w < -tol_group) {
    throw NumericalError("negative limit weight " + std::to_string(w) + " at " +
                         std::to_string(mu) + " (inconsistent eigenstep rows)");
  }
  return std::max(w, 0.0);
}

double default_group_tolerance(int d, int N) {
  return 1e-8 * std::max(1.0, static_cast<double>(N) / d);
}

FrameMatrix lift_to_fiber(const IndependentEigensteps& x, const LiftOptions& options,
                          LiftReport* report) {
  const int d = x.index_set.dim();
  const int n = x.index_set.frame_size();
  const double tol_group =
      options.tol_group < 0.0 ? default_group_tolerance(d, n) : options.tol_group;

  const EigenstepTable table = complete_table(x);
  if (const auto bad = validate_table(table, options.tol); !bad.empty()) {
    throw InvalidArgument("eigenstep table invalid: " + bad.front().description + " (violated by " +
                          std::to_string(bad.front().slack) + ")");
  }

  LiftReport local;
  CMatrix f = CMatrix::Zero(d, n);
  f(0, 0) = 1.0;
  CMatrix s = f.col(0) * f.col(0).adjoint();
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(d);

  for (int k = 1; k < n; ++k) {
    const Eigen::VectorXd row_k = table.row(k);
    const Eigen::VectorXd row_k1 = table.row(k + 1);
    const std::span<const double> rk(row_k.data(), static_cast<std::size_t>(d));
    const std::span<const double> rk1(row_k1.data(), static_cast<std::size_t>(d));

    solver.compute(s);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition of S_" + std::to_string(k) + " failed");
    }
    // solver order is ascending; table position p maps to column d-1-p

    CVector next = CVector::Zero(d);
    double weight_sum = 0.0;
    // multiplicities come from the exact table row, eigenvectors from S_k
    for (const auto& group : group_descending(rk, tol_group)) {
      const double mu = rk[static_cast<std::size_t>(group.front())];
      const double raw = raw_limit_weight(rk, rk1, mu, tol_group);
      if (raw < -tol_group) {
        throw NumericalError("negative limit weight " + std::to_string(raw) + " at step " +
                             std::to_string(k) + " (inconsistent eigensteps)");
      }
      if (raw < 0.0) local.max_clamp = std::max(local.max_clamp, -raw);
      const double w = std::max(raw, 0.0);
      weight_sum += w;
      if (w > 0.0) {
        next += std::sqrt(w) * canonical_phase(solver.eigenvectors().col(d - 1 - group.front()));
      }
    }
    local.max_weight_sum_error = std::max(local.max_weight_sum_error, std::abs(weight_sum - 1.0));
    if (std::abs(weight_sum - 1.0) > options.tol) {
      throw NumericalError("limit weights at step " + std::to_string(k) + " sum to " +
                           std::to_string(weight_sum) + ", not 1");
    }
    f.col(k) = next;
    s.noalias() += next * next.adjoint();
  }

  FrameMatrix frame(std::move(f));
  local.round_trip_error = (eigensteps_of(frame).values() - table.values()).cwiseAbs().maxCoeff();
  if (report != nullptr) *report = local;
  if (local.round_trip_error > options.tol) {
    throw NumericalError("lifted frame misses its eigensteps by " +
                         std::to_string(local.round_trip_error) +
                         " (point too close to the polytope boundary)");
  }
  return frame;
}

}  // namespace funtf
