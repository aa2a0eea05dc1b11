#include "funtf/eigensteps.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>
#include <utility>

#include <Eigen/Eigenvalues>

#include "funtf/error.hpp"

namespace funtf {

IndexSet::IndexSet(int d, int N) : d_(d), n_(N) {
  if (d < 1 || N <= d + 1) {
    throw InvalidArgument("index set needs d >= 1 and N > d + 1 (got d=" + std::to_string(d) +
                          ", N=" + std::to_string(N) + ")");
  }
  pairs_.reserve(static_cast<std::size_t>(torus_dimension(d, N)));
  for (int j = 1; j <= d - 1; ++j) {
    for (int k = j + 1; k <= j + N - d - 1; ++k) {
      pairs_.push_back({k, j});
    }
  }
}

std::optional<std::size_t> IndexSet::position(int k, int j) const {
  if (j < 1 || j > d_ - 1 || k < j + 1 || k > j + n_ - d_ - 1) return std::nullopt;
  // columns before j each hold N-d-1 entries
  return static_cast<std::size_t>((j - 1) * (n_ - d_ - 1) + (k - j - 1));
}

EntryKind entry_kind(int d, int N, int k, int j) {
  if (j > k) return EntryKind::Zero;
  if (k > N - d && j <= k - (N - d)) return EntryKind::Terminal;
  if (j == std::min(k, d)) return EntryKind::Dependent;
  return EntryKind::Independent;
}

IndependentEigensteps::IndependentEigensteps(IndexSet set, std::vector<double> vals)
    : index_set(std::move(set)), values(std::move(vals)) {
  if (values.size() != index_set.size()) {
    throw InvalidArgument("expected " + std::to_string(index_set.size()) +
                          " independent eigensteps, got " + std::to_string(values.size()));
  }
  const double top = static_cast<double>(index_set.frame_size()) / index_set.dim();
  for (double v : values) {
    if (!std::isfinite(v) || v < -1e-12 || v > top + 1e-12) {
      throw InvalidArgument("independent eigenstep " + std::to_string(v) + " outside [0, N/d]");
    }
  }
}

EigenstepTable::EigenstepTable(int d, int N) : EigenstepTable(d, N, Eigen::MatrixXd::Zero(N, d)) {}

EigenstepTable::EigenstepTable(int d, int N, Eigen::MatrixXd mu) : d_(d), n_(N), mu_(std::move(mu)) {
  if (d < 1 || N < 1 || mu_.rows() != N || mu_.cols() != d) {
    throw InvalidArgument("eigenstep table must be N x d");
  }
}

EigenstepTable complete_table(const IndependentEigensteps& x) {
  const int d = x.index_set.dim();
  const int n = x.index_set.frame_size();
  const double top = static_cast<double>(n) / d;
  EigenstepTable table(d, n);
  for (int k = 1; k <= n; ++k) {
    double row_sum = 0.0;
    int dependent = 0;
    for (int j = 1; j <= d; ++j) {
      switch (entry_kind(d, n, k, j)) {
        case EntryKind::Zero:
          table(k, j) = 0.0;
          break;
        case EntryKind::Terminal:
          table(k, j) = top;
          row_sum += top;
          break;
        case EntryKind::Independent:
          table(k, j) = x.values[*x.index_set.position(k, j)];
          row_sum += table(k, j);
          break;
        case EntryKind::Dependent:
          dependent = j;
          break;
      }
    }
    if (dependent != 0) table(k, dependent) = k - row_sum;
  }
  return table;
}

IndependentEigensteps extract_independent(const EigenstepTable& table) {
  IndexSet set(table.dim(), table.frame_size());
  std::vector<double> values;
  values.reserve(set.size());
  for (const auto& p : set.pairs()) values.push_back(table(p.k, p.j));
  return {std::move(set), std::move(values)};
}

EigenstepTable eigensteps_of(const FrameMatrix& frame) {
  const int d = frame.dim();
  const int n = frame.size();
  EigenstepTable table(d, n);
  CMatrix s = CMatrix::Zero(d, d);
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(d);
  for (int k = 1; k <= n; ++k) {
    s.noalias() += frame.vector(k - 1) * frame.vector(k - 1).adjoint();
    solver.compute(s, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
      throw NumericalError("eigendecomposition of S_" + std::to_string(k) + " failed");
    }
    // ascending from the solver
    const auto& ev = solver.eigenvalues();
    for (int j = 1; j <= d; ++j) {
      const double v = ev(d - j);
      table(k, j) = v < kEigenvalueClamp ? 0.0 : v;
    }
  }
  return table;
}

const char* to_string(Violation::Kind kind) {
  switch (kind) {
    case Violation::Kind::Nonnegativity:
      return "nonnegativity";
    case Violation::Kind::RowOrder:
      return "row-order";
    case Violation::Kind::Interlacing:
      return "interlacing";
    case Violation::Kind::RowSum:
      return "row-sum";
    case Violation::Kind::Terminal:
      return "terminal";
    case Violation::Kind::ZeroPadding:
      return "zero-padding";
  }
  return "unknown";
}

namespace {

std::string entry_name(int k, int j) {
  return "mu_{" + std::to_string(k) + "," + std::to_string(j) + "}";
}

}  // namespace

std::vector<Violation> validate_table(const EigenstepTable& t, double tol) {
  const int d = t.dim();
  const int n = t.frame_size();
  const double top = static_cast<double>(n) / d;
  std::vector<Violation> out;

  auto report = [&](Violation::Kind kind, int k, int j, double slack, std::string what) {
    out.push_back({kind, k, j, slack, std::move(what)});
  };
  // lhs >= rhs within tol
  auto require_ge = [&](Violation::Kind kind, int k, int j, double lhs, double rhs,
                        const std::string& what) {
    if (lhs < rhs - tol) report(kind, k, j, rhs - lhs, what);
  };

  for (int k = 1; k <= n; ++k) {
    double row_sum = 0.0;
    for (int j = 1; j <= d; ++j) {
      const double v = t(k, j);
      row_sum += v;
      require_ge(Violation::Kind::Nonnegativity, k, j, v, 0.0, entry_name(k, j) + " >= 0");
      if (j > k && std::abs(v) > tol) {
        report(Violation::Kind::ZeroPadding, k, j, std::abs(v), entry_name(k, j) + " = 0");
      }
      if (entry_kind(d, n, k, j) == EntryKind::Terminal && std::abs(v - top) > tol) {
        report(Violation::Kind::Terminal, k, j, std::abs(v - top), entry_name(k, j) + " = N/d");
      }
      if (j < d) {
        require_ge(Violation::Kind::RowOrder, k, j, v, t(k, j + 1),
                   entry_name(k, j) + " >= " + entry_name(k, j + 1));
      }
      if (k >= 2) {
        require_ge(Violation::Kind::Interlacing, k, j, v, t(k - 1, j),
                   entry_name(k, j) + " >= " + entry_name(k - 1, j));
        if (j < d) {
          require_ge(Violation::Kind::Interlacing, k, j, t(k - 1, j), t(k, j + 1),
                     entry_name(k - 1, j) + " >= " + entry_name(k, j + 1));
        }
      }
    }
    if (std::abs(row_sum - k) > tol) {
      report(Violation::Kind::RowSum, k, 0, std::abs(row_sum - k),
             "row " + std::to_string(k) + " sums to " + std::to_string(k));
    }
  }
  return out;
}

}  // namespace funtf
