#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "funtf/frame.hpp"

namespace funtf {

/// A 1-based position (k, j) in the eigenstep table: row k is the spectrum of
/// S_k, column j its j-th largest eigenvalue.
struct TablePos {
  int k;
  int j;
  bool operator==(const TablePos&) const = default;
};

/// The positions of the independent eigensteps,
///   { (k, j) : 1 <= j <= d-1, j+1 <= k <= j+N-d-1 },
/// in canonical column-stacked order (ascending j, then ascending k).
class IndexSet {
 public:
  /// Requires N > d + 1.
  IndexSet(int d, int N);

  int dim() const noexcept { return d_; }
  int frame_size() const noexcept { return n_; }
  std::size_t size() const noexcept { return pairs_.size(); }

  const std::vector<TablePos>& pairs() const noexcept { return pairs_; }
  const TablePos& operator[](std::size_t i) const { return pairs_[i]; }

  /// Canonical position of (k, j), if it is an independent eigenstep.
  std::optional<std::size_t> position(int k, int j) const;

  /// (d-1)(N-d-1).
  static int torus_dimension(int d, int N) { return (d - 1) * (N - d - 1); }

  bool operator==(const IndexSet& other) const { return d_ == other.d_ && n_ == other.n_; }

 private:
  int d_;
  int n_;
  std::vector<TablePos> pairs_;
};

/// Role of a table entry once the independent coordinates are fixed.
enum class EntryKind {
  Zero,         ///< j > k, always 0
  Terminal,     ///< k > N-d and j <= k-(N-d), always N/d
  Independent,  ///< member of the index set
  Dependent,    ///< j = min(k, d), fixed by the row sum
};

EntryKind entry_kind(int d, int N, int k, int j);

/// A point in independent-eigenstep coordinates; values[i] = mu at index_set[i].
/// Values must lie in [0, N/d].
struct IndependentEigensteps {
  IndexSet index_set;
  std::vector<double> values;

  IndependentEigensteps(IndexSet set, std::vector<double> vals);
};

/// The full N x d table of eigensteps mu_{k,j}.
class EigenstepTable {
 public:
  EigenstepTable(int d, int N);
  EigenstepTable(int d, int N, Eigen::MatrixXd mu);

  int dim() const noexcept { return d_; }
  int frame_size() const noexcept { return n_; }

  /// 1-based access.
  double operator()(int k, int j) const { return mu_(k - 1, j - 1); }
  double& operator()(int k, int j) { return mu_(k - 1, j - 1); }

  /// Row k (1-based) as a vector of length d.
  Eigen::VectorXd row(int k) const { return mu_.row(k - 1).transpose(); }

  const Eigen::MatrixXd& values() const noexcept { return mu_; }

 private:
  int d_;
  int n_;
  Eigen::MatrixXd mu_;
};

/// Fills a full table from independent coordinates: terminal block N/d, zero
/// padding, and mu_{k,min(k,d)} fixed by the row sum k. Does not validate.
EigenstepTable complete_table(const IndependentEigensteps& x);

/// Reads the independent entries of a table in canonical order.
IndependentEigensteps extract_independent(const EigenstepTable& table);

/// Row k = spectrum of S_k sorted descending, with values below 1e-12 set to 0.
EigenstepTable eigensteps_of(const FrameMatrix& frame);

inline constexpr double kEigenvalueClamp = 1e-12;

struct Violation {
  enum class Kind { Nonnegativity, RowOrder, Interlacing, RowSum, Terminal, ZeroPadding };
  Kind kind;
  int k;
  int j;
  double slack;  ///< how far the constraint is violated (positive)
  std::string description;
};

const char* to_string(Violation::Kind kind);

/// Every violated table constraint, with its slack. Empty iff valid within tol.
std::vector<Violation> validate_table(const EigenstepTable& table, double tol);

}  // namespace funtf
