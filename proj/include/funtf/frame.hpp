#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Dense>

namespace funtf {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// A frame of N vectors in C^d, stored as the d x N matrix whose column i is
/// frame vector f_{i+1}. Construction enforces N >= d and finite entries.
class FrameMatrix {
 public:
  explicit FrameMatrix(CMatrix vectors);

  int dim() const noexcept { return static_cast<int>(vectors_.rows()); }
  int size() const noexcept { return static_cast<int>(vectors_.cols()); }

  const CMatrix& matrix() const noexcept { return vectors_; }

  /// Frame vector i, zero-based.
  auto vector(int i) const { return vectors_.col(i); }

  bool operator==(const FrameMatrix& other) const {
    return vectors_.rows() == other.vectors_.rows() && vectors_.cols() == other.vectors_.cols() &&
           vectors_ == other.vectors_;
  }

 private:
  CMatrix vectors_;
};

/// F F^*.
CMatrix frame_operator(const FrameMatrix& frame);

/// S_k = f_1 f_1^* + ... + f_k f_k^*, accumulated in index order, 1 <= k <= N.
CMatrix partial_frame_operator(const FrameMatrix& frame, int k);

struct UnitNormCheck {
  bool ok;
  double max_deviation;  ///< max_i | ||f_i||^2 - 1 |
};

struct TightnessCheck {
  bool ok;
  double residual;  ///< || F F^* - (N/d) I ||_F
};

struct SparkCheck {
  bool ok;
  double min_abs_det;  ///< minimum |det| over all d-column submatrices
};

UnitNormCheck is_unit_norm(const FrameMatrix& frame, double tol);
TightnessCheck is_tight(const FrameMatrix& frame, double tol);

/// Default full-spark threshold 1e-8 (N/d)^{d/2}.
double default_spark_threshold(int d, int N);

/// Exhaustive check over all C(N, d) column subsets; refuses when C(N, d) > 1e6.
SparkCheck is_full_spark(const FrameMatrix& frame, double tol);
SparkCheck is_full_spark(const FrameMatrix& frame);

/// max_{i != j} |<f_i, f_j>| for a unit-norm frame. Throws InvalidArgument when
/// some squared norm is further than `unit_tol` from 1.
double coherence(const FrameMatrix& frame, double unit_tol = 1e-8);

/// Binomial coefficient as a double (exact for the ranges used here).
double binomial(int n, int k);

}  // namespace funtf
