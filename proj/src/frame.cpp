#include "funtf/frame.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "funtf/error.hpp"

namespace funtf {

FrameMatrix::FrameMatrix(CMatrix vectors) : vectors_(std::move(vectors)) {
  if (vectors_.rows() < 1 || vectors_.cols() < 1) {
    throw InvalidArgument("frame must have d >= 1 and N >= 1");
  }
  if (vectors_.cols() < vectors_.rows()) {
    throw InvalidArgument("frame needs N >= d (got d=" + std::to_string(vectors_.rows()) +
                          ", N=" + std::to_string(vectors_.cols()) + ")");
  }
  if (!vectors_.allFinite()) {
    throw InvalidArgument("frame entries must be finite");
  }
}

CMatrix frame_operator(const FrameMatrix& frame) {
  return partial_frame_operator(frame, frame.size());
}

CMatrix partial_frame_operator(const FrameMatrix& frame, int k) {
  if (k < 1 || k > frame.size()) {
    throw InvalidArgument("partial frame operator index k=" + std::to_string(k) +
                          " outside [1, " + std::to_string(frame.size()) + "]");
  }
  const int d = frame.dim();
  CMatrix s = CMatrix::Zero(d, d);
  for (int i = 0; i < k; ++i) {
    s.noalias() += frame.vector(i) * frame.vector(i).adjoint();
  }
  return s;
}

UnitNormCheck is_unit_norm(const FrameMatrix& frame, double tol) {
  double worst = 0.0;
  for (int i = 0; i < frame.size(); ++i) {
    worst = std::max(worst, std::abs(frame.vector(i).squaredNorm() - 1.0));
  }
  return {worst <= tol, worst};
}

TightnessCheck is_tight(const FrameMatrix& frame, double tol) {
  const int d = frame.dim();
  const double a = static_cast<double>(frame.size()) / d;
  const double residual = (frame_operator(frame) - a * CMatrix::Identity(d, d)).norm();
  return {residual <= tol, residual};
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;
  }
  return std::round(c);
}

double default_spark_threshold(int d, int N) {
  return 1e-8 * std::pow(static_cast<double>(N) / d, d / 2.0);
}

SparkCheck is_full_spark(const FrameMatrix& frame, double tol) {
  const int d = frame.dim();
  const int n = frame.size();
  if (binomial(n, d) > 1e6) {
    throw InvalidArgument("full-spark check needs C(N,d) <= 1e6");
  }
  // Walk all d-subsets in lexicographic order.
  std::vector<int> subset(d);
  std::iota(subset.begin(), subset.end(), 0);
  CMatrix sub(d, d);
  double min_det = std::numeric_limits<double>::infinity();
  while (true) {
    for (int c = 0; c < d; ++c) sub.col(c) = frame.vector(subset[c]);
    min_det = std::min(min_det, std::abs(sub.partialPivLu().determinant()));

    int pos = d - 1;
    while (pos >= 0 && subset[pos] == n - d + pos) --pos;
    if (pos < 0) break;
    ++subset[pos];
    for (int c = pos + 1; c < d; ++c) subset[c] = subset[c - 1] + 1;
  }
  return {min_det > tol, min_det};
}

SparkCheck is_full_spark(const FrameMatrix& frame) {
  return is_full_spark(frame, default_spark_threshold(frame.dim(), frame.size()));
}

double coherence(const FrameMatrix& frame, double unit_tol) {
  const auto check = is_unit_norm(frame, unit_tol);
  if (!check.ok) {
    throw InvalidArgument("coherence needs a unit-norm frame (max | ||f||^2 - 1 | = " +
                          std::to_string(check.max_deviation) + ")");
  }
  const CMatrix gram = frame.matrix().adjoint() * frame.matrix();
  double worst = 0.0;
  for (int j = 0; j < frame.size(); ++j) {
    for (int i = 0; i < j; ++i) {
      worst = std::max(worst, std::abs(gram(i, j)));
    }
  }
  return worst;
}

}  // namespace funtf
