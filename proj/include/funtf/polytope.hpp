#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "funtf/eigensteps.hpp"
#include "funtf/random.hpp"

namespace funtf {

/// The eigenstep polytope as { x : A x <= b } over independent-eigenstep
/// coordinates in canonical order. Row r came from the table constraint
/// described by labels[r].
struct PolytopeHRep {
  int d;
  int N;
  IndexSet order;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  std::vector<std::string> labels;

  int dimension() const noexcept { return static_cast<int>(A.cols()); }
  int rows() const noexcept { return static_cast<int>(A.rows()); }
};

/// Axis-aligned box containing the polytope.
struct BoundingBox {
  std::vector<double> lo;
  std::vector<double> hi;

  double volume() const;
};

/// Interlacing, row-order, nonnegativity and N/d upper-bound constraints of the
/// completed table, rewritten in independent coordinates. Rows with identical
/// coefficients are merged keeping the smallest right-hand side; constant rows
/// are dropped. Requires N > d + 1.
PolytopeHRep hrep(int d, int N);

/// A x <= b + tol componentwise.
bool contains(const PolytopeHRep& h, std::span<const double> x, double tol = 0.0);

/// Interval constraint propagation from [0, N/d]^{d_T} to a fixpoint. Throws
/// NumericalError if some interval becomes empty.
BoundingBox bounding_box(const PolytopeHRep& h);

struct RejectionDraw {
  std::vector<double> point;
  std::uint64_t trials;  ///< box proposals consumed, including the accepted one
};

inline constexpr std::uint64_t kDefaultMaxRejectionTrials = 10'000'000;

/// Uniform point of the polytope by rejection from the box. Throws
/// SamplingError after max_trials proposals without acceptance.
RejectionDraw rejection_sample(const PolytopeHRep& h, const BoundingBox& box, Rng& rng,
                               std::uint64_t max_trials = kDefaultMaxRejectionTrials);

/// Hit-and-run: `steps` moves along uniformly random directions, each to a
/// uniform point of the feasible chord. x0 must be strictly interior.
std::vector<double> hit_and_run(const PolytopeHRep& h, std::span<const double> x0, int steps,
                                Rng& rng);

}  // namespace funtf
