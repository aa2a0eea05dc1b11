#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "funtf/eigensteps.hpp"
#include "funtf/frame.hpp"
#include "funtf/lift.hpp"
#include "funtf/polytope.hpp"
#include "funtf/random.hpp"
#include "funtf/torus.hpp"

namespace funtf {

enum class PolytopeSampler { Rejection, HitAndRun };

struct Tolerances {
  double tol;        ///< table validation / lift round trip
  double tol_group;  ///< eigenvalue grouping in the lift
  double tol_iso;    ///< eigenvalue isolation in circle actions

  static Tolerances defaults(int d, int N);
};

/// Postcondition thresholds every emitted frame is checked against.
inline constexpr double kUnitNormBound = 1e-10;
inline constexpr double kTightnessBound = 1e-8;
inline constexpr double kCoherenceSlack = 1e-9;

/// min{1, (N-d)/d}: the largest coherence a FUNTF can have.
double coherence_bound(int d, int N);

struct SamplerConfig {
  int d = 3;
  int N = 5;
  std::uint64_t seed = 0;
  PolytopeSampler polytope_sampler = PolytopeSampler::Rejection;
  int hnr_steps = 200;
  Tolerances tolerances{1e-8, 1e-8, 1e-10};
  std::uint64_t max_rejection_trials = kDefaultMaxRejectionTrials;
  int max_retries = 16;
  bool randomize_class = false;  ///< apply a random element of U(d) x G afterwards
  bool check_full_spark = false;

  /// Config with the default tolerances for (d, N).
  static SamplerConfig make(int d, int N, std::uint64_t seed = 0);

  /// Throws InvalidArgument unless N > d + 1 and all tolerances are positive.
  void validate() const;
};

struct SampleDiagnostics {
  double unit_norm_dev = 0.0;
  double tight_residual = 0.0;
  double coherence = 0.0;
  std::optional<bool> full_spark;
  double min_abs_det = 0.0;
  std::uint64_t polytope_trials = 0;
  int retries = 0;
  bool flagged = false;  ///< some postcondition threshold exceeded
};

struct SampleRecord {
  std::uint64_t index;
  FrameMatrix frame;
  IndependentEigensteps eigensteps;  ///< the sampled polytope point
  TorusElement torus;
  SampleDiagnostics diagnostics;
};

/// The Eigenlift pipeline for a fixed configuration: polytope point, lift to
/// its fiber, random torus action. Holds the H-representation and bounding
/// box so repeated draws do not rebuild them.
class EigenliftSampler {
 public:
  explicit EigenliftSampler(SamplerConfig config);

  SampleRecord sample(Rng& rng, std::uint64_t index = 0) const;

  /// One polytope point; `trials` accumulates rejection proposals.
  std::vector<double> sample_polytope(Rng& rng, std::uint64_t& trials) const;

  const SamplerConfig& config() const noexcept { return config_; }
  const PolytopeHRep& polytope() const noexcept { return hrep_; }
  const BoundingBox& box() const noexcept { return box_; }

 private:
  SamplerConfig config_;
  PolytopeHRep hrep_;
  BoundingBox box_;
};

SampleRecord eigenlift_sample(const SamplerConfig& config, Rng& rng);

/// A x D with A Haar-random in U(d) (QR of a complex Gaussian with phase
/// correction) and D diagonal with random unit-modulus entries, last entry 1.
FrameMatrix randomize_in_class(const FrameMatrix& frame, Rng& rng);

struct SampleFailure {
  std::uint64_t index;
  std::string message;
};

struct BatchResult {
  std::vector<SampleRecord> records;  ///< ordered by sample index
  std::vector<SampleFailure> failures;
};

/// `count` samples; sample i draws from Rng::stream(config.seed, i), so the
/// output does not depend on `workers`. Failures are collected, not thrown.
BatchResult sample_batch(const SamplerConfig& config, std::uint64_t count, int workers = 1);

struct Histogram {
  std::vector<double> edges;  ///< bins + 1 edges over [0, coherence_bound]
  std::vector<std::uint64_t> counts;
};

/// Values beyond the upper edge land in the last bin.
Histogram coherence_histogram(std::span<const double> coherences, int d, int N, int bins);
Histogram coherence_histogram(std::span<const SampleRecord> records, int bins);

/// grid x grid coherences over the torus orbit of lift_to_fiber(mu); entry
/// (a, b) uses angles (2 pi a / grid, 2 pi b / grid). Needs d_T = 2 and mu in
/// the polytope.
Eigen::MatrixXd fiber_heatmap(const IndependentEigensteps& mu, int grid, double tol_iso,
                              const LiftOptions& lift = {});

struct UniformityResult {
  double chi_square;
  int dof;
  double p_value;
  int cells;               ///< grid cells meeting the polytope
  double min_expected;     ///< smallest expected count over those cells
  std::uint64_t outside;   ///< points in cells the area oracle found empty
};

inline constexpr std::size_t kMinUniformityRecords = 10'000;

/// Pearson chi-square of 2-D polytope points against Lebesgue measure. The
/// bounding box is split into grid x grid cells; each cell's area inside the
/// polytope is counted on a midpoint sub-grid of ceil(subgrid / grid) points
/// per cell and axis. Throws InvalidArgument when d_T != 2, fewer than 10^4
/// points are given, or some expected count is below 5.
UniformityResult uniformity_test(const PolytopeHRep& h, std::span<const std::vector<double>> points,
                                 int grid, int subgrid = 2000);

}  // namespace funtf
