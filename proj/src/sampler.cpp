#include "funtf/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <utility>

#include <boost/math/special_functions/gamma.hpp>

#include "funtf/error.hpp"

namespace funtf {

Tolerances Tolerances::defaults(int d, int N) {
  return {1e-8, default_group_tolerance(d, N), default_isolation_tolerance(d, N)};
}

double coherence_bound(int d, int N) {
  return std::min(1.0, static_cast<double>(N - d) / d);
}

SamplerConfig SamplerConfig::make(int d, int N, std::uint64_t seed) {
  SamplerConfig c;
  c.d = d;
  c.N = N;
  c.seed = seed;
  c.tolerances = Tolerances::defaults(d, N);
  return c;
}

void SamplerConfig::validate() const {
  if (d < 1 || N <= d + 1) {
    throw InvalidArgument("sampling needs d >= 1 and d + 1 < N (got d=" + std::to_string(d) +
                          ", N=" + std::to_string(N) + ")");
  }
  if (!(tolerances.tol > 0.0 && tolerances.tol_group > 0.0 && tolerances.tol_iso > 0.0)) {
    throw InvalidArgument("tolerances must be positive");
  }
  if (polytope_sampler == PolytopeSampler::HitAndRun && hnr_steps < 1) {
    throw InvalidArgument("hit-and-run needs at least one step");
  }
  if (max_retries < 0) throw InvalidArgument("max_retries must be >= 0");
}

EigenliftSampler::EigenliftSampler(SamplerConfig config)
    : config_((config.validate(), std::move(config))),
      hrep_(hrep(config_.d, config_.N)),
      box_(bounding_box(hrep_)) {}

std::vector<double> EigenliftSampler::sample_polytope(Rng& rng, std::uint64_t& trials) const {
  auto draw = rejection_sample(hrep_, box_, rng, config_.max_rejection_trials);
  trials += draw.trials;
  if (config_.polytope_sampler == PolytopeSampler::HitAndRun) {
    return hit_and_run(hrep_, draw.point, config_.hnr_steps, rng);
  }
  return std::move(draw.point);
}

SampleRecord EigenliftSampler::sample(Rng& rng, std::uint64_t index) const {
  const auto& tol = config_.tolerances;
  const LiftOptions lift_options{tol.tol, tol.tol_group};
  SampleDiagnostics diag;

  for (int attempt = 0;; ++attempt) {
    try {
      IndependentEigensteps mu(hrep_.order, sample_polytope(rng, diag.polytope_trials));
      const FrameMatrix lifted = lift_to_fiber(mu, lift_options);
      TorusElement theta = random_torus_element(hrep_.order, rng);
      FrameMatrix frame = torus_action(lifted, theta, tol.tol_iso);
      if (config_.randomize_class) frame = randomize_in_class(frame, rng);

      diag.retries = attempt;
      diag.unit_norm_dev = is_unit_norm(frame, kUnitNormBound).max_deviation;
      diag.tight_residual = is_tight(frame, kTightnessBound).residual;
      diag.coherence = coherence(frame, 1e-8);
      if (config_.check_full_spark) {
        const auto spark = is_full_spark(frame);
        diag.full_spark = spark.ok;
        diag.min_abs_det = spark.min_abs_det;
      }
      diag.flagged = diag.unit_norm_dev > kUnitNormBound || diag.tight_residual > kTightnessBound ||
                     diag.coherence > coherence_bound(config_.d, config_.N) + kCoherenceSlack ||
                     (diag.full_spark && !*diag.full_spark);
      return {index, std::move(frame), std::move(mu), std::move(theta), diag};
    } catch (const NumericalError&) {
      // degenerate point (measure zero); draw a fresh one
      if (attempt >= config_.max_retries) throw;
    }
  }
}

SampleRecord eigenlift_sample(const SamplerConfig& config, Rng& rng) {
  return EigenliftSampler(config).sample(rng);
}

FrameMatrix randomize_in_class(const FrameMatrix& frame, Rng& rng) {
  const int d = frame.dim();
  const int n = frame.size();
  const double scale = std::sqrt(0.5);
  CMatrix g(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) g(r, c) = Complex(rng.normal(), rng.normal()) * scale;
  }
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < d; ++c) {
    const double a = std::abs(r(c, c));
    if (a > 0.0) q.col(c) *= r(c, c) / a;
  }
  CMatrix out = q * frame.matrix();
  for (int c = 0; c + 1 < n; ++c) {
    out.col(c) *= std::polar(1.0, rng.uniform(0.0, 2.0 * std::numbers::pi));
  }
  return FrameMatrix(std::move(out));
}

BatchResult sample_batch(const SamplerConfig& config, std::uint64_t count, int workers) {
  if (count < 1) throw InvalidArgument("batch needs count >= 1");
  const EigenliftSampler sampler(config);
  workers = std::max(1, workers);

  std::vector<std::optional<SampleRecord>> slots(count);
  std::vector<std::optional<std::string>> errors(count);
  auto run = [&](std::uint64_t first) {
    for (std::uint64_t i = first; i < count; i += static_cast<std::uint64_t>(workers)) {
      Rng rng = Rng::stream(config.seed, i);
      try {
        slots[i] = sampler.sample(rng, i);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, static_cast<std::uint64_t>(w));
  }

  BatchResult out;
  out.records.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    if (slots[i]) {
      out.records.push_back(std::move(*slots[i]));
    } else {
      out.failures.push_back({i, errors[i].value_or("unknown failure")});
    }
  }
  return out;
}

Histogram coherence_histogram(std::span<const double> coherences, int d, int N, int bins) {
  if (bins < 1) throw InvalidArgument("histogram needs bins >= 1");
  const double top = coherence_bound(d, N);
  Histogram h;
  h.edges.resize(static_cast<std::size_t>(bins) + 1);
  for (int b = 0; b <= bins; ++b) h.edges[b] = top * b / bins;
  h.counts.assign(static_cast<std::size_t>(bins), 0);
  for (double c : coherences) {
    auto b = static_cast<long>(std::floor(c / top * bins));
    b = std::clamp(b, 0L, static_cast<long>(bins) - 1);
    ++h.counts[static_cast<std::size_t>(b)];
  }
  return h;
}

Histogram coherence_histogram(std::span<const SampleRecord> records, int bins) {
  if (records.empty()) throw InvalidArgument("histogram needs at least one record");
  std::vector<double> values;
  values.reserve(records.size());
  for (const auto& r : records) values.push_back(r.diagnostics.coherence);
  return coherence_histogram(values, records.front().frame.dim(), records.front().frame.size(),
                             bins);
}

Eigen::MatrixXd fiber_heatmap(const IndependentEigensteps& mu, int grid, double tol_iso,
                              const LiftOptions& lift) {
  if (mu.index_set.size() != 2) {
    throw InvalidArgument("fiber heatmap needs a two-dimensional torus (d_T = 2)");
  }
  if (grid < 1) throw InvalidArgument("heatmap grid must be >= 1");
  const auto h = hrep(mu.index_set.dim(), mu.index_set.frame_size());
  if (!contains(h, mu.values, 0.0)) throw InvalidArgument("point outside polytope");

  const FrameMatrix base = lift_to_fiber(mu, lift);
  Eigen::MatrixXd out(grid, grid);
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      const TorusElement theta(mu.index_set, {2.0 * std::numbers::pi * a / grid,
                                              2.0 * std::numbers::pi * b / grid});
      out(a, b) = coherence(torus_action(base, theta, tol_iso));
    }
  }
  return out;
}

UniformityResult uniformity_test(const PolytopeHRep& h, std::span<const std::vector<double>> points,
                                 int grid, int subgrid) {
  if (h.dimension() != 2) throw InvalidArgument("uniformity test needs d_T = 2");
  if (points.size() < kMinUniformityRecords) {
    throw InvalidArgument("uniformity test needs at least 10^4 points");
  }
  if (grid < 1 || subgrid < 1) throw InvalidArgument("grid sizes must be positive");

  const BoundingBox box = bounding_box(h);
  const int per_cell = (subgrid + grid - 1) / grid;
  const int fine = per_cell * grid;
  const double wx = box.hi[0] - box.lo[0];
  const double wy = box.hi[1] - box.lo[1];

  // area oracle: midpoint counts per cell
  std::vector<std::uint64_t> area(static_cast<std::size_t>(grid) * grid, 0);
  std::uint64_t area_total = 0;
  std::vector<double> p(2);
  for (int ix = 0; ix < fine; ++ix) {
    p[0] = box.lo[0] + wx * (ix + 0.5) / fine;
    for (int iy = 0; iy < fine; ++iy) {
      p[1] = box.lo[1] + wy * (iy + 0.5) / fine;
      if (contains(h, p, 0.0)) {
        ++area[static_cast<std::size_t>(ix / per_cell) * grid + iy / per_cell];
        ++area_total;
      }
    }
  }

  auto cell_of = [&](double v, int axis) {
    const double w = axis == 0 ? wx : wy;
    auto c = static_cast<long>(std::floor((v - box.lo[axis]) / w * grid));
    return static_cast<std::size_t>(std::clamp(c, 0L, static_cast<long>(grid) - 1));
  };
  std::vector<std::uint64_t> observed(area.size(), 0);
  for (const auto& x : points) {
    if (x.size() != 2) throw InvalidArgument("uniformity test points must be 2-D");
    ++observed[cell_of(x[0], 0) * grid + cell_of(x[1], 1)];
  }

  UniformityResult out{0.0, 0, 1.0, 0, std::numeric_limits<double>::infinity(), 0};
  const auto n = static_cast<double>(points.size());
  for (std::size_t c = 0; c < area.size(); ++c) {
    if (area[c] == 0) {
      out.outside += observed[c];
      continue;
    }
    const double expected = n * static_cast<double>(area[c]) / static_cast<double>(area_total);
    out.min_expected = std::min(out.min_expected, expected);
    const double diff = static_cast<double>(observed[c]) - expected;
    out.chi_square += diff * diff / expected;
    ++out.cells;
  }
  if (out.min_expected < 5.0) {
    throw InvalidArgument("expected cell count " + std::to_string(out.min_expected) +
                          " below 5; coarsen the grid");
  }
  out.dof = out.cells - 1;
  if (out.outside > 0) {
    out.chi_square = std::numeric_limits<double>::infinity();
    out.p_value = 0.0;
  } else {
    out.p_value = boost::math::gamma_q(out.dof / 2.0, out.chi_square / 2.0);
  }
  return out;
}

}  // namespace funtf
