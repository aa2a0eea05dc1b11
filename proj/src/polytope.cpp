#include "funtf/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <utility>

#include "funtf/error.hpp"

namespace funtf {

namespace {

// constant + coef . x
struct Affine {
  double constant = 0.0;
  std::vector<double> coef;
};

std::string entry_name(int k, int j) {
  return "mu_{" + std::to_string(k) + "," + std::to_string(j) + "}";
}

// Every table entry as an affine function of the independent coordinates.
std::vector<std::vector<Affine>> symbolic_table(const IndexSet& set) {
  const int d = set.dim();
  const int n = set.frame_size();
  const std::size_t dim = set.size();
  const double top = static_cast<double>(n) / d;
  std::vector<std::vector<Affine>> table(n + 1, std::vector<Affine>(d + 1));
  for (int k = 1; k <= n; ++k) {
    Affine rest{0.0, std::vector<double>(dim, 0.0)};
    int dependent = 0;
    for (int j = 1; j <= d; ++j) {
      Affine& e = table[k][j];
      e.coef.assign(dim, 0.0);
      switch (entry_kind(d, n, k, j)) {
        case EntryKind::Zero:
          break;
        case EntryKind::Terminal:
          e.constant = top;
          rest.constant += top;
          break;
        case EntryKind::Independent: {
          const auto pos = *set.position(k, j);
          e.coef[pos] = 1.0;
          rest.coef[pos] += 1.0;
          break;
        }
        case EntryKind::Dependent:
          dependent = j;
          break;
      }
    }
    if (dependent != 0) {
      Affine& e = table[k][dependent];
      e.constant = k - rest.constant;
      for (std::size_t i = 0; i < dim; ++i) e.coef[i] = -rest.coef[i];
    }
  }
  return table;
}

bool is_constant(const Affine& e) {
  return std::all_of(e.coef.begin(), e.coef.end(), [](double c) { return c == 0.0; });
}

class RowBuilder {
 public:
  explicit RowBuilder(std::size_t dim) : dim_(dim) {}

  // lhs >= rhs  <=>  (rhs - lhs).coef . x <= lhs.constant - rhs.constant
  void add_ge(const Affine& lhs, const Affine& rhs, const std::string& label) {
    std::vector<double> a(dim_);
    for (std::size_t i = 0; i < dim_; ++i) a[i] = rhs.coef[i] - lhs.coef[i] + 0.0;
    const double b = lhs.constant - rhs.constant;
    if (std::all_of(a.begin(), a.end(), [](double c) { return c == 0.0; })) {
      if (b < -1e-12) throw NumericalError("constant constraint violated: " + label);
      return;
    }
    auto [it, inserted] = index_.try_emplace(a, rows_.size());
    if (inserted) {
      rows_.push_back({std::move(a), b, label});
    } else if (b < rows_[it->second].b) {
      rows_[it->second].b = b;
      rows_[it->second].label = label;
    }
  }

  PolytopeHRep finish(const IndexSet& set) && {
    const auto m = static_cast<Eigen::Index>(rows_.size());
    PolytopeHRep h{set.dim(), set.frame_size(), set,
                   Eigen::MatrixXd(m, static_cast<Eigen::Index>(dim_)), Eigen::VectorXd(m), {}};
    for (Eigen::Index r = 0; r < m; ++r) {
      const Row& row = rows_[static_cast<std::size_t>(r)];
      for (std::size_t i = 0; i < dim_; ++i) h.A(r, static_cast<Eigen::Index>(i)) = row.a[i];
      h.b(r) = row.b;
      h.labels.push_back(row.label);
    }
    return h;
  }

 private:
  struct Row {
    std::vector<double> a;
    double b;
    std::string label;
  };

  std::size_t dim_;
  std::vector<Row> rows_;
  std::map<std::vector<double>, std::size_t> index_;
};

}  // namespace

double BoundingBox::volume() const {
  double v = 1.0;
  for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
  return v;
}

PolytopeHRep hrep(int d, int N) {
  IndexSet set(d, N);
  const auto t = symbolic_table(set);
  const std::size_t dim = set.size();
  const Affine zero{0.0, std::vector<double>(dim, 0.0)};
  const Affine top{static_cast<double>(N) / d, std::vector<double>(dim, 0.0)};

  RowBuilder rows(dim);
  for (int k = 1; k <= N; ++k) {
    for (int j = 1; j <= d; ++j) {
      const Affine& e = t[k][j];
      if (!is_constant(e)) {
        rows.add_ge(e, zero, entry_name(k, j) + " >= 0");
        rows.add_ge(top, e, entry_name(k, j) + " <= N/d");
      }
      if (j < d) {
        rows.add_ge(e, t[k][j + 1], entry_name(k, j) + " >= " + entry_name(k, j + 1));
      }
      if (k >= 2) {
        rows.add_ge(e, t[k - 1][j], entry_name(k, j) + " >= " + entry_name(k - 1, j));
        if (j < d) {
          rows.add_ge(t[k - 1][j], t[k][j + 1],
                      entry_name(k - 1, j) + " >= " + entry_name(k, j + 1));
        }
      }
    }
  }
  return std::move(rows).finish(set);
}

bool contains(const PolytopeHRep& h, std::span<const double> x, double tol) {
  if (x.size() != static_cast<std::size_t>(h.dimension())) {
    throw InvalidArgument("point has " + std::to_string(x.size()) + " coordinates, polytope has " +
                          std::to_string(h.dimension()));
  }
  const Eigen::Map<const Eigen::VectorXd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  for (int r = 0; r < h.rows(); ++r) {
    if (h.A.row(r).dot(v) > h.b(r) + tol) return false;
  }
  return true;
}

BoundingBox bounding_box(const PolytopeHRep& h) {
  const int dim = h.dimension();
  const double top = static_cast<double>(h.N) / h.d;
  BoundingBox box{std::vector<double>(dim, 0.0), std::vector<double>(dim, top)};

  constexpr int kMaxSweeps = 10000;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double change = 0.0;
    for (int r = 0; r < h.rows(); ++r) {
      // smallest possible value of each term a_i x_i over the box
      double total_min = 0.0;
      for (int i = 0; i < dim; ++i) {
        const double a = h.A(r, i);
        if (a != 0.0) total_min += std::min(a * box.lo[i], a * box.hi[i]);
      }
      for (int i = 0; i < dim; ++i) {
        const double a = h.A(r, i);
        if (a == 0.0) continue;
        const double others = total_min - std::min(a * box.lo[i], a * box.hi[i]);
        const double bound = (h.b(r) - others) / a;
        if (a > 0.0 && bound < box.hi[i]) {
          change = std::max(change, box.hi[i] - bound);
          box.hi[i] = bound;
        } else if (a < 0.0 && bound > box.lo[i]) {
          change = std::max(change, bound - box.lo[i]);
          box.lo[i] = bound;
        }
        if (box.lo[i] > box.hi[i] + 1e-12) {
          throw NumericalError("bounding box propagation found an empty interval at coordinate " +
                               std::to_string(i) + " (" + h.labels[r] + ")");
        }
        total_min = others + std::min(a * box.lo[i], a * box.hi[i]);
      }
    }
    if (change <= 1e-15) break;
  }
  for (int i = 0; i < dim; ++i) box.hi[i] = std::max(box.hi[i], box.lo[i]);
  return box;
}

RejectionDraw rejection_sample(const PolytopeHRep& h, const BoundingBox& box, Rng& rng,
                               std::uint64_t max_trials) {
  const std::size_t dim = box.lo.size();
  std::vector<double> x(dim);
  for (std::uint64_t trial = 1; trial <= max_trials; ++trial) {
    for (std::size_t i = 0; i < dim; ++i) x[i] = rng.uniform(box.lo[i], box.hi[i]);
    if (contains(h, x, 0.0)) return {x, trial};
  }
  throw SamplingError("rejection sampling exceeded " + std::to_string(max_trials) + " trials");
}

std::vector<double> hit_and_run(const PolytopeHRep& h, std::span<const double> x0, int steps,
                                Rng& rng) {
  if (steps < 0) throw InvalidArgument("hit-and-run needs steps >= 0");
  if (!contains(h, x0, -1e-12)) {
    throw InvalidArgument("hit-and-run start point is not strictly interior");
  }
  const int dim = h.dimension();
  Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(x0.data(), dim);
  Eigen::VectorXd dir(dim);
  for (int s = 0; s < steps; ++s) {
    do {
      for (int i = 0; i < dim; ++i) dir(i) = rng.normal();
    } while (dir.norm() == 0.0);
    dir.normalize();

    const Eigen::VectorXd ad = h.A * dir;
    const Eigen::VectorXd slack = h.b - h.A * x;
    double t_min = -std::numeric_limits<double>::infinity();
    double t_max = std::numeric_limits<double>::infinity();
    for (int r = 0; r < h.rows(); ++r) {
      if (ad(r) > 0.0) {
        t_max = std::min(t_max, slack(r) / ad(r));
      } else if (ad(r) < 0.0) {
        t_min = std::max(t_min, slack(r) / ad(r));
      }
    }
    if (!(t_max - t_min > 1e-14)) {
      throw NumericalError("hit-and-run chord degenerate (current point on the boundary)");
    }
    x += rng.uniform(t_min, t_max) * dir;
  }
  return {x.data(), x.data() + dim};
}

}  // namespace funtf
