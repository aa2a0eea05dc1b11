#include "funtf/io.hpp"

#include <cstdio>
#include <ostream>
#include <string>

#include "funtf/error.hpp"

namespace funtf::io {

Json frame_to_json(const FrameMatrix& frame) {
  Json vectors = Json::array();
  for (int i = 0; i < frame.size(); ++i) {
    Json v = Json::array();
    for (int r = 0; r < frame.dim(); ++r) {
      const Complex z = frame.matrix()(r, i);
      v.push_back({z.real(), z.imag()});
    }
    vectors.push_back(std::move(v));
  }
  return {{"d", frame.dim()}, {"N", frame.size()}, {"vectors", std::move(vectors)}};
}

FrameMatrix frame_from_json(const Json& j) {
  try {
    const int d = j.at("d").get<int>();
    const int n = j.at("N").get<int>();
    const Json& vectors = j.at("vectors");
    if (d < 1 || n < 1 || !vectors.is_array() || vectors.size() != static_cast<std::size_t>(n)) {
      throw InvalidArgument("frame JSON: \"vectors\" must hold N vectors");
    }
    CMatrix m(d, n);
    for (int i = 0; i < n; ++i) {
      const Json& v = vectors[static_cast<std::size_t>(i)];
      if (!v.is_array() || v.size() != static_cast<std::size_t>(d)) {
        throw InvalidArgument("frame JSON: vector " + std::to_string(i) + " must have d entries");
      }
      for (int r = 0; r < d; ++r) {
        const Json& z = v[static_cast<std::size_t>(r)];
        if (!z.is_array() || z.size() != 2) {
          throw InvalidArgument("frame JSON: entries must be [re, im] pairs");
        }
        m(r, i) = Complex(z[0].get<double>(), z[1].get<double>());
      }
    }
    return FrameMatrix(std::move(m));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("frame JSON: ") + e.what());
  }
}

Json independent_to_json(const IndependentEigensteps& x) { return Json(x.values); }

namespace {

Json order_json(const IndexSet& set) {
  Json order = Json::array();
  for (const auto& p : set.pairs()) order.push_back({p.k, p.j});
  return order;
}

}  // namespace

Json torus_to_json(const TorusElement& theta) {
  return {{"order", order_json(theta.index_set)}, {"angles", theta.angles}};
}

Json hrep_to_json(const PolytopeHRep& h, const std::optional<BoundingBox>& box) {
  Json a = Json::array();
  for (int r = 0; r < h.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < h.dimension(); ++c) row.push_back(h.A(r, c));
    a.push_back(std::move(row));
  }
  Json b = Json::array();
  for (int r = 0; r < h.rows(); ++r) b.push_back(h.b(r));
  Json out = {{"d", h.d},         {"N", h.N}, {"order", order_json(h.order)},
              {"A", std::move(a)}, {"b", std::move(b)}, {"labels", h.labels}};
  if (box) out["box"] = {{"lo", box->lo}, {"hi", box->hi}};
  return out;
}

Json record_to_json(const SampleRecord& record, std::uint64_t seed) {
  Json j = frame_to_json(record.frame);
  j["index"] = record.index;
  j["seed"] = seed;
  j["eigensteps"] = record.eigensteps.values;
  j["angles"] = record.torus.angles;
  j["coherence"] = record.diagnostics.coherence;
  j["tight_residual"] = record.diagnostics.tight_residual;
  j["unit_norm_dev"] = record.diagnostics.unit_norm_dev;
  if (record.diagnostics.full_spark) {
    j["full_spark"] = *record.diagnostics.full_spark;
    j["min_abs_det"] = record.diagnostics.min_abs_det;
  }
  return j;
}

void write_jsonl_line(std::ostream& out, const Json& j) { out << j.dump() << '\n'; }

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_table_csv(std::ostream& out, const EigenstepTable& table) {
  for (int k = 1; k <= table.frame_size(); ++k) {
    for (int j = 1; j <= table.dim(); ++j) {
      if (j > 1) out << ',';
      out << format_double(table(k, j));
    }
    out << '\n';
  }
}

void write_histogram_csv(std::ostream& out, const Histogram& h, const std::string& metadata) {
  out << "# " << metadata << '\n';
  out << "lower,upper,count\n";
  for (std::size_t b = 0; b < h.counts.size(); ++b) {
    out << format_double(h.edges[b]) << ',' << format_double(h.edges[b + 1]) << ',' << h.counts[b]
        << '\n';
  }
}

void write_grid_csv(std::ostream& out, const Eigen::MatrixXd& grid, const std::string& metadata) {
  out << "# " << metadata << '\n';
  for (Eigen::Index r = 0; r < grid.rows(); ++r) {
    for (Eigen::Index c = 0; c < grid.cols(); ++c) {
      if (c > 0) out << ',';
      out << format_double(grid(r, c));
    }
    out << '\n';
  }
}

}  // namespace funtf::io
