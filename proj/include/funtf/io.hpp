#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <json.hpp>

#include "funtf/eigensteps.hpp"
#include "funtf/frame.hpp"
#include "funtf/polytope.hpp"
#include "funtf/sampler.hpp"
#include "funtf/torus.hpp"

namespace funtf::io {

using Json = nlohmann::json;

/// {"d": int, "N": int, "vectors": [[[re, im] x d] x N]}, vectors in column order.
Json frame_to_json(const FrameMatrix& frame);
FrameMatrix frame_from_json(const Json& j);

/// Flat array in canonical index order.
Json independent_to_json(const IndependentEigensteps& x);

/// {"order": [[k, j], ...], "angles": [...]}.
Json torus_to_json(const TorusElement& theta);

/// {"d", "N", "order", "A", "b", "labels"} plus "box": {"lo", "hi"} when given.
Json hrep_to_json(const PolytopeHRep& h, const std::optional<BoundingBox>& box = std::nullopt);

/// Frame fields plus "index", "seed", "eigensteps", "angles", "coherence",
/// "tight_residual", "unit_norm_dev", and "full_spark"/"min_abs_det" when checked.
Json record_to_json(const SampleRecord& record, std::uint64_t seed);

/// One compact JSON document per line.
void write_jsonl_line(std::ostream& out, const Json& j);

/// %.17g formatting.
std::string format_double(double v);

/// N lines of d comma-separated values.
void write_table_csv(std::ostream& out, const EigenstepTable& table);

/// "# key=value,..." metadata line, then "lower,upper,count" rows.
void write_histogram_csv(std::ostream& out, const Histogram& h, const std::string& metadata);

/// "# key=value,..." metadata line, then grid rows of comma-separated values.
void write_grid_csv(std::ostream& out, const Eigen::MatrixXd& grid, const std::string& metadata);

}  // namespace funtf::io
