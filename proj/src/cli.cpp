#include "funtf/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "funtf/error.hpp"
#include "funtf/io.hpp"
#include "funtf/lift.hpp"
#include "funtf/polytope.hpp"
#include "funtf/sampler.hpp"

namespace funtf::cli {

namespace {

struct Options {
  int d = 0;
  int n = 0;
  std::uint64_t seed = 0;
  std::string out_path;
  double tol = 1e-8;

  // sample
  std::uint64_t count = 1;
  std::string sampler = "rejection";
  int hnr_steps = 200;
  bool stats = false;
  int workers = 1;
  bool randomize_class = false;
  bool full_spark = false;

  // polytope
  bool box = false;

  // eigensteps / validate / coherence / heatmap
  std::string in_path;
  std::size_t line_index = 0;
  std::vector<double> mu;
  bool independent = false;
  int bins = 50;
  bool values = false;
  int grid = 64;
  double tol_iso = -1.0;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

// Output sink: the --out file when given, otherwise the caller's stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& operator*() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

struct JsonLine {
  std::size_t line;
  io::Json value;
};

std::vector<JsonLine> read_jsonl(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::vector<JsonLine> out;
  std::string text;
  for (std::size_t line = 1; std::getline(in, text); ++line) {
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      io::Json j = io::Json::parse(text);
      if (j.contains("status")) continue;  // trailing batch status line
      out.push_back({line, std::move(j)});
    } catch (const io::Json::parse_error& e) {
      throw UsageError(path + ":" + std::to_string(line) + ": JSON parse error: " + e.what());
    }
  }
  return out;
}

FrameMatrix parse_frame(const JsonLine& l, const std::string& path) {
  try {
    return io::frame_from_json(l.value);
  } catch (const InvalidArgument& e) {
    throw UsageError(path + ":" + std::to_string(l.line) + ": " + e.what());
  }
}

std::string echo(const Options& o, const std::string& command) {
  std::ostringstream s;
  s << "command=" << command << ",d=" << o.d << ",N=" << o.n;
  return s.str();
}

int cmd_sample(const Options& o, std::ostream& out, std::ostream& err) {
  SamplerConfig cfg = SamplerConfig::make(o.d, o.n, o.seed);
  cfg.polytope_sampler = o.sampler == "hnr" ? PolytopeSampler::HitAndRun : PolytopeSampler::Rejection;
  cfg.hnr_steps = o.hnr_steps;
  cfg.tolerances.tol = o.tol;
  cfg.randomize_class = o.randomize_class;
  cfg.check_full_spark = o.full_spark;
  cfg.validate();

  const BatchResult batch = sample_batch(cfg, o.count, o.workers);
  Sink sink(o.out_path, out);
  for (const auto& r : batch.records) io::write_jsonl_line(*sink, io::record_to_json(r, o.seed));

  if (o.stats) {
    std::uint64_t trials = 0;
    double mean_coh = 0.0, max_coh = 0.0, max_dev = 0.0, max_res = 0.0;
    for (const auto& r : batch.records) {
      trials += r.diagnostics.polytope_trials;
      mean_coh += r.diagnostics.coherence;
      max_coh = std::max(max_coh, r.diagnostics.coherence);
      max_dev = std::max(max_dev, r.diagnostics.unit_norm_dev);
      max_res = std::max(max_res, r.diagnostics.tight_residual);
    }
    const auto n = static_cast<double>(batch.records.size());
    err << "stats " << echo(o, "sample") << ",n=" << o.count << ",seed=" << o.seed
        << ",sampler=" << o.sampler << " acceptance_rate="
        << io::format_double(trials ? n / static_cast<double>(trials) : 0.0)
        << " mean_coherence=" << io::format_double(n > 0 ? mean_coh / n : 0.0)
        << " max_coherence=" << io::format_double(max_coh)
        << " max_unit_norm_dev=" << io::format_double(max_dev)
        << " max_tight_residual=" << io::format_double(max_res) << '\n';
  }

  if (!batch.failures.empty()) {
    io::Json failed = io::Json::array();
    for (const auto& f : batch.failures) {
      failed.push_back({{"index", f.index}, {"message", f.message}});
      err << "sample " << f.index << " failed: " << f.message << '\n';
    }
    io::write_jsonl_line(*sink, {{"status", "error"},
                                 {"completed", batch.records.size()},
                                 {"failed", std::move(failed)}});
    return kComputation;
  }
  return kOk;
}

int cmd_polytope(const Options& o, std::ostream& out) {
  const PolytopeHRep h = hrep(o.d, o.n);
  std::optional<BoundingBox> box;
  if (o.box) box = bounding_box(h);
  Sink sink(o.out_path, out);
  *sink << io::hrep_to_json(h, box).dump(2) << '\n';
  return kOk;
}

int cmd_eigensteps(const Options& o, std::ostream& out) {
  Sink sink(o.out_path, out);
  if (!o.in_path.empty()) {
    const auto lines = read_jsonl(o.in_path);
    if (o.line_index >= lines.size()) throw UsageError("--index beyond the number of frames");
    const EigenstepTable t = eigensteps_of(parse_frame(lines[o.line_index], o.in_path));
    if (o.independent) {
      *sink << io::independent_to_json(extract_independent(t)).dump() << '\n';
    } else {
      io::write_table_csv(*sink, t);
    }
    return kOk;
  }
  if (o.mu.empty()) throw UsageError("eigensteps needs --in or --mu");
  const IndependentEigensteps x(IndexSet(o.d, o.n), o.mu);
  const EigenstepTable t = complete_table(x);
  if (o.independent) {
    *sink << io::independent_to_json(x).dump() << '\n';
  } else {
    io::write_table_csv(*sink, t);
  }
  return validate_table(t, o.tol).empty() ? kOk : kValidation;
}

int cmd_validate(const Options& o, std::ostream& out) {
  const auto lines = read_jsonl(o.in_path);
  Sink sink(o.out_path, out);
  bool all_ok = true;
  for (const auto& l : lines) {
    const FrameMatrix f = parse_frame(l, o.in_path);
    std::vector<std::string> problems;
    const auto unit = is_unit_norm(f, o.tol);
    if (!unit.ok) problems.push_back("unit-norm deviation " + io::format_double(unit.max_deviation));
    const auto tight = is_tight(f, o.tol);
    if (!tight.ok) problems.push_back("tightness residual " + io::format_double(tight.residual));
    const EigenstepTable t = eigensteps_of(f);
    if (const auto v = validate_table(t, o.tol); !v.empty()) {
      problems.push_back("eigensteps: " + v.front().description);
    }
    if (l.value.contains("eigensteps") && f.size() > f.dim() + 1) {
      const auto recorded = l.value.at("eigensteps").get<std::vector<double>>();
      const auto actual = extract_independent(t).values;
      double worst = recorded.size() == actual.size() ? 0.0 : 1.0;
      for (std::size_t i = 0; i < std::min(recorded.size(), actual.size()); ++i) {
        worst = std::max(worst, std::abs(recorded[i] - actual[i]));
      }
      if (worst > o.tol) problems.push_back("recorded eigensteps off by " + io::format_double(worst));
    }
    if (o.full_spark) {
      const auto spark = is_full_spark(f);
      if (!spark.ok) problems.push_back("not full spark (min |det| " + io::format_double(spark.min_abs_det) + ")");
    }
    *sink << "line " << l.line << ": ";
    if (problems.empty()) {
      *sink << "PASS\n";
    } else {
      all_ok = false;
      *sink << "FAIL";
      for (const auto& p : problems) *sink << "; " << p;
      *sink << '\n';
    }
  }
  return all_ok ? kOk : kValidation;
}

int cmd_coherence(const Options& o, std::ostream& out) {
  const auto lines = read_jsonl(o.in_path);
  if (lines.empty()) throw UsageError(o.in_path + " holds no frames");
  std::vector<double> values;
  int d = 0, n = 0;
  for (const auto& l : lines) {
    const FrameMatrix f = parse_frame(l, o.in_path);
    if (d == 0) {
      d = f.dim();
      n = f.size();
    } else if (f.dim() != d || f.size() != n) {
      throw UsageError(o.in_path + ":" + std::to_string(l.line) + ": frames differ in (d, N)");
    }
    values.push_back(coherence(f, o.tol));
  }
  Sink sink(o.out_path, out);
  if (o.values) {
    *sink << "# command=coherence,d=" << d << ",N=" << n << ",count=" << values.size() << '\n';
    *sink << "coherence\n";
    for (double v : values) *sink << io::format_double(v) << '\n';
    return kOk;
  }
  const Histogram h = coherence_histogram(values, d, n, o.bins);
  std::ostringstream meta;
  meta << "command=coherence,d=" << d << ",N=" << n << ",bins=" << o.bins
       << ",count=" << values.size() << ",bound=" << io::format_double(coherence_bound(d, n));
  io::write_histogram_csv(*sink, h, meta.str());
  return kOk;
}

int cmd_heatmap(const Options& o, std::ostream& out) {
  const IndexSet set(o.d, o.n);
  if (set.size() != 2) throw UsageError("heatmap needs (d-1)(N-d-1) = 2, e.g. -d 3 -N 5");
  if (o.mu.size() != 2) throw UsageError("--mu needs two comma-separated values");
  const PolytopeHRep h = hrep(o.d, o.n);
  if (!contains(h, o.mu, 0.0)) throw UsageError("point outside polytope");
  const double tol_iso = o.tol_iso > 0.0 ? o.tol_iso : default_isolation_tolerance(o.d, o.n);
  const IndependentEigensteps mu(set, o.mu);
  const Eigen::MatrixXd grid = fiber_heatmap(mu, o.grid, tol_iso, LiftOptions{o.tol, -1.0});
  std::ostringstream meta;
  meta << echo(o, "heatmap") << ",mu=" << io::format_double(o.mu[0]) << ";"
       << io::format_double(o.mu[1]) << ",grid=" << o.grid
       << ",bound=" << io::format_double(coherence_bound(o.d, o.n));
  Sink sink(o.out_path, out);
  io::write_grid_csv(*sink, grid, meta.str());
  return kOk;
}

void add_dims(CLI::App* app, Options& o) {
  app->add_option("-d,--dim", o.d, "ambient dimension d")->required()->check(CLI::PositiveNumber);
  app->add_option("-N,--vectors", o.n, "number of frame vectors N")->required()->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Uniform sampling and diagnostics for finite unit-norm tight frames", "funtf"};
  app.require_subcommand(1);
  Options o;

  if (const char* env = std::getenv("FUNTF_SEED"); env != nullptr && *env != '\0') {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "FUNTF_SEED must be an unsigned integer\n";
      return kUsage;
    }
  }

  auto* sample = app.add_subcommand("sample", "draw FUNTFs with the Eigenlift pipeline (.jsonl)");
  add_dims(sample, o);
  sample->add_option("-n,--count", o.count, "number of samples")->check(CLI::Range(1ULL, 1ULL << 40));
  sample->add_option("--seed", o.seed, "master seed (falls back to FUNTF_SEED)");
  sample->add_option("--sampler", o.sampler, "polytope sampler")
      ->check(CLI::IsMember({"rejection", "hnr"}));
  sample->add_option("--hnr-steps", o.hnr_steps, "hit-and-run steps per sample")->check(CLI::PositiveNumber);
  sample->add_option("--out", o.out_path, "output .jsonl (default stdout)");
  sample->add_option("--tol", o.tol, "lift tolerance")->check(CLI::PositiveNumber);
  sample->add_flag("--stats", o.stats, "summary line on stderr");
  sample->add_option("--workers", o.workers, "worker threads")->check(CLI::Range(1, 256));
  sample->add_flag("--randomize-class", o.randomize_class, "apply a random element of U(d) x G");
  sample->add_flag("--full-spark", o.full_spark, "record the full-spark check");

  auto* polytope = app.add_subcommand("polytope", "export the eigenstep polytope H-representation");
  add_dims(polytope, o);
  polytope->add_flag("--box", o.box, "include the bounding box");
  polytope->add_option("--out", o.out_path, "output JSON (default stdout)");

  auto* eig = app.add_subcommand("eigensteps", "eigenstep table of a frame or of independent eigensteps");
  eig->add_option("-d,--dim", o.d, "ambient dimension d");
  eig->add_option("-N,--vectors", o.n, "number of frame vectors N");
  eig->add_option("--in", o.in_path, "frames .jsonl");
  eig->add_option("--index", o.line_index, "zero-based frame index in --in");
  eig->add_option("--mu", o.mu, "independent eigensteps in canonical order")->delimiter(',');
  eig->add_flag("--independent", o.independent, "print independent eigensteps as JSON");
  eig->add_option("--tol", o.tol, "validation tolerance")->check(CLI::PositiveNumber);
  eig->add_option("--out", o.out_path, "output CSV (default stdout)");

  auto* validate = app.add_subcommand("validate", "check frames for unit norm, tightness, eigensteps");
  validate->add_option("--in", o.in_path, "frames .jsonl")->required();
  validate->add_option("--tol", o.tol, "tolerance")->check(CLI::PositiveNumber);
  validate->add_flag("--full-spark", o.full_spark, "also require full spark");
  validate->add_option("--out", o.out_path, "report file (default stdout)");

  auto* coh = app.add_subcommand("coherence", "coherence histogram of frames");
  coh->add_option("--in", o.in_path, "frames .jsonl")->required();
  coh->add_option("--bins", o.bins, "histogram bins")->check(CLI::PositiveNumber);
  coh->add_flag("--values", o.values, "list per-frame coherences instead");
  coh->add_option("--tol", o.tol, "unit-norm tolerance")->check(CLI::PositiveNumber);
  coh->add_option("--out", o.out_path, "output CSV (default stdout)");

  auto* heat = app.add_subcommand("heatmap", "coherence over the torus fiber of a polytope point");
  add_dims(heat, o);
  heat->add_option("--mu", o.mu, "polytope point, canonical order (mu_{2,1}, mu_{3,2}) for (3,5)")
      ->delimiter(',')
      ->required();
  heat->add_option("--grid", o.grid, "grid size")->check(CLI::PositiveNumber);
  heat->add_option("--tol", o.tol, "lift tolerance")->check(CLI::PositiveNumber);
  heat->add_option("--tol-iso", o.tol_iso, "eigenvalue isolation tolerance");
  heat->add_option("--out", o.out_path, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*sample) return cmd_sample(o, out, err);
    if (*polytope) return cmd_polytope(o, out);
    if (*eig) return cmd_eigensteps(o, out);
    if (*validate) return cmd_validate(o, out);
    if (*coh) return cmd_coherence(o, out);
    if (*heat) return cmd_heatmap(o, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kComputation;
  }
  return kUsage;
}

}  // namespace funtf::cli
