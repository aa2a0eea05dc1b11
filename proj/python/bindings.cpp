#include <optional>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "funtf/eigensteps.hpp"
#include "funtf/error.hpp"
#include "funtf/frame.hpp"
#include "funtf/lift.hpp"
#include "funtf/polytope.hpp"
#include "funtf/sampler.hpp"
#include "funtf/torus.hpp"

namespace py = pybind11;
using namespace funtf;

namespace {

py::list pairs_of(const IndexSet& set) {
  py::list out;
  for (const auto& p : set.pairs()) out.append(py::make_tuple(p.k, p.j));
  return out;
}

py::dict record_dict(const SampleRecord& r) {
  py::dict d;
  d["index"] = r.index;
  d["frame"] = r.frame.matrix();
  d["eigensteps"] = r.eigensteps.values;
  d["angles"] = r.torus.angles;
  d["coherence"] = r.diagnostics.coherence;
  d["tight_residual"] = r.diagnostics.tight_residual;
  d["unit_norm_dev"] = r.diagnostics.unit_norm_dev;
  d["polytope_trials"] = r.diagnostics.polytope_trials;
  d["flagged"] = r.diagnostics.flagged;
  if (r.diagnostics.full_spark) d["full_spark"] = *r.diagnostics.full_spark;
  return d;
}

SamplerConfig make_config(int d, int n, std::uint64_t seed, const std::string& sampler, int hnr_steps,
                          bool randomize_class, bool full_spark) {
  SamplerConfig cfg = SamplerConfig::make(d, n, seed);
  if (sampler == "hnr" || sampler == "hit_and_run") {
    cfg.polytope_sampler = PolytopeSampler::HitAndRun;
  } else if (sampler != "rejection") {
    throw InvalidArgument("sampler must be 'rejection' or 'hnr'");
  }
  cfg.hnr_steps = hnr_steps;
  cfg.randomize_class = randomize_class;
  cfg.check_full_spark = full_spark;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_funtf, m) {
  m.doc() = "Uniform sampling of finite unit-norm tight frames via eigenstep polytopes";

  static py::exception<Error> base_error(m, "FuntfError", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError", base_error.ptr());
  py::register_exception<SamplingError>(m, "SamplingError", base_error.ptr());

  // frames
  m.def("frame_operator", [](const CMatrix& f) { return frame_operator(FrameMatrix(f)); });
  m.def("partial_frame_operator",
        [](const CMatrix& f, int k) { return partial_frame_operator(FrameMatrix(f), k); },
        py::arg("frame"), py::arg("k"));
  m.def("coherence", [](const CMatrix& f, double tol) { return coherence(FrameMatrix(f), tol); },
        py::arg("frame"), py::arg("tol") = 1e-8);
  m.def("is_unit_norm",
        [](const CMatrix& f, double tol) {
          const auto c = is_unit_norm(FrameMatrix(f), tol);
          return py::make_tuple(c.ok, c.max_deviation);
        },
        py::arg("frame"), py::arg("tol") = 1e-10);
  m.def("is_tight",
        [](const CMatrix& f, double tol) {
          const auto c = is_tight(FrameMatrix(f), tol);
          return py::make_tuple(c.ok, c.residual);
        },
        py::arg("frame"), py::arg("tol") = 1e-8);
  m.def("is_full_spark",
        [](const CMatrix& f, std::optional<double> tol) {
          const FrameMatrix frame(f);
          const auto c = tol ? is_full_spark(frame, *tol) : is_full_spark(frame);
          return py::make_tuple(c.ok, c.min_abs_det);
        },
        py::arg("frame"), py::arg("tol") = py::none());

  // eigensteps
  m.def("index_set", [](int d, int n) { return pairs_of(IndexSet(d, n)); });
  m.def("complete_table",
        [](int d, int n, std::vector<double> x) {
          return complete_table(IndependentEigensteps(IndexSet(d, n), std::move(x))).values();
        },
        py::arg("d"), py::arg("N"), py::arg("values"));
  m.def("extract_independent", [](const Eigen::MatrixXd& t) {
    return extract_independent(EigenstepTable(static_cast<int>(t.cols()), static_cast<int>(t.rows()), t))
        .values;
  });
  m.def("eigensteps_of", [](const CMatrix& f) { return eigensteps_of(FrameMatrix(f)).values(); });
  m.def("validate_table",
        [](const Eigen::MatrixXd& t, double tol) {
          py::list out;
          for (const auto& v : validate_table(
                   EigenstepTable(static_cast<int>(t.cols()), static_cast<int>(t.rows()), t), tol)) {
            py::dict d;
            d["kind"] = to_string(v.kind);
            d["k"] = v.k;
            d["j"] = v.j;
            d["slack"] = v.slack;
            d["description"] = v.description;
            out.append(d);
          }
          return out;
        },
        py::arg("table"), py::arg("tol") = 1e-8);

  // polytope
  py::class_<PolytopeHRep>(m, "Polytope")
      .def(py::init([](int d, int n) { return hrep(d, n); }), py::arg("d"), py::arg("N"))
      .def_readonly("d", &PolytopeHRep::d)
      .def_readonly("N", &PolytopeHRep::N)
      .def_readonly("A", &PolytopeHRep::A)
      .def_readonly("b", &PolytopeHRep::b)
      .def_readonly("labels", &PolytopeHRep::labels)
      .def_property_readonly("order", [](const PolytopeHRep& h) { return pairs_of(h.order); })
      .def("contains",
           [](const PolytopeHRep& h, std::vector<double> x, double tol) { return contains(h, x, tol); },
           py::arg("x"), py::arg("tol") = 0.0)
      .def("bounding_box",
           [](const PolytopeHRep& h) {
             const auto box = bounding_box(h);
             return py::make_tuple(box.lo, box.hi);
           })
      .def("rejection_sample",
           [](const PolytopeHRep& h, std::uint64_t seed) {
             Rng rng(seed);
             const auto draw = rejection_sample(h, bounding_box(h), rng);
             return py::make_tuple(draw.point, draw.trials);
           },
           py::arg("seed"))
      .def("hit_and_run",
           [](const PolytopeHRep& h, std::vector<double> x0, int steps, std::uint64_t seed) {
             Rng rng(seed);
             return hit_and_run(h, x0, steps, rng);
           },
           py::arg("x0"), py::arg("steps"), py::arg("seed"));

  // lift and torus
  m.def("limit_weight",
        [](std::vector<double> row_k, std::vector<double> row_k1, double mu, double tol_group) {
          return limit_weight(row_k, row_k1, mu, tol_group);
        },
        py::arg("row_k"), py::arg("row_k1"), py::arg("mu"), py::arg("tol_group") = 1e-8);
  m.def("lift_to_fiber",
        [](int d, int n, std::vector<double> x, double tol) {
          return lift_to_fiber(IndependentEigensteps(IndexSet(d, n), std::move(x)), LiftOptions{tol, -1.0})
              .matrix();
        },
        py::arg("d"), py::arg("N"), py::arg("values"), py::arg("tol") = 1e-8);
  m.def("circle_action",
        [](const CMatrix& f, int k, int j, double t, std::optional<double> tol_iso) {
          const FrameMatrix frame(f);
          return circle_action(frame, k, j, t,
                               tol_iso.value_or(default_isolation_tolerance(frame.dim(), frame.size())))
              .matrix();
        },
        py::arg("frame"), py::arg("k"), py::arg("j"), py::arg("t"), py::arg("tol_iso") = py::none());
  m.def("torus_action",
        [](const CMatrix& f, std::vector<double> angles, std::optional<double> tol_iso) {
          const FrameMatrix frame(f);
          const TorusElement theta(IndexSet(frame.dim(), frame.size()), std::move(angles));
          return torus_action(frame, theta,
                              tol_iso.value_or(default_isolation_tolerance(frame.dim(), frame.size())))
              .matrix();
        },
        py::arg("frame"), py::arg("angles"), py::arg("tol_iso") = py::none());

  // sampler
  m.def("eigenlift_sample",
        [](int d, int n, std::uint64_t seed, const std::string& sampler, int hnr_steps,
           bool randomize_class, bool full_spark) {
          Rng rng = Rng::stream(seed, 0);
          const auto cfg = make_config(d, n, seed, sampler, hnr_steps, randomize_class, full_spark);
          return record_dict(EigenliftSampler(cfg).sample(rng, 0));
        },
        py::arg("d"), py::arg("N"), py::arg("seed") = 0, py::arg("sampler") = "rejection",
        py::arg("hnr_steps") = 200, py::arg("randomize_class") = false, py::arg("full_spark") = false);
  m.def("sample_batch",
        [](int d, int n, std::uint64_t count, std::uint64_t seed, int workers, const std::string& sampler,
           int hnr_steps, bool full_spark) {
          const auto cfg = make_config(d, n, seed, sampler, hnr_steps, false, full_spark);
          BatchResult batch;
          {
            py::gil_scoped_release release;
            batch = sample_batch(cfg, count, workers);
          }
          py::list records;
          for (const auto& r : batch.records) records.append(record_dict(r));
          py::list failures;
          for (const auto& f : batch.failures) failures.append(py::make_tuple(f.index, f.message));
          return py::make_tuple(records, failures);
        },
        py::arg("d"), py::arg("N"), py::arg("count"), py::arg("seed") = 0, py::arg("workers") = 1,
        py::arg("sampler") = "rejection", py::arg("hnr_steps") = 200, py::arg("full_spark") = false);
  m.def("coherence_bound", &coherence_bound, py::arg("d"), py::arg("N"));
  m.def("coherence_histogram",
        [](std::vector<double> values, int d, int n, int bins) {
          const auto h = coherence_histogram(values, d, n, bins);
          return py::make_tuple(h.edges, h.counts);
        },
        py::arg("values"), py::arg("d"), py::arg("N"), py::arg("bins"));
  m.def("fiber_heatmap",
        [](int d, int n, std::vector<double> mu, int grid, std::optional<double> tol_iso) {
          return fiber_heatmap(IndependentEigensteps(IndexSet(d, n), std::move(mu)), grid,
                               tol_iso.value_or(default_isolation_tolerance(d, n)));
        },
        py::arg("d"), py::arg("N"), py::arg("mu"), py::arg("grid"), py::arg("tol_iso") = py::none());
  m.def("uniformity_test",
        [](int d, int n, std::vector<std::vector<double>> points, int grid, int subgrid) {
          const auto r = uniformity_test(hrep(d, n), points, grid, subgrid);
          py::dict out;
          out["chi_square"] = r.chi_square;
          out["dof"] = r.dof;
          out["p_value"] = r.p_value;
          out["cells"] = r.cells;
          out["min_expected"] = r.min_expected;
          return out;
        },
        py::arg("d"), py::arg("N"), py::arg("points"), py::arg("grid"), py::arg("subgrid") = 2000);
}
