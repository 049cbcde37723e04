// Python bridge for the 2D-DFT library: transforms over numpy arrays plus
// the partitioning, padding, and measurement entry points.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pfft/bench/measure.hpp"
#include "pfft/bench/student_t.hpp"
#include "pfft/dft/backend.hpp"
#include "pfft/dft/engine.hpp"
#include "pfft/dft/signal_matrix.hpp"
#include "pfft/errors.hpp"
#include "pfft/fpm/model_io.hpp"
#include "pfft/fpm/speed_model.hpp"
#include "pfft/pad/planner.hpp"
#include "pfft/part/partition.hpp"

namespace py = pybind11;
using namespace pfft;

namespace {

using ComplexArray =
    py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

// Models come in as one sequence of (x, y, time_s) samples per group.
std::vector<fpm::SpeedFunction> models_from_python(
    const std::vector<std::vector<std::tuple<int, int, double>>>& groups) {
  std::vector<fpm::SpeedFunction> models;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    fpm::SpeedFunction sf(static_cast<int>(g));
    for (const auto& [x, y, time_s] : groups[g])
      sf.insert(fpm::SpeedPoint::from_time(x, y, time_s));
    models.push_back(std::move(sf));
  }
  return models;
}

pad::PadObjective objective_from_name(const std::string& name) {
  if (name == "stored-time" || name == "stored_time")
    return pad::PadObjective::StoredTime;
  if (name == "element-proxy" || name == "element_proxy")
    return pad::PadObjective::ElementProxy;
  throw DomainError("unknown objective '" + name +
                    "'; expected stored-time or element-proxy");
}

dft::ExecutionPlan plan_from_args(int n, const std::string& variant_name,
                                  int groups,
                                  const std::optional<std::vector<int>>& counts,
                                  const std::optional<std::vector<int>>& pads,
                                  int workers, int block_size) {
  const dft::Variant variant = dft::variant_from_name(variant_name);
  dft::ExecutionPlan plan;
  switch (variant) {
    case dft::Variant::Sequential:
      plan = dft::make_sequential_plan(n, workers);
      break;
    case dft::Variant::LB:
      plan = dft::make_lb_plan(n, groups, workers);
      break;
    case dft::Variant::FPM:
    case dft::Variant::FPM_PAD: {
      if (!counts)
        throw DomainError("variant " + variant_name +
                          " needs counts=[rows per group]");
      part::RowDistribution dist;
      dist.counts = *counts;
      if (variant == dft::Variant::FPM) {
        plan = dft::make_fpm_plan(n, dist, workers);
      } else {
        if (!pads || pads->size() != counts->size())
          throw DomainError(
              "variant fpm-pad needs pads=[padded length per group], one per "
              "counts entry");
        std::vector<pad::PadDecision> decisions;
        for (std::size_t g = 0; g < counts->size(); ++g)
          decisions.push_back(
              {int(g), (*counts)[g], n, (*pads)[g], 0.0, ""});
        plan = dft::make_fpm_pad_plan(n, dist, decisions, workers);
      }
      break;
    }
  }
  plan.block_size = block_size;
  plan.validate();
  return plan;
}

ComplexArray transform(const ComplexArray& a, const std::string& variant,
                       int groups, std::optional<std::vector<int>> counts,
                       std::optional<std::vector<int>> pads,
                       const std::string& backend_name, int workers,
                       int block_size) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1))
    throw DomainError("expected a square 2D array");
  const int n = int(a.shape(0));

  dft::SignalMatrix m(n);
  std::memcpy(m.data(), a.data(), sizeof(dft::cplx) * m.size());

  const dft::ExecutionPlan plan =
      plan_from_args(n, variant, groups, counts, pads, workers, block_size);
  std::unique_ptr<dft::FftBackend> backend = dft::make_backend(backend_name);
  {
    py::gil_scoped_release release;  // worker threads never touch Python
    dft::execute(plan, m, *backend);
  }

  ComplexArray out({n, n});
  std::memcpy(out.mutable_data(), m.data(), sizeof(dft::cplx) * m.size());
  return out;
}

py::dict partition_rows(
    const std::vector<std::vector<std::tuple<int, int, double>>>& models_py,
    int n, double epsilon, bool allow_zero) {
  const std::vector<fpm::SpeedFunction> models = models_from_python(models_py);
  const part::PartitionResult res =
      part::partition(models, n, epsilon, allow_zero);
  py::dict out;
  out["counts"] = res.dist.counts;
  out["objective_time_s"] = res.dist.objective_time_s;
  out["path"] = to_string(res.path);
  out["worst_rdiff"] = res.homogeneity.worst_rdiff;
  out["worst_x"] = res.homogeneity.worst_x;
  return out;
}

py::list plan_padding_py(
    const std::vector<std::vector<std::tuple<int, int, double>>>& models_py,
    const std::vector<int>& counts, int n, const std::string& objective) {
  const std::vector<fpm::SpeedFunction> models = models_from_python(models_py);
  part::RowDistribution dist;
  dist.counts = counts;
  py::list out;
  for (const pad::PadDecision& d :
       pad::plan_padding(models, dist, n, objective_from_name(objective))) {
    py::dict row;
    row["group_id"] = d.group_id;
    row["rows"] = d.rows;
    row["base_length"] = d.base_length;
    row["padded_length"] = d.padded_length;
    row["predicted_gain"] = d.predicted_gain;
    row["note"] = d.note;
    out.append(std::move(row));
  }
  return out;
}

py::dict mean_using_ttest_py(const py::function& workload, int min_reps,
                             int max_reps, double max_time_s,
                             double confidence, double precision) {
  bench::MeasurementPolicy policy;
  policy.min_reps = min_reps;
  policy.max_reps = max_reps;
  policy.max_time_s = max_time_s;
  policy.confidence_level = confidence;
  policy.precision = precision;
  const bench::MeasurementResult res = bench::mean_using_ttest(
      [&workload] { workload(); }, bench::steady_clock_seconds(), policy);
  py::dict out;
  out["reps"] = res.reps_done;
  out["mean_s"] = res.mean_s;
  out["precision"] = res.precision_achieved;
  out["confidence_halfwidth"] = res.confidence_halfwidth;
  out["elapsed_s"] = res.elapsed_s;
  out["stop_reason"] = to_string(res.stop_reason);
  return out;
}

py::list load_model_csv_py(const std::string& path) {
  py::list out;
  for (const fpm::SpeedFunction& fn : fpm::load_model_csv(path)) {
    py::dict group;
    group["processor_id"] = fn.processor_id();
    py::list points;
    for (const fpm::SpeedPoint& p : fn.points())
      points.append(py::make_tuple(p.x, p.y, p.time_s, p.speed));
    group["points"] = std::move(points);
    out.append(std::move(group));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "2D DFT over thread groups with model-driven row partitioning";

  // DomainError and its subclasses surface as ValueError subclasses; other
  // library errors ride the default std::runtime_error -> RuntimeError path.
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("transform", &transform, py::arg("a"), py::arg("variant") = "seq",
        py::arg("groups") = 1, py::arg("counts") = py::none(),
        py::arg("pads") = py::none(), py::arg("backend") = "builtin",
        py::arg("workers") = 1, py::arg("block_size") = 64,
        "Forward 2D DFT (numpy.fft.fft2 convention, unscaled) of a square "
        "complex matrix. variant: seq | lb | fpm | fpm-pad; lb splits rows "
        "evenly over `groups`, fpm uses `counts`, fpm-pad additionally pads "
        "each group's transforms to `pads[g]`.");

  m.def("t_critical", &bench::t_critical, py::arg("confidence"),
        py::arg("dof"), py::arg("two_sided") = false,
        "Student-t critical value used by the measurement stopping rule.");

  m.def("partition_rows", &partition_rows, py::arg("models"), py::arg("n"),
        py::arg("epsilon") = 0.05, py::arg("allow_zero") = true,
        "Min-max row partition of n rows over per-group speed models, each "
        "given as a sequence of (x, y, time_s) samples.");

  m.def("plan_padding", &plan_padding_py, py::arg("models"),
        py::arg("counts"), py::arg("n"), py::arg("objective") = "stored-time",
        "Per-group padded-length decisions for a row distribution.");

  m.def("mean_using_ttest", &mean_using_ttest_py, py::arg("workload"),
        py::arg("min_reps") = 5, py::arg("max_reps") = 50,
        py::arg("max_time_s") = 3600.0, py::arg("confidence") = 0.95,
        py::arg("precision") = 0.025,
        "Repeat `workload` until the relative t-confidence half-width of the "
        "mean run time drops below `precision`.");

  m.def("load_model_csv", &load_model_csv_py, py::arg("path"),
        "Load speed-model CSV into [{processor_id, points: [(x, y, time_s, "
        "speed), ...]}, ...].");

  m.def("transform_flops", &fpm::transform_flops, py::arg("x"), py::arg("y"),
        "Flop count attributed to x transforms of length y.");
  m.def("variation_percent", &fpm::variation_percent, py::arg("s1"),
        py::arg("s2"),
        "Relative gap between two speeds as a percentage of the smaller.");

  m.attr("__version__") = "1.0.0";
}
