#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "pfft/bench/measure.hpp"
#include "pfft/bench/sweep.hpp"
#include "pfft/dft/backend.hpp"
#include "pfft/dft/engine.hpp"
#include "pfft/dft/reference.hpp"
#include "pfft/dft/signal_matrix.hpp"
#include "pfft/errors.hpp"
#include "pfft/fpm/model_io.hpp"
#include "pfft/fpm/speed_model.hpp"
#include "pfft/pad/planner.hpp"
#include "pfft/part/partition.hpp"

namespace pfftcli {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pfft;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

int parse_int(const std::string& tok, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw DomainError(std::string(what) + ": '" + tok + "' is not an integer");
  return v;
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::size_t at = 0;
  while (at <= s.size()) {
    std::size_t comma = s.find(',', at);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(parse_int(s.substr(at, comma - at), what));
    at = comma + 1;
  }
  return out;
}

// "first:last:step" (inclusive arithmetic range) or "v1,v2,...".
std::vector<int> parse_axis(const std::string& s, const char* what) {
  if (s.empty()) throw DomainError(std::string(what) + " is required");
  if (s.find(':') != std::string::npos) {
    std::vector<int> parts;
    std::size_t at = 0;
    while (at <= s.size()) {
      std::size_t colon = s.find(':', at);
      if (colon == std::string::npos) colon = s.size();
      parts.push_back(parse_int(s.substr(at, colon - at), what));
      at = colon + 1;
    }
    if (parts.size() == 2) parts.push_back(1);
    if (parts.size() != 3)
      throw DomainError(std::string(what) + ": expected first:last:step");
    return bench::arithmetic_values(parts[0], parts[1], parts[2]);
  }
  return parse_int_list(s, what);
}

std::vector<fpm::SpeedFunction> load_models(
    const std::vector<std::string>& paths) {
  if (paths.empty())
    throw DomainError("a speed model is required: pass --model FILE (or set "
                      "PFFT_MODEL)");
  std::vector<fpm::SpeedFunction> merged;
  for (const std::string& path : paths) {
    fpm::LoadReport report;
    std::vector<fpm::SpeedFunction> fns = fpm::load_model_csv(path, &report);
    for (const fpm::LoadWarning& w : report.warnings)
      std::cerr << "warning: " << path << ": line " << w.line << ": "
                << w.message << "\n";
    for (fpm::SpeedFunction& fn : fns) {
      for (const fpm::SpeedFunction& have : merged)
        if (have.processor_id() == fn.processor_id())
          throw DomainError("processor id " +
                            std::to_string(fn.processor_id()) +
                            " appears in more than one model file");
      merged.push_back(std::move(fn));
    }
  }
  std::sort(merged.begin(), merged.end(),
            [](const fpm::SpeedFunction& a, const fpm::SpeedFunction& b) {
              return a.processor_id() < b.processor_id();
            });
  return merged;
}

// Every command prints its human-readable lines followed by one compact JSON
// record line; --json keeps only the record.
void emit(const json& record, bool json_only,
          const std::vector<std::string>& human) {
  if (!json_only)
    for (const std::string& line : human) std::cout << line << "\n";
  std::cout << record.dump() << "\n";
}

std::string join_counts(const std::vector<int>& counts) {
  std::string out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += " ";
    out += std::to_string(counts[i]);
  }
  return out;
}

double mflops_of(int n, double seconds) {
  if (seconds <= 0) return 0;
  return fpm::transform_flops(n, n) / seconds / 1e6;
}

const char* path_name(part::PartitionPath p) {
  return p == part::PartitionPath::Homogeneous ? "homogeneous"
                                               : "heterogeneous";
}

// Oversubscription is allowed but worth flagging: timings degrade once the
// thread count passes what the machine can actually run in parallel.
void warn_if_oversubscribed(int total_threads) {
  const unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0 && total_threads > int(hw))
    std::cerr << "warning: requesting " << total_threads
              << " threads on hardware with " << hw
              << " logical cores; timings may degrade\n";
}

// A run/compare execution recipe: plan plus the model decisions behind it.
struct PlannedRun {
  dft::ExecutionPlan plan;
  bool has_partition = false;
  part::PartitionResult partition;
  std::vector<pad::PadDecision> pads;
};

PlannedRun build_plan(const std::string& variant_name, int n, int groups,
                      bool groups_given, int workers, int block_size,
                      double epsilon, bool strict_positive,
                      bool proxy_objective,
                      const std::vector<fpm::SpeedFunction>& models) {
  const dft::Variant variant = dft::variant_from_name(variant_name);
  PlannedRun out;
  switch (variant) {
    case dft::Variant::Sequential:
      out.plan = dft::make_sequential_plan(n, workers);
      break;
    case dft::Variant::LB:
      out.plan = dft::make_lb_plan(n, groups, workers);
      break;
    case dft::Variant::FPM:
    case dft::Variant::FPM_PAD: {
      if (models.empty())
        throw DomainError("variant " + variant_name +
                          " needs a speed model (--model or PFFT_MODEL)");
      if (groups_given && groups != int(models.size()))
        throw DomainError("--p " + std::to_string(groups) +
                          " conflicts with a model of " +
                          std::to_string(models.size()) + " groups");
      out.has_partition = true;
      out.partition =
          part::partition(models, n, epsilon, /*allow_zero=*/!strict_positive);
      if (variant == dft::Variant::FPM) {
        out.plan = dft::make_fpm_plan(n, out.partition.dist, workers);
      } else {
        out.pads = pad::plan_padding(models, out.partition.dist, n,
                                     proxy_objective
                                         ? pad::PadObjective::ElementProxy
                                         : pad::PadObjective::StoredTime);
        out.plan = dft::make_fpm_pad_plan(n, out.partition.dist, out.pads,
                                          workers);
      }
      break;
    }
  }
  out.plan.block_size = block_size;
  out.plan.validate();
  return out;
}

json partition_json(const part::PartitionResult& res) {
  return json{{"path", path_name(res.path)},
              {"worst_rdiff", res.homogeneity.worst_rdiff},
              {"worst_x", res.homogeneity.worst_x},
              {"counts", res.dist.counts},
              {"objective_time_s", res.dist.objective_time_s}};
}

}  // namespace

// ---------------------------------------------------------------------------
// partition

int cmd_partition(const PartitionArgs& args) {
  std::vector<fpm::SpeedFunction> models = load_models(args.common.model_paths);
  part::PartitionResult res = part::partition(
      models, args.n, args.epsilon, /*allow_zero=*/!args.strict_positive);

  std::vector<std::string> human;
  human.push_back("groups: " + std::to_string(models.size()));
  human.push_back(
      std::string("path: ") + path_name(res.path) + " (worst speed spread " +
      fmt17(res.homogeneity.worst_rdiff * 100) + "% at x=" +
      std::to_string(res.homogeneity.worst_x) + ", tolerance " +
      fmt17(args.epsilon * 100) + "%)");
  human.push_back("distribution: " + join_counts(res.dist.counts));
  human.push_back("predicted makespan: " + fmt17(res.dist.objective_time_s) +
                  " s");

  json record = partition_json(res);
  record["command"] = "partition";
  record["n"] = args.n;
  record["epsilon"] = args.epsilon;
  emit(record, args.common.json_only, human);
  return 0;
}

// ---------------------------------------------------------------------------
// pad-plan

int cmd_pad_plan(const PadPlanArgs& args) {
  std::vector<fpm::SpeedFunction> models = load_models(args.common.model_paths);
  const pad::PadObjective objective = args.proxy_objective
                                          ? pad::PadObjective::ElementProxy
                                          : pad::PadObjective::StoredTime;

  part::RowDistribution dist;
  json record{{"command", "pad-plan"},
              {"n", args.n},
              {"objective", to_string(objective)}};
  std::vector<std::string> human;
  if (args.counts.empty()) {
    part::PartitionResult res = part::partition(
        models, args.n, args.epsilon, /*allow_zero=*/!args.strict_positive);
    dist = res.dist;
    record["partition"] = partition_json(res);
    human.push_back(std::string("distribution (from ") + path_name(res.path) +
                    " partition): " + join_counts(dist.counts));
  } else {
    dist.counts = parse_int_list(args.counts, "--counts");
    if (dist.counts.size() != models.size())
      throw DomainError("--counts lists " + std::to_string(dist.counts.size()) +
                        " groups but the model has " +
                        std::to_string(models.size()));
    int total = 0;
    for (int c : dist.counts) {
      if (c < 0) throw DomainError("--counts entries must be >= 0");
      total += c;
    }
    if (total != args.n)
      throw DomainError("--counts sums to " + std::to_string(total) +
                        ", expected n=" + std::to_string(args.n));
    human.push_back("distribution (given): " + join_counts(dist.counts));
  }

  std::vector<pad::PadDecision> decisions =
      pad::plan_padding(models, dist, args.n, objective);

  json rows = json::array();
  for (const pad::PadDecision& d : decisions) {
    json row{{"group_id", d.group_id},
             {"rows", d.rows},
             {"base_length", d.base_length},
             {"padded_length", d.padded_length},
             {"predicted_gain", d.predicted_gain}};
    if (!d.note.empty()) row["note"] = d.note;
    rows.push_back(row);
    std::string line = "group " + std::to_string(d.group_id) + ": rows " +
                       std::to_string(d.rows) + ", length " +
                       std::to_string(d.base_length);
    if (d.padded_length > d.base_length)
      line += " -> " + std::to_string(d.padded_length) +
              " (predicted gain " + fmt17(d.predicted_gain) + ")";
    else
      line += " (unpadded" + (d.note.empty() ? "" : ": " + d.note) + ")";
    human.push_back(line);
  }
  record["decisions"] = rows;
  emit(record, args.common.json_only, human);
  return 0;
}

// ---------------------------------------------------------------------------
// run

int cmd_run(const RunArgs& args) {
  std::vector<fpm::SpeedFunction> models;
  const dft::Variant variant = dft::variant_from_name(args.variant);
  if (variant == dft::Variant::FPM || variant == dft::Variant::FPM_PAD)
    models = load_models(args.common.model_paths);

  dft::SignalMatrix input;
  if (!args.input_path.empty()) {
    input = dft::load_matrix_auto(args.input_path);
    if (input.row_stride() != input.n())
      throw DomainError("input matrices must be unpadded (stride == n)");
    if (args.n != 0 && args.n != input.n())
      throw DomainError("--n " + std::to_string(args.n) +
                        " does not match the input matrix side " +
                        std::to_string(input.n()));
  } else {
    if (args.n < 1) throw DomainError("--n is required without --input");
    input = dft::random_signal_matrix(args.n, args.seed);
  }
  const int n = input.n();

  PlannedRun planned = build_plan(
      args.variant, n, args.groups, args.groups_given, args.workers,
      args.block_size, args.epsilon, args.strict_positive,
      args.proxy_objective, models);

  std::unique_ptr<dft::FftBackend> backend =
      dft::make_backend(args.common.backend);
  warn_if_oversubscribed(int(planned.plan.groups.size()) * args.workers);

  dft::SignalMatrix result = input;
  bench::Clock clock = bench::steady_clock_seconds();
  const double t0 = clock();
  dft::execute(planned.plan, result, *backend);
  const double elapsed = clock() - t0;

  std::vector<std::string> human;
  human.push_back("variant: " + std::string(to_string(planned.plan.variant)) +
                  ", n: " + std::to_string(n) + ", backend: " +
                  backend->name());
  json record{{"command", "run"},
              {"variant", to_string(planned.plan.variant)},
              {"n", n},
              {"backend", backend->name()},
              {"time_s", elapsed},
              {"mflops", mflops_of(n, elapsed)},
              {"seed", args.seed}};
  if (planned.has_partition) {
    record["partition"] = partition_json(planned.partition);
    human.push_back("distribution: " +
                    join_counts(planned.partition.dist.counts));
  }
  if (!planned.pads.empty()) {
    json pads = json::array();
    std::string line = "padded lengths:";
    for (const pad::PadDecision& d : planned.pads) {
      pads.push_back(d.padded_length);
      line += " " + std::to_string(d.padded_length);
    }
    record["padded_lengths"] = pads;
    human.push_back(line);
  }
  human.push_back("time: " + fmt17(elapsed) + " s (" +
                  fmt17(mflops_of(n, elapsed)) + " MFLOPs)");

  int rc = 0;
  if (args.check) {
    dft::SignalMatrix want =
        planned.plan.variant == dft::Variant::FPM_PAD
            ? dft::dft2d_padded_reference(input, planned.plan)
            : dft::dft2d_naive(input);
    const double rel = dft::relative_rms_error(result, want);
    const bool passed = rel < 1e-6;
    record["check"] = json{{"oracle", planned.plan.variant == dft::Variant::FPM_PAD
                                          ? "padded-direct-sum"
                                          : "direct-sum"},
                           {"relative_rms", rel},
                           {"passed", passed}};
    human.push_back(std::string("check: ") + (passed ? "PASS" : "FAIL") +
                    " (relative RMS " + fmt17(rel) + ")");
    if (!passed) rc = 1;
  }

  if (!args.output_path.empty()) {
    dft::save_matrix_auto(result, args.output_path);
    record["output"] = args.output_path;
    human.push_back("wrote " + args.output_path);
  }

  emit(record, args.common.json_only, human);
  return rc;
}

// ---------------------------------------------------------------------------
// profile

namespace {

// Streams every finished point to its group's CSV and every skip or failure
// to the sidecar log, so an interrupted sweep keeps all completed work.
class CsvStreamSink final : public bench::SweepSink {
 public:
  CsvStreamSink(std::vector<std::ofstream> files, std::ofstream skip_log)
      : files_(std::move(files)), skip_log_(std::move(skip_log)) {}

  void on_point(int group, const fpm::SpeedPoint& point,
                const bench::MeasurementResult&) override {
    fpm::append_model_point(files_[group], group, point);
    files_[group].flush();
  }

  void on_skip(const bench::SkipRecord& record) override {
    skip_log_ << record.x << ',' << record.y << ',' << record.reason << '\n';
    skip_log_.flush();
  }

 private:
  std::vector<std::ofstream> files_;
  std::ofstream skip_log_;
};

}  // namespace

int cmd_profile(const ProfileArgs& args) {
  if (args.groups < 1) throw DomainError("--p must be >= 1");
  if (args.workers < 1) throw DomainError("--t must be >= 1");
  if (args.out_dir.empty()) throw DomainError("--out DIR is required");
  if (args.timer != "real" && args.timer != "synthetic")
    throw DomainError("--timer must be real or synthetic");

  bench::SweepSpec sweep;
  sweep.x_values = parse_axis(args.x_axis, "--x");
  sweep.y_values = parse_axis(args.y_axis, "--y");
  sweep.memory_budget_bytes = args.budget_bytes;
  if (args.all_pairs) sweep.constraint = [](int, int) { return true; };
  sweep.validate();

  fs::create_directories(args.out_dir);
  const int p = args.groups;

  // Resume state: a point counts as done only when every group's CSV has it.
  std::vector<std::set<std::pair<int, int>>> done(p);
  std::vector<fs::path> csv_paths;
  std::vector<std::ofstream> files;
  for (int g = 0; g < p; ++g) {
    fs::path path = fs::path(args.out_dir) / ("group" + std::to_string(g) +
                                              ".csv");
    csv_paths.push_back(path);
    const bool existed = !args.fresh && fs::exists(path) &&
                         fs::file_size(path) > 0;
    if (existed) {
      for (const fpm::SpeedFunction& fn : fpm::load_model_csv(path))
        for (const fpm::SpeedPoint& pt : fn.points())
          done[g].insert({pt.x, pt.y});
    }
    std::ofstream out(path, existed ? std::ios::app : std::ios::trunc);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    if (!existed) fpm::write_model_header(out);
    files.push_back(std::move(out));
  }
  std::ofstream skip_log(fs::path(args.out_dir) / "skipped.log",
                         args.fresh ? std::ios::trunc : std::ios::app);
  if (!skip_log) throw Error("cannot open the skip log for writing");

  CsvStreamSink sink(std::move(files), std::move(skip_log));

  bench::SweepOptions options;
  options.group_count = p;
  options.sink = &sink;
  options.already_done = [&done, p](int x, int y) {
    for (int g = 0; g < p; ++g)
      if (!done[g].count({x, y})) return false;
    return true;
  };
  const bool overridden = args.min_reps >= 0 || args.max_reps >= 0 ||
                          args.max_time_s >= 0 || args.confidence >= 0 ||
                          args.precision >= 0;
  if (overridden) {
    options.policy = [&args](int x, int y) {
      bench::MeasurementPolicy pol =
          bench::policy_for_problem_size(std::max(x, y));
      if (args.min_reps >= 0) pol.min_reps = args.min_reps;
      if (args.max_reps >= 0) pol.max_reps = args.max_reps;
      if (args.max_time_s >= 0) pol.max_time_s = args.max_time_s;
      if (args.confidence >= 0) pol.confidence_level = args.confidence;
      if (args.precision >= 0) pol.precision = args.precision;
      // a one-sided override may undercut the tier default on the other
      // side; pull the side the user left alone into range
      if (args.max_reps >= 0 && args.min_reps < 0)
        pol.min_reps = std::max(1, std::min(pol.min_reps, pol.max_reps - 1));
      if (args.min_reps >= 0 && args.max_reps < 0)
        pol.max_reps = std::max(pol.max_reps, pol.min_reps + 1);
      pol.validate();
      return pol;
    };
  }

  bench::EngineHook hook;
  std::unique_ptr<dft::FftBackend> backend;
  if (args.timer == "synthetic") {
    // Deterministic dry run: no-op workloads against a scripted timer whose
    // per-call spans mimic a plausible speed surface. Start/stop call pairs
    // return (0, span) so every repetition measures span with zero variance
    // and the loop stops at min_reps + 1.
    options.clock_factory = [](int g, int x, int y) {
      const double speed =
          1e9 * (1.0 + 0.25 * g) * (1.0 + double((x * 31 + y * 17) % 7) / 50.0);
      const double span = fpm::transform_flops(x, y) / speed;
      auto calls = std::make_shared<int>(0);
      return bench::Clock([calls, span] {
        return (*calls)++ % 2 == 0 ? 0.0 : span;
      });
    };
    hook = [p](int, int) {
      return std::vector<std::function<void()>>(p, [] {});
    };
  } else {
    backend = dft::make_backend(args.common.backend);
    warn_if_oversubscribed(p * args.workers);
    dft::FftBackend* raw = backend.get();
    const int workers = args.workers;
    hook = [raw, p, workers](int x, int y) {
      std::vector<std::function<void()>> workloads;
      for (int g = 0; g < p; ++g) {
        auto buffer = std::make_shared<std::vector<dft::cplx>>(
            std::size_t(x) * y, dft::cplx(0.0, 0.0));
        dft::BatchSpec spec;
        spec.length = y;
        spec.count = x;
        spec.distance = y;
        spec.workers = workers;
        spec.cache_plan = false;  // planning cost belongs in the sample
        workloads.push_back(
            [raw, buffer, spec] { raw->forward(spec, buffer->data()); });
      }
      return workloads;
    };
  }

  bench::SweepOutcome outcome = bench::build_speed_functions(sweep, hook,
                                                             options);

  std::size_t new_points = 0;
  for (const fpm::SpeedFunction& fn : outcome.functions)
    new_points = std::max(new_points, fn.size());

  std::vector<std::string> human;
  human.push_back("groups: " + std::to_string(p) + ", timer: " + args.timer);
  human.push_back("new points per group: " + std::to_string(new_points) +
                  ", skipped: " + std::to_string(outcome.skipped.size()) +
                  ", failed: " + std::to_string(outcome.failed.size()));
  json csvs = json::array();
  for (const fs::path& path : csv_paths) {
    csvs.push_back(path.string());
    human.push_back("wrote " + path.string());
  }
  json record{{"command", "profile"},
              {"groups", p},
              {"timer", args.timer},
              {"new_points", new_points},
              {"skipped", outcome.skipped.size()},
              {"failed", outcome.failed.size()},
              {"csv", csvs}};
  emit(record, args.common.json_only, human);
  return 0;
}

// ---------------------------------------------------------------------------
// compare

int cmd_compare(const CompareArgs& args) {
  if (args.candidate.empty()) throw DomainError("--candidate is required");
  if (args.n_list.empty() == args.n_range.empty())
    throw DomainError("pass exactly one of --n-list or --n-range");
  std::vector<int> ns = args.n_list.empty()
                            ? parse_axis(args.n_range, "--n-range")
                            : parse_int_list(args.n_list, "--n-list");
  for (int n : ns)
    if (n < 1) throw DomainError("sizes must be >= 1");

  const bool needs_model = [&] {
    for (const std::string& v : {args.baseline, args.candidate}) {
      dft::Variant var = dft::variant_from_name(v);
      if (var == dft::Variant::FPM || var == dft::Variant::FPM_PAD)
        return true;
    }
    return false;
  }();
  std::vector<fpm::SpeedFunction> models;
  if (needs_model) models = load_models(args.common.model_paths);

  std::unique_ptr<dft::FftBackend> backend =
      dft::make_backend(args.common.backend);
  bench::Clock clock = bench::steady_clock_seconds();

  auto policy_for = [&args](int n) {
    if (args.strict) return bench::policy_for_problem_size(n);
    bench::MeasurementPolicy light;  // desk-run policy
    light.min_reps = 3;
    light.max_reps = 20;
    light.precision = 0.05;
    return light;
  };

  struct Row {
    int n;
    double time_base, time_cand, speedup, mflops_base, mflops_cand;
    double variation_base = 0, variation_cand = 0;
  };
  std::vector<Row> rows;

  for (int n : ns) {
    dft::SignalMatrix input = dft::random_signal_matrix(n, args.seed + n);
    double times[2];
    int side = 0;
    for (const std::string& variant : {args.baseline, args.candidate}) {
      PlannedRun planned = build_plan(
          variant, n, args.groups, args.groups_given, args.workers,
          args.block_size, args.epsilon, /*strict_positive=*/false,
          /*proxy_objective=*/false, models);
      auto workload = [&planned, &input, &backend] {
        dft::SignalMatrix work = input;  // copy + transform is what we time
        dft::execute(planned.plan, work, *backend);
      };
      bench::MeasurementResult res =
          bench::mean_using_ttest(workload, clock, policy_for(n));
      times[side++] = res.mean_s;
    }
    Row row;
    row.n = n;
    row.time_base = times[0];
    row.time_cand = times[1];
    row.speedup = times[0] / times[1];
    row.mflops_base = mflops_of(n, times[0]);
    row.mflops_cand = mflops_of(n, times[1]);
    if (!rows.empty()) {
      // speed variation against the previous size, as a percentage of the
      // smaller speed; zero when either speed is degenerate
      const Row& prev = rows.back();
      if (prev.mflops_base > 0 && row.mflops_base > 0)
        row.variation_base =
            fpm::variation_percent(prev.mflops_base, row.mflops_base);
      if (prev.mflops_cand > 0 && row.mflops_cand > 0)
        row.variation_cand =
            fpm::variation_percent(prev.mflops_cand, row.mflops_cand);
    }
    rows.push_back(row);
  }

  // summary over the per-size speedups, in row order so a reader of the CSV
  // can reproduce the numbers exactly
  double sum = 0, best = rows[0].speedup;
  for (const Row& row : rows) {
    sum += row.speedup;
    best = std::max(best, row.speedup);
  }
  const double avg = sum / double(rows.size());
  const bool sanity = args.baseline == args.candidate;

  static constexpr const char* kHeader =
      "n,time_base,time_cand,speedup,mflops_base,mflops_cand,"
      "variation_base_pct,variation_cand_pct";
  auto csv_row = [](const Row& r) {
    return std::to_string(r.n) + "," + fmt17(r.time_base) + "," +
           fmt17(r.time_cand) + "," + fmt17(r.speedup) + "," +
           fmt17(r.mflops_base) + "," + fmt17(r.mflops_cand) + "," +
           fmt17(r.variation_base) + "," + fmt17(r.variation_cand);
  };
  if (!args.out_csv.empty()) {
    std::ofstream out(args.out_csv, std::ios::binary);
    if (!out) throw Error("cannot open " + args.out_csv + " for writing");
    out << kHeader << "\n";
    for (const Row& row : rows) out << csv_row(row) << "\n";
  }

  std::vector<std::string> human;
  human.push_back("baseline: " + args.baseline + ", candidate: " +
                  args.candidate + ", policy: " +
                  (args.strict ? "strict" : "light"));
  if (sanity)
    human.push_back("note: self-comparison sanity mode (speedups should "
                    "hover around 1.0)");
  for (const Row& row : rows)
    human.push_back("n " + std::to_string(row.n) + ": " +
                    fmt17(row.time_base) + " s vs " + fmt17(row.time_cand) +
                    " s, speedup " + fmt17(row.speedup));
  human.push_back("average speedup: " + fmt17(avg) + ", maximum: " +
                  fmt17(best));
  if (!args.out_csv.empty()) human.push_back("wrote " + args.out_csv);

  json jrows = json::array();
  for (const Row& row : rows)
    jrows.push_back(json{{"n", row.n},
                         {"time_base", row.time_base},
                         {"time_cand", row.time_cand},
                         {"speedup", row.speedup},
                         {"mflops_base", row.mflops_base},
                         {"mflops_cand", row.mflops_cand},
                         {"variation_base_pct", row.variation_base},
                         {"variation_cand_pct", row.variation_cand}});
  json record{{"command", "compare"},
              {"baseline", args.baseline},
              {"candidate", args.candidate},
              {"policy", args.strict ? "strict" : "light"},
              {"sanity_self_comparison", sanity},
              {"rows", jrows},
              {"summary", json{{"average_speedup", avg},
                               {"maximum_speedup", best}}}};
  if (!args.out_csv.empty()) record["csv"] = args.out_csv;
  emit(record, args.common.json_only, human);
  return 0;
}

}  // namespace pfftcli
