#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "pfft/errors.hpp"

namespace {

using namespace pfftcli;

void add_common(CLI::App& sub, CommonArgs& common, bool with_model) {
  if (with_model)
    sub.add_option("-m,--model", common.model_paths,
                   "speed-model CSV (repeatable; files are merged)")
        ->envname("PFFT_MODEL");
  sub.add_option("--backend", common.backend, "FFT backend: builtin or fftw")
      ->envname("PFFT_BACKEND")
      ->capture_default_str();
  sub.add_flag("--json", common.json_only,
               "print only the machine-readable record line");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"2D DFT runner: builds per-group speed models, partitions row "
               "work across thread groups, optionally pads FFT lengths, and "
               "times the resulting transforms"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "pfft 1.0.0");
  app.set_config("--config", "", "read defaults from a key=value file "
                                 "(command-line flags win)");

  int rc = 0;

  ProfileArgs profile;
  {
    CLI::App* sub = app.add_subcommand(
        "profile", "measure per-group transform speeds over an (x, y) grid "
                   "and write one model CSV per group");
    add_common(*sub, profile.common, /*with_model=*/false);
    sub->add_option("-x,--x", profile.x_axis,
                    "row-count axis, first:last:step or v1,v2,...")
        ->required();
    sub->add_option("-y,--y", profile.y_axis,
                    "transform-length axis, first:last:step or v1,v2,...")
        ->required();
    sub->add_option("-p,--p", profile.groups, "number of thread groups")
        ->capture_default_str();
    sub->add_option("-t,--t", profile.workers, "threads per group")
        ->capture_default_str();
    sub->add_option("-o,--out", profile.out_dir,
                    "directory for groupN.csv files and skipped.log")
        ->required();
    sub->add_option("--budget-bytes", profile.budget_bytes,
                    "skip points whose working set exceeds this many bytes")
        ->capture_default_str();
    sub->add_option("--timer", profile.timer,
                    "real: time actual transforms; synthetic: deterministic "
                    "dry run for pipeline tests")
        ->check(CLI::IsMember({"real", "synthetic"}))
        ->capture_default_str();
    sub->add_flag("--all-pairs", profile.all_pairs,
                  "measure every (x, y) pair instead of only x <= y");
    sub->add_flag("--fresh", profile.fresh,
                  "overwrite existing CSVs instead of resuming");
    sub->add_option("--min-reps", profile.min_reps,
                    "override the per-size minimum repetitions");
    sub->add_option("--max-reps", profile.max_reps,
                    "override the per-size maximum repetitions");
    sub->add_option("--max-time", profile.max_time_s,
                    "per-point time budget in seconds");
    sub->add_option("--confidence", profile.confidence,
                    "confidence level for the stopping rule");
    sub->add_option("--precision", profile.precision,
                    "target relative precision for the stopping rule");
    sub->callback([&] { rc = cmd_profile(profile); });
  }

  PartitionArgs partition;
  {
    CLI::App* sub = app.add_subcommand(
        "partition", "split n rows across the modeled groups so the slowest "
                     "group finishes as early as possible");
    add_common(*sub, partition.common, /*with_model=*/true);
    sub->add_option("-n,--n", partition.n, "matrix side length")->required();
    sub->add_option("--epsilon", partition.epsilon,
                    "relative speed spread below which groups count as "
                    "identical")
        ->capture_default_str();
    sub->add_flag("--strict-positive", partition.strict_positive,
                  "force every group to receive at least one row");
    sub->callback([&] { rc = cmd_partition(partition); });
  }

  PadPlanArgs pad_plan;
  {
    CLI::App* sub = app.add_subcommand(
        "pad-plan", "choose per-group padded FFT lengths that the model "
                    "predicts to be faster than the unpadded length");
    add_common(*sub, pad_plan.common, /*with_model=*/true);
    sub->add_option("-n,--n", pad_plan.n, "matrix side length")->required();
    sub->add_option("--epsilon", pad_plan.epsilon,
                    "homogeneity tolerance for the implied partition")
        ->capture_default_str();
    sub->add_flag("--strict-positive", pad_plan.strict_positive,
                  "force every group to receive at least one row");
    sub->add_flag("--proxy-objective", pad_plan.proxy_objective,
                  "minimize elements/speed instead of predicted seconds");
    sub->add_option("--counts", pad_plan.counts,
                    "use this row distribution (d0,d1,...) instead of "
                    "partitioning");
    sub->callback([&] { rc = cmd_pad_plan(pad_plan); });
  }

  RunArgs run;
  {
    CLI::App* sub = app.add_subcommand(
        "run", "execute one 2D transform and report wall time");
    add_common(*sub, run.common, /*with_model=*/true);
    sub->add_option("--variant", run.variant,
                    "seq | lb | fpm | fpm-pad")
        ->check(CLI::IsMember({"seq", "sequential", "lb", "fpm", "fpm-pad",
                               "fpm_pad"}))
        ->capture_default_str();
    sub->add_option("-n,--n", run.n,
                    "matrix side length (omit when --input gives it)");
    CLI::Option* p_opt =
        sub->add_option("-p,--p", run.groups,
                        "thread groups for the lb variant")
            ->capture_default_str();
    sub->add_option("-t,--t", run.workers, "threads per group")
        ->capture_default_str();
    sub->add_option("--epsilon", run.epsilon, "homogeneity tolerance")
        ->capture_default_str();
    sub->add_flag("--strict-positive", run.strict_positive,
                  "force every group to receive at least one row");
    sub->add_flag("--proxy-objective", run.proxy_objective,
                  "pad by elements/speed instead of predicted seconds");
    sub->add_option("--seed", run.seed, "input-generation seed")
        ->capture_default_str();
    sub->add_option("--block-size", run.block_size,
                    "transpose tile side")
        ->capture_default_str();
    sub->add_flag("--check", run.check,
                  "verify the result against a direct-summation oracle "
                  "(small n only)");
    sub->add_option("-i,--input", run.input_path,
                    "transform this matrix file instead of a random one");
    sub->add_option("-o,--output", run.output_path,
                    "write the transformed matrix here");
    sub->callback([&] {
      run.groups_given = p_opt->count() > 0;
      rc = cmd_run(run);
    });
  }

  CompareArgs compare;
  {
    CLI::App* sub = app.add_subcommand(
        "compare", "time a baseline variant against a candidate over a range "
                   "of sizes and emit speedups");
    add_common(*sub, compare.common, /*with_model=*/true);
    sub->add_option("--baseline", compare.baseline, "baseline variant")
        ->capture_default_str();
    sub->add_option("--candidate", compare.candidate, "candidate variant")
        ->required();
    sub->add_option("--n-list", compare.n_list, "sizes to time, v1,v2,...");
    sub->add_option("--n-range", compare.n_range,
                    "sizes to time, first:last:step");
    CLI::Option* p_opt =
        sub->add_option("-p,--p", compare.groups,
                        "thread groups for the lb variant")
            ->capture_default_str();
    sub->add_option("-t,--t", compare.workers, "threads per group")
        ->capture_default_str();
    sub->add_option("--epsilon", compare.epsilon, "homogeneity tolerance")
        ->capture_default_str();
    sub->add_option("--seed", compare.seed, "input-generation seed base")
        ->capture_default_str();
    sub->add_option("--block-size", compare.block_size, "transpose tile side")
        ->capture_default_str();
    sub->add_option("-o,--out", compare.out_csv,
                    "write the per-size report CSV here");
    sub->add_flag("--strict", compare.strict,
                  "use the full per-size measurement policy instead of the "
                  "light one");
    sub->callback([&] {
      compare.groups_given = p_opt->count() > 0;
      rc = cmd_compare(compare);
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // user error, not internal
  } catch (const pfft::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
