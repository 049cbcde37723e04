#pragma once

#include <cstdint>
#include <string>
#include <vector>

// The pfft subcommands. Each returns a process exit code: 0 success,
// 1 internal failure (e.g. a failed --check), 2 user/domain error — the
// latter usually via a thrown pfft::DomainError that main() maps.
namespace pfftcli {

struct CommonArgs {
  std::vector<std::string> model_paths;
  std::string backend = "builtin";
  bool json_only = false;
};

struct ProfileArgs {
  CommonArgs common;
  std::string x_axis;  // "first:last:step" or "v1,v2,..."
  std::string y_axis;
  int groups = 1;
  int workers = 1;
  std::string out_dir;
  std::uint64_t budget_bytes = std::uint64_t(4) << 30;
  std::string timer = "real";  // or "synthetic"
  bool all_pairs = false;      // drop the x <= y constraint
  bool fresh = false;          // ignore existing CSVs instead of resuming
  // policy overrides; negative means "use the per-size default"
  int min_reps = -1;
  int max_reps = -1;
  double max_time_s = -1;
  double confidence = -1;
  double precision = -1;
};

struct PartitionArgs {
  CommonArgs common;
  int n = 0;
  double epsilon = 0.05;
  bool strict_positive = false;
};

struct PadPlanArgs {
  CommonArgs common;
  int n = 0;
  double epsilon = 0.05;
  bool strict_positive = false;
  bool proxy_objective = false;  // elements/speed instead of stored time
  std::string counts;            // optional "d0,d1,..."; empty -> partition
};

struct RunArgs {
  CommonArgs common;
  std::string variant = "seq";
  int n = 0;  // 0 -> take n from --input
  int groups = 2;
  bool groups_given = false;
  int workers = 1;
  double epsilon = 0.05;
  bool strict_positive = false;
  bool proxy_objective = false;
  std::uint64_t seed = 1;
  int block_size = 64;
  bool check = false;
  std::string input_path;
  std::string output_path;
};

struct CompareArgs {
  CommonArgs common;
  std::string baseline = "seq";
  std::string candidate;
  std::string n_list;   // "8,16,32"
  std::string n_range;  // "first:last:step"
  int groups = 2;
  bool groups_given = false;
  int workers = 1;
  double epsilon = 0.05;
  std::uint64_t seed = 1;
  int block_size = 64;
  std::string out_csv;
  bool strict = false;  // full per-size measurement policy
};

int cmd_profile(const ProfileArgs& args);
int cmd_partition(const PartitionArgs& args);
int cmd_pad_plan(const PadPlanArgs& args);
int cmd_run(const RunArgs& args);
int cmd_compare(const CompareArgs& args);

}  // namespace pfftcli
