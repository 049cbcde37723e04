#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "pfft/fpm/speed_model.hpp"

namespace pfft::fpm {

// CSV persistence for speed functions.
//
// Format: UTF-8, LF line endings, header row
//   processor_id,x,y,time_s,speed
// `#` comment lines and blank lines are permitted before the header (the
// reader tolerates them anywhere). One file may carry several processor_ids.
// time_s is authoritative; speed is recomputed on load, and a stored speed
// deviating by more than 1e-6 relative is reported as a load warning.

struct LoadWarning {
  int line = 0;  // 1-based line number in the file
  std::string message;
};

struct LoadReport {
  std::vector<LoadWarning> warnings;
};

void write_model_header(std::ostream& os);
void append_model_point(std::ostream& os, int processor_id, const SpeedPoint& p);

void save_model_csv(std::ostream& os, std::span<const SpeedFunction> functions);
void save_model_csv(const std::filesystem::path& path,
                    std::span<const SpeedFunction> functions);

// Functions come back ordered by ascending processor_id. A malformed row
// raises DomainError naming the 1-based line number.
std::vector<SpeedFunction> load_model_csv(std::istream& is,
                                          LoadReport* report = nullptr);
std::vector<SpeedFunction> load_model_csv(const std::filesystem::path& path,
                                          LoadReport* report = nullptr);

}  // namespace pfft::fpm
