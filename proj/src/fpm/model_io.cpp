#include "pfft/fpm/model_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "pfft/errors.hpp"

namespace pfft::fpm {

namespace {

constexpr const char* kHeader = "processor_id,x,y,time_s,speed";

std::string fmt_double(double v) {
  // %.17g round-trips doubles exactly.
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

[[noreturn]] void fail_line(const std::filesystem::path* path, int line,
                            const std::string& what) {
  std::string where = path ? path->string() : std::string("<stream>");
  throw DomainError(where + " line " + std::to_string(line) + ": " + what);
}

// Strict full-token numeric parse; leading/trailing spaces are trimmed.
template <typename T>
bool parse_number(std::string_view tok, T& out) {
  while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t'))
    tok.remove_prefix(1);
  while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' ||
                          tok.back() == '\r'))
    tok.remove_suffix(1);
  if (tok.empty()) return false;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

bool is_blank_or_comment(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (ch != ' ' && ch != '\t' && ch != '\r') return false;
  }
  return true;  // blank
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

std::vector<SpeedFunction> load_impl(std::istream& is, LoadReport* report,
                                     const std::filesystem::path* path) {
  std::string raw;
  int lineno = 0;
  bool header_seen = false;
  // processor_id -> function; std::map keeps ids ascending.
  std::map<int, SpeedFunction> by_id;

  auto warn = [&](int line, std::string msg) {
    if (report) report->warnings.push_back({line, std::move(msg)});
  };

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = strip_cr(raw);
    if (is_blank_or_comment(line)) continue;
    if (!header_seen) {
      if (line != kHeader)
        fail_line(path, lineno,
                  "expected header '" + std::string(kHeader) + "', got '" +
                      line + "'");
      header_seen = true;
      continue;
    }
    std::vector<std::string_view> fields = split_fields(line);
    if (fields.size() != 5)
      fail_line(path, lineno,
                "expected 5 fields, got " + std::to_string(fields.size()));
    int id = 0, x = 0, y = 0;
    double time_s = 0, stored_speed = 0;
    if (!parse_number(fields[0], id))
      fail_line(path, lineno, "bad processor_id '" + std::string(fields[0]) + "'");
    if (!parse_number(fields[1], x))
      fail_line(path, lineno, "bad x '" + std::string(fields[1]) + "'");
    if (!parse_number(fields[2], y))
      fail_line(path, lineno, "bad y '" + std::string(fields[2]) + "'");
    if (!parse_number(fields[3], time_s))
      fail_line(path, lineno, "bad time_s '" + std::string(fields[3]) + "'");
    if (!parse_number(fields[4], stored_speed))
      fail_line(path, lineno, "bad speed '" + std::string(fields[4]) + "'");

    SpeedPoint pt;
    try {
      pt = SpeedPoint::from_time(x, y, time_s);  // speed recomputed from time
    } catch (const DomainError& e) {
      fail_line(path, lineno, e.what());
    }
    if (stored_speed > 0) {
      double rel = std::abs(stored_speed - pt.speed) / pt.speed;
      if (rel > 1e-6)
        warn(lineno, "stored speed " + fmt_double(stored_speed) +
                         " deviates from recomputed " + fmt_double(pt.speed) +
                         " by " + fmt_double(rel) + " relative; recomputed value kept");
    } else {
      warn(lineno, "non-positive stored speed; recomputed value kept");
    }

    auto [it, created] = by_id.try_emplace(id, SpeedFunction(id));
    if (!created && it->second.find(x, y) != nullptr)
      warn(lineno, "duplicate sample (x=" + std::to_string(x) +
                       ", y=" + std::to_string(y) + ") for processor " +
                       std::to_string(id) + "; last value kept");
    it->second.insert(pt);
  }
  if (!header_seen) {
    std::string where = path ? path->string() : std::string("<stream>");
    throw DomainError(where + ": missing header '" + std::string(kHeader) + "'");
  }

  std::vector<SpeedFunction> out;
  out.reserve(by_id.size());
  for (auto& [id, fn] : by_id) out.push_back(std::move(fn));
  return out;
}

}  // namespace

void write_model_header(std::ostream& os) { os << kHeader << "\n"; }

void append_model_point(std::ostream& os, int processor_id, const SpeedPoint& p) {
  os << processor_id << ',' << p.x << ',' << p.y << ',' << fmt_double(p.time_s)
     << ',' << fmt_double(p.speed) << "\n";
}

void save_model_csv(std::ostream& os, std::span<const SpeedFunction> functions) {
  write_model_header(os);
  for (const SpeedFunction& fn : functions)
    for (const SpeedPoint& p : fn.points())
      append_model_point(os, fn.processor_id(), p);
}

void save_model_csv(const std::filesystem::path& path,
                    std::span<const SpeedFunction> functions) {
  std::ofstream os(path, std::ios::binary);  // binary keeps LF on all hosts
  if (!os) throw DomainError("cannot open " + path.string() + " for writing");
  save_model_csv(os, functions);
  os.flush();
  if (!os) throw Error("write to " + path.string() + " failed");
}

std::vector<SpeedFunction> load_model_csv(std::istream& is, LoadReport* report) {
  return load_impl(is, report, nullptr);
}

std::vector<SpeedFunction> load_model_csv(const std::filesystem::path& path,
                                          LoadReport* report) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot open " + path.string());
  return load_impl(is, report, &path);
}

}  // namespace pfft::fpm
