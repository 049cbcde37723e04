#pragma once

#include <stdexcept>
#include <string>

namespace pfft {

// Base class for everything thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid input or a request outside the modeled domain. The CLI maps these
// to exit code 2 (user error); everything else maps to exit code 1.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A lookup missed the sampled grid. Carries the nearest valid coordinate so
// callers can build actionable diagnostics without parsing the message.
class NotFoundError : public DomainError {
 public:
  NotFoundError(const std::string& what, long nearest)
      : DomainError(what), nearest_(nearest) {}
  long nearest() const noexcept { return nearest_; }

 private:
  long nearest_;
};

// Internal failure inside the transform pipeline. When thrown mid-execution
// the matrix contents are indeterminate; the message says so.
class EngineError : public Error {
 public:
  using Error::Error;
};

// A benchmark workload threw. Records how many repetitions had completed so
// partial sweep state can be reported.
class WorkloadFailure : public Error {
 public:
  WorkloadFailure(const std::string& what, int reps_completed)
      : Error(what), reps_completed_(reps_completed) {}
  int reps_completed() const noexcept { return reps_completed_; }

 private:
  int reps_completed_;
};

}  // namespace pfft
