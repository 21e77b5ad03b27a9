#pragma once

#include <stdexcept>
#include <string>

namespace teamcomp {

// Input data failed validation (bad roster/task/partition/scores content).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The instance admits no solution (no valid team plan, unsatisfiable coverage).
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace teamcomp
