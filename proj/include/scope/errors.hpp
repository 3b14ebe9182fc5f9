#pragma once

#include <stdexcept>
#include <string>

namespace scope {

// Raised when a restricted minimization cannot produce a usable iterate
// (singular Gram after ridge escalation, non-finite values).
class SubsolverError : public std::runtime_error {
 public:
  explicit SubsolverError(const std::string& what) : std::runtime_error(what) {}
};

// Raised by the outer solvers: every candidate failed, non-finite objective, ...
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace scope
