#pragma once

#include <stdexcept>
#include <string>

namespace ifs {

/// Enumeration budget exceeded (2^n or 3^n word spaces).
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Quadrature / iteration failed to converge.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ifs
