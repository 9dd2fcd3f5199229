#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace collatz {

/// A mathematical precondition of the requested operation does not hold
/// (e.g. an unbounded weight family, or a divergent eigenfield tail).
class PredicateError : public std::runtime_error {
 public:
  explicit PredicateError(const std::string& what) : std::runtime_error(what) {}
};

/// An enumeration or iteration exceeded its configured budget.  Carries the
/// amount of work completed before the overflow.
class BudgetError : public std::runtime_error {
 public:
  BudgetError(const std::string& what, std::size_t partial)
      : std::runtime_error(what), partial_count(partial) {}
  std::size_t partial_count = 0;
};

}  // namespace collatz
