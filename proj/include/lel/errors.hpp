#pragma once

#include <exception>
#include <stdexcept>

namespace lel {

// Control-flow signal: the evaluation budget is spent and the optimizer
// must unwind to its trial loop. Clean termination, not a failure.
class BudgetExhausted : public std::exception {
 public:
  const char* what() const noexcept override {
    return "evaluation budget exhausted";
  }
};

class IncompatibleDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAnImprovement : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PopulationTooSmall : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NegativeGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingPairs : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lel
