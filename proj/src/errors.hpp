#pragma once

#include <stdexcept>
#include <string>

namespace kgchain {

// A wave number or half-shift does not land on the grid.
struct AlignmentError : std::invalid_argument {
  explicit AlignmentError(const std::string& what) : std::invalid_argument(what) {}
};

// A mathematical precondition is violated (e.g. non-mean-zero input to the
// periodic antiderivative, or an unstable integration step).
struct PreconditionError : std::invalid_argument {
  explicit PreconditionError(const std::string& what) : std::invalid_argument(what) {}
};

// Zero profile or vanishing gradient where the operation is undefined.
struct DegenerateInputError : std::invalid_argument {
  explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace kgchain
