#pragma once

#include <stdexcept>
#include <string>

namespace schedgap {

// Error taxonomy shared by the library and the CLI.  The CLI maps these to
// process exit codes: ParameterError -> 2, verification failures -> 3,
// BudgetError / GenerationError -> 4.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad arguments or parameters outside a routine's documented domain
// (non-divisible Q, k even where odd is required, unsupported machine model).
struct ParameterError : Error {
  using Error::Error;
};

// Malformed data: dangling group ids, precedence cycles, self-loops,
// zero-width intervals, out-of-range member indices.
struct StructuralError : Error {
  using Error::Error;
};

// An explicit resource cap was exceeded (enumeration budget, member-expansion
// cap, brute-force state cap).
struct BudgetError : Error {
  using Error::Error;
};

// A randomized generator exhausted its retry budget.  Carries the layer pair
// whose expansion check failed last, for diagnostics.
struct GenerationError : Error {
  GenerationError(const std::string& msg, int layer_pair)
      : Error(msg), failing_layer_pair(layer_pair) {}
  int failing_layer_pair;
};

// A precondition that is itself a verifiable claim failed (e.g. a witness
// handed to a completeness constructor does not satisfy the YES-case check).
struct PreconditionError : Error {
  using Error::Error;
};

// A constructed schedule overflows machine capacity (signals that the slack
// parameter eps was chosen too small for the given block sizes).
struct CapacityError : Error {
  using Error::Error;
};

}  // namespace schedgap
