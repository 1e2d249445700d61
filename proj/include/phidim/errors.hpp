#pragma once

#include <stdexcept>
#include <string>

namespace phidim {

// Base class for all library errors. Subclasses name the contract that was
// broken; the CLI maps each one to a distinct exit code.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A gap sequence's explicit prefix cannot determine the requested quantity
// (level sum, gap value) to the required precision.
struct InsufficientTail : Error {
    using Error::Error;
};

// A dissection ratio fell outside (0, 1/2).
struct RatioOutOfRange : Error {
    using Error::Error;
};

// An estimator scan window contained no admissible (k, n) pair.
struct EmptyScan : Error {
    using Error::Error;
};

// A requested scale or construction stage is below the resolution floor of
// double-precision positions.
struct ResolutionExceeded : Error {
    using Error::Error;
};

// Two finite approximations passed to a comparison check were not built from
// the same gap sequence / stage.
struct IncompatibleSources : Error {
    using Error::Error;
};

// A constructor precondition (stated inequality between its inputs) fails.
struct HypothesisViolated : Error {
    using Error::Error;
};

// A construction cannot fit its next block within the level budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// A block arrangement would consume more than half the gaps of some dyadic
// block.
struct GapBudgetExceeded : Error {
    using Error::Error;
};

// Malformed or inconsistent run configuration.
struct ConfigError : Error {
    using Error::Error;
};

} // namespace phidim
