#pragma once

#include <stdexcept>
#include <string>

namespace torweyl {

// Base class for every recoverable error raised by the library.  The CLI maps
// Error -> exit 1 and InternalConsistencyError -> exit 2.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Input shape problems (matrix dimensions vs. declared r,s; vector lengths).
struct ShapeMismatch : Error {
    using Error::Error;
};

// An action on a zero-dimensional space (r+s = 0) is rejected up front.
struct EmptyAction : Error {
    using Error::Error;
};

// The last s weight columns are linearly dependent, so the torus does not act
// transitively on the torus factor and the block normal form does not exist.
struct DependentTorusWeights : Error {
    using Error::Error;
};

// Raised by operations whose preconditions require a transitive action.
struct NotTransitive : Error {
    using Error::Error;
};

// Weight-space enumeration requested for an action whose graded pieces are
// infinite dimensional (no positive grading vector exists).
struct NotFiniteDimensional : Error {
    using Error::Error;
};

// Vector fails the T_1 membership test (first block of the normal form does
// not annihilate it).
struct NotInT1 : Error {
    using Error::Error;
};

// Vector lies in T_1 but its image under the lower block is not divisible by
// the diagonal d, so it is not in T_1'.
struct NotInT1Prime : Error {
    using Error::Error;
};

// A flip set or coordinate index is outside {1,...,r}.
struct IndexOutOfRange : Error {
    using Error::Error;
};

// no_fdm_witness needs a linear relation among the torus weights; raised when
// they are independent (the transitive case has no such witness).
struct TorusWeightsIndependent : Error {
    using Error::Error;
};

// fixed_coordinate_witness asked for a coordinate whose slice weight is
// nonzero.
struct NotAFixedCoordinate : Error {
    using Error::Error;
};

// Box-scan request exceeds the configured lattice-point budget
// (TORWEYL_MAX_BOX, default 1e6 points).
struct BoxTooLarge : Error {
    using Error::Error;
};

// Two independent internal routes disagreed; this is a bug trap, never a user
// error.  CLI exit code 2.
struct InternalConsistencyError : std::logic_error {
    explicit InternalConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace torweyl
