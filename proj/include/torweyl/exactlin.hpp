#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "torweyl/matrix.hpp"

namespace torweyl {

// ---------------------------------------------------------------------------
// Canonical forms over Z.
// ---------------------------------------------------------------------------

// Row-style Hermite normal form: u * m == h with u unimodular, h upper
// echelon, pivots positive, entries above each pivot reduced into [0, pivot).
struct HnfResult {
    IntMatrix h;
    IntMatrix u;
};
HnfResult hermite_normal_form(const IntMatrix& m);

// Smith normal form: u * m * v == s with u, v unimodular and s diagonal,
// nonnegative, each diagonal entry dividing the next.
struct SnfResult {
    IntMatrix s;
    IntMatrix u;
    IntMatrix v;
};
SnfResult smith_normal_form(const IntMatrix& m);

std::size_t rank(const IntMatrix& m);

// Nonzero diagonal entries of the Smith form (the invariant factors).
IntVec invariant_factors(const IntMatrix& m);

// Saturated basis of the integer kernel {x : m*x = 0}, each vector normalized
// so its first nonzero entry is positive.  Saturated means every integer
// kernel element is an integer combination of the basis.
std::vector<IntVec> kernel_basis(const IntMatrix& m);

// Exact inverse of a unimodular matrix (its HNF is the identity, so the HNF
// transform is the inverse).  Throws InternalConsistencyError otherwise.
IntMatrix inverse_unimodular(const IntMatrix& u);

// Solve m * x = v over Z, or nullopt when v is outside the column lattice.
std::optional<IntVec> lattice_solve(const IntMatrix& m, const IntVec& v);

// ---------------------------------------------------------------------------
// Block normal form of a weight matrix.
// ---------------------------------------------------------------------------

// Unimodular row transform `left` (m x m) and column transform `right`
// (n x n); left * L * right is the normalized matrix.
struct UnimodularPair {
    IntMatrix left;
    IntMatrix right;
};

// left * l * right = [ l1   0 ]
//                    [ l2   d ]
// where d is diagonal with positive entries d_1 | d_2 | ... | d_s, the right
// transform only mixes the last s columns (identity on the first r), and l1
// has m-s rows.  Exists iff the last s columns of l are linearly independent;
// otherwise DependentTorusWeights is thrown carrying a kernel relation.
struct BlockNormalForm {
    UnimodularPair transforms;
    IntMatrix normalized;  // full (m x n) transformed matrix
    IntMatrix l1;          // (m-s) x r
    IntMatrix l2;          // s x r
    IntVec d;              // s positive diagonal entries, divisibility chain
};
BlockNormalForm block_normal_form(const IntMatrix& l, std::size_t r, std::size_t s);

// ---------------------------------------------------------------------------
// Rational feasibility: a vector in the rowspace with prescribed signs.
// ---------------------------------------------------------------------------

// beta = y^T * L integral, beta_i >= 1 for i in positive_idx, beta_i == 0 for
// i in zero_idx (indices are 0-based here; the CLI layer presents 1-based).
struct PositivityWitness {
    IntVec beta;
    RatVec y;
};

// One inequality a^T y >= c over the row-multiplier variables y.
struct SignConstraint {
    RatVec a;
    Rat c;
};

// The constraint system Fourier-Motzkin works on, in a fixed deterministic
// order so infeasibility certificates can be re-verified externally.
std::vector<SignConstraint> sign_constraints(const IntMatrix& l,
                                             const std::vector<std::size_t>& positive_idx,
                                             const std::vector<std::size_t>& zero_idx);

// Either a witness or a Farkas certificate: nonnegative multipliers over
// sign_constraints(...) rows combining to the contradiction 0 >= (positive).
struct FeasibilityResult {
    std::optional<PositivityWitness> witness;
    RatVec farkas;  // nonempty iff witness is empty
};

FeasibilityResult positive_vector_in_rowspace_full(const IntMatrix& l,
                                                   const std::vector<std::size_t>& positive_idx,
                                                   const std::vector<std::size_t>& zero_idx);

std::optional<PositivityWitness> positive_vector_in_rowspace(
    const IntMatrix& l,
    const std::vector<std::size_t>& positive_idx,
    const std::vector<std::size_t>& zero_idx);

}  // namespace torweyl
