#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "torweyl/action.hpp"
#include "torweyl/boxscan.hpp"
#include "torweyl/exactlin.hpp"
#include "torweyl/matrix.hpp"

namespace torweyl {

// A character in normal-form coordinates: free part in Z^(m-s) plus torsion
// residues reduced into [0, d_i).
struct CharClass {
    IntVec free;
    IntVec torsion;

    bool operator==(const CharClass&) const = default;
    bool operator<(const CharClass& o) const {
        return free != o.free ? free < o.free : torsion < o.torsion;
    }
};

// Split a raw character chi in Z^m into its normal-form class.
CharClass split_character(const SliceData& sd, const IntVec& chi);

// A raw-coordinate representative of the class (applies the inverse of the
// row transform to the obvious lift).
IntVec lift_character(const SliceData& sd, const CharClass& cls);

// All alpha in N^r x Z^s with L*alpha = 0 and every |alpha_i| <= box_bound,
// sorted lexicographically.
std::vector<std::vector<long long>> enumerate_invariants(const TorusAction& a,
                                                         long long box_bound);

// Exact dimension of the weight space O(Y)_chi; throws NotFiniteDimensional
// unless the invariants are trivial (then every weight space is finite).
unsigned long long weight_space_dim(const TorusAction& a, const IntVec& chi);

// The monomial exponents spanning O(Y)_chi, in original coordinates,
// lexicographically ordered by the first r entries.
std::vector<std::vector<long long>> weight_space_basis(const TorusAction& a, const IntVec& chi);

struct SeriesTerm {
    CharClass cls;
    Int grading;  // <y, chi> for any representative chi of the class
    unsigned long long coeff;
};

struct DimensionSeries {
    std::vector<SeriesTerm> terms;  // sorted by (grading, class)
    Rat bound;
    IntVec beta;
    RatVec y;
};

// Truncated expansion of prod_j (1 - t^{class(eta_j)})^{-1} graded by the
// positivity witness; coefficient at a class = dim O(Y)_chi for any
// representative chi.
DimensionSeries dimension_series(const TorusAction& a, const Rat& bound);

// The section beta |-> (beta; kappa(beta)) of the first-r-coordinates
// projection, landing in the kernel of the normalized matrix.
IntVec epsilon_embed(const TorusAction& a, const IntVec& beta);

struct QuotientIsoReport {
    bool ok = false;
    // (beta, epsilon(beta)) pairs matched against the independent
    // enumeration of the normalized-kernel semigroup.
    std::vector<std::pair<std::vector<long long>, std::vector<long long>>> matches;
    std::vector<std::vector<long long>> unmatched_side_a;
    std::vector<std::vector<long long>> unmatched_side_b;
};

// Checks that epsilon is a bijection between the slice semigroup
// {beta in N^r : L1*beta = 0, d | L2*beta} with beta_i <= box_bound and the
// invariant semigroup of the normalized matrix with first r coordinates in
// the same box (the last s coordinates are determined; they are enumerated
// independently over a derived complete range).
QuotientIsoReport quotient_iso_check_report(const TorusAction& a, long long box_bound);
bool quotient_iso_check(const TorusAction& a, long long box_bound);

}  // namespace torweyl
