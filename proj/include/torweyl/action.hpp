#pragma once

#include <cstddef>
#include <vector>

#include "torweyl/exactlin.hpp"
#include "torweyl/matrix.hpp"

namespace torweyl {

// Diagonal action of an m-dimensional torus on k^r x (k^x)^s.  Column j of
// the weight matrix is the character through which the torus scales the j-th
// coordinate; the first r coordinates are polynomial, the last s invertible.
class TorusAction {
  public:
    TorusAction(IntMatrix l, std::size_t r, std::size_t s);

    const IntMatrix& l() const { return l_; }
    std::size_t r() const { return r_; }
    std::size_t s() const { return s_; }
    std::size_t m() const { return l_.rows(); }
    std::size_t n() const { return r_ + s_; }

    // Weight of coordinate j (0-based), as a column of l.
    IntVec weight(std::size_t j) const;
    // The m x s block of torus-coordinate weights.
    IntMatrix torus_block() const;

  private:
    IntMatrix l_;
    std::size_t r_ = 0;
    std::size_t s_ = 0;
};

TorusAction new_action(IntMatrix l, std::size_t r, std::size_t s);

std::vector<IntVec> weights(const TorusAction& a);

// The torus acts faithfully iff its character map hits all of Z^m, i.e. the
// weight matrix has m invariant factors all equal to 1.
bool is_faithful(const TorusAction& a);

// The orbit of a torus point covers the torus factor iff the last s weight
// columns are linearly independent.
bool is_transitive_on_torus(const TorusAction& a);

// Data of the slice through the point (0,...,0,1,...,1): the block normal
// form, the r residual weights of the isotropy identity component acting on
// the k^r factor, and the finite component group of the isotropy.
struct SliceData {
    BlockNormalForm normal_form;
    std::vector<IntVec> rho;  // r vectors in Z^(m-s)
    IntVec component_group;   // invariant factors > 1 of the torus block
    std::size_t identity_rank;  // m - s
};
SliceData slice_data(const TorusAction& a);  // throws NotTransitive

// True iff no nonzero vector of the k^r factor is fixed by the identity
// component of the isotropy group, i.e. every residual weight rho_j != 0.
bool fixed_space_trivial(const TorusAction& a);  // throws NotTransitive

}  // namespace torweyl
