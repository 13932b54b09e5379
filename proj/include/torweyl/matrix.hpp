#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace torweyl {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// GMP's C++ wrappers overload on long, not long long; route all long long
// conversions through these adapters (long carries 64 bits on this target).
static_assert(sizeof(long) == sizeof(long long), "LP64 platform expected");
inline Int to_int(long long v) {
    return Int(static_cast<long>(v));
}
inline Rat to_rat(long long v) {
    return Rat(static_cast<long>(v));
}
inline IntVec to_intvec(const std::vector<long long>& v) {
    IntVec out;
    out.reserve(v.size());
    for (long long x : v) out.push_back(to_int(x));
    return out;
}

// Dense row-major arbitrary-precision integer matrix.  Small by design: the
// exact linear algebra here works on weight matrices with at most a few dozen
// rows/columns, so no sparsity or pivoting heuristics are needed.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const IntMatrix& other) const = default;

    IntMatrix transpose() const;
    IntMatrix mul(const IntMatrix& other) const;
    IntVec mul(const IntVec& v) const;

    IntVec row(std::size_t i) const;
    IntVec col(std::size_t j) const;
    // Contiguous block copy, rows [i0,i1) x cols [j0,j1).
    IntMatrix block(std::size_t i0, std::size_t i1, std::size_t j0, std::size_t j1) const;

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);
    // row i += f * row j (and the column analogue).
    void add_row_multiple(std::size_t i, std::size_t j, const Int& f);
    void add_col_multiple(std::size_t i, std::size_t j, const Int& f);

    bool is_zero() const;
    bool is_identity() const;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    IntVec data_;
};

// Exact determinant by Bareiss fraction-free elimination.  The test suite
// cross-checks this against an independent cofactor expansion.
Int determinant(const IntMatrix& m);

Int dot(const IntVec& a, const IntVec& b);
Rat dot(const RatVec& a, const IntVec& b);

}  // namespace torweyl
