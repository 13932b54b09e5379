#pragma once

// Independent reference implementations used only by the test suite to
// cross-check the library.  Everything here is deliberately naive --
// cofactor expansions, minor gcds, grid searches, odometer enumeration --
// so that agreement with the optimized code is meaningful.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "torweyl/boxscan.hpp"
#include "torweyl/exactlin.hpp"
#include "torweyl/matrix.hpp"

namespace oracle {

using torweyl::Int;
using torweyl::IntMatrix;
using torweyl::IntVec;
using torweyl::Rat;
using torweyl::RatVec;

// ---------------------------------------------------------------------------
// Determinant by Laplace (cofactor) expansion along the first row.
// ---------------------------------------------------------------------------

inline Int det_cofactor(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::logic_error("det_cofactor: square matrix required");
    const std::size_t n = m.rows();
    if (n == 0) return Int(1);
    if (n == 1) return m.at(0, 0);
    Int acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = m.at(i, c);
            }
        }
        Int term = m.at(0, j) * det_cofactor(minor);
        if (j % 2)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Invariant factors via the minor-gcd characterization: with g_k the gcd of
// all k x k minors (g_0 = 1), the k-th invariant factor is g_k / g_{k-1}.
// ---------------------------------------------------------------------------

namespace detail {

// Enumerate all size-k index subsets of {0..total-1}.
inline std::vector<std::vector<std::size_t>> subsets(std::size_t total, std::size_t k) {
    std::vector<std::vector<std::size_t>> out;
    if (k > total) return out;
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.push_back(idx);
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == total - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

}  // namespace detail

// gcd of all k x k minors; 0 when every such minor vanishes.
inline Int minor_gcd(const IntMatrix& m, std::size_t k) {
    Int g = 0;
    for (const auto& ri : detail::subsets(m.rows(), k))
        for (const auto& cj : detail::subsets(m.cols(), k)) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(ri[i], cj[j]);
            Int d = det_cofactor(sub);
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
            if (g == 1) return g;
        }
    return g;
}

inline std::vector<Int> invariant_factors_minor(const IntMatrix& m) {
    std::vector<Int> out;
    Int prev = 1;
    const std::size_t kmax = std::min(m.rows(), m.cols());
    for (std::size_t k = 1; k <= kmax; ++k) {
        Int g = minor_gcd(m, k);
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Exact rational Gaussian elimination: rank and one solution of A x = b.
// ---------------------------------------------------------------------------

inline std::size_t rational_rank(const IntMatrix& m) {
    std::vector<RatVec> rows(m.rows(), RatVec(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = Rat(m.at(i, j));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < m.cols() && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            Rat f = rows[i][col] / rows[rank][col];
            for (std::size_t j = col; j < m.cols(); ++j) rows[i][j] -= f * rows[rank][j];
        }
        ++rank;
    }
    return rank;
}

// One rational solution (free variables zero), or nullopt if inconsistent.
inline std::optional<RatVec> solve_rational(const IntMatrix& a, const RatVec& b) {
    const std::size_t rows = a.rows(), cols = a.cols();
    if (b.size() != rows) throw std::logic_error("solve_rational: rhs length mismatch");
    std::vector<RatVec> aug(rows, RatVec(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug[i][j] = Rat(a.at(i, j));
        aug[i][cols] = b[i];
    }
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t piv = rank;
        while (piv < rows && aug[piv][col] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(aug[rank], aug[piv]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || aug[i][col] == 0) continue;
            Rat f = aug[i][col] / aug[rank][col];
            for (std::size_t j = col; j <= cols; ++j) aug[i][j] -= f * aug[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows; ++i)
        if (aug[i][cols] != 0) return std::nullopt;
    RatVec x(cols, Rat(0));
    for (std::size_t i = 0; i < rank; ++i) x[pivot_col[i]] = aug[i][cols] / aug[i][pivot_col[i]];
    return x;
}

inline bool is_integral(const RatVec& v) {
    for (const Rat& x : v)
        if (x.get_den() != 1) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Small-denominator grid search for a row-space vector with prescribed signs:
// tries every y with entries p/q, |p| <= max_num, q <= max_den, and reports a
// hit when beta = y^T L satisfies the constraints.  Incomplete by design (a
// finite grid), so a hit refutes an infeasibility claim but a miss proves
// nothing.
// ---------------------------------------------------------------------------

inline std::optional<RatVec> grid_positive_vector(const IntMatrix& l,
                                                  const std::vector<std::size_t>& positive_idx,
                                                  const std::vector<std::size_t>& zero_idx,
                                                  long max_num = 4,
                                                  long max_den = 2) {
    std::vector<Rat> values;
    for (long q = 1; q <= max_den; ++q)
        for (long p = -max_num * q; p <= max_num * q; ++p) {
            Rat v(p, q);
            v.canonicalize();
            if (std::find(values.begin(), values.end(), v) == values.end()) values.push_back(v);
        }
    const std::size_t m = l.rows();
    std::vector<std::size_t> pick(m, 0);
    while (true) {
        RatVec y(m);
        for (std::size_t i = 0; i < m; ++i) y[i] = values[pick[i]];
        bool good = true;
        for (std::size_t j : positive_idx) {
            Rat beta_j = torweyl::dot(y, l.col(j));
            if (beta_j <= 0) {
                good = false;
                break;
            }
        }
        if (good)
            for (std::size_t j : zero_idx)
                if (torweyl::dot(y, l.col(j)) != 0) {
                    good = false;
                    break;
                }
        if (good) return y;
        std::size_t i = 0;
        while (i < m && ++pick[i] == values.size()) pick[i++] = 0;
        if (i == m) return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// Brute-force box enumeration: walk every lattice point of the box with an
// odometer and test the equations and congruences directly.
// ---------------------------------------------------------------------------

inline bool point_satisfies(const torweyl::CongruenceSystem& sys, const std::vector<long long>& x) {
    IntVec xi = torweyl::to_intvec(x);
    for (std::size_t i = 0; i < sys.a.rows(); ++i)
        if (torweyl::dot(sys.a.row(i), xi) != sys.rhs[i]) return false;
    for (std::size_t i = 0; i < sys.m.rows(); ++i) {
        Int v = torweyl::dot(sys.m.row(i), xi) - sys.c[i];
        if (v % sys.d[i] != 0) return false;
    }
    return true;
}

inline std::vector<std::vector<long long>> scan_brute(const torweyl::CongruenceSystem& sys,
                                                      const torweyl::Box& box) {
    std::vector<std::vector<long long>> out;
    const std::size_t n = box.lo.size();
    for (std::size_t i = 0; i < n; ++i)
        if (box.hi[i] < box.lo[i]) return out;
    std::vector<long long> x(box.lo);
    while (true) {
        if (point_satisfies(sys, x)) out.push_back(x);
        std::size_t i = n;
        while (i > 0) {
            if (x[i - 1] < box.hi[i - 1]) {
                ++x[i - 1];
                for (std::size_t j = i; j < n; ++j) x[j] = box.lo[j];
                break;
            }
            --i;
        }
        if (i == 0) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------
// Independent weight-space dimension: enumerate the first r coordinates over
// [0, bound] and solve for the last s coordinates column by column over the
// rationals, accepting only exact integer solutions.  Uses no normal form,
// no congruences, no slice data.
// ---------------------------------------------------------------------------

inline unsigned long long weight_dim_brute(const IntMatrix& l, std::size_t r, std::size_t s,
                                           const IntVec& chi,
                                           const std::vector<long long>& alpha_bound) {
    const std::size_t m = l.rows();
    IntMatrix torus(m, s);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < s; ++j) torus.at(i, j) = l.at(i, r + j);
    unsigned long long count = 0;
    std::vector<long long> alpha(r, 0);
    while (true) {
        RatVec rhs(m);
        for (std::size_t i = 0; i < m; ++i) {
            Rat acc(chi[i]);
            for (std::size_t j = 0; j < r; ++j) acc -= Rat(l.at(i, j)) * torweyl::to_rat(alpha[j]);
            rhs[i] = acc;
        }
        if (s == 0) {
            bool all_zero = true;
            for (const Rat& v : rhs)
                if (v != 0) all_zero = false;
            if (all_zero) ++count;
        } else {
            auto sol = solve_rational(torus, rhs);
            if (sol && is_integral(*sol)) {
                // The last s columns are independent in every test fixture,
                // so an integral solution is the unique lattice preimage.
                IntVec full(r + s);
                for (std::size_t j = 0; j < r; ++j) full[j] = torweyl::to_int(alpha[j]);
                for (std::size_t j = 0; j < s; ++j) full[r + j] = (*sol)[j].get_num();
                bool exact = true;
                for (std::size_t i = 0; i < m; ++i)
                    if (torweyl::dot(l.row(i), full) != chi[i]) exact = false;
                if (exact) ++count;
            }
        }
        std::size_t i = r;
        while (i > 0) {
            if (alpha[i - 1] < alpha_bound[i - 1]) {
                ++alpha[i - 1];
                for (std::size_t j = i; j < r; ++j) alpha[j] = 0;
                break;
            }
            --i;
        }
        if (i == 0) break;
    }
    return count;
}

}  // namespace oracle
