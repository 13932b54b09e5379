#pragma once

// Seeded random corpora shared by the module tests and the acceptance run.
// Everything is driven by std::mt19937 with fixed seeds so failures
// reproduce bit-for-bit.

#include <random>
#include <vector>

#include "torweyl/action.hpp"
#include "torweyl/exactlin.hpp"
#include "torweyl/matrix.hpp"

namespace corpus {

inline torweyl::IntMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                                        int lo, int hi) {
    std::uniform_int_distribution<int> entry(lo, hi);
    torweyl::IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
    return m;
}

// Random actions with m <= 3, n <= 5, entries in [-3,3], whose last s weight
// columns are linearly independent (rejection sampling; s <= min(m, n)).
inline std::vector<torweyl::TorusAction> transitive_actions(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<torweyl::TorusAction> out;
    out.reserve(count);
    while (out.size() < count) {
        std::uniform_int_distribution<std::size_t> mdist(1, 3), ndist(1, 5);
        std::size_t m = mdist(rng), n = ndist(rng);
        std::uniform_int_distribution<std::size_t> sdist(0, std::min(m, n));
        std::size_t s = sdist(rng), r = n - s;
        torweyl::IntMatrix l = random_matrix(rng, m, n, -3, 3);
        torweyl::TorusAction a(l, r, s);
        if (torweyl::is_transitive_on_torus(a)) out.push_back(a);
    }
    return out;
}

// Random actions with s >= 1 whose last s columns carry a guaranteed integer
// relation: the final column is overwritten with an integer combination of
// the other torus columns (zero when s = 1).
inline std::vector<torweyl::TorusAction> dependent_actions(std::size_t count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<torweyl::TorusAction> out;
    out.reserve(count);
    std::uniform_int_distribution<int> coeff(-2, 2);
    while (out.size() < count) {
        std::uniform_int_distribution<std::size_t> mdist(1, 3), ndist(1, 5);
        std::size_t m = mdist(rng), n = ndist(rng);
        std::uniform_int_distribution<std::size_t> sdist(1, std::min(m, n));
        std::size_t s = sdist(rng);
        if (s > n) continue;
        std::size_t r = n - s;
        torweyl::IntMatrix l = random_matrix(rng, m, n, -3, 3);
        std::vector<int> cs(s - 1);
        for (int& c : cs) c = coeff(rng);
        for (std::size_t i = 0; i < m; ++i) {
            torweyl::Int acc = 0;
            for (std::size_t j = 0; j + 1 < s; ++j) acc += torweyl::Int(cs[j]) * l.at(i, r + j);
            l.at(i, n - 1) = acc;
        }
        torweyl::TorusAction a(l, r, s);
        if (!torweyl::is_transitive_on_torus(a)) out.push_back(a);
    }
    return out;
}

// All T_1' lattice points in the box |beta_i| <= b: L1*beta = 0 and every
// (L2*beta)_i divisible by d_i, checked directly against the normal form.
inline std::vector<torweyl::IntVec> t1prime_points(const torweyl::TorusAction& a, long long b) {
    torweyl::SliceData sd = torweyl::slice_data(a);
    std::vector<torweyl::IntVec> out;
    if (a.r() == 0) return out;
    std::vector<long long> x(a.r(), -b);
    while (true) {
        torweyl::IntVec xv = torweyl::to_intvec(x);
        torweyl::IntVec top = sd.normal_form.l1.mul(xv);
        bool ok = true;
        for (const torweyl::Int& v : top)
            if (v != 0) ok = false;
        if (ok) {
            torweyl::IntVec bot = sd.normal_form.l2.mul(xv);
            for (std::size_t i = 0; i < bot.size(); ++i)
                if (bot[i] % sd.normal_form.d[i] != 0) ok = false;
        }
        if (ok) out.push_back(xv);
        std::size_t i = a.r();
        while (i > 0) {
            if (x[i - 1] < b) {
                ++x[i - 1];
                for (std::size_t j = i; j < a.r(); ++j) x[j] = -b;
                break;
            }
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

}  // namespace corpus
