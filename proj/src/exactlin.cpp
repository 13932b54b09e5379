#include "torweyl/exactlin.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "torweyl/errors.hpp"

namespace torweyl {

namespace {

void xgcd(const Int& a, const Int& b, Int& g, Int& p, Int& q) {
    mpz_gcdext(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Unimodular two-row transform sending (row rp, row ri) to
// (p*rp + q*ri, -(b/g)*rp + (a/g)*ri) in both `a` and the accumulator `u`,
// where (g,p,q) = xgcd of the column entries.  Afterwards a.at(rp,col) = g > 0
// and a.at(ri,col) = 0.
void eliminate_pair(IntMatrix& a, IntMatrix& u, std::size_t rp, std::size_t ri, std::size_t col) {
    const Int av = a.at(rp, col);
    const Int bv = a.at(ri, col);
    if (bv == 0) return;
    if (av == 0) {
        a.swap_rows(rp, ri);
        u.swap_rows(rp, ri);
        if (a.at(rp, col) < 0) {
            a.negate_row(rp);
            u.negate_row(rp);
        }
        return;
    }
    if (bv % av == 0) {
        Int f = -(bv / av);
        a.add_row_multiple(ri, rp, f);
        u.add_row_multiple(ri, rp, f);
        return;
    }
    Int g, p, q;
    xgcd(av, bv, g, p, q);
    Int mbg = -(bv / g), ag = av / g;
    for (IntMatrix* m : {&a, &u}) {
        for (std::size_t j = 0; j < m->cols(); ++j) {
            Int top = p * m->at(rp, j) + q * m->at(ri, j);
            Int bot = mbg * m->at(rp, j) + ag * m->at(ri, j);
            m->at(rp, j) = top;
            m->at(ri, j) = bot;
        }
    }
}

// Column version (accumulates into v on the right).
void eliminate_pair_cols(IntMatrix& a, IntMatrix& v, std::size_t cp, std::size_t ci,
                         std::size_t row) {
    const Int av = a.at(row, cp);
    const Int bv = a.at(row, ci);
    if (bv == 0) return;
    if (av == 0) {
        a.swap_cols(cp, ci);
        v.swap_cols(cp, ci);
        if (a.at(row, cp) < 0) {
            a.negate_col(cp);
            v.negate_col(cp);
        }
        return;
    }
    if (bv % av == 0) {
        Int f = -(bv / av);
        a.add_col_multiple(ci, cp, f);
        v.add_col_multiple(ci, cp, f);
        return;
    }
    Int g, p, q;
    xgcd(av, bv, g, p, q);
    Int mbg = -(bv / g), ag = av / g;
    for (IntMatrix* m : {&a, &v}) {
        for (std::size_t i = 0; i < m->rows(); ++i) {
            Int left = p * m->at(i, cp) + q * m->at(i, ci);
            Int right = mbg * m->at(i, cp) + ag * m->at(i, ci);
            m->at(i, cp) = left;
            m->at(i, ci) = right;
        }
    }
}

std::string vec_to_string(const IntVec& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i].get_str();
    os << ')';
    return os.str();
}

}  // namespace

HnfResult hermite_normal_form(const IntMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    IntMatrix h = m;
    IntMatrix u = IntMatrix::identity(nr);
    std::size_t row = 0;
    for (std::size_t col = 0; col < nc && row < nr; ++col) {
        std::size_t piv = row;
        while (piv < nr && h.at(piv, col) == 0) ++piv;
        if (piv == nr) continue;
        h.swap_rows(row, piv);
        u.swap_rows(row, piv);
        for (std::size_t i = row + 1; i < nr; ++i) eliminate_pair(h, u, row, i, col);
        if (h.at(row, col) < 0) {
            h.negate_row(row);
            u.negate_row(row);
        }
        for (std::size_t i = 0; i < row; ++i) {
            Int f;
            mpz_fdiv_q(f.get_mpz_t(), h.at(i, col).get_mpz_t(), h.at(row, col).get_mpz_t());
            if (f != 0) {
                h.add_row_multiple(i, row, -f);
                u.add_row_multiple(i, row, -f);
            }
        }
        ++row;
    }
    return {std::move(h), std::move(u)};
}

SnfResult smith_normal_form(const IntMatrix& m) {
    const std::size_t nr = m.rows(), nc = m.cols();
    IntMatrix s = m;
    IntMatrix u = IntMatrix::identity(nr);
    IntMatrix v = IntMatrix::identity(nc);
    const std::size_t k = std::min(nr, nc);

    for (std::size_t t = 0; t < k; ++t) {
        // Deterministic pivot: smallest |entry| in the trailing block, ties by
        // row-major position.
        std::size_t pi = nr, pj = nc;
        Int best;
        for (std::size_t i = t; i < nr; ++i)
            for (std::size_t j = t; j < nc; ++j) {
                const Int& e = s.at(i, j);
                if (e == 0) continue;
                Int a = abs(e);
                if (pi == nr || a < best) {
                    best = a;
                    pi = i;
                    pj = j;
                }
            }
        if (pi == nr) break;  // trailing block is zero
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        while (true) {
            for (std::size_t i = t + 1; i < nr; ++i) eliminate_pair(s, u, t, i, t);
            bool row_clear = true;
            for (std::size_t j = t + 1; j < nc; ++j)
                if (s.at(t, j) != 0) row_clear = false;
            if (row_clear) break;
            for (std::size_t j = t + 1; j < nc; ++j) eliminate_pair_cols(s, v, t, j, t);
            bool col_clear = true;
            for (std::size_t i = t + 1; i < nr; ++i)
                if (s.at(i, t) != 0) col_clear = false;
            if (col_clear) break;
        }
    }

    for (std::size_t t = 0; t < k; ++t)
        if (s.at(t, t) < 0) {
            s.negate_row(t);
            u.negate_row(t);
        }

    // Enforce the divisibility chain with 2x2 gcd/lcm fixes until stable.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t t = 0; t + 1 < k; ++t) {
            const Int a = s.at(t, t);
            const Int b = s.at(t + 1, t + 1);
            if (b == 0) continue;
            if (a == 0) {
                s.swap_rows(t, t + 1);
                u.swap_rows(t, t + 1);
                s.swap_cols(t, t + 1);
                v.swap_cols(t, t + 1);
                changed = true;
                continue;
            }
            if (b % a == 0) continue;
            // diag(a,b) -> diag(gcd, lcm): pull b into column t, clear with a
            // gcd row op, then reduce the fill-in.
            s.add_col_multiple(t, t + 1, 1);
            v.add_col_multiple(t, t + 1, 1);
            eliminate_pair(s, u, t, t + 1, t);
            Int f = s.at(t, t + 1) / s.at(t, t);
            if (f != 0) {
                s.add_col_multiple(t + 1, t, -f);
                v.add_col_multiple(t + 1, t, -f);
            }
            changed = true;
        }
    }

    return {std::move(s), std::move(u), std::move(v)};
}

std::size_t rank(const IntMatrix& m) {
    HnfResult hr = hermite_normal_form(m);
    std::size_t r = 0;
    for (std::size_t i = 0; i < hr.h.rows(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < hr.h.cols(); ++j)
            if (hr.h.at(i, j) != 0) zero = false;
        if (!zero) ++r;
    }
    return r;
}

IntVec invariant_factors(const IntMatrix& m) {
    SnfResult sr = smith_normal_form(m);
    IntVec out;
    const std::size_t k = std::min(m.rows(), m.cols());
    for (std::size_t t = 0; t < k; ++t)
        if (sr.s.at(t, t) != 0) out.push_back(sr.s.at(t, t));
    return out;
}

std::vector<IntVec> kernel_basis(const IntMatrix& m) {
    const std::size_t n = m.cols();
    HnfResult hr = hermite_normal_form(m.transpose());
    std::vector<IntVec> basis;
    for (std::size_t i = 0; i < n; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < hr.h.cols(); ++j)
            if (hr.h.at(i, j) != 0) zero = false;
        if (!zero) continue;
        IntVec vec = hr.u.row(i);
        for (const Int& x : vec) {
            if (x == 0) continue;
            if (x < 0)
                for (Int& y : vec) y = -y;
            break;
        }
        basis.push_back(std::move(vec));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

IntMatrix inverse_unimodular(const IntMatrix& u) {
    if (u.rows() != u.cols()) throw ShapeMismatch("inverse of non-square matrix");
    HnfResult hr = hermite_normal_form(u);
    if (!hr.h.is_identity())
        throw InternalConsistencyError("inverse_unimodular: matrix is not unimodular");
    return hr.u;
}

std::optional<IntVec> lattice_solve(const IntMatrix& m, const IntVec& v) {
    if (v.size() != m.rows()) throw ShapeMismatch("lattice_solve length mismatch");
    // Row HNF of m^T: rows of h form an echelon basis of the column lattice of
    // m.  Express v over that basis by forward substitution with exact
    // divisions, then pull the coefficients back through u.
    HnfResult hr = hermite_normal_form(m.transpose());
    const std::size_t q = m.cols();
    IntVec w(q, Int(0));
    IntVec resid = v;
    for (std::size_t i = 0; i < q; ++i) {
        std::size_t pivot = hr.h.cols();
        for (std::size_t j = 0; j < hr.h.cols(); ++j)
            if (hr.h.at(i, j) != 0) {
                pivot = j;
                break;
            }
        if (pivot == hr.h.cols()) continue;
        const Int& pv = hr.h.at(i, pivot);
        if (resid[pivot] % pv != 0) return std::nullopt;
        Int coef = resid[pivot] / pv;
        if (coef != 0)
            for (std::size_t j = 0; j < hr.h.cols(); ++j) resid[j] -= coef * hr.h.at(i, j);
        w[i] = coef;
    }
    for (const Int& x : resid)
        if (x != 0) return std::nullopt;
    IntVec sol(q, Int(0));
    for (std::size_t i = 0; i < q; ++i)
        if (w[i] != 0)
            for (std::size_t j = 0; j < q; ++j) sol[j] += hr.u.at(i, j) * w[i];
    return sol;
}

BlockNormalForm block_normal_form(const IntMatrix& l, std::size_t r, std::size_t s) {
    const std::size_t m = l.rows(), n = l.cols();
    if (n != r + s) throw ShapeMismatch("block_normal_form: cols != r + s");
    if (m == 0) throw ShapeMismatch("block_normal_form: weight matrix has no rows");

    if (s == 0) {
        BlockNormalForm out;
        out.transforms = {IntMatrix::identity(m), IntMatrix::identity(n)};
        out.normalized = l;
        out.l1 = l;
        out.l2 = IntMatrix(0, r);
        return out;
    }

    IntMatrix e = l.block(0, m, r, n);
    HnfResult he = hermite_normal_form(e);
    std::size_t rk = 0;
    for (std::size_t i = 0; i < m; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < s; ++j)
            if (he.h.at(i, j) != 0) zero = false;
        if (!zero) ++rk;
    }
    if (rk < s) {
        auto kb = kernel_basis(e);
        throw DependentTorusWeights("last " + std::to_string(s) +
                                    " weight columns are dependent; relation " +
                                    vec_to_string(kb.front()));
    }

    // Permute the zero rows of the echelon form first, pivot rows last.
    IntMatrix gamma1(m, m);
    for (std::size_t i = 0; i < m - s; ++i)
        for (std::size_t j = 0; j < m; ++j) gamma1.at(i, j) = he.u.at(s + i, j);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < m; ++j) gamma1.at(m - s + i, j) = he.u.at(i, j);

    IntMatrix b = gamma1.mul(l);
    if (!b.block(0, m - s, r, n).is_zero())
        throw InternalConsistencyError("block_normal_form: upper-right block not cleared");
    IntMatrix l3 = b.block(m - s, m, r, n);
    SnfResult s3 = smith_normal_form(l3);

    IntMatrix gamma(m, m);
    for (std::size_t i = 0; i < m - s; ++i)
        for (std::size_t j = 0; j < m; ++j) gamma.at(i, j) = gamma1.at(i, j);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Int acc = 0;
            for (std::size_t t = 0; t < s; ++t) acc += s3.u.at(i, t) * gamma1.at(m - s + t, j);
            gamma.at(m - s + i, j) = acc;
        }
    IntMatrix delta = IntMatrix::identity(n);
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j) delta.at(r + i, r + j) = s3.v.at(i, j);

    BlockNormalForm out;
    out.normalized = gamma.mul(l).mul(delta);
    out.l1 = out.normalized.block(0, m - s, 0, r);
    out.l2 = out.normalized.block(m - s, m, 0, r);
    out.d = IntVec(s);
    for (std::size_t i = 0; i < s; ++i) {
        out.d[i] = out.normalized.at(m - s + i, r + i);
        if (out.d[i] <= 0)
            throw InternalConsistencyError("block_normal_form: nonpositive diagonal entry");
    }
    if (!out.normalized.block(0, m - s, r, n).is_zero())
        throw InternalConsistencyError("block_normal_form: top-right block nonzero");
    for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
            if (i != j && out.normalized.at(m - s + i, r + j) != 0)
                throw InternalConsistencyError("block_normal_form: lower-right block not diagonal");
    Int dg = determinant(gamma), dd = determinant(delta);
    if ((dg != 1 && dg != -1) || (dd != 1 && dd != -1))
        throw InternalConsistencyError("block_normal_form: transform not unimodular");
    out.transforms = {std::move(gamma), std::move(delta)};
    return out;
}

// ---------------------------------------------------------------------------
// Fourier-Motzkin feasibility with Farkas certificate tracking.
// ---------------------------------------------------------------------------

namespace {

struct FmRow {
    RatVec a;     // coefficients over the y variables
    Rat c;        // a^T y >= c
    RatVec prov;  // nonnegative multipliers over the original constraint rows
};

FmRow combine(const FmRow& lower, const FmRow& upper, std::size_t k) {
    // lower.a[k] > 0, upper.a[k] < 0; the sum below cancels variable k.
    Rat wl = 1 / lower.a[k];
    Rat wu = -1 / upper.a[k];
    FmRow out;
    const std::size_t m = lower.a.size();
    out.a.resize(m);
    for (std::size_t j = 0; j < m; ++j) out.a[j] = wl * lower.a[j] + wu * upper.a[j];
    out.a[k] = 0;  // exact by construction; avoid leftover epsilon-free noise
    out.c = wl * lower.c + wu * upper.c;
    out.prov.resize(lower.prov.size());
    for (std::size_t t = 0; t < out.prov.size(); ++t)
        out.prov[t] = wl * lower.prov[t] + wu * upper.prov[t];
    return out;
}

void scale_row(FmRow& r) {
    for (const Rat& x : r.a) {
        if (x == 0) continue;
        Rat f = 1 / abs(x);
        for (Rat& y : r.a) y *= f;
        r.c *= f;
        for (Rat& y : r.prov) y *= f;
        return;
    }
}

}  // namespace

std::vector<SignConstraint> sign_constraints(const IntMatrix& l,
                                             const std::vector<std::size_t>& positive_idx,
                                             const std::vector<std::size_t>& zero_idx) {
    const std::size_t m = l.rows(), n = l.cols();
    std::vector<bool> seen(n, false);
    auto check = [&](const std::vector<std::size_t>& idx) {
        for (std::size_t i : idx) {
            if (i >= n) throw IndexOutOfRange("sign constraint index out of range");
            if (seen[i]) throw ShapeMismatch("sign constraint sets overlap");
            seen[i] = true;
        }
    };
    check(positive_idx);
    check(zero_idx);

    auto col_rat = [&](std::size_t j, bool negate) {
        RatVec a(m);
        for (std::size_t i = 0; i < m; ++i) a[i] = negate ? Rat(-l.at(i, j)) : Rat(l.at(i, j));
        return a;
    };

    std::vector<std::size_t> pos = positive_idx, zer = zero_idx;
    std::sort(pos.begin(), pos.end());
    std::sort(zer.begin(), zer.end());
    std::vector<SignConstraint> rows;
    for (std::size_t j : pos) rows.push_back({col_rat(j, false), Rat(1)});
    for (std::size_t j : zer) {
        rows.push_back({col_rat(j, false), Rat(0)});
        rows.push_back({col_rat(j, true), Rat(0)});
    }
    return rows;
}

FeasibilityResult positive_vector_in_rowspace_full(const IntMatrix& l,
                                                   const std::vector<std::size_t>& positive_idx,
                                                   const std::vector<std::size_t>& zero_idx) {
    const std::size_t m = l.rows();
    auto base = sign_constraints(l, positive_idx, zero_idx);
    const std::size_t nbase = base.size();

    std::vector<FmRow> rows;
    rows.reserve(nbase);
    for (std::size_t t = 0; t < nbase; ++t) {
        FmRow r{base[t].a, base[t].c, RatVec(nbase, Rat(0))};
        r.prov[t] = 1;
        rows.push_back(std::move(r));
    }

    // stages[k] holds every row that still mentions variable k when k gets
    // eliminated; back-substitution reads the bounds from them.
    std::vector<std::vector<FmRow>> stages(m);

    auto constant_violation = [](const FmRow& r) -> bool {
        for (const Rat& x : r.a)
            if (x != 0) return false;
        return r.c > 0;
    };

    for (std::size_t k = 0; k < m; ++k) {
        std::vector<FmRow> zero_rows, lower, upper;
        for (auto& r : rows) {
            if (r.a[k] == 0)
                zero_rows.push_back(std::move(r));
            else if (r.a[k] > 0)
                lower.push_back(std::move(r));
            else
                upper.push_back(std::move(r));
        }
        std::vector<FmRow> next;
        for (const auto& lo : lower)
            for (const auto& up : upper) next.push_back(combine(lo, up, k));
        for (auto& r : zero_rows) next.push_back(std::move(r));

        // Deduplicate on the normalized coefficient vector, keeping the
        // tightest (largest) right-hand side; drop satisfied constants.
        std::map<RatVec, FmRow> dedup;
        for (auto& r : next) {
            scale_row(r);
            bool all_zero = true;
            for (const Rat& x : r.a)
                if (x != 0) all_zero = false;
            if (all_zero) {
                if (constant_violation(r)) return {std::nullopt, std::move(r.prov)};
                continue;
            }
            auto it = dedup.find(r.a);
            if (it == dedup.end())
                dedup.emplace(r.a, std::move(r));
            else if (r.c > it->second.c)
                it->second = std::move(r);
        }
        rows.clear();
        for (auto& [key, r] : dedup) rows.push_back(std::move(r));
        stages[k].insert(stages[k].end(), lower.begin(), lower.end());
        stages[k].insert(stages[k].end(), upper.begin(), upper.end());
    }
    for (auto& r : rows)
        if (constant_violation(r)) return {std::nullopt, std::move(r.prov)};

    // Feasible: pick y deterministically, preferring 0 within each interval.
    RatVec y(m, Rat(0));
    for (std::size_t k = m; k-- > 0;) {
        std::optional<Rat> lo, hi;
        for (const auto& r : stages[k]) {
            Rat rhs = r.c;
            for (std::size_t j = k + 1; j < m; ++j) rhs -= r.a[j] * y[j];
            Rat bound = rhs / r.a[k];
            if (r.a[k] > 0) {
                if (!lo || bound > *lo) lo = bound;
            } else {
                if (!hi || bound < *hi) hi = bound;
            }
        }
        if (lo && hi && *lo > *hi)
            throw InternalConsistencyError("feasibility back-substitution: empty interval");
        if (lo && *lo > 0)
            y[k] = *lo;
        else if (hi && *hi < 0)
            y[k] = *hi;
        else
            y[k] = 0;
    }

    const std::size_t n = l.cols();
    RatVec beta_rat(n, Rat(0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < m; ++i) beta_rat[j] += y[i] * Rat(l.at(i, j));
    for (std::size_t j : positive_idx)
        if (beta_rat[j] < 1)
            throw InternalConsistencyError("feasibility: witness misses positivity");
    for (std::size_t j : zero_idx)
        if (beta_rat[j] != 0)
            throw InternalConsistencyError("feasibility: witness misses zero constraint");

    Int scale = 1;
    for (const Rat& x : beta_rat) scale = lcm(scale, Int(x.get_den()));
    PositivityWitness w;
    w.beta.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        Rat scaled = beta_rat[j] * Rat(scale);
        w.beta[j] = scaled.get_num();
    }
    w.y = y;
    for (Rat& x : w.y) x *= Rat(scale);
    Int g = 0;
    for (const Int& x : w.beta) g = gcd(g, x);
    if (g > 1) {
        for (Int& x : w.beta) x /= g;
        for (Rat& x : w.y) x /= Rat(g);
    }
    return {std::move(w), {}};
}

std::optional<PositivityWitness> positive_vector_in_rowspace(
    const IntMatrix& l,
    const std::vector<std::size_t>& positive_idx,
    const std::vector<std::size_t>& zero_idx) {
    return positive_vector_in_rowspace_full(l, positive_idx, zero_idx).witness;
}

}  // namespace torweyl
