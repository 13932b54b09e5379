#include "torweyl/chars.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include "torweyl/decide.hpp"
#include "torweyl/errors.hpp"

namespace torweyl {

namespace {

long long to_ll(const Int& v, const char* what) {
    if (!v.fits_slong_p())
        throw BoxTooLarge(std::string(what) + " exceeds the machine-integer range");
    return v.get_si();
}

// Witness + slice bundle shared by the counting routines.
struct FiniteDimContext {
    SliceData sd;
    PositivityWitness witness;
};

FiniteDimContext finite_context(const TorusAction& a) {
    auto [triv, wit] = invariants_trivial(a);
    if (!triv)
        throw NotFiniteDimensional(
            "weight spaces are not all finite dimensional (invariants are nontrivial)");
    return {slice_data(a), std::move(*wit)};
}

// The box for alpha' given the grading value t = <y, chi>: each coordinate is
// cut off at floor(t / beta_j) since beta_j >= 1 and the grading of alpha is
// sum beta_j * alpha'_j = t.
Box alpha_prime_box(const TorusAction& a, const PositivityWitness& w, const Rat& t) {
    Box box;
    box.lo.assign(a.r(), 0);
    box.hi.resize(a.r());
    for (std::size_t j = 0; j < a.r(); ++j) {
        Rat q = t / Rat(w.beta[j]);
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        box.hi[j] = to_ll(fl, "weight-space box bound");
    }
    return box;
}

// Equations L1*x = chi_free and congruences (L2*x - chi_tors)_i = 0 mod d_i.
CongruenceSystem class_system(const SliceData& sd, const CharClass& cls) {
    CongruenceSystem sys;
    sys.a = sd.normal_form.l1;
    sys.rhs = cls.free;
    sys.m = sd.normal_form.l2;
    sys.c = cls.torsion;
    sys.d = sd.normal_form.d;
    return sys;
}

}  // namespace

CharClass split_character(const SliceData& sd, const IntVec& chi) {
    const IntMatrix& gamma = sd.normal_form.transforms.left;
    if (chi.size() != gamma.rows()) throw ShapeMismatch("character length is not m");
    IntVec t = gamma.mul(chi);
    CharClass cls;
    const std::size_t free_rank = sd.identity_rank;
    cls.free.assign(t.begin(), t.begin() + free_rank);
    cls.torsion.resize(sd.normal_form.d.size());
    for (std::size_t i = 0; i < cls.torsion.size(); ++i)
        mpz_fdiv_r(cls.torsion[i].get_mpz_t(), t[free_rank + i].get_mpz_t(),
                   sd.normal_form.d[i].get_mpz_t());
    return cls;
}

IntVec lift_character(const SliceData& sd, const CharClass& cls) {
    const IntMatrix& gamma = sd.normal_form.transforms.left;
    if (cls.free.size() != sd.identity_rank || cls.torsion.size() != sd.normal_form.d.size())
        throw ShapeMismatch("character class shape mismatch");
    IntVec t = cls.free;
    t.insert(t.end(), cls.torsion.begin(), cls.torsion.end());
    return inverse_unimodular(gamma).mul(t);
}

std::vector<std::vector<long long>> enumerate_invariants(const TorusAction& a,
                                                         long long box_bound) {
    if (box_bound < 0) return {};
    Box box;
    box.lo.assign(a.n(), 0);
    box.hi.assign(a.n(), box_bound);
    for (std::size_t j = a.r(); j < a.n(); ++j) box.lo[j] = -box_bound;
    return scan_solutions(equations_only(a.l(), IntVec(a.m(), Int(0))), box);
}

unsigned long long weight_space_dim(const TorusAction& a, const IntVec& chi) {
    FiniteDimContext ctx = finite_context(a);
    Rat t = dot(ctx.witness.y, chi);
    if (t < 0) return 0;
    return scan_count(class_system(ctx.sd, split_character(ctx.sd, chi)),
                      alpha_prime_box(a, ctx.witness, t));
}

std::vector<std::vector<long long>> weight_space_basis(const TorusAction& a, const IntVec& chi) {
    FiniteDimContext ctx = finite_context(a);
    Rat t = dot(ctx.witness.y, chi);
    if (t < 0) return {};
    CharClass cls = split_character(ctx.sd, chi);
    auto primes = scan_solutions(class_system(ctx.sd, cls), alpha_prime_box(a, ctx.witness, t));

    // Recover the last s coordinates: alpha''_tilde is forced by the D-block
    // equation, then mapped back through the column transform Delta_1.
    const std::size_t r = a.r(), s = a.s(), free_rank = ctx.sd.identity_rank;
    const IntMatrix& delta = ctx.sd.normal_form.transforms.right;
    IntVec chi_t = ctx.sd.normal_form.transforms.left.mul(chi);
    std::vector<std::vector<long long>> out;
    out.reserve(primes.size());
    for (const auto& ap : primes) {
        IntVec apz = to_intvec(ap);
        IntVec l2a = ctx.sd.normal_form.l2.mul(apz);
        IntVec tilde(s);
        for (std::size_t i = 0; i < s; ++i) {
            Int num = chi_t[free_rank + i] - l2a[i];
            if (num % ctx.sd.normal_form.d[i] != 0)
                throw InternalConsistencyError("weight_space_basis: non-divisible residue");
            tilde[i] = num / ctx.sd.normal_form.d[i];
        }
        std::vector<long long> lambda(ap);
        lambda.resize(r + s);
        for (std::size_t i = 0; i < s; ++i) {
            Int acc = 0;
            for (std::size_t k = 0; k < s; ++k) acc += delta.at(r + i, r + k) * tilde[k];
            lambda[r + i] = to_ll(acc, "weight-space basis exponent");
        }
        IntVec lz = to_intvec(lambda);
        if (a.l().mul(lz) != chi)
            throw InternalConsistencyError("weight_space_basis: monomial misses the character");
        out.push_back(std::move(lambda));
    }
    std::sort(out.begin(), out.end());
    return out;
}

DimensionSeries dimension_series(const TorusAction& a, const Rat& bound) {
    FiniteDimContext ctx = finite_context(a);
    DimensionSeries series;
    series.bound = bound;
    series.beta = ctx.witness.beta;
    series.y = ctx.witness.y;

    const std::size_t free_rank = ctx.sd.identity_rank;
    const std::size_t s = a.s();

    // Factor data: the class of eta_j and its grading beta_j > 0.
    struct Factor {
        IntVec free;
        IntVec torsion;
        Int grading;
    };
    std::vector<Factor> factors;
    for (std::size_t j = 0; j < a.r(); ++j) {
        Factor f;
        f.free = ctx.sd.normal_form.l1.col(j);
        f.torsion.resize(s);
        for (std::size_t i = 0; i < s; ++i) f.torsion[i] = ctx.sd.normal_form.l2.at(i, j);
        f.grading = ctx.witness.beta[j];
        if (f.grading <= 0)
            throw InternalConsistencyError("dimension_series: nonpositive factor grading");
        factors.push_back(std::move(f));
    }

    std::map<CharClass, std::pair<Int, unsigned long long>> acc;
    acc[CharClass{IntVec(free_rank, Int(0)), IntVec(s, Int(0))}] = {Int(0), 1ULL};
    for (const Factor& f : factors) {
        std::map<CharClass, std::pair<Int, unsigned long long>> next;
        for (const auto& [cls, gc] : acc) {
            const auto& [grading, coeff] = gc;
            CharClass cur = cls;
            Int g = grading;
            while (Rat(g) <= bound) {
                auto it = next.find(cur);
                if (it == next.end()) {
                    next.emplace(cur, std::make_pair(g, coeff));
                } else {
                    if (it->second.first != g)
                        throw InternalConsistencyError(
                            "dimension_series: grading not constant on a class");
                    it->second.second += coeff;
                }
                for (std::size_t i = 0; i < free_rank; ++i) cur.free[i] += f.free[i];
                for (std::size_t i = 0; i < s; ++i) {
                    cur.torsion[i] += f.torsion[i];
                    mpz_fdiv_r(cur.torsion[i].get_mpz_t(), cur.torsion[i].get_mpz_t(),
                               ctx.sd.normal_form.d[i].get_mpz_t());
                }
                g += f.grading;
            }
        }
        acc = std::move(next);
    }

    for (const auto& [cls, gc] : acc)
        if (Rat(gc.first) <= bound) series.terms.push_back({cls, gc.first, gc.second});
    std::sort(series.terms.begin(), series.terms.end(), [](const SeriesTerm& x, const SeriesTerm& y) {
        if (x.grading != y.grading) return x.grading < y.grading;
        return x.cls < y.cls;
    });
    return series;
}

IntVec epsilon_embed(const TorusAction& a, const IntVec& beta) {
    SliceData sd = slice_data(a);
    if (beta.size() != a.r()) throw ShapeMismatch("epsilon_embed: vector length is not r");
    IntVec top = sd.normal_form.l1.mul(beta);
    for (const Int& x : top)
        if (x != 0) throw NotInT1("vector is not annihilated by the upper block");
    IntVec gamma = sd.normal_form.l2.mul(beta);
    IntVec eps = beta;
    eps.resize(a.n());
    for (std::size_t i = 0; i < a.s(); ++i) {
        if (gamma[i] % sd.normal_form.d[i] != 0)
            throw NotInT1Prime("lower-block image is not divisible by the torsion diagonal");
        eps[a.r() + i] = -(gamma[i] / sd.normal_form.d[i]);
    }
    IntVec check = sd.normal_form.normalized.mul(eps);
    for (const Int& x : check)
        if (x != 0) throw InternalConsistencyError("epsilon_embed: image not in the kernel");
    return eps;
}

QuotientIsoReport quotient_iso_check_report(const TorusAction& a, long long box_bound) {
    SliceData sd = slice_data(a);
    QuotientIsoReport rep;
    if (box_bound < 0) {
        rep.ok = true;
        return rep;
    }
    const std::size_t r = a.r(), s = a.s();

    // Side A: slice semigroup elements in the box, pushed through epsilon.
    Box abox;
    abox.lo.assign(r, 0);
    abox.hi.assign(r, box_bound);
    CongruenceSystem asys;
    asys.a = sd.normal_form.l1;
    asys.rhs = IntVec(sd.identity_rank, Int(0));
    asys.m = sd.normal_form.l2;
    asys.c = IntVec(s, Int(0));
    asys.d = sd.normal_form.d;
    auto side_a = scan_solutions(asys, abox);

    std::vector<std::vector<long long>> images;
    images.reserve(side_a.size());
    for (const auto& b : side_a) {
        IntVec bz = to_intvec(b);
        IntVec eps = epsilon_embed(a, bz);
        std::vector<long long> ev(a.n());
        for (std::size_t i = 0; i < a.n(); ++i) ev[i] = to_ll(eps[i], "epsilon image entry");
        images.push_back(std::move(ev));
    }

    // Side B: the invariant semigroup of the normalized matrix with the first
    // r coordinates boxed; the last s coordinates are forced, with absolute
    // value at most (sum_j |l2(i,j)|) * box / d_i.
    Box bbox;
    bbox.lo.assign(a.n(), 0);
    bbox.hi.assign(a.n(), box_bound);
    for (std::size_t i = 0; i < s; ++i) {
        Int bound = 0;
        for (std::size_t j = 0; j < r; ++j) bound += abs(sd.normal_form.l2.at(i, j));
        bound = bound * to_int(box_bound) / sd.normal_form.d[i] + 1;
        long long k = to_ll(bound, "quotient box bound");
        bbox.lo[r + i] = -k;
        bbox.hi[r + i] = k;
    }
    auto side_b =
        scan_solutions(equations_only(sd.normal_form.normalized, IntVec(a.m(), Int(0))), bbox);

    std::vector<std::vector<long long>> sorted_images = images;
    std::sort(sorted_images.begin(), sorted_images.end());
    rep.ok = sorted_images == side_b;
    for (std::size_t i = 0; i < side_a.size(); ++i) rep.matches.emplace_back(side_a[i], images[i]);
    if (!rep.ok) {
        std::vector<std::vector<long long>> only_a, only_b;
        std::set_difference(sorted_images.begin(), sorted_images.end(), side_b.begin(),
                            side_b.end(), std::back_inserter(only_a));
        std::set_difference(side_b.begin(), side_b.end(), sorted_images.begin(),
                            sorted_images.end(), std::back_inserter(only_b));
        rep.unmatched_side_a = std::move(only_a);
        rep.unmatched_side_b = std::move(only_b);
    }
    return rep;
}

bool quotient_iso_check(const TorusAction& a, long long box_bound) {
    return quotient_iso_check_report(a, box_bound).ok;
}

}  // namespace torweyl
