#include "torweyl/action.hpp"

#include "torweyl/errors.hpp"

namespace torweyl {

TorusAction::TorusAction(IntMatrix l, std::size_t r, std::size_t s)
    : l_(std::move(l)), r_(r), s_(s) {
    if (r_ + s_ == 0) throw EmptyAction("action on a zero-dimensional space");
    if (l_.cols() != r_ + s_)
        throw ShapeMismatch("weight matrix has " + std::to_string(l_.cols()) +
                            " columns, expected r + s = " + std::to_string(r_ + s_));
    if (l_.rows() == 0) throw ShapeMismatch("weight matrix needs at least one row");
}

IntVec TorusAction::weight(std::size_t j) const {
    if (j >= n()) throw IndexOutOfRange("coordinate index out of range");
    return l_.col(j);
}

IntMatrix TorusAction::torus_block() const { return l_.block(0, m(), r_, n()); }

TorusAction new_action(IntMatrix l, std::size_t r, std::size_t s) {
    return TorusAction(std::move(l), r, s);
}

std::vector<IntVec> weights(const TorusAction& a) {
    std::vector<IntVec> out;
    out.reserve(a.n());
    for (std::size_t j = 0; j < a.n(); ++j) out.push_back(a.weight(j));
    return out;
}

bool is_faithful(const TorusAction& a) {
    IntVec f = invariant_factors(a.l());
    if (f.size() != a.m()) return false;
    for (const Int& x : f)
        if (x != 1) return false;
    return true;
}

bool is_transitive_on_torus(const TorusAction& a) {
    if (a.s() == 0) return true;
    return rank(a.torus_block()) == a.s();
}

SliceData slice_data(const TorusAction& a) {
    if (!is_transitive_on_torus(a))
        throw NotTransitive("slice data requires a transitive action on the torus factor");
    SliceData sd;
    sd.normal_form = block_normal_form(a.l(), a.r(), a.s());
    sd.identity_rank = a.m() - a.s();
    sd.rho.reserve(a.r());
    for (std::size_t j = 0; j < a.r(); ++j) sd.rho.push_back(sd.normal_form.l1.col(j));
    // The torus block is unimodularly equivalent to [0; diag(d)], so its
    // invariant factors are exactly the d_i.
    for (const Int& di : sd.normal_form.d)
        if (di > 1) sd.component_group.push_back(di);
    return sd;
}

bool fixed_space_trivial(const TorusAction& a) {
    SliceData sd = slice_data(a);
    for (const IntVec& rho : sd.rho) {
        bool zero = true;
        for (const Int& x : rho)
            if (x != 0) zero = false;
        if (zero) return false;  // includes the rank-zero isotropy case m == s
    }
    return true;
}

}  // namespace torweyl
