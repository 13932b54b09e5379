#include "torweyl/decide.hpp"

#include <algorithm>

#include "torweyl/errors.hpp"

namespace torweyl {

std::pair<bool, std::optional<PositivityWitness>> invariants_trivial(const TorusAction& a) {
    if (!is_transitive_on_torus(a)) return {false, std::nullopt};
    std::vector<std::size_t> pos, zer;
    for (std::size_t j = 0; j < a.r(); ++j) pos.push_back(j);
    for (std::size_t j = a.r(); j < a.n(); ++j) zer.push_back(j);
    auto w = positive_vector_in_rowspace(a.l(), pos, zer);
    if (!w) return {false, std::nullopt};
    return {true, std::move(w)};
}

std::optional<std::vector<std::size_t>> find_flip_set(const TorusAction& a) {
    if (!fixed_space_trivial(a)) return std::nullopt;
    SliceData sd = slice_data(a);
    const std::size_t r = a.r();
    const std::size_t k = sd.identity_rank;
    if (r == 0) return std::vector<std::size_t>{};

    // beta(t) = sum_i t^(i-1) * (row i of l1) has j-th coordinate a nonzero
    // polynomial of degree < k, so some t <= 1 + r*(k-1) misses every root.
    const long long tmax = 1 + static_cast<long long>(r) * (k > 0 ? k - 1 : 0);
    for (long long t = 1; t <= tmax; ++t) {
        IntVec beta(r, Int(0));
        Int power = 1;
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < r; ++j) beta[j] += power * sd.normal_form.l1.at(i, j);
            power *= to_int(t);
        }
        bool all_nonzero = true;
        for (const Int& b : beta)
            if (b == 0) all_nonzero = false;
        if (!all_nonzero) continue;
        std::vector<std::size_t> flips;
        for (std::size_t j = 0; j < r; ++j)
            if (beta[j] < 0) flips.push_back(j);
        return flips;
    }
    throw InternalConsistencyError("find_flip_set: no sign profile despite nonzero slice weights");
}

TorusAction flip_action(const TorusAction& a, const std::vector<std::size_t>& flips) {
    IntMatrix l = a.l();
    std::vector<bool> seen(a.r(), false);
    for (std::size_t j : flips) {
        if (j >= a.r()) throw IndexOutOfRange("flip index beyond the polynomial coordinates");
        if (seen[j]) throw IndexOutOfRange("flip index repeated");
        seen[j] = true;
        l.negate_col(j);
    }
    return TorusAction(std::move(l), a.r(), a.s());
}

Int fixed_coordinate_torsion(const TorusAction& a, std::size_t j) {
    SliceData sd = slice_data(a);
    if (j >= a.r()) throw IndexOutOfRange("coordinate index beyond the polynomial coordinates");
    for (const Int& x : sd.rho[j])
        if (x != 0) throw NotAFixedCoordinate("slice weight rho_" + std::to_string(j + 1) +
                                              " is nonzero");
    // gamma = l2 column j; e = lcm_i d_i / gcd(d_i, gamma_i) is the order of
    // the weight's restriction to the isotropy component group.
    Int e = 1;
    for (std::size_t i = 0; i < a.s(); ++i) {
        Int g = gcd(sd.normal_form.d[i], sd.normal_form.l2.at(i, j));
        e = lcm(e, Int(sd.normal_form.d[i] / g));
    }
    return e;
}

std::pair<long long, long long> gk_dimensions(const TorusAction& a) {
    const long long n = static_cast<long long>(a.n());
    const long long m = static_cast<long long>(a.m());
    return {2 * n - m, 2 * (n - m)};
}

AnalysisReport analyze(const TorusAction& a) {
    AnalysisReport rep;
    rep.faithful = is_faithful(a);
    auto [total, fiber] = gk_dimensions(a);
    rep.gk_total = total;
    rep.gk_fiber = fiber;
    rep.transitive = is_transitive_on_torus(a);

    auto [triv, wit] = invariants_trivial(a);
    rep.invariants_trivial = triv;

    if (!rep.transitive) {
        rep.fixed_space_trivial = false;
        rep.enough_fdm = false;
        auto kb = kernel_basis(a.torus_block());
        if (kb.empty())
            throw InternalConsistencyError("analyze: non-transitive action with independent torus weights");
        rep.obstruction = DependentWeightsObstruction{kb.front()};
        return rep;
    }

    rep.fixed_space_trivial = fixed_space_trivial(a);
    if (rep.fixed_space_trivial) {
        auto flips = find_flip_set(a);
        if (!flips)
            throw InternalConsistencyError("analyze: flip set missing though slice weights are nonzero");
        // Cross-validation: flipping those signs must make the invariants
        // trivial; the slice criterion and the positivity criterion are two
        // independent routes to the same verdict.
        auto [ftriv, fwit] = invariants_trivial(flip_action(a, *flips));
        if (!ftriv)
            throw InternalConsistencyError("analyze: flipped action fails the positivity criterion");
        if (triv) {
            rep.positivity_witness = std::move(wit);
        } else {
            rep.positivity_witness = std::move(fwit);
            rep.witness_for_flip = true;
        }
        rep.flip_set = std::move(*flips);
        rep.enough_fdm = true;
        return rep;
    }

    if (triv)
        throw InternalConsistencyError("analyze: positivity witness exists but a slice weight vanishes");
    std::size_t j = 0;
    SliceData sd = slice_data(a);
    while (j < a.r()) {
        bool zero = true;
        for (const Int& x : sd.rho[j])
            if (x != 0) zero = false;
        if (zero) break;
        ++j;
    }
    rep.obstruction = FixedCoordinateObstruction{j, fixed_coordinate_torsion(a, j)};
    rep.enough_fdm = false;
    return rep;
}

}  // namespace torweyl
