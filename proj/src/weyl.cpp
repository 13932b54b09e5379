#include "torweyl/weyl.hpp"

#include <algorithm>
#include <cstdlib>

#include "torweyl/chars.hpp"
#include "torweyl/decide.hpp"
#include "torweyl/errors.hpp"
#include "torweyl/exactlin.hpp"

namespace torweyl {

// ---------------------------------------------------------------------------
// PiPolynomial

void PiPolynomial::add_monomial(const std::vector<unsigned>& expo, const Rat& c) {
    if (expo.size() != vars_) throw ShapeMismatch("polynomial exponent length mismatch");
    auto it = coeffs_.find(expo);
    if (it == coeffs_.end()) {
        if (c != 0) coeffs_.emplace(expo, c);
        return;
    }
    it->second += c;
    if (it->second == 0) coeffs_.erase(it);
}

PiPolynomial PiPolynomial::constant(std::size_t vars, const Rat& c) {
    PiPolynomial p(vars);
    p.add_monomial(std::vector<unsigned>(vars, 0), c);
    return p;
}

PiPolynomial PiPolynomial::variable(std::size_t vars, std::size_t i) {
    if (i >= vars) throw IndexOutOfRange("polynomial variable index out of range");
    PiPolynomial p(vars);
    std::vector<unsigned> e(vars, 0);
    e[i] = 1;
    p.add_monomial(e, Rat(1));
    return p;
}

PiPolynomial PiPolynomial::operator+(const PiPolynomial& o) const {
    if (vars_ != o.vars_) throw ShapeMismatch("polynomial variable count mismatch");
    PiPolynomial out = *this;
    for (const auto& [e, c] : o.coeffs_) out.add_monomial(e, c);
    return out;
}

PiPolynomial PiPolynomial::operator-(const PiPolynomial& o) const {
    if (vars_ != o.vars_) throw ShapeMismatch("polynomial variable count mismatch");
    PiPolynomial out = *this;
    for (const auto& [e, c] : o.coeffs_) out.add_monomial(e, -c);
    return out;
}

PiPolynomial PiPolynomial::operator*(const PiPolynomial& o) const {
    if (vars_ != o.vars_) throw ShapeMismatch("polynomial variable count mismatch");
    PiPolynomial out(vars_);
    for (const auto& [e1, c1] : coeffs_)
        for (const auto& [e2, c2] : o.coeffs_) {
            std::vector<unsigned> e(vars_);
            for (std::size_t i = 0; i < vars_; ++i) e[i] = e1[i] + e2[i];
            out.add_monomial(e, c1 * c2);
        }
    return out;
}

PiPolynomial PiPolynomial::scaled(const Rat& c) const {
    PiPolynomial out(vars_);
    if (c == 0) return out;
    for (const auto& [e, v] : coeffs_) out.coeffs_.emplace(e, v * c);
    return out;
}

PiPolynomial PiPolynomial::shifted(const std::vector<long long>& delta) const {
    if (delta.size() != vars_) throw ShapeMismatch("shift vector length mismatch");
    PiPolynomial out(vars_);
    for (const auto& [e, c] : coeffs_) {
        // Expand prod_i (Pi_i + delta_i)^{e_i} term by term.
        PiPolynomial term = constant(vars_, c);
        for (std::size_t i = 0; i < vars_; ++i) {
            if (e[i] == 0) continue;
            PiPolynomial lin = variable(vars_, i) + constant(vars_, to_rat(delta[i]));
            for (unsigned k = 0; k < e[i]; ++k) term = term * lin;
        }
        out = out + term;
    }
    return out;
}

PiPolynomial PiPolynomial::flipped(const std::vector<bool>& mask) const {
    if (mask.size() != vars_) throw ShapeMismatch("flip mask length mismatch");
    PiPolynomial out(vars_);
    for (const auto& [e, c] : coeffs_) {
        PiPolynomial term = constant(vars_, c);
        for (std::size_t i = 0; i < vars_; ++i) {
            if (e[i] == 0) continue;
            PiPolynomial image = mask[i]
                                     ? constant(vars_, Rat(-1)) - variable(vars_, i)
                                     : variable(vars_, i);
            for (unsigned k = 0; k < e[i]; ++k) term = term * image;
        }
        out = out + term;
    }
    return out;
}

PiPolynomial PiPolynomial::extended(std::size_t new_vars) const {
    if (new_vars < vars_) throw ShapeMismatch("cannot shrink a polynomial's variable set");
    PiPolynomial out(new_vars);
    for (const auto& [e, c] : coeffs_) {
        std::vector<unsigned> expo = e;
        expo.resize(new_vars, 0);
        out.coeffs_.emplace(std::move(expo), c);
    }
    return out;
}

bool PiPolynomial::uses_only_first(std::size_t k) const {
    for (const auto& [e, c] : coeffs_) {
        (void)c;
        for (std::size_t i = k; i < vars_; ++i)
            if (e[i] != 0) return false;
    }
    return true;
}

Rat PiPolynomial::eval(const std::vector<long long>& point) const {
    if (point.size() != vars_) throw ShapeMismatch("evaluation point length mismatch");
    Rat total = 0;
    for (const auto& [e, c] : coeffs_) {
        Rat term = c;
        for (std::size_t i = 0; i < vars_; ++i)
            for (unsigned k = 0; k < e[i]; ++k) term *= to_rat(point[i]);
        total += term;
    }
    return total;
}

// ---------------------------------------------------------------------------
// OperatorElement construction

namespace {

void check_shape(const OperatorElement& op, const std::vector<long long>& alpha) {
    if (alpha.size() != op.n) throw ShapeMismatch("degree vector length mismatch");
}

void accumulate(OperatorElement& out, const std::vector<long long>& alpha,
                const PiPolynomial& poly) {
    if (poly.is_zero()) return;
    auto it = out.terms.find(alpha);
    if (it == out.terms.end()) {
        out.terms.emplace(alpha, poly);
        return;
    }
    it->second = it->second + poly;
    if (it->second.is_zero()) out.terms.erase(it);
}

}  // namespace

OperatorElement zero_op(std::size_t n, std::size_t r) {
    if (r > n) throw ShapeMismatch("split position exceeds coordinate count");
    OperatorElement op;
    op.n = n;
    op.r = r;
    return op;
}

OperatorElement identity_op(std::size_t n, std::size_t r) {
    return term_op(n, r, std::vector<long long>(n, 0), PiPolynomial::constant(n, Rat(1)));
}

OperatorElement term_op(std::size_t n, std::size_t r, const std::vector<long long>& alpha,
                        const PiPolynomial& poly) {
    OperatorElement op = zero_op(n, r);
    check_shape(op, alpha);
    if (poly.vars() != n) throw ShapeMismatch("coefficient polynomial variable count mismatch");
    accumulate(op, alpha, poly);
    return op;
}

OperatorElement u_op(std::size_t n, std::size_t r, const std::vector<long long>& alpha) {
    return term_op(n, r, alpha, PiPolynomial::constant(n, Rat(1)));
}

OperatorElement pi_op(std::size_t n, std::size_t r, std::size_t i) {
    if (i >= n) throw IndexOutOfRange("Pi index out of range");
    return term_op(n, r, std::vector<long long>(n, 0), PiPolynomial::variable(n, i));
}

OperatorElement p_gen(std::size_t n, std::size_t r, std::size_t i) {
    if (i >= n) throw IndexOutOfRange("generator index out of range");
    std::vector<long long> alpha(n, 0);
    alpha[i] = -1;
    PiPolynomial poly = i < r ? PiPolynomial::constant(n, Rat(1))
                              : PiPolynomial::variable(n, i) + PiPolynomial::constant(n, Rat(1));
    return term_op(n, r, alpha, poly);
}

OperatorElement add(const OperatorElement& x, const OperatorElement& y) {
    if (x.n != y.n || x.r != y.r) throw ShapeMismatch("operator shape mismatch");
    OperatorElement out = x;
    for (const auto& [alpha, poly] : y.terms) accumulate(out, alpha, poly);
    return out;
}

OperatorElement sub(const OperatorElement& x, const OperatorElement& y) {
    return add(x, scale(y, Rat(-1)));
}

OperatorElement scale(const OperatorElement& x, const Rat& c) {
    OperatorElement out = zero_op(x.n, x.r);
    if (c == 0) return out;
    for (const auto& [alpha, poly] : x.terms) out.terms.emplace(alpha, poly.scaled(c));
    return out;
}

// ---------------------------------------------------------------------------
// Normal-ordered multiplication

namespace {

// Right-multiply the state poly * u_gamma by a single generator: Q_{i+1}
// when kind > 0, P_{i+1} otherwise.  Updates gamma and poly in place.
void absorb_step(std::size_t r, std::vector<long long>& gamma, PiPolynomial& poly,
                 std::size_t i, int kind) {
    const std::size_t n = gamma.size();
    if (kind > 0) {
        // u_gamma Q_i: free unless a P power is pending (gamma_i < 0, i < r),
        // where P^k Q = (Pi + k) P^{k-1}.
        if (i < r && gamma[i] < 0)
            poly = poly * (PiPolynomial::variable(n, i) +
                           PiPolynomial::constant(n, to_rat(-gamma[i])));
        ++gamma[i];
    } else {
        // Stepping the degree down.  In the Laurent range this is the plain
        // inverse coordinate (the Euler factor of P_i lives in p_gen's
        // polynomial, not in the degree), and over a pending P power (i < r,
        // gamma_i <= 0) P_i just stacks; only Q^k P = (Pi - k + 1) Q^{k-1}
        // contributes a factor.
        if (i < r && gamma[i] > 0)
            poly = poly * (PiPolynomial::variable(n, i) +
                           PiPolynomial::constant(n, to_rat(1 - gamma[i])));
        --gamma[i];
    }
}

}  // namespace

OperatorElement multiply(const OperatorElement& x, const OperatorElement& y) {
    if (x.n != y.n || x.r != y.r) throw ShapeMismatch("operator shape mismatch");
    OperatorElement out = zero_op(x.n, x.r);
    for (const auto& [alpha, f] : x.terms) {
        std::vector<long long> neg(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i) neg[i] = -alpha[i];
        for (const auto& [beta, g] : y.terms) {
            // f(Pi) u_alpha g(Pi) u_beta = f(Pi) g(Pi - alpha) u_alpha u_beta.
            PiPolynomial poly = f * g.shifted(neg);
            std::vector<long long> gamma = alpha;
            for (std::size_t i = 0; i < x.n; ++i) {
                const int kind = beta[i] > 0 ? 1 : -1;
                for (long long k = std::llabs(beta[i]); k > 0; --k)
                    absorb_step(x.r, gamma, poly, i, kind);
            }
            accumulate(out, gamma, poly);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Module action

std::vector<ScaledMonomial> apply(const OperatorElement& op, const std::vector<long long>& mono) {
    if (mono.size() != op.n) throw ShapeMismatch("monomial length mismatch");
    for (std::size_t i = 0; i < op.r; ++i)
        if (mono[i] < 0) throw ShapeMismatch("monomial has a negative polynomial exponent");

    std::map<std::vector<long long>, Rat> merged;
    for (const auto& [alpha, poly] : op.terms) {
        std::vector<long long> target(op.n);
        bool in_cone = true;
        for (std::size_t i = 0; i < op.n; ++i) {
            target[i] = mono[i] + alpha[i];
            if (i < op.r && target[i] < 0) {
                in_cone = false;
                break;
            }
        }
        if (!in_cone) continue;
        // Falling-factorial coefficient of each pending P power.
        Rat coeff = poly.eval(target);
        for (std::size_t i = 0; i < op.r && coeff != 0; ++i)
            for (long long k = 0; k < -alpha[i]; ++k) coeff *= to_rat(mono[i] - k);
        if (coeff == 0) continue;
        auto [it, inserted] = merged.emplace(std::move(target), coeff);
        if (!inserted) it->second += coeff;
    }

    std::vector<ScaledMonomial> out;
    for (const auto& [m, c] : merged)
        if (c != 0) out.push_back({c, m});
    return out;
}

bool is_invariant(const TorusAction& a, const OperatorElement& op) {
    if (op.n != a.n() || op.r != a.r()) throw ShapeMismatch("operator does not match the action");
    for (const auto& [alpha, poly] : op.terms) {
        (void)poly;
        IntVec az = to_intvec(alpha);
        for (const Int& w : a.l().mul(az))
            if (w != 0) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Partial Fourier transform

OperatorElement fourier_transform(const std::vector<std::size_t>& flips,
                                  const OperatorElement& op) {
    std::vector<bool> mask(op.n, false);
    for (std::size_t i : flips) {
        if (i >= op.r) throw IndexOutOfRange("flip index outside the polynomial range");
        if (mask[i]) throw IndexOutOfRange("repeated flip index");
        mask[i] = true;
    }
    OperatorElement out = zero_op(op.n, op.r);
    for (const auto& [alpha, poly] : op.terms) {
        std::vector<long long> image = alpha;
        Rat sign = 1;
        for (std::size_t i = 0; i < op.n; ++i)
            if (mask[i]) {
                if (alpha[i] > 0 && alpha[i] % 2 != 0) sign = -sign;
                image[i] = -alpha[i];
            }
        accumulate(out, image, poly.flipped(mask).scaled(sign));
    }
    return out;
}

std::vector<ScaledMonomial> twisted_apply(const std::vector<std::size_t>& flips,
                                          const OperatorElement& op,
                                          const std::vector<long long>& mono) {
    return torweyl::apply(fourier_transform(flips, op), mono);
}

// ---------------------------------------------------------------------------
// Constructive witnesses

bool simplicity_witness(const TorusAction& a, const IntVec& chi, long long box_bound) {
    auto basis = weight_space_basis(a, chi);
    std::vector<std::vector<long long>> capped;
    for (const auto& lambda : basis) {
        bool ok = true;
        for (long long v : lambda)
            if (std::llabs(v) > box_bound) ok = false;
        if (ok) capped.push_back(lambda);
    }
    for (const auto& lambda : capped)
        for (const auto& mu : capped) {
            if (lambda == mu) continue;
            std::vector<long long> alpha(a.n());
            for (std::size_t i = 0; i < a.n(); ++i) alpha[i] = mu[i] - lambda[i];
            OperatorElement op = u_op(a.n(), a.r(), alpha);
            if (!is_invariant(a, op)) return false;
            auto result = torweyl::apply(op, lambda);
            if (result.size() != 1 || result[0].mono != mu || result[0].coeff == 0) return false;
        }
    return true;
}

NoFdmWitness no_fdm_witness(const TorusAction& a) {
    auto relations = kernel_basis(a.torus_block());
    if (relations.empty())
        throw TorusWeightsIndependent("the torus weight columns are linearly independent");

    NoFdmWitness w;
    w.relation = relations.front();
    std::size_t pivot = w.relation.size();
    for (std::size_t i = 0; i < w.relation.size(); ++i)
        if (w.relation[i] != 0) pivot = i;
    if (pivot == w.relation.size())
        throw InternalConsistencyError("no_fdm_witness: zero relation vector");
    if (w.relation[pivot] < 0)
        for (Int& v : w.relation) v = -v;
    w.pivot = pivot;

    const std::size_t n = a.n(), r = a.r();
    auto to_ll = [](const Int& v) {
        if (!v.fits_slong_p()) throw BoxTooLarge("relation entry exceeds the machine range");
        return v.get_si();
    };

    std::vector<long long> qdeg(n, 0);
    for (std::size_t i = 0; i < w.relation.size(); ++i) qdeg[r + i] = to_ll(w.relation[i]);
    w.qop = u_op(n, r, qdeg);

    w.pop = identity_op(n, r);
    const long long cp = to_ll(w.relation[pivot]);
    OperatorElement pstep = p_gen(n, r, r + pivot);
    for (long long k = 0; k < cp; ++k) w.pop = multiply(w.pop, pstep);
    std::vector<long long> rest(n, 0);
    for (std::size_t i = 0; i < w.relation.size(); ++i)
        if (i != pivot) rest[r + i] = -to_ll(w.relation[i]);
    w.pop = multiply(w.pop, u_op(n, r, rest));

    w.pqop = multiply(w.pop, w.qop);

    if (!is_invariant(a, w.qop) || !is_invariant(a, w.pop) || !is_invariant(a, w.pqop))
        throw InternalConsistencyError("no_fdm_witness: operator fails invariance");
    OperatorElement pi = pi_op(n, r, r + pivot);
    if (sub(multiply(pi, w.qop), multiply(w.qop, pi)) != scale(w.qop, to_rat(cp)))
        throw InternalConsistencyError("no_fdm_witness: raising commutator mismatch");
    if (sub(multiply(pi, w.pop), multiply(w.pop, pi)) != scale(w.pop, to_rat(-cp)))
        throw InternalConsistencyError("no_fdm_witness: lowering commutator mismatch");
    return w;
}

FixedCoordinateWitness fixed_coordinate_witness(const TorusAction& a, std::size_t j) {
    FixedCoordinateWitness w;
    w.torsion_order = fixed_coordinate_torsion(a, j);
    if (!w.torsion_order.fits_slong_p())
        throw BoxTooLarge("torsion order exceeds the machine range");
    const long long e = w.torsion_order.get_si();

    // e * eta_j must land in the lattice spanned by the torus weights; this
    // is what makes Q_j^e invariant under the full isotropy subgroup.
    IntVec target(a.m());
    for (std::size_t i = 0; i < a.m(); ++i) target[i] = to_int(e) * a.l().at(i, j);
    if (a.s() == 0) {
        for (const Int& v : target)
            if (v != 0)
                throw InternalConsistencyError(
                    "fixed_coordinate_witness: torsion multiple not in the weight lattice");
    } else if (!lattice_solve(a.torus_block(), target)) {
        throw InternalConsistencyError(
            "fixed_coordinate_witness: torsion multiple not in the weight lattice");
    }

    std::vector<long long> qdeg(a.n(), 0), pdeg(a.n(), 0);
    qdeg[j] = e;
    pdeg[j] = -e;
    w.qe = u_op(a.n(), a.r(), qdeg);
    w.pe = u_op(a.n(), a.r(), pdeg);
    w.pi = pi_op(a.n(), a.r(), j);
    return w;
}

bool epsilon_lift_check(const TorusAction& a, const IntVec& alpha, const IntVec& beta) {
    IntVec ea = epsilon_embed(a, alpha);
    IntVec eb = epsilon_embed(a, beta);
    IntVec sum(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) sum[i] = alpha[i] + beta[i];
    IntVec esum = epsilon_embed(a, sum);

    auto to_ll = [](const IntVec& v) {
        std::vector<long long> out(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].fits_slong_p()) throw BoxTooLarge("degree exceeds the machine range");
            out[i] = v[i].get_si();
        }
        return out;
    };

    const std::size_t n = a.n(), r = a.r();
    OperatorElement full = multiply(u_op(n, r, to_ll(ea)), u_op(n, r, to_ll(eb)));
    OperatorElement small = multiply(u_op(r, r, to_ll(alpha)), u_op(r, r, to_ll(beta)));

    if (full.terms.size() != 1 || small.terms.size() != 1) return false;
    const auto& [fdeg, fpoly] = *full.terms.begin();
    const auto& [sdeg, spoly] = *small.terms.begin();
    if (fdeg != to_ll(esum)) return false;
    if (!fpoly.uses_only_first(r)) return false;
    std::vector<long long> ssum = to_ll(sum);
    if (sdeg != ssum) return false;
    return fpoly == spoly.extended(n);
}

}  // namespace torweyl
