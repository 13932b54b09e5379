#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "torweyl/action.hpp"
#include "torweyl/matrix.hpp"

namespace torweyl {

// Polynomial in the commuting indeterminates Pi_1..Pi_n over exact rationals,
// kept in expanded monomial-sorted form so equality is structural.
class PiPolynomial {
  public:
    explicit PiPolynomial(std::size_t vars = 0) : vars_(vars) {}
    static PiPolynomial constant(std::size_t vars, const Rat& c);
    static PiPolynomial variable(std::size_t vars, std::size_t i);  // Pi_{i+1}, 0-based i

    std::size_t vars() const { return vars_; }
    bool is_zero() const { return coeffs_.empty(); }
    bool operator==(const PiPolynomial&) const = default;

    PiPolynomial operator+(const PiPolynomial& o) const;
    PiPolynomial operator-(const PiPolynomial& o) const;
    PiPolynomial operator*(const PiPolynomial& o) const;
    PiPolynomial scaled(const Rat& c) const;

    // Substitute Pi_i -> Pi_i + delta_i.
    PiPolynomial shifted(const std::vector<long long>& delta) const;
    // Substitute Pi_i -> -Pi_i - 1 at masked positions.
    PiPolynomial flipped(const std::vector<bool>& mask) const;
    // Reinterpret over a larger variable set (appended variables unused).
    PiPolynomial extended(std::size_t new_vars) const;
    // True when no monomial touches Pi_{k+1}..Pi_n.
    bool uses_only_first(std::size_t k) const;

    Rat eval(const std::vector<long long>& point) const;

    // Exponent vector -> nonzero coefficient.
    const std::map<std::vector<unsigned>, Rat>& monomials() const { return coeffs_; }
    void add_monomial(const std::vector<unsigned>& expo, const Rat& c);

  private:
    std::size_t vars_;
    std::map<std::vector<unsigned>, Rat> coeffs_;
};

// A graded operator sum_alpha c_alpha(Pi) u_alpha in normal order with u on
// the right; the zero operator has an empty term map.  The split position r
// (first r coordinates polynomial, the rest Laurent) travels with the
// element because products and actions depend on it.
struct OperatorElement {
    std::size_t n = 0;
    std::size_t r = 0;
    std::map<std::vector<long long>, PiPolynomial> terms;

    bool operator==(const OperatorElement&) const = default;
    bool is_zero() const { return terms.empty(); }
};

OperatorElement zero_op(std::size_t n, std::size_t r);
OperatorElement identity_op(std::size_t n, std::size_t r);

// Single term c(Pi)*u_alpha (dropped if c = 0).
OperatorElement term_op(std::size_t n, std::size_t r, const std::vector<long long>& alpha,
                        const PiPolynomial& poly);

// The graded basis monomial u_alpha.
OperatorElement u_op(std::size_t n, std::size_t r, const std::vector<long long>& alpha);

// Pi_{i+1} as an operator (0-based i).
OperatorElement pi_op(std::size_t n, std::size_t r, std::size_t i);

// The generator P_{i+1} (0-based i): u_{-e_i} for i < r, (Pi_i+1)u_{-e_i}
// in the Laurent range.
OperatorElement p_gen(std::size_t n, std::size_t r, std::size_t i);

OperatorElement add(const OperatorElement& x, const OperatorElement& y);
OperatorElement sub(const OperatorElement& x, const OperatorElement& y);
OperatorElement scale(const OperatorElement& x, const Rat& c);

// Normal-ordered product.
OperatorElement multiply(const OperatorElement& x, const OperatorElement& y);

// A scalar multiple of a monomial Q^mono in O(Y).
struct ScaledMonomial {
    Rat coeff;
    std::vector<long long> mono;

    bool operator==(const ScaledMonomial&) const = default;
};

// Act on Q^mono (first r exponents must be nonnegative).  The result is
// merged, zero-free, and sorted by exponent vector.
std::vector<ScaledMonomial> apply(const OperatorElement& op, const std::vector<long long>& mono);

// True iff every term degree is annihilated by the weight matrix.
bool is_invariant(const TorusAction& a, const OperatorElement& op);

// The partial Fourier transform sigma_I (0-based indices, all < r).
OperatorElement fourier_transform(const std::vector<std::size_t>& flips,
                                  const OperatorElement& op);

// Action on the twisted module: apply(sigma_I(op), mono).
std::vector<ScaledMonomial> twisted_apply(const std::vector<std::size_t>& flips,
                                          const OperatorElement& op,
                                          const std::vector<long long>& mono);

// Checks the simple-module criterion on the weight space of chi: for every
// ordered pair of basis monomials (lambda, mu) with all entries bounded by
// box_bound in absolute value, u_{mu-lambda} is invariant and sends Q^lambda
// to a nonzero multiple of Q^mu.
bool simplicity_witness(const TorusAction& a, const IntVec& chi, long long box_bound);

// Witness operators for the dependent-torus-weights obstruction: an integer
// relation sum c_i eta_{r+i} = 0 yields Qop = prod Q_{r+i}^{c_i},
// Pop = P_{r+pivot}^{c_pivot} prod_{i != pivot} Q_{r+i}^{-c_i}, and their
// product PQop = Pop*Qop; all invariant, with [Pi_pivot, Qop] = c_pivot*Qop.
struct NoFdmWitness {
    IntVec relation;     // length s, pivot entry positive
    std::size_t pivot;   // 0-based position within the last s columns
    OperatorElement qop;
    OperatorElement pop;
    OperatorElement pqop;
};

NoFdmWitness no_fdm_witness(const TorusAction& a);

// Witness operators for a vanishing slice weight rho_j: Q_j^e, P_j^e, Pi_j
// where e is the torsion order of eta_j modulo the torus-weight lattice;
// e*eta_j is verified to lie in that lattice.
struct FixedCoordinateWitness {
    Int torsion_order;
    OperatorElement qe;
    OperatorElement pe;
    OperatorElement pi;
};

FixedCoordinateWitness fixed_coordinate_witness(const TorusAction& a, std::size_t j);

// Multiplicativity of the epsilon lift on one pair: the product of the
// lifted operators equals the lift of the small-engine product.
bool epsilon_lift_check(const TorusAction& a, const IntVec& alpha, const IntVec& beta);

}  // namespace torweyl
