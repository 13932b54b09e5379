#pragma once

#include <string>
#include <vector>

#include "torweyl/errors.hpp"
#include "torweyl/weyl.hpp"

namespace torweyl {

// Malformed operator or vector text.
struct ParseError : Error {
    using Error::Error;
};

// Canonical rational rendering: "p" or "p/q" in lowest terms.
std::string format_rat(const Rat& v);

// Render an operator as a '+'-joined sum of `coeff * Pi(i)^k * ... * u[a1,...,an]`
// summands, fully expanded, in canonical term order; "0" for the zero operator.
std::string format_operator(const OperatorElement& op);

// Parse the same syntax.  Signs may appear between summands, the coefficient
// and the u factor are each optional within a summand, and Pi indices are
// 1-based.  The result is accumulated in canonical form.
OperatorElement parse_operator(const std::string& text, std::size_t n, std::size_t r);

// Render an apply() result as `coeff * Q[a1,...,an]` summands; "0" if empty.
std::string format_monomials(const std::vector<ScaledMonomial>& monos);

// Parse a comma-separated integer list such as "1,-2,0".
std::vector<long long> parse_int_list(const std::string& text);

}  // namespace torweyl
