#include "torweyl/opformat.hpp"

#include <cctype>
#include <sstream>

namespace torweyl {

std::string format_rat(const Rat& v) {
    return v.get_str();
}

namespace {

void append_degree(std::string& out, const std::vector<long long>& alpha) {
    out += "u[";
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(alpha[i]);
    }
    out += ']';
}

}  // namespace

std::string format_operator(const OperatorElement& op) {
    std::string out;
    for (const auto& [alpha, poly] : op.terms)
        for (const auto& [expo, coeff] : poly.monomials()) {
            if (!out.empty()) out += " + ";
            out += format_rat(coeff);
            for (std::size_t i = 0; i < expo.size(); ++i) {
                if (expo[i] == 0) continue;
                out += " * Pi(" + std::to_string(i + 1) + ")";
                if (expo[i] > 1) out += "^" + std::to_string(expo[i]);
            }
            out += " * ";
            append_degree(out, alpha);
        }
    return out.empty() ? "0" : out;
}

std::string format_monomials(const std::vector<ScaledMonomial>& monos) {
    std::string out;
    for (const auto& sm : monos) {
        if (!out.empty()) out += " + ";
        out += format_rat(sm.coeff) + " * Q[";
        for (std::size_t i = 0; i < sm.mono.size(); ++i) {
            if (i) out += ',';
            out += std::to_string(sm.mono[i]);
        }
        out += ']';
    }
    return out.empty() ? "0" : out;
}

namespace {

// Recursive-descent scanner over the operator syntax.
class Scanner {
  public:
    explicit Scanner(const std::string& text) : text_(text) {}

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool done() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' at position " +
                             std::to_string(pos_) + " in operator text");
    }

    // Unsigned decimal digits as a GMP integer.
    Int digits() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        if (pos_ == start)
            throw ParseError("expected a number at position " + std::to_string(start) +
                             " in operator text");
        return Int(text_.substr(start, pos_ - start));
    }

    long long signed_ll() {
        bool neg = accept('-');
        if (!neg) accept('+');
        Int v = digits();
        if (neg) v = -v;
        if (!v.fits_slong_p()) throw ParseError("integer out of range in operator text");
        return v.get_si();
    }

    std::size_t position() const { return pos_; }

  private:
    const std::string& text_;
    std::size_t pos_ = 0;
};

}  // namespace

OperatorElement parse_operator(const std::string& text, std::size_t n, std::size_t r) {
    Scanner sc(text);
    OperatorElement out = zero_op(n, r);
    bool first = true;
    while (!sc.done()) {
        Rat sign = 1;
        if (sc.accept('-')) {
            sign = -1;
        } else if (sc.accept('+')) {
            // explicit plus
        } else if (!first) {
            throw ParseError("expected '+' or '-' between summands at position " +
                             std::to_string(sc.position()));
        }
        first = false;

        Rat coeff = sign;
        std::vector<unsigned> expo(n, 0);
        std::vector<long long> alpha(n, 0);
        bool saw_u = false, saw_factor = false;

        do {
            char c = sc.peek();
            if (c == 'P') {
                sc.expect('P');
                sc.expect('i');
                sc.expect('(');
                long long idx = sc.signed_ll();
                sc.expect(')');
                if (idx < 1 || static_cast<std::size_t>(idx) > n)
                    throw ParseError("Pi index " + std::to_string(idx) + " outside 1.." +
                                     std::to_string(n));
                long long power = 1;
                if (sc.accept('^')) {
                    power = sc.signed_ll();
                    if (power < 0) throw ParseError("negative Pi exponent in operator text");
                }
                expo[idx - 1] += static_cast<unsigned>(power);
            } else if (c == 'u') {
                sc.expect('u');
                sc.expect('[');
                if (saw_u) throw ParseError("repeated u factor in one summand");
                saw_u = true;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i) sc.expect(',');
                    alpha[i] = sc.signed_ll();
                }
                sc.expect(']');
            } else if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
                bool neg = sc.accept('-');
                if (!neg) sc.accept('+');
                Int num = sc.digits();
                Rat value(num);
                if (sc.accept('/')) {
                    Int den = sc.digits();
                    if (den == 0) throw ParseError("zero denominator in operator text");
                    value = Rat(num) / Rat(den);
                }
                if (neg) value = -value;
                coeff *= value;
            } else {
                throw ParseError(std::string("unexpected character '") + c + "' at position " +
                                 std::to_string(sc.position()) + " in operator text");
            }
            saw_factor = true;
        } while (sc.accept('*'));

        if (!saw_factor) throw ParseError("empty summand in operator text");
        PiPolynomial poly(n);
        poly.add_monomial(expo, coeff);
        out = add(out, term_op(n, r, alpha, poly));
    }
    return out;
}

std::vector<long long> parse_int_list(const std::string& text) {
    std::vector<long long> out;
    Scanner sc(text);
    if (sc.done()) return out;
    out.push_back(sc.signed_ll());
    while (!sc.done()) {
        sc.expect(',');
        out.push_back(sc.signed_ll());
    }
    return out;
}

}  // namespace torweyl
