#pragma once

// Recursive-descent parser for homogeneous polynomial expressions in x, y, z
// with integer or fraction coefficients, +, -, *, ^ and parentheses.
// Juxtaposition ("2x^4y^2") is accepted as multiplication so printed sextics
// can be ingested as-is. Homogeneity is enforced at every addition node, which
// pins the error to the offending term.

#include "k3pencil/homform.hpp"

namespace k3pencil {

struct ParseError : Error {
    size_t pos;
    ParseError(const std::string& msg, size_t position)
        : Error(msg + " (at position " + std::to_string(position) + ")"), pos(position) {}
};

namespace detail {

// Multivariate scratch value: homogeneous by construction (checked at +/-).
struct PVal {
    std::map<std::array<int, 3>, Rational> terms;

    bool is_zero() const { return terms.empty(); }
    int degree() const { return terms.empty() ? -1 : terms.begin()->first[0] + terms.begin()->first[1] + terms.begin()->first[2]; }
    void prune() {
        for (auto it = terms.begin(); it != terms.end();)
            it = it->second == 0 ? terms.erase(it) : std::next(it);
    }
};

inline PVal pv_add(const PVal& a, const PVal& b, size_t rhs_pos, int s) {
    if (!a.is_zero() && !b.is_zero() && a.degree() != b.degree())
        throw ParseError("non-homogeneous sum: degree " + std::to_string(b.degree()) +
                             " term added to degree " + std::to_string(a.degree()),
                         rhs_pos);
    PVal r = a;
    for (auto& [e, c] : b.terms) r.terms[e] += s > 0 ? c : Rational(-c);
    r.prune();
    return r;
}

inline PVal pv_mul(const PVal& a, const PVal& b) {
    PVal r;
    for (auto& [e1, c1] : a.terms)
        for (auto& [e2, c2] : b.terms) {
            std::array<int, 3> e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
            r.terms[e] += c1 * c2;
        }
    r.prune();
    return r;
}

inline PVal pv_pow(const PVal& a, long e) {
    PVal r;
    r.terms[{0, 0, 0}] = make_rational(1);
    PVal b = a;
    while (e) {
        if (e & 1) r = pv_mul(r, b);
        b = pv_mul(b, b);
        e >>= 1;
    }
    return r;
}

class FormParser {
public:
    explicit FormParser(const std::string& text) : s_(text) {}

    PVal parse() {
        PVal v = expr();
        skip_ws();
        if (pos_ < s_.size()) throw ParseError("unexpected trailing input", pos_);
        return v;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r'))
            ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    PVal expr() {
        skip_ws();
        size_t p0 = pos_;
        int lead = 1;
        if (peek() == '+' || peek() == '-') {
            lead = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        PVal acc = term();
        if (lead < 0) {
            PVal z;
            acc = pv_add(z, acc, p0, -1);
        }
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            skip_ws();
            size_t rhs_pos = pos_;
            PVal t = term();
            acc = pv_add(acc, t, rhs_pos, c == '+' ? 1 : -1);
        }
        return acc;
    }

    PVal term() {
        PVal acc = factor();
        while (true) {
            char c = peek();
            if (c == '*') {
                ++pos_;
                acc = pv_mul(acc, factor());
            } else if (c == '(' || c == 'x' || c == 'y' || c == 'z' || (c >= '0' && c <= '9')) {
                acc = pv_mul(acc, factor());  // juxtaposition
            } else {
                break;
            }
        }
        return acc;
    }

    PVal factor() {
        PVal b = base();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            size_t ep = pos_;
            long e = integer();
            if (e < 0) throw ParseError("negative exponent", ep);
            return pv_pow(b, e);
        }
        return b;
    }

    PVal base() {
        char c = peek();
        size_t p0 = pos_;
        if (c == '(') {
            ++pos_;
            PVal v = expr();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return v;
        }
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            PVal v;
            std::array<int, 3> e{c == 'x' ? 1 : 0, c == 'y' ? 1 : 0, c == 'z' ? 1 : 0};
            v.terms[e] = make_rational(1);
            return v;
        }
        if (c >= '0' && c <= '9') {
            Int n = natural();
            Int d = 1;
            if (peek() == '/') {
                ++pos_;
                skip_ws();
                size_t dp = pos_;
                if (!(peek() >= '0' && peek() <= '9')) throw ParseError("malformed fraction", dp);
                d = natural();
                if (d == 0) throw ParseError("zero denominator", dp);
            }
            PVal v;
            v.terms[{0, 0, 0}] = make_rational(n, d);
            v.prune();
            return v;
        }
        if (c == '\0') throw ParseError("unexpected end of input", p0);
        throw ParseError(std::string("unknown symbol '") + c + "'", p0);
    }

    Int natural() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] >= '0' && s_[pos_] <= '9') ++pos_;
        if (start == pos_) throw ParseError("expected a number", start);
        return Int(s_.substr(start, pos_ - start));
    }

    long integer() {
        long sg = 1;
        if (peek() == '-') {
            sg = -1;
            ++pos_;
        }
        Int n = natural();
        if (!n.fits_slong_p()) throw ParseError("exponent too large", pos_);
        return sg * n.get_si();
    }
};

}  // namespace detail

inline HomForm parse_form(const std::string& text) {
    detail::FormParser p(text);
    detail::PVal v = p.parse();
    if (v.is_zero()) throw ParseError("form is identically zero", 0);
    int deg = v.degree();
    return HomForm(deg, std::move(v.terms));
}

}  // namespace k3pencil
