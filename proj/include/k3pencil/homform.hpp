#pragma once

// Projective plane objects over Q: points, lines and homogeneous trivariate
// forms with exact rational coefficients. Points and lines are canonically
// scaled to coprime integers with positive first nonzero entry, so equality
// and deduplication are exact.

#include "k3pencil/unipoly.hpp"

#include <array>
#include <map>
#include <sstream>

namespace k3pencil {

namespace detail {

inline std::array<Int, 3> canonical_triple(const std::array<Rational, 3>& v) {
    Int l = 1;
    for (auto& x : v) l = lcm(l, den(x));
    std::array<Int, 3> w;
    for (int i = 0; i < 3; ++i) w[i] = num(v[i]) * (l / den(v[i]));
    Int g = gcd(gcd(w[0], w[1]), w[2]);
    if (g == 0) throw Error("projective triple must be nonzero");
    for (int i = 0; i < 3; ++i)
        if (w[i] != 0) {
            if (w[i] < 0) g = -g;
            break;
        }
    for (auto& x : w) x /= g;
    return w;
}

}  // namespace detail

struct ProjPoint {
    std::array<Int, 3> v;  // canonical: coprime, first nonzero positive

    ProjPoint(const Rational& x, const Rational& y, const Rational& z)
        : v(detail::canonical_triple({x, y, z})) {}
    ProjPoint(long x, long y, long z)
        : ProjPoint(make_rational(x), make_rational(y), make_rational(z)) {}
    explicit ProjPoint(const std::array<Rational, 3>& a) : v(detail::canonical_triple(a)) {}

    bool operator==(const ProjPoint& o) const { return v == o.v; }
    bool operator!=(const ProjPoint& o) const { return !(*this == o); }
    bool operator<(const ProjPoint& o) const { return v < o.v; }

    Int height() const {
        Int h = 0;
        for (auto& x : v) h = std::max(h, Int(abs(x)));
        return h;
    }
    std::string str() const {
        return "(" + v[0].get_str() + ":" + v[1].get_str() + ":" + v[2].get_str() + ")";
    }
};

struct Line {
    std::array<Int, 3> a;  // ax + by + cz = 0, canonical as above

    Line(const Rational& x, const Rational& y, const Rational& z)
        : a(detail::canonical_triple({x, y, z})) {}
    Line(long x, long y, long z) : Line(make_rational(x), make_rational(y), make_rational(z)) {}
    explicit Line(const std::array<Rational, 3>& c) : a(detail::canonical_triple(c)) {}

    bool operator==(const Line& o) const { return a == o.a; }
    bool operator!=(const Line& o) const { return !(*this == o); }
    bool operator<(const Line& o) const { return a < o.a; }

    bool contains(const ProjPoint& p) const {
        return a[0] * p.v[0] + a[1] * p.v[1] + a[2] * p.v[2] == 0;
    }
    std::string str() const {
        std::ostringstream os;
        const char* names[3] = {"x", "y", "z"};
        bool first = true;
        for (int i = 0; i < 3; ++i) {
            if (a[i] == 0) continue;
            Int m = abs(a[i]);
            if (!first) os << (a[i] < 0 ? " - " : " + ");
            else if (a[i] < 0) os << "-";
            if (m != 1) os << m.get_str() << "*";
            os << names[i];
            first = false;
        }
        os << " = 0";
        return os.str();
    }
};

// Line through two distinct points (cross product).
inline Line line_through(const ProjPoint& p, const ProjPoint& q) {
    std::array<Rational, 3> c{make_rational(p.v[1] * q.v[2] - p.v[2] * q.v[1], 1),
                              make_rational(p.v[2] * q.v[0] - p.v[0] * q.v[2], 1),
                              make_rational(p.v[0] * q.v[1] - p.v[1] * q.v[0], 1)};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw Error("line through two equal points");
    return Line(c);
}

// Intersection point of two distinct lines.
inline ProjPoint meet(const Line& l, const Line& m) {
    std::array<Rational, 3> c{make_rational(l.a[1] * m.a[2] - l.a[2] * m.a[1], 1),
                              make_rational(l.a[2] * m.a[0] - l.a[0] * m.a[2], 1),
                              make_rational(l.a[0] * m.a[1] - l.a[1] * m.a[0], 1)};
    if (c[0] == 0 && c[1] == 0 && c[2] == 0) throw Error("meet of two equal lines");
    return ProjPoint(c);
}

// Homogeneous trivariate form, exponent triples (i,j,k) with i+j+k = degree.
struct HomForm {
    int deg = 0;
    std::map<std::array<int, 3>, Rational> terms;  // nonzero coefficients only

    HomForm() = default;
    HomForm(int degree, std::map<std::array<int, 3>, Rational> t) : deg(degree), terms(std::move(t)) {
        for (auto it = terms.begin(); it != terms.end();) {
            if (it->second == 0) it = terms.erase(it);
            else {
                if (it->first[0] + it->first[1] + it->first[2] != deg)
                    throw Error("non-homogeneous term in form");
                ++it;
            }
        }
    }

    bool is_zero() const { return terms.empty(); }
    bool operator==(const HomForm& o) const { return deg == o.deg && terms == o.terms; }

    Rational coeff(int i, int j, int k) const {
        auto it = terms.find({i, j, k});
        return it == terms.end() ? make_rational(0) : it->second;
    }
};

inline HomForm operator*(const Rational& s, const HomForm& f) {
    HomForm r;
    r.deg = f.deg;
    if (s == 0) return r;
    for (auto& [e, c] : f.terms) r.terms[e] = s * c;
    return r;
}

inline Rational eval(const HomForm& f, const std::array<Rational, 3>& p) {
    Rational r = make_rational(0);
    for (auto& [e, c] : f.terms)
        r += c * rat_pow(p[0], e[0]) * rat_pow(p[1], e[1]) * rat_pow(p[2], e[2]);
    return r;
}

inline Rational eval(const HomForm& f, const ProjPoint& p) {
    std::array<Rational, 3> a{make_rational(p.v[0], 1), make_rational(p.v[1], 1),
                              make_rational(p.v[2], 1)};
    return eval(f, a);
}

// Partial derivative with respect to coordinate i (0=x, 1=y, 2=z).
inline HomForm partial(const HomForm& f, int i) {
    HomForm r;
    r.deg = f.deg > 0 ? f.deg - 1 : 0;
    for (auto& [e, c] : f.terms) {
        if (e[i] == 0) continue;
        auto e2 = e;
        e2[i] -= 1;
        r.terms[e2] += c * make_rational(e[i]);
        if (r.terms[e2] == 0) r.terms.erase(e2);
    }
    return r;
}

// Multiply coefficients up to a primitive integer form with positive leading
// (graded-lex first) coefficient; returns the form and the absorbed unit.
inline std::pair<HomForm, Rational> primitive_int(const HomForm& f) {
    if (f.is_zero()) return {f, make_rational(1)};
    Int l = 1;
    for (auto& [e, c] : f.terms) l = lcm(l, den(c));
    Int g = 0;
    for (auto& [e, c] : f.terms) g = gcd(g, num(c) * (l / den(c)));
    // std::map with array keys orders lexicographically by (i,j,k); the last
    // entry is the graded-lex leading monomial for homogeneous forms.
    auto lead = f.terms.rbegin();
    if (sign(lead->second) < 0) g = -g;
    Rational unit = make_rational(g, l);
    HomForm prim = make_rational(l, g) * f;
    return {prim, unit};
}

// Canonical printed form: terms in lexicographic order x > y > z.
inline std::string to_string(const HomForm& f) {
    if (f.is_zero()) return "0";
    std::string s;
    const char* names[3] = {"x", "y", "z"};
    for (auto it = f.terms.rbegin(); it != f.terms.rend(); ++it) {
        const auto& [e, c] = *it;
        bool first = s.empty();
        if (!first) s += sign(c) < 0 ? " - " : " + ";
        else if (sign(c) < 0) s += "-";
        Rational mag = abs(c);
        bool hasvar = e[0] + e[1] + e[2] > 0;
        if (mag != 1 || !hasvar) {
            s += to_string(mag);
            if (hasvar) s += "*";
        }
        bool started = false;
        for (int i = 0; i < 3; ++i) {
            if (e[i] == 0) continue;
            if (started) s += "*";
            s += names[i];
            if (e[i] > 1) s += "^" + std::to_string(e[i]);
            started = true;
        }
    }
    return s;
}

}  // namespace k3pencil
