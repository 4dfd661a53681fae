#pragma once

// Dense univariate polynomials over the rationals, all arithmetic exact:
// subresultant gcd, Yun squarefree decomposition, resultants (PRS and
// Sylvester-determinant routes), discriminants, rational roots, cyclotomic
// polynomials and Newton's identities.

#include "k3pencil/rational.hpp"

#include <algorithm>
#include <cassert>
#include <map>

namespace k3pencil {

struct UniPoly {
    // c[i] is the coefficient of t^i; empty vector encodes the zero polynomial.
    std::vector<Rational> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { trim(); }

    static UniPoly zero() { return UniPoly{}; }
    static UniPoly constant(const Rational& a) { return UniPoly(std::vector<Rational>{a}); }
    static UniPoly t() { return UniPoly({make_rational(0), make_rational(1)}); }
    // t^k with coefficient a
    static UniPoly monomial(const Rational& a, int k) {
        std::vector<Rational> v(k + 1, make_rational(0));
        v[k] = a;
        return UniPoly(std::move(v));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    const Rational& lead() const {
        static const Rational z = make_rational(0);
        return c.empty() ? z : c.back();
    }
    Rational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c.size())) return make_rational(0);
        return c[i];
    }
    bool operator==(const UniPoly& o) const { return c == o.c; }
    bool operator!=(const UniPoly& o) const { return !(*this == o); }
};

inline UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> r(std::max(a.c.size(), b.c.size()), make_rational(0));
    for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
    for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
    return UniPoly(std::move(r));
}

inline UniPoly operator-(const UniPoly& a) {
    UniPoly r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

inline UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

inline UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly::zero();
    std::vector<Rational> r(a.c.size() + b.c.size() - 1, make_rational(0));
    for (size_t i = 0; i < a.c.size(); ++i)
        for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
    return UniPoly(std::move(r));
}

inline UniPoly operator*(const Rational& s, const UniPoly& a) {
    if (s == 0) return UniPoly::zero();
    UniPoly r = a;
    for (auto& x : r.c) x *= s;
    return r;
}

inline UniPoly operator*(const UniPoly& a, const Rational& s) { return s * a; }

inline UniPoly poly_pow(const UniPoly& a, unsigned e) {
    UniPoly r = UniPoly::constant(make_rational(1));
    UniPoly b = a;
    while (e) {
        if (e & 1) r = r * b;
        b = b * b;
        e >>= 1;
    }
    return r;
}

inline UniPoly derivative(const UniPoly& a) {
    if (a.degree() < 1) return UniPoly::zero();
    std::vector<Rational> r(a.c.size() - 1);
    for (size_t i = 1; i < a.c.size(); ++i) r[i - 1] = make_rational(static_cast<long>(i)) * a.c[i];
    return UniPoly(std::move(r));
}

inline Rational eval(const UniPoly& a, const Rational& x) {
    Rational r = make_rational(0);
    for (auto it = a.c.rbegin(); it != a.c.rend(); ++it) r = r * x + *it;
    return r;
}

// Quotient and remainder in Q[t].
inline std::pair<UniPoly, UniPoly> divrem(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    UniPoly r = a;
    std::vector<Rational> q(std::max(0, a.degree() - b.degree() + 1), make_rational(0));
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int k = r.degree() - b.degree();
        Rational f = r.lead() / b.lead();
        q[k] = f;
        for (int i = 0; i <= b.degree(); ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    return {UniPoly(std::move(q)), r};
}

inline UniPoly exact_div(const UniPoly& a, const UniPoly& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw Error("exact polynomial division left a remainder");
    return q;
}

inline bool divides(const UniPoly& b, const UniPoly& a) {
    if (b.is_zero()) return a.is_zero();
    return divrem(a, b).second.is_zero();
}

inline UniPoly monic(const UniPoly& a) {
    if (a.is_zero()) return a;
    return make_rational(1) / a.lead() * a;
}

// Primitive integer model: returns prim with coprime integer coefficients and
// positive leading coefficient, and the unit u with a = u * prim.
inline std::pair<UniPoly, Rational> primitive_int(const UniPoly& a) {
    if (a.is_zero()) return {a, make_rational(1)};
    Int l = 1;
    for (auto& x : a.c) l = lcm(l, den(x));
    Int g = 0;
    for (auto& x : a.c) g = gcd(g, num(x) * (l / den(x)));
    if (sign(a.lead()) < 0) g = -g;
    Rational unit = make_rational(g, l);
    UniPoly prim = make_rational(l, g) * a;
    return {prim, unit};
}

// --- gcd: subresultant polynomial remainder sequence over the integers ---

namespace detail {

// Pseudo-remainder of integer polynomials: lc(b)^(da-db+1) * a  mod  b.
inline UniPoly prem(const UniPoly& a, const UniPoly& b) {
    UniPoly r = a;
    int da = a.degree(), db = b.degree();
    Rational l = b.lead();
    Rational scale = rat_pow(l, static_cast<unsigned long>(da - db + 1));
    r = scale * r;
    while (!r.is_zero() && r.degree() >= db) {
        int k = r.degree() - db;
        Rational f = r.lead() / l;
        for (int i = 0; i <= db; ++i) r.c[i + k] -= f * b.c[i];
        r.trim();
    }
    return r;
}

}  // namespace detail

// Monic gcd in Q[t]; gcd(0,0) = 0.
inline UniPoly poly_gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return monic(b);
    if (b.is_zero()) return monic(a);
    UniPoly f = primitive_int(a).first;
    UniPoly g = primitive_int(b).first;
    if (f.degree() < g.degree()) std::swap(f, g);
    Rational hh = make_rational(1), gg = make_rational(1);
    while (true) {
        int delta = f.degree() - g.degree();
        UniPoly r = detail::prem(f, g);
        if (r.is_zero()) break;
        if (r.degree() == 0) return UniPoly::constant(make_rational(1));
        f = g;
        Rational divisor = gg * rat_pow(hh, static_cast<unsigned long>(delta));
        g = make_rational(1) / divisor * r;
        gg = f.lead();
        // h = h^(1-delta) * g^delta
        hh = delta == 0 ? hh : rat_pow(gg, static_cast<unsigned long>(delta)) / rat_pow(hh, static_cast<unsigned long>(delta - 1));
    }
    return monic(primitive_int(g).first);
}

// --- squarefree decomposition (Yun) ---

struct SquarefreeDecomposition {
    // factors as primitive integer polynomials with positive leading
    // coefficient, paired with their multiplicity, multiplicities increasing
    std::vector<std::pair<UniPoly, int>> parts;
    Rational unit = make_rational(1);

    UniPoly reconstruct() const {
        UniPoly r = UniPoly::constant(unit);
        for (auto& [f, e] : parts) r = r * poly_pow(f, static_cast<unsigned>(e));
        return r;
    }
};

inline SquarefreeDecomposition squarefree_decompose(const UniPoly& f) {
    if (f.is_zero()) throw Error("squarefree decomposition of the zero polynomial");
    SquarefreeDecomposition out;
    if (f.degree() == 0) {
        out.unit = f.c[0];
        return out;
    }
    UniPoly fp = derivative(f);
    UniPoly u = poly_gcd(f, fp);
    UniPoly v = exact_div(f, u);
    UniPoly w = exact_div(fp, u);
    int i = 1;
    while (v.degree() > 0) {
        UniPoly z = w - derivative(v);
        UniPoly h = poly_gcd(v, z);
        if (h.degree() > 0) out.parts.emplace_back(primitive_int(h).first, i);
        v = exact_div(v, h);
        w = exact_div(z, h);
        ++i;
    }
    UniPoly prod = UniPoly::constant(make_rational(1));
    for (auto& [g, e] : out.parts) prod = prod * poly_pow(g, static_cast<unsigned>(e));
    UniPoly q = exact_div(f, prod);
    if (q.degree() != 0) throw Error("squarefree decomposition unit is not constant");
    out.unit = q.c[0];
    return out;
}

inline UniPoly squarefree_part(const UniPoly& f) {
    auto d = squarefree_decompose(f);
    UniPoly r = UniPoly::constant(make_rational(1));
    for (auto& [g, e] : d.parts) r = r * g;
    return r;
}

// --- resultants ---

// Euclidean resultant with sign tracking; matches the Sylvester determinant
// with the first argument's coefficient rows on top.
inline Rational resultant(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) throw Error("resultant of the zero polynomial");
    UniPoly f = a, g = b;
    Rational acc = make_rational(1);
    bool neg = false;
    while (true) {
        if (f.degree() == 0) {
            acc *= rat_pow(f.c[0], static_cast<unsigned long>(g.degree()));
            break;
        }
        if (g.degree() == 0) {
            acc *= rat_pow(g.c[0], static_cast<unsigned long>(f.degree()));
            break;
        }
        if (f.degree() < g.degree()) {
            if ((f.degree() & 1) && (g.degree() & 1)) neg = !neg;
            std::swap(f, g);
        }
        UniPoly r = divrem(f, g).second;
        if (r.is_zero()) return make_rational(0);
        if ((f.degree() & 1) && (g.degree() & 1)) neg = !neg;
        acc *= rat_pow(g.lead(), static_cast<unsigned long>(f.degree() - r.degree()));
        f = g;
        g = r;
    }
    return neg ? Rational(-acc) : acc;
}

// Sylvester-determinant route, kept as the independent second leg of the
// dual-route check (first argument's coefficient rows on top).
inline Rational resultant_sylvester(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) throw Error("resultant of the zero polynomial");
    int m = a.degree(), n = b.degree();
    if (m == 0 && n == 0) return make_rational(1);
    int size = m + n;
    std::vector<std::vector<Rational>> M(size, std::vector<Rational>(size, make_rational(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = a.c[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = b.c[n - j];
    // exact Gaussian elimination
    Rational det = make_rational(1);
    for (int col = 0; col < size; ++col) {
        int piv = -1;
        for (int r = col; r < size; ++r)
            if (M[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) return make_rational(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        for (int r = col + 1; r < size; ++r) {
            if (M[r][col] == 0) continue;
            Rational f = M[r][col] / M[col][col];
            for (int cc = col; cc < size; ++cc) M[r][cc] -= f * M[col][cc];
        }
    }
    return det;
}

inline Rational discriminant(const UniPoly& f) {
    if (f.degree() < 1) throw Error("discriminant of a constant polynomial");
    int n = f.degree();
    if (n == 1) return make_rational(1);
    Rational res = resultant(f, derivative(f));
    Rational d = res / f.lead();
    return ((static_cast<long>(n) * (n - 1) / 2) % 2) ? Rational(-d) : d;
}

// --- rational roots (rational-root theorem on the primitive integer model) ---

inline std::vector<Rational> rational_roots(const UniPoly& f) {
    if (f.is_zero()) throw Error("rational roots of the zero polynomial");
    std::vector<Rational> roots;
    UniPoly g = primitive_int(f).first;
    // strip powers of t
    int k = 0;
    while (k < static_cast<int>(g.c.size()) && g.c[k] == 0) ++k;
    if (k > 0) {
        roots.push_back(make_rational(0));
        g = UniPoly(std::vector<Rational>(g.c.begin() + k, g.c.end()));
    }
    if (g.degree() < 1) return roots;
    Int a0 = num(g.c[0]);
    Int ad = num(g.lead());
    auto ps = divisors(a0);
    auto qs = divisors(ad);
    for (const Int& p : ps)
        for (const Int& q : qs) {
            if (gcd(p, q) != 1) continue;
            for (int s : {1, -1}) {
                Rational cand = make_rational(s * p, q);
                if (eval(g, cand) == 0) roots.push_back(cand);
            }
        }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

// --- cyclotomic polynomials ---

inline UniPoly cyclotomic(unsigned n) {
    if (n == 0) throw Error("cyclotomic index must be positive");
    static std::map<unsigned, UniPoly> cache;
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // t^n - 1 divided by all lower cyclotomics at divisors of n
    std::vector<Rational> tn(n + 1, make_rational(0));
    tn[0] = make_rational(-1);
    tn[n] = make_rational(1);
    UniPoly r = UniPoly(std::move(tn));
    for (unsigned d = 1; d < n; ++d)
        if (n % d == 0) r = exact_div(r, cyclotomic(d));
    cache[n] = r;
    return r;
}

inline unsigned long euler_phi(unsigned long n) {
    unsigned long result = n;
    for (unsigned long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    if (n > 1) result -= result / n;
    return result;
}

// --- Newton's identities ---

// Power sums p_1..p_m of the roots of a monic polynomial.
inline std::vector<Rational> power_sums_from_poly(const UniPoly& f, int m) {
    if (f.is_zero() || f.lead() != 1) throw Error("power sums require a monic polynomial");
    int d = f.degree();
    // e_k = (-1)^k c_{d-k}
    std::vector<Rational> e(d + 1, make_rational(0));
    e[0] = make_rational(1);
    for (int k = 1; k <= d; ++k) e[k] = (k % 2 ? Rational(-f.coeff(d - k)) : f.coeff(d - k));
    std::vector<Rational> p(m + 1, make_rational(0));
    for (int k = 1; k <= m; ++k) {
        Rational s = make_rational(0);
        for (int i = 1; i < k && i <= d; ++i) {
            Rational term = e[i] * p[k - i];
            s += (i % 2 ? term : Rational(-term));
        }
        if (k <= d) {
            Rational term = make_rational(k) * e[k];
            s += (k % 2 ? term : Rational(-term));
        }
        p[k] = s;
    }
    return std::vector<Rational>(p.begin() + 1, p.end());
}

// Monic polynomial of degree d from its first d power sums.
inline UniPoly poly_from_power_sums(const std::vector<Rational>& sums, int d) {
    if (static_cast<int>(sums.size()) < d) throw Error("need d power sums to rebuild a degree-d polynomial");
    std::vector<Rational> e(d + 1, make_rational(0));
    e[0] = make_rational(1);
    for (int k = 1; k <= d; ++k) {
        Rational s = make_rational(0);
        for (int i = 1; i <= k; ++i) {
            Rational term = e[k - i] * sums[i - 1];
            s += (i % 2 ? term : Rational(-term));
        }
        e[k] = s / make_rational(k);
    }
    std::vector<Rational> c(d + 1, make_rational(0));
    for (int k = 0; k <= d; ++k) c[d - k] = (k % 2 ? Rational(-e[k]) : e[k]);
    return UniPoly(std::move(c));
}

inline std::string to_string(const UniPoly& f, const std::string& var = "t") {
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.degree(); i >= 0; --i) {
        Rational a = f.coeff(i);
        if (a == 0) continue;
        bool first = s.empty();
        if (!first) s += sign(a) < 0 ? " - " : " + ";
        else if (sign(a) < 0) s += "-";
        Rational mag = abs(a);
        if (mag != 1 || i == 0) s += to_string(mag);
        if (i > 0) {
            if (mag != 1) s += "*";
            s += var;
            if (i > 1) s += "^" + std::to_string(i);
        }
    }
    return s;
}

}  // namespace k3pencil
