#pragma once

// Prime-field and small-extension arithmetic: F_p polynomial algebra,
// irreducibility tests, full factorization (squarefree / distinct-degree /
// Cantor-Zassenhaus), and generic F_{p^m} elements represented as coefficient
// vectors. This is the exact mod-p engine behind smoothness certification and
// extension-field point counting; nothing here is floating point.

#include "k3pencil/homform.hpp"

#include <cstdint>

namespace k3pencil {

using u64 = std::uint64_t;

struct FpCtx {
    u64 p;

    explicit FpCtx(u64 prime) : p(prime) {
        if (p < 2) throw Error("modulus must be a prime");
    }
    u64 add(u64 a, u64 b) const {
        u64 s = a + b;
        return s >= p ? s - p : s;
    }
    u64 sub(u64 a, u64 b) const { return a >= b ? a - b : a + p - b; }
    u64 neg(u64 a) const { return a ? p - a : 0; }
    u64 mul(u64 a, u64 b) const { return static_cast<u64>((__uint128_t)a * b % p); }
    u64 pow(u64 a, u64 e) const {
        u64 r = 1 % p;
        a %= p;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    u64 inv(u64 a) const {
        if (a % p == 0) throw Error("inverse of zero in F_p");
        return pow(a % p, p - 2);
    }
    u64 from_int(const Int& n) const {
        Int r = n % Int(static_cast<unsigned long>(p));
        if (r < 0) r += Int(static_cast<unsigned long>(p));
        return r.get_ui();
    }
};

// Dense polynomial over F_p; fp[i] is the coefficient of x^i.
using FpPoly = std::vector<u64>;

namespace fpp {

inline void trim(FpPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}
inline int deg(const FpPoly& f) { return static_cast<int>(f.size()) - 1; }
inline bool is_zero(const FpPoly& f) { return f.empty(); }
inline FpPoly x() { return FpPoly{0, 1}; }

inline FpPoly add(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    trim(r);
    return r;
}
inline FpPoly sub(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    trim(r);
    return r;
}
inline FpPoly mul(const FpCtx& F, const FpPoly& a, const FpPoly& b) {
    if (is_zero(a) || is_zero(b)) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    trim(r);
    return r;
}
inline FpPoly scale(const FpCtx& F, u64 s, const FpPoly& a) {
    FpPoly r = a;
    for (auto& c : r) c = F.mul(c, s);
    trim(r);
    return r;
}
inline std::pair<FpPoly, FpPoly> divrem(const FpCtx& F, FpPoly a, const FpPoly& b) {
    if (is_zero(b)) throw Error("division by zero polynomial");
    FpPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    u64 binv = F.inv(b.back());
    while (!is_zero(a) && a.size() >= b.size()) {
        size_t k = a.size() - b.size();
        u64 f = F.mul(a.back(), binv);
        q[k] = f;
        for (size_t i = 0; i < b.size(); ++i) a[i + k] = F.sub(a[i + k], F.mul(f, b[i]));
        trim(a);
    }
    trim(q);
    return {q, a};
}
inline FpPoly rem(const FpCtx& F, const FpPoly& a, const FpPoly& b) { return divrem(F, a, b).second; }
inline FpPoly monic(const FpCtx& F, const FpPoly& a) {
    if (is_zero(a)) return a;
    return scale(F, F.inv(a.back()), a);
}
inline FpPoly gcd(const FpCtx& F, FpPoly a, FpPoly b) {
    while (!is_zero(b)) {
        FpPoly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(F, a);
}
inline FpPoly derivative(const FpCtx& F, const FpPoly& a) {
    if (a.size() <= 1) return {};
    FpPoly r(a.size() - 1, 0);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.p);
    trim(r);
    return r;
}
inline u64 eval(const FpCtx& F, const FpPoly& a, u64 x0) {
    u64 r = 0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) r = F.add(F.mul(r, x0), *it);
    return r;
}

// a^e mod f, with an arbitrary-precision exponent.
inline FpPoly powmod(const FpCtx& F, FpPoly a, Int e, const FpPoly& f) {
    FpPoly r{1};
    a = rem(F, a, f);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = rem(F, mul(F, r, a), f);
        a = rem(F, mul(F, a, a), f);
        e >>= 1;
    }
    return r;
}

// Irreducibility over F_p via gcd with x^(p^i) - x for i <= deg/2.
inline bool is_irreducible(const FpCtx& F, const FpPoly& f) {
    int d = deg(f);
    if (d < 1) return false;
    FpPoly xq = x();
    Int p(static_cast<unsigned long>(F.p));
    for (int i = 1; i <= d / 2; ++i) {
        xq = powmod(F, xq, p, f);  // x^(p^i) mod f
        FpPoly g = gcd(F, sub(F, xq, x()), f);
        if (deg(g) > 0) return false;
    }
    return true;
}

// --- factorization over F_p (odd p) ---

// Squarefree part handling the x^p-composition edge.
inline FpPoly squarefree_part(const FpCtx& F, const FpPoly& f0) {
    FpPoly f = monic(F, f0);
    if (deg(f) <= 0) return f;
    FpPoly d = derivative(F, f);
    if (is_zero(d)) {
        // f = g(x^p); over F_p the roots of g are p-th powers of roots of f,
        // and c^(1/p) = c, so g has the same coefficient values.
        FpPoly g((deg(f) / F.p) + 1, 0);
        for (size_t i = 0; i < g.size(); ++i) g[i] = f[i * F.p];
        return squarefree_part(F, g);
    }
    FpPoly g = gcd(F, f, d);
    FpPoly s = divrem(F, f, g).first;
    if (deg(g) == 0) return fpp::monic(F, s);
    // factors whose multiplicity is divisible by p survive inside g; recurse
    // and take the lcm of the two squarefree products.
    FpPoly t = squarefree_part(F, g);
    return monic(F, divrem(F, mul(F, s, t), gcd(F, s, t)).first);
}

// Distinct-degree decomposition of a squarefree monic polynomial.
inline std::vector<std::pair<FpPoly, int>> distinct_degree(const FpCtx& F, FpPoly f) {
    std::vector<std::pair<FpPoly, int>> out;
    FpPoly xq = x();
    Int p(static_cast<unsigned long>(F.p));
    int d = 0;
    while (deg(f) > 0) {
        ++d;
        if (deg(f) < 2 * d) {
            out.emplace_back(f, deg(f));
            break;
        }
        xq = powmod(F, xq, p, f);
        FpPoly g = gcd(F, sub(F, xq, x()), f);
        if (deg(g) > 0) {
            out.emplace_back(g, d);
            f = divrem(F, f, g).first;
            xq = rem(F, xq, f);
        }
    }
    return out;
}

// Cantor-Zassenhaus equal-degree splitting (odd p), deterministic seed.
inline void equal_degree(const FpCtx& F, const FpPoly& f, int d, std::vector<FpPoly>& out,
                         u64& seed) {
    if (deg(f) == d) {
        out.push_back(monic(F, f));
        return;
    }
    Int exponent = (int_pow(Int(static_cast<unsigned long>(F.p)), d) - 1) / 2;
    while (true) {
        // deterministic pseudo-random polynomial of degree < deg f
        FpPoly a(deg(f), 0);
        for (auto& c : a) {
            seed = seed * 6364136223846793005ull + 1442695040888963407ull;
            c = (seed >> 17) % F.p;
        }
        trim(a);
        if (deg(a) < 1) continue;
        FpPoly g = gcd(F, a, f);
        if (deg(g) == 0) {
            FpPoly b = powmod(F, a, exponent, f);
            g = gcd(F, sub(F, b, FpPoly{1}), f);
        }
        if (deg(g) > 0 && deg(g) < deg(f)) {
            equal_degree(F, g, d, out, seed);
            equal_degree(F, divrem(F, f, g).first, d, out, seed);
            return;
        }
    }
}

// Monic irreducible factors of f (multiplicities dropped).
inline std::vector<FpPoly> irreducible_factors(const FpCtx& F, const FpPoly& f) {
    std::vector<FpPoly> out;
    FpPoly s = squarefree_part(F, f);
    u64 seed = 0x9E3779B97F4A7C15ull;
    for (auto& [g, d] : distinct_degree(F, s)) equal_degree(F, g, d, out, seed);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace fpp

// --- generic extension field F_p[s]/(modulus), elements as FpPoly ---

struct ExtCtx {
    FpCtx fp;
    FpPoly modulus;  // monic irreducible of degree k
    int k;

    ExtCtx(u64 p, FpPoly mod) : fp(p), modulus(std::move(mod)), k(fpp::deg(modulus)) {
        if (k < 1) throw Error("extension modulus must be nonconstant");
        if (modulus.back() != 1) modulus = fpp::monic(fp, modulus);
        if (!fpp::is_irreducible(fp, modulus) && k > 1)
            throw Error("extension modulus is reducible");
    }

    Int q() const { return int_pow(Int(static_cast<unsigned long>(fp.p)), k); }

    FpPoly reduce(const FpPoly& a) const { return fpp::rem(fp, a, modulus); }
    FpPoly add(const FpPoly& a, const FpPoly& b) const { return fpp::add(fp, a, b); }
    FpPoly sub(const FpPoly& a, const FpPoly& b) const { return fpp::sub(fp, a, b); }
    FpPoly mul(const FpPoly& a, const FpPoly& b) const { return reduce(fpp::mul(fp, a, b)); }
    FpPoly from_u64(u64 c) const {
        c %= fp.p;
        return c ? FpPoly{c} : FpPoly{};
    }
    FpPoly pow(FpPoly a, Int e) const {
        FpPoly r = from_u64(1);
        a = reduce(a);
        while (e > 0) {
            if (mpz_odd_p(e.get_mpz_t())) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    FpPoly inv(const FpPoly& a0) const {
        FpPoly a = reduce(a0);
        if (fpp::is_zero(a)) throw Error("inverse of zero in extension field");
        return pow(a, q() - 2);
    }
    bool is_zero(const FpPoly& a) const { return fpp::is_zero(reduce(a)); }
    // quadratic character: 0 on zero, +1 on squares, -1 otherwise (odd q)
    int chi(const FpPoly& a) const {
        FpPoly b = reduce(a);
        if (fpp::is_zero(b)) return 0;
        FpPoly r = pow(b, (q() - 1) / 2);
        if (r == from_u64(1)) return 1;
        return -1;
    }
};

// Polynomials with ExtCtx-element coefficients (used for singular-locus
// verification over residue fields of candidate points).
using ExtPoly = std::vector<FpPoly>;

namespace extp {

inline void trim(const ExtCtx&, ExtPoly& f) {
    while (!f.empty() && fpp::is_zero(f.back())) f.pop_back();
}
inline int deg(const ExtPoly& f) { return static_cast<int>(f.size()) - 1; }
inline bool is_zero(const ExtPoly& f) { return f.empty(); }

inline ExtPoly rem(const ExtCtx& E, ExtPoly a, const ExtPoly& b) {
    if (is_zero(b)) throw Error("division by zero polynomial");
    FpPoly binv = E.inv(b.back());
    while (!is_zero(a) && a.size() >= b.size()) {
        size_t k = a.size() - b.size();
        FpPoly f = E.mul(a.back(), binv);
        for (size_t i = 0; i < b.size(); ++i) a[i + k] = E.sub(a[i + k], E.mul(f, b[i]));
        trim(E, a);
    }
    return a;
}

inline ExtPoly gcd(const ExtCtx& E, ExtPoly a, ExtPoly b) {
    trim(E, a);
    trim(E, b);
    while (!is_zero(b)) {
        ExtPoly r = rem(E, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!is_zero(a)) {
        FpPoly linv = E.inv(a.back());
        for (auto& c : a) c = E.mul(c, linv);
    }
    return a;
}

}  // namespace extp

// Trivariate homogeneous form with F_p coefficients.
struct FpForm {
    int deg = 0;
    std::vector<std::pair<std::array<int, 3>, u64>> terms;
};

// Reduce an integer-primitive form mod p; empty result means p divides
// every coefficient (cannot happen for a primitive form).
inline FpForm reduce_mod_p(const HomForm& F, const FpCtx& ctx) {
    FpForm f;
    f.deg = F.deg;
    for (auto& [e, c] : F.terms) {
        if (den(c) != 1) throw Error("reduce_mod_p needs an integer form");
        u64 cc = ctx.from_int(num(c));
        if (cc) f.terms.emplace_back(e, cc);
    }
    return f;
}

inline FpForm fp_partial(const FpCtx& ctx, const FpForm& F, int i) {
    FpForm r;
    r.deg = F.deg > 0 ? F.deg - 1 : 0;
    for (auto& [e, c] : F.terms) {
        if (e[i] == 0) continue;
        auto e2 = e;
        e2[i] -= 1;
        u64 cc = ctx.mul(c, e[i] % ctx.p);
        if (cc) r.terms.emplace_back(e2, cc);
    }
    return r;
}

// Coefficients of x^i y^j after setting z = 1 (dense (deg+1)x(deg+1) grid).
inline std::vector<std::vector<u64>> fp_dehomogenize_z(const FpForm& F) {
    std::vector<std::vector<u64>> g(F.deg + 1, std::vector<u64>(F.deg + 1, 0));
    for (auto& [e, c] : F.terms) g[e[0]][e[1]] = c;  // exponents are distinct triples
    return g;
}

// Substitute y = y0 (an extension element), z = 1: polynomial in x over E.
inline ExtPoly fp_restrict_y(const ExtCtx& E, const FpForm& F, const FpPoly& y0) {
    auto g = fp_dehomogenize_z(F);
    int d = F.deg;
    // powers of y0
    std::vector<FpPoly> yp(d + 1);
    yp[0] = E.from_u64(1);
    for (int j = 1; j <= d; ++j) yp[j] = E.mul(yp[j - 1], y0);
    ExtPoly r(d + 1);
    for (int i = 0; i <= d; ++i) {
        FpPoly acc;
        for (int j = 0; j <= d - i; ++j)
            if (g[i][j]) acc = E.add(acc, E.mul(E.from_u64(g[i][j]), yp[j]));
        r[i] = acc;
    }
    extp::trim(E, r);
    return r;
}

}  // namespace k3pencil
