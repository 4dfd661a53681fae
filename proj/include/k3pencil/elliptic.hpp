#pragma once

// Exact elliptic-curve machinery over the rationals: quartic models
// w^2 = quartic(u) arising from normalized pullback bisections, the
// transformation to short Weierstrass form, the chord-tangent group law,
// the Mazur-bounded torsion test, and naive search certificates for
// positive rank.

#include "k3pencil/unipoly.hpp"

#include <numeric>

namespace k3pencil {

struct WeierstrassCurve {
    Rational A, B;  // y^2 = x^3 + A x + B

    WeierstrassCurve(const Rational& a, const Rational& b) : A(a), B(b) {
        if (discriminant() == 0) throw Error("singular Weierstrass model");
    }
    Rational discriminant() const {
        return make_rational(-16) * (make_rational(4) * A * A * A + make_rational(27) * B * B);
    }
    Rational j_invariant() const {
        Rational c4cubed = make_rational(4) * A * A * A;
        return make_rational(1728) * make_rational(4) * A * A * A /
               (make_rational(4) * A * A * A + make_rational(27) * B * B);
    }
    bool operator==(const WeierstrassCurve& o) const { return A == o.A && B == o.B; }
};

struct ECPoint {
    bool infinity = true;
    Rational x, y;

    static ECPoint at_infinity() { return ECPoint{}; }
    static ECPoint affine(const Rational& x, const Rational& y) { return ECPoint{false, x, y}; }
    bool operator==(const ECPoint& o) const {
        if (infinity || o.infinity) return infinity == o.infinity;
        return x == o.x && y == o.y;
    }
};

inline bool on_curve(const WeierstrassCurve& E, const ECPoint& P) {
    if (P.infinity) return true;
    return P.y * P.y == P.x * P.x * P.x + E.A * P.x + E.B;
}

inline ECPoint negate(const WeierstrassCurve&, const ECPoint& P) {
    if (P.infinity) return P;
    return ECPoint::affine(P.x, Rational(-P.y));
}

inline ECPoint add(const WeierstrassCurve& E, const ECPoint& P, const ECPoint& Q) {
    if (!on_curve(E, P) || !on_curve(E, Q)) throw Error("group law on a point off the curve");
    if (P.infinity) return Q;
    if (Q.infinity) return P;
    if (P.x == Q.x && P.y == Rational(-Q.y)) return ECPoint::at_infinity();
    Rational lambda;
    if (P.x == Q.x)
        lambda = (make_rational(3) * P.x * P.x + E.A) / (make_rational(2) * P.y);
    else
        lambda = (Q.y - P.y) / (Q.x - P.x);
    Rational x3 = lambda * lambda - P.x - Q.x;
    Rational y3 = lambda * (P.x - x3) - P.y;
    return ECPoint::affine(x3, y3);
}

inline ECPoint multiply(const WeierstrassCurve& E, long n, ECPoint P) {
    if (n < 0) {
        n = -n;
        P = negate(E, P);
    }
    ECPoint R = ECPoint::at_infinity();
    while (n) {
        if (n & 1) R = add(E, R, P);
        P = add(E, P, P);
        n >>= 1;
    }
    return R;
}

// Mazur's theorem bounds rational torsion order by 12; the full sweep is
// cheaper to audit than the admissible-order list.
inline bool is_torsion(const WeierstrassCurve& E, const ECPoint& P) {
    if (!on_curve(E, P)) throw Error("torsion test on a point off the curve");
    ECPoint Q = ECPoint::at_infinity();
    for (int n = 1; n <= 12; ++n) {
        Q = add(E, Q, P);
        if (Q.infinity) return true;
    }
    return false;
}

// w^2 = co[4] u^4 + ... + co[0]; must be squarefree (a smooth affine model).
struct QuarticModel {
    std::array<Rational, 5> co;  // lowest degree first

    explicit QuarticModel(const std::array<Rational, 5>& c) : co(c) {
        UniPoly f({co[0], co[1], co[2], co[3], co[4]});
        if (f.degree() < 3) throw Error("quartic model must have degree >= 3");
        if (poly_gcd(f, derivative(f)).degree() != 0) throw Error("quartic is not squarefree");
    }
    Rational value(const Rational& u) const {
        return eval(UniPoly({co[0], co[1], co[2], co[3], co[4]}), u);
    }
};

// Classical invariants of the binary quartic; the Jacobian of the 2-covering
// w^2 = q(u) is y^2 = x^3 - 27 I x - 27 J.
inline std::pair<Rational, Rational> quartic_invariants(const QuarticModel& q) {
    const Rational &e = q.co[0], &d = q.co[1], &c = q.co[2], &b = q.co[3], &a = q.co[4];
    Rational I = make_rational(12) * a * e - make_rational(3) * b * d + c * c;
    Rational J = make_rational(72) * a * c * e + make_rational(9) * b * c * d -
                 make_rational(27) * a * d * d - make_rational(27) * e * b * b -
                 make_rational(2) * c * c * c;
    return {I, J};
}

inline WeierstrassCurve jacobian_cubic(const QuarticModel& q) {
    auto [I, J] = quartic_invariants(q);
    return WeierstrassCurve(make_rational(-27) * I, make_rational(-27) * J);
}

// Rational isomorphism test for short Weierstrass models: same j and a
// square twist factor u^2 with A2 = (u^2)^2 A1, B2 = (u^2)^3 B1.
inline bool isomorphic_over_Q(const WeierstrassCurve& E1, const WeierstrassCurve& E2) {
    if (E1.j_invariant() != E2.j_invariant()) return false;
    if (E1.A != 0 && E1.B != 0) {
        Rational s = (E2.B * E1.A) / (E1.B * E2.A);  // u^2 if an isomorphism exists
        if (!is_square(s)) return false;
        return E2.A == s * s * E1.A && E2.B == s * s * s * E1.B;
    }
    if (E1.B == 0) {  // j = 1728
        if (E2.B != 0) return false;
        Rational t = E2.A / E1.A;  // u^4
        auto r = rat_sqrt(t);
        return r && is_square(*r);
    }
    // j = 0: E1.A == 0
    if (E2.A != 0) return false;
    Rational s = E2.B / E1.B;  // u^6 = (u^2)^3
    Int n3 = num(s), d3 = den(s);
    Int rn, rd;
    if (mpz_root(rn.get_mpz_t(), n3.get_mpz_t(), 3) == 0) return false;
    if (mpz_root(rd.get_mpz_t(), d3.get_mpz_t(), 3) == 0) return false;
    return is_square(make_rational(rn, rd));
}

// The twist factor u^2 between isomorphic models (generic case), for reports.
inline std::optional<Rational> twist_factor(const WeierstrassCurve& E1, const WeierstrassCurve& E2) {
    if (!isomorphic_over_Q(E1, E2)) return std::nullopt;
    if (E1.A != 0 && E1.B != 0) return Rational((E2.B * E1.A) / (E1.B * E2.A));
    return make_rational(1);  // degenerate j: not needed by the pipelines
}

struct QuarticToWeierstrass {
    WeierstrassCurve curve;       // short model of the quartic's own curve
    ECPoint image;                // image of the supplied point (often infinity)
    ECPoint companion;            // image of the second point above u0, when finite
    WeierstrassCurve jacobian;    // y^2 = x^3 - 27I x - 27J
    Rational twist;               // square factor between curve and jacobian
};

namespace detail {

// shift u -> u + u0
inline std::array<Rational, 5> taylor_shift(const std::array<Rational, 5>& co, const Rational& u0) {
    UniPoly f({co[0], co[1], co[2], co[3], co[4]});
    UniPoly shifted = UniPoly::constant(make_rational(0));
    // f(u + u0) via Horner on the shifted variable
    for (int i = f.degree(); i >= 0; --i)
        shifted = shifted * UniPoly({u0, make_rational(1)}) + UniPoly::constant(f.coeff(i));
    std::array<Rational, 5> out;
    for (int i = 0; i < 5; ++i) out[i] = shifted.coeff(i);
    return out;
}

struct GeneralModel {
    Rational a1, a2, a3, a4, a6;
};

inline std::pair<WeierstrassCurve, std::vector<ECPoint>> to_short(const GeneralModel& m,
                                                                  std::vector<ECPoint> pts) {
    // y -> y - (a1 x + a3)/2
    Rational A2 = m.a2 + m.a1 * m.a1 / make_rational(4);
    Rational A4 = m.a4 + m.a1 * m.a3 / make_rational(2);
    Rational A6 = m.a6 + m.a3 * m.a3 / make_rational(4);
    for (auto& P : pts)
        if (!P.infinity) P.y = P.y + (m.a1 * P.x + m.a3) / make_rational(2);
    // x -> x - A2/3
    Rational A = A4 - A2 * A2 / make_rational(3);
    Rational B = make_rational(2, 27) * A2 * A2 * A2 - A2 * A4 / make_rational(3) + A6;
    for (auto& P : pts)
        if (!P.infinity) P.x = P.x + A2 / make_rational(3);
    WeierstrassCurve E(A, B);
    for (auto& P : pts)
        if (!on_curve(E, P)) throw Error("point transport to the short model failed");
    return {E, pts};
}

}  // namespace detail

// Transformation of w^2 = quartic(u) with a marked rational point to a short
// Weierstrass model. With no point supplied the leading coefficient must be
// a square (the model then has rational points at infinity).
inline QuarticToWeierstrass quartic_to_weierstrass(const QuarticModel& q,
                                                   std::optional<std::pair<Rational, Rational>> pt) {
    std::array<Rational, 5> co = q.co;
    if (!pt) {
        if (!is_square(q.co[4]))
            throw Error("no rational point supplied and the leading coefficient is not a square");
        // u -> 1/u, w -> w/u^2 reverses the coefficients; the points at
        // infinity land at u = 0 with w = +-sqrt(a)
        std::array<Rational, 5> rev{co[4], co[3], co[2], co[1], co[0]};
        QuarticModel qr(rev);
        return quartic_to_weierstrass(qr, std::make_pair(make_rational(0), *rat_sqrt(co[4])));
    }
    auto [u0, w0] = *pt;
    if (q.value(u0) != w0 * w0) throw Error("marked point is not on the quartic");
    co = detail::taylor_shift(co, u0);  // marked point now at u = 0

    const Rational &d = co[1], &c = co[2], &b = co[3], &a = co[4];
    if (w0 != 0) {
        // classical 2-covering trivialization around (0, w0)
        detail::GeneralModel m{d / w0, c - d * d / (make_rational(4) * w0 * w0),
                               make_rational(2) * w0 * b, make_rational(-4) * w0 * w0 * a,
                               Rational((c - d * d / (make_rational(4) * w0 * w0)) *
                                        (make_rational(-4) * w0 * w0 * a))};
        // (0, w0) -> infinity; (0, -w0) -> a finite point
        Rational X0 = d * d / (make_rational(4) * w0 * w0) - c;
        Rational Y0 = make_rational(-2) * b * w0 + c * d / w0 -
                      d * d * d / (make_rational(4) * w0 * w0 * w0);
        auto [E, pts] = detail::to_short(m, {ECPoint::affine(X0, Y0)});
        WeierstrassCurve jac = jacobian_cubic(q);
        if (!isomorphic_over_Q(E, jac)) throw Error("model is not isomorphic to the Jacobian");
        QuarticToWeierstrass out{E, ECPoint::at_infinity(), pts[0], jac,
                                 twist_factor(E, jac).value_or(make_rational(1))};
        return out;
    }
    // w0 = 0: u = 0 is a simple root (quartic squarefree), invert u and
    // monicize the resulting cubic: Y^2 = X^3 + cX^2 + bd X + a d^2
    if (d == 0) throw Error("marked root is not simple");
    detail::GeneralModel m{make_rational(0), c, make_rational(0), b * d, a * d * d};
    auto [E, pts] = detail::to_short(m, {});
    WeierstrassCurve jac = jacobian_cubic(q);
    if (!isomorphic_over_Q(E, jac)) throw Error("model is not isomorphic to the Jacobian");
    QuarticToWeierstrass out{E, ECPoint::at_infinity(), ECPoint::at_infinity(), jac,
                             twist_factor(E, jac).value_or(make_rational(1))};
    return out;
}

// Integral model (u^2-scaling) of a rational short Weierstrass curve,
// with the scale factor lambda: (x, y) -> (lambda^2 x, lambda^3 y).
inline std::pair<WeierstrassCurve, Int> integral_model(const WeierstrassCurve& E) {
    Int l = lcm(den(E.A), den(E.B));
    // smallest lambda with lambda^4 A, lambda^6 B integral divides lcm; take l
    Int lam = 1;
    for (auto& [prime, mult] : factorize(l)) {
        // need 4a >= v_p(den A), 6a >= v_p(den B)
        unsigned need = 0;
        Int pk = prime;
        unsigned va = 0, vb = 0;
        Int da = den(E.A), db = den(E.B);
        while (mpz_divisible_p(da.get_mpz_t(), pk.get_mpz_t())) {
            ++va;
            pk *= prime;
        }
        pk = prime;
        while (mpz_divisible_p(db.get_mpz_t(), pk.get_mpz_t())) {
            ++vb;
            pk *= prime;
        }
        need = std::max((va + 3) / 4, (vb + 5) / 6);
        lam *= int_pow(prime, need);
    }
    Rational l4 = make_rational(int_pow(lam, 4), 1), l6 = make_rational(int_pow(lam, 6), 1);
    return {WeierstrassCurve(E.A * l4, E.B * l6), lam};
}

// Deterministic naive search for a non-torsion point: x = m/e^2 over the
// integral model, candidates ordered by max(|m|, e^2), then m ascending.
inline std::optional<ECPoint> rank_ge_one_certificate(const WeierstrassCurve& E, long heightBound) {
    if (heightBound < 1) throw Error("height bound must be >= 1");
    auto [Ei, lam] = integral_model(E);
    struct Cand {
        long m, e;
    };
    std::vector<Cand> cands;
    for (long e = 1; static_cast<long long>(e) * e <= heightBound; ++e)
        for (long m = -heightBound; m <= heightBound; ++m) {
            if (std::gcd(std::abs(m), e) != 1) continue;
            cands.push_back({m, e});
        }
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
        long ha = std::max(std::abs(a.m), a.e * a.e), hb = std::max(std::abs(b.m), b.e * b.e);
        if (ha != hb) return ha < hb;
        if (a.m != b.m) return a.m < b.m;
        return a.e < b.e;
    });
    Rational lam2 = make_rational(lam * lam, 1), lam3 = make_rational(lam * lam * lam, 1);
    for (const Cand& cand : cands) {
        Rational x = make_rational(Int(cand.m), Int(cand.e) * Int(cand.e));
        Rational rhs = x * x * x + Ei.A * x + Ei.B;
        auto w = rat_sqrt(rhs);
        if (!w) continue;
        ECPoint P = ECPoint::affine(x, *w);
        if (!is_torsion(Ei, P)) {
            // map back to the input model
            return ECPoint::affine(P.x / lam2, P.y / lam3);
        }
        if (*w != 0) {
            ECPoint Pm = ECPoint::affine(x, Rational(-*w));
            if (!is_torsion(Ei, Pm)) return ECPoint::affine(Pm.x / lam2, Pm.y / lam3);
        }
    }
    return std::nullopt;
}

// Rational points on the quartic with u = m/n of height <= bound,
// deduplicated and sorted by height then numerator.
inline std::vector<std::pair<Rational, Rational>> quartic_point_search(const QuarticModel& q,
                                                                       long heightBound) {
    if (heightBound < 1) throw Error("height bound must be >= 1");
    std::vector<std::pair<Rational, Rational>> out;
    auto push = [&](const Rational& u, const Rational& w) {
        auto pt = std::make_pair(u, w);
        if (std::find(out.begin(), out.end(), pt) == out.end()) out.push_back(pt);
    };
    for (long n = 1; n <= heightBound; ++n)
        for (long m = -heightBound; m <= heightBound; ++m) {
            if (std::gcd(std::abs(m), n) != 1) continue;
            Rational u = make_rational(m, n);
            auto w = rat_sqrt(q.value(u));
            if (!w) continue;
            push(u, *w);
            if (*w != 0) push(u, Rational(-*w));
        }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        Int ha = height(a.first), hb = height(b.first);
        if (ha != hb) return ha < hb;
        if (a.first != b.first) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

}  // namespace k3pencil
