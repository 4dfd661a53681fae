#pragma once

// Pencil fibrations and saliently ramified multisections. The pencil of lines
// through a base point gives a genus-2 fibration (base point regular or off
// B) or a genus-1 fibration (base point a node of B). Fibers correspond to
// lines; a fiber parameter is singular exactly when the line meets B with a
// repeated intersection, which is detected by the discriminant of the binary
// sextic obtained by restricting F along the moving line.
//
// Intersection points are never built as number-field elements: odd-
// multiplicity points travel to the pencil parameter line through resultants,
// and the saliently-ramified test strips the discriminant's parameters off
// the transported polynomial; whatever survives lies over smooth fibers.

#include "k3pencil/plane.hpp"

namespace k3pencil {

struct Pencil {
    ProjPoint base;
    Line l0, l1;  // parameter convention: line(tau) = l0 + tau * l1, line(inf) = l1

    explicit Pencil(const ProjPoint& P) : base(P), l0(1, 0, 0), l1(0, 1, 0) {
        auto [a, b] = pencil_basis(P);
        l0 = a;
        l1 = b;
    }

    Line line_at(const Rational& tau) const {
        std::array<Rational, 3> c;
        for (int i = 0; i < 3; ++i)
            c[i] = make_rational(l0.a[i], 1) + tau * make_rational(l1.a[i], 1);
        return Line(c);
    }
    Line line_at_infinity() const { return l1; }

    // parameter of the pencil line through x (x != base); nullopt = infinity
    std::optional<Rational> param_of(const ProjPoint& x) const {
        Rational n0 = eval_line(l0, x), n1 = eval_line(l1, x);
        if (n0 == 0 && n1 == 0) throw Error("pencil parameter of the base point");
        if (n1 == 0) return std::nullopt;
        return Rational(-n0 / n1);
    }
};

enum class FibrationKind { Genus2, Genus1 };

enum class FiberTag {
    SmoothGenus2,
    SmoothGenus1,
    IntegralGeomGenus1,
    IntegralGeomGenusLe1,
    SplitEvenProfile,
    ComponentOfB,
    OtherSingular
};

inline const char* to_string(FiberTag t) {
    switch (t) {
        case FiberTag::SmoothGenus2: return "SmoothGenus2";
        case FiberTag::SmoothGenus1: return "SmoothGenus1";
        case FiberTag::IntegralGeomGenus1: return "IntegralGeomGenus1";
        case FiberTag::IntegralGeomGenusLe1: return "IntegralGeomGenusLe1";
        case FiberTag::SplitEvenProfile: return "SplitEvenProfile";
        case FiberTag::ComponentOfB: return "ComponentOfB";
        case FiberTag::OtherSingular: return "OtherSingular";
    }
    return "?";
}

struct FiberClass {
    FiberTag tag;
    IntersectionProfile profile;
    int genus_of_normalization = -1;  // -1 when not meaningful
    bool genus_is_upper_bound = false;
};

namespace detail {

inline Rational det_rational(std::vector<std::vector<Rational>> M) {
    size_t n = M.size();
    Rational det = make_rational(1);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        while (piv < n && M[piv][col] == 0) ++piv;
        if (piv == n) return make_rational(0);
        if (piv != col) {
            std::swap(M[piv], M[col]);
            det = -det;
        }
        det *= M[col][col];
        for (size_t r = col + 1; r < n; ++r) {
            if (M[r][col] == 0) continue;
            Rational f = M[r][col] / M[col][col];
            for (size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
        }
    }
    return det;
}

// Exact Lagrange interpolation through (i, values[i]) for i = 0..N.
inline UniPoly interpolate(const std::vector<Rational>& values) {
    int n = static_cast<int>(values.size());
    UniPoly W = UniPoly::constant(make_rational(1));
    for (int j = 0; j < n; ++j) W = W * UniPoly({make_rational(-j), make_rational(1)});
    UniPoly acc = UniPoly::zero();
    for (int i = 0; i < n; ++i) {
        if (values[i] == 0) continue;
        UniPoly Wi = exact_div(W, UniPoly({make_rational(-i), make_rational(1)}));
        Rational denom = make_rational(1);
        for (int j = 0; j < n; ++j)
            if (j != i) denom *= make_rational(i - j);
        acc = acc + (values[i] / denom) * Wi;
    }
    return acc;
}

// Resultant of two binary forms in (u, v) with UniPoly-in-tau coefficients,
// FORMAL degrees m and n (coefficient lists of lengths m+1, n+1, u-power
// ascending). Evaluation at integer tau + interpolation keeps it exact.
inline UniPoly binary_resultant_tau(const std::vector<UniPoly>& A, const std::vector<UniPoly>& B,
                                    int m, int n) {
    int degA = 0, degB = 0;
    for (auto& f : A) degA = std::max(degA, f.degree());
    for (auto& f : B) degB = std::max(degB, f.degree());
    int bound = n * degA + m * degB;
    std::vector<Rational> vals(bound + 1);
    for (int t = 0; t <= bound; ++t) {
        Rational tau = make_rational(t);
        std::vector<std::vector<Rational>> M(m + n, std::vector<Rational>(m + n, make_rational(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= m; ++j) M[i][i + j] = eval(A[m - j], tau);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j <= n; ++j) M[n + i][i + j] = eval(B[n - j], tau);
        vals[t] = det_rational(std::move(M));
    }
    return interpolate(vals);
}

}  // namespace detail

struct PencilFibration {
    HomForm F;  // used exactly as ingested
    ProjPoint base;
    FibrationKind kind;
    Pencil pencil;
    // coefficients of the moving restriction: F(v*base + u*D(tau)) as a
    // binary sextic in (u, v) whose coefficients are polynomials in tau
    std::vector<UniPoly> moving;  // moving[i] = coefficient of u^i v^(6-i)
    UniPoly delta;                // primitive integer; roots = singular finite parameters
    bool infinity_fiber_singular = false;
    UniPoly lines_in_curve;  // gcd of the moving coefficients: parameters of pencil lines inside B
    bool infinity_line_in_curve = false;
    int ns_rank_increment = 0;  // Neron-Severi bookkeeping of the base blowups
};

struct OddParamPoly {
    UniPoly poly;           // primitive integer polynomial in the pencil parameter
    bool at_infinity = false;  // one odd point maps to the infinity parameter
};

struct MultisectionCertificate {
    Line line;
    ProjPoint base_point;
    IntersectionProfile profile;
    OddParamPoly odd_params;
    UniPoly residual;            // odd_params.poly with discriminant-shared roots stripped
    bool residual_at_infinity = false;
    bool saliently_ramified = false;
    int genus_of_normalization = -1;

    MultisectionCertificate(const Line& l, const ProjPoint& b) : line(l), base_point(b) {}
};

// Classification of the pullback of a single line by the double cover.
inline FiberClass classify_line_pullback(const HomForm& F, const Line& l) {
    FiberClass out{FiberTag::OtherSingular, intersection_profile(F, l), -1, false};
    const auto& prof = out.profile;
    if (prof.line_in_curve) {
        out.tag = FiberTag::ComponentOfB;
        return out;
    }
    if (prof.all_even()) {
        out.tag = FiberTag::SplitEvenProfile;
        return out;
    }
    int n = prof.distinct_count();
    out.genus_of_normalization = prof.odd_point_count() / 2 - 1;
    if (n == 6) out.tag = FiberTag::SmoothGenus2;
    else if (n == 5) out.tag = FiberTag::IntegralGeomGenus1;
    else if (n == 4) {
        out.tag = FiberTag::IntegralGeomGenusLe1;
        out.genus_is_upper_bound = true;
    } else out.tag = FiberTag::OtherSingular;
    return out;
}

namespace detail {

// Shared by classify_fiber and build_fibration (which needs the infinity
// fiber's class before the struct is finished).
inline FiberClass classify_fiber_impl(const HomForm& F, FibrationKind kind, const Line& l) {
    FiberClass cls = classify_line_pullback(F, l);
    if (kind == FibrationKind::Genus1 && cls.tag != FiberTag::ComponentOfB) {
        auto m = cls.profile.multiplicities();
        if (m == std::vector<int>{2, 1, 1, 1, 1}) {
            cls.tag = FiberTag::SmoothGenus1;
            cls.genus_of_normalization = 1;
            cls.genus_is_upper_bound = false;
        } else if (cls.tag == FiberTag::SmoothGenus2 || cls.tag == FiberTag::IntegralGeomGenus1 ||
                   cls.tag == FiberTag::IntegralGeomGenusLe1) {
            // the base point always carries multiplicity >= 2, so profiles
            // other than {2,1,1,1,1} cannot be smooth genus-1 fibers
            cls.tag = FiberTag::OtherSingular;
        }
    }
    return cls;
}

}  // namespace detail

inline PencilFibration build_fibration(const HomForm& F, const ProjPoint& P) {
    if (F.deg != 6) throw Error("fibration requires a sextic");
    PencilFibration fib{F, P, FibrationKind::Genus2, Pencil(P), {}, UniPoly::zero(), false,
                        UniPoly::zero(), false, 0};
    bool onB = is_on_curve(F, P);
    bool sing = onB && is_singular_point(F, P);
    if (sing) {
        if (!is_node(F, P)) throw Error("unsupported singularity type at the base point (A1 only)");
        fib.kind = FibrationKind::Genus1;
        fib.ns_rank_increment = 0;
    } else {
        fib.kind = FibrationKind::Genus2;
        fib.ns_rank_increment = 2;  // two base points (split or infinitely near)
    }

    // m: first coordinate line not through P; D(tau) = line(tau) x m
    Line m(1, 0, 0);
    for (int i = 0; i < 3; ++i) {
        std::array<Rational, 3> c{make_rational(i == 0), make_rational(i == 1), make_rational(i == 2)};
        Line cand(c);
        if (!cand.contains(P)) {
            m = cand;
            break;
        }
    }
    // D components are linear polynomials in tau
    std::array<UniPoly, 3> D;
    {
        std::array<Rational, 3> m0{make_rational(m.a[0], 1), make_rational(m.a[1], 1), make_rational(m.a[2], 1)};
        std::array<Rational, 3> a0{make_rational(fib.pencil.l0.a[0], 1), make_rational(fib.pencil.l0.a[1], 1),
                                   make_rational(fib.pencil.l0.a[2], 1)};
        std::array<Rational, 3> a1{make_rational(fib.pencil.l1.a[0], 1), make_rational(fib.pencil.l1.a[1], 1),
                                   make_rational(fib.pencil.l1.a[2], 1)};
        for (int i = 0; i < 3; ++i) {
            int j = (i + 1) % 3, k = (i + 2) % 3;
            // (l0 + tau l1) x m, component i
            Rational c0 = a0[j] * m0[k] - a0[k] * m0[j];
            Rational c1 = a1[j] * m0[k] - a1[k] * m0[j];
            D[i] = UniPoly({c0, c1});
        }
    }

    // moving restriction R(tau; u, v) = F(v*P + u*D(tau)); coefficient of
    // u^i v^(6-i) is a tau-polynomial. Expand monomial by monomial over the
    // bivariate ring Q[tau][u].
    std::array<std::vector<UniPoly>, 3> coord;  // coord[i][j] = u^j coefficient of X_i
    for (int i = 0; i < 3; ++i) coord[i] = {UniPoly::constant(make_rational(P.v[i], 1)), D[i]};
    auto bi_mul = [](const std::vector<UniPoly>& a, const std::vector<UniPoly>& b) {
        std::vector<UniPoly> r(a.size() + b.size() - 1, UniPoly::zero());
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
        return r;
    };
    std::vector<UniPoly> acc(7, UniPoly::zero());
    for (auto& [e, c] : F.terms) {
        std::vector<UniPoly> term{UniPoly::constant(c)};
        for (int i = 0; i < 3; ++i)
            for (int rep = 0; rep < e[i]; ++rep) term = bi_mul(term, coord[i]);
        for (size_t j = 0; j < term.size() && j < 7; ++j) acc[j] = acc[j] + term[j];
    }
    fib.moving = acc;

    // pencil lines contained in B: common tau-roots of every coefficient
    UniPoly content = UniPoly::zero();
    for (auto& g : acc) content = poly_gcd(content, g);
    fib.lines_in_curve = content.degree() > 0 ? primitive_int(content).first
                                              : UniPoly::constant(make_rational(1));
    fib.infinity_line_in_curve = is_component(F, fib.pencil.line_at_infinity());

    // discriminant of the moving binary form
    UniPoly delta;
    if (fib.kind == FibrationKind::Genus2) {
        std::vector<UniPoly> du(6), dv(6);
        for (int i = 0; i < 6; ++i) {
            du[i] = make_rational(i + 1) * acc[i + 1];  // d/du: u^i v^(5-i)
            dv[i] = make_rational(6 - i) * acc[i];      // d/dv
        }
        delta = detail::binary_resultant_tau(du, dv, 5, 5);
    } else {
        // the node forces u^2 | R identically; strip it and guard the base
        // point's transverse intersection (quartic must not vanish at u = 0)
        if (!acc[0].is_zero() || !acc[1].is_zero())
            throw Error("node base point did not annihilate the first two moving coefficients");
        std::vector<UniPoly> q(5);
        for (int i = 0; i < 5; ++i) q[i] = acc[i + 2];
        std::vector<UniPoly> du(4), dv(4);
        for (int i = 0; i < 4; ++i) {
            du[i] = make_rational(i + 1) * q[i + 1];
            dv[i] = make_rational(4 - i) * q[i];
        }
        delta = detail::binary_resultant_tau(du, dv, 3, 3) * q[0];
    }
    if (delta.is_zero()) throw Error("identically singular pencil");
    fib.delta = primitive_int(delta).first;

    FiberTag inf_tag = detail::classify_fiber_impl(F, fib.kind, fib.pencil.line_at_infinity()).tag;
    fib.infinity_fiber_singular =
        !(inf_tag == FiberTag::SmoothGenus2 || inf_tag == FiberTag::SmoothGenus1);

    return fib;
}

// Fiber classification at a parameter (nullopt = the infinity parameter).
inline FiberClass classify_fiber(const PencilFibration& fib, const std::optional<Rational>& tau) {
    Line l = tau ? fib.pencil.line_at(*tau) : fib.pencil.line_at_infinity();
    return detail::classify_fiber_impl(fib.F, fib.kind, l);
}

inline bool fiber_is_smooth(const PencilFibration& fib, const std::optional<Rational>& tau) {
    FiberTag t = classify_fiber(fib, tau).tag;
    return t == FiberTag::SmoothGenus2 || t == FiberTag::SmoothGenus1;
}

// Images under projection from the base point of the odd-multiplicity points
// of l /\ B, as a polynomial in the pencil parameter plus an infinity flag.
inline OddParamPoly odd_intersection_parameters(const PencilFibration& fib, const Line& l) {
    if (l.contains(fib.base)) throw Error("line passes through the base point");
    Restriction r = restrict_to_line(fib.F, l);
    if (r.line_in_curve) throw Error("line is a component of the branch curve");
    OddParamPoly out{UniPoly::constant(make_rational(1)), false};
    int odd_total = 0;

    auto A = r.chart.at(make_rational(0), make_rational(1));
    auto Bv = r.chart.at(make_rational(1), make_rational(0));
    auto lineval = [&](const Line& L, const std::array<Rational, 3>& p) -> Rational {
        return make_rational(L.a[0], 1) * p[0] + make_rational(L.a[1], 1) * p[1] +
               make_rational(L.a[2], 1) * p[2];
    };
    // tau(u) = -(l0.A + u l0.B) / (l1.A + u l1.B); eliminating u from an odd
    // factor g transports its roots: Res_u(g, beta(tau) + u*alpha(tau))
    Rational l0A = lineval(fib.pencil.l0, A), l0B = lineval(fib.pencil.l0, Bv);
    Rational l1A = lineval(fib.pencil.l1, A), l1B = lineval(fib.pencil.l1, Bv);
    UniPoly alpha({-l0B, -l1B});  // coefficient of u, as a tau-polynomial
    UniPoly beta({-l0A, -l1A});   // constant coefficient   (both: beta + tau-linear)
    // note: num - tau*den with num(u) = -(l0A + u l0B), den(u) = l1A + u l1B
    // gives (num - tau*den)(u) = (-l0A - tau*l1A) + u*(-l0B - tau*l1B)

    if (r.poly.degree() >= 1) {
        auto dec = squarefree_decompose(r.poly);
        for (auto& [g, e] : dec.parts) {
            if (e % 2 == 0) continue;
            odd_total += g.degree();
            int n = g.degree();
            // Res_u(g, alpha*u + beta) = sum_i g_i (-beta)^i alpha^(n-i)
            UniPoly res = UniPoly::zero();
            for (int i = 0; i <= n; ++i) {
                if (g.coeff(i) == 0) continue;
                UniPoly term = UniPoly::constant(g.coeff(i));
                term = term * poly_pow(-beta, static_cast<unsigned>(i));
                term = term * poly_pow(alpha, static_cast<unsigned>(n - i));
                res = res + term;
            }
            if (res.is_zero()) throw Error("degenerate parameter transport");
            if (res.degree() < n) out.at_infinity = true;
            out.poly = out.poly * res;
        }
    }
    if (r.inf_mult % 2 == 1) {
        ++odd_total;
        ProjPoint xinf = r.chart.infinity_point();
        Rational d0 = eval_line(fib.pencil.l1, xinf);
        if (d0 == 0) out.at_infinity = true;
        else out.poly = out.poly * UniPoly({eval_line(fib.pencil.l0, xinf), d0});
    }
    out.poly = primitive_int(out.poly).first;
    if (out.poly.degree() + (out.at_infinity ? 1 : 0) != odd_total)
        throw Error("odd-parameter degree bookkeeping failed");
    return out;
}

// The saliently-ramified certificate: some odd-multiplicity point of l /\ B
// must project to a smooth-fiber parameter.
inline MultisectionCertificate certify_saliently_ramified(const PencilFibration& fib, const Line& l) {
    if (l.contains(fib.base)) throw Error("multisection line passes through the base point");
    MultisectionCertificate cert(l, fib.base);
    cert.profile = intersection_profile(fib.F, l);
    if (cert.profile.line_in_curve) throw Error("line is a component of the branch curve");
    if (cert.profile.all_even()) throw Error("tritangent line: pullback splits, not a multisection");
    cert.odd_params = odd_intersection_parameters(fib, l);
    cert.genus_of_normalization = cert.profile.odd_point_count() / 2 - 1;

    UniPoly residual = cert.odd_params.poly;
    while (residual.degree() >= 1) {
        UniPoly g = poly_gcd(residual, fib.delta);
        if (g.degree() < 1) break;
        residual = exact_div(residual, g);
    }
    cert.residual = primitive_int(residual).first;
    cert.residual_at_infinity = cert.odd_params.at_infinity && !fib.infinity_fiber_singular;
    cert.saliently_ramified = cert.residual.degree() >= 1 || cert.residual_at_infinity;
    return cert;
}

// Tangent-line construction: saliently ramified bisections of geometric
// genus 1 from tangent lines at rational points of B.
inline std::vector<MultisectionCertificate> tangent_multisection_search(const PencilFibration& fib,
                                                                        long heightBound) {
    if (fib.kind != FibrationKind::Genus2) throw Error("tangent search expects a genus-2 fibration");
    std::vector<MultisectionCertificate> out;
    std::vector<Line> seen;
    for (const ProjPoint& x : rational_points_on_B(fib.F, heightBound, fib.base)) {
        if (x == fib.base) continue;
        if (is_singular_point(fib.F, x)) continue;
        Line pline = line_through(fib.base, x);
        if (is_component(fib.F, pline)) continue;  // x sits on a pencil line inside B
        Line T = tangent_line(fib.F, x);
        if (T.contains(fib.base)) continue;
        if (std::find(seen.begin(), seen.end(), T) != seen.end()) continue;
        seen.push_back(T);
        auto prof = intersection_profile(fib.F, T);
        if (prof.line_in_curve || prof.all_even()) continue;
        if (prof.distinct_count() != 5) continue;
        MultisectionCertificate cert = certify_saliently_ramified(fib, T);
        if (cert.saliently_ramified && cert.genus_of_normalization == 1) out.push_back(cert);
    }
    return out;
}

// Two-singularity construction: fibers of the pencil through Q' are
// saliently ramified multisections of the fibration through Q.
inline std::vector<MultisectionCertificate> two_singularity_multisections(
    const HomForm& F, const ProjPoint& Q, const ProjPoint& Qp,
    const std::vector<Rational>& sampleParams) {
    if (Q == Qp) throw Error("the two singular points must be distinct");
    if (!is_singular_point(F, Q) || !is_singular_point(F, Qp))
        throw Error("both points must be singular on B");
    if (!is_node(F, Q) && !is_node(F, Qp)) throw Error("at least one point must be a node");
    PencilFibration fib = build_fibration(F, Q);  // requires Q to be a node
    Pencil pq(Qp);
    Line qq = line_through(Q, Qp);
    std::vector<MultisectionCertificate> out;
    for (const Rational& s : sampleParams) {
        Line ls = pq.line_at(s);
        if (ls == qq) throw Error("sample parameter hits the line through both singular points");
        if (is_component(F, ls)) continue;
        auto prof = intersection_profile(F, ls);
        if (prof.all_even()) continue;
        MultisectionCertificate cert = certify_saliently_ramified(fib, ls);
        if (cert.saliently_ramified) out.push_back(cert);
    }
    return out;
}

}  // namespace k3pencil
