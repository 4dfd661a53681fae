#pragma once

// Restriction of the branch sextic to lines, intersection profiles, tangent
// lines, tritangent detection and singular-point tests. Algebraic
// intersection points are never constructed; they are carried as squarefree
// factors of the restriction together with their multiplicities.

#include "k3pencil/homform.hpp"

#include <numeric>
#include <optional>

namespace k3pencil {

// Fixed rational parametrization of a line: the two coordinate positions not
// matching the largest |coefficient| are the free parameters (s, t); the
// remaining coordinate is solved from the line equation. The affine parameter
// is u = s at t = 1; (s:t) = (1:0) is the chart's infinity point.
struct LineChart {
    Line line;
    int solved;            // index eliminated (largest |coefficient|)
    std::array<int, 2> free;  // the two free coordinate indices, ascending

    explicit LineChart(const Line& l) : line(l), solved(0), free{1, 2} {
        Int best = -1;
        for (int i = 0; i < 3; ++i)
            if (abs(l.a[i]) > best) {
                best = abs(l.a[i]);
                solved = i;
            }
        int k = 0;
        for (int i = 0; i < 3; ++i)
            if (i != solved) free[k++] = i;
    }

    std::array<Rational, 3> at(const Rational& s, const Rational& t) const {
        std::array<Rational, 3> p;
        p[free[0]] = s;
        p[free[1]] = t;
        p[solved] = Rational(-(make_rational(line.a[free[0]], 1) * s + make_rational(line.a[free[1]], 1) * t)) /
                    make_rational(line.a[solved], 1);
        return p;
    }
    ProjPoint point_at(const Rational& u) const { return ProjPoint(at(u, make_rational(1))); }
    ProjPoint infinity_point() const { return ProjPoint(at(make_rational(1), make_rational(0))); }

    // Chart parameter of a point on the line; nullopt when p sits at (1:0).
    std::optional<Rational> param_of(const ProjPoint& p) const {
        if (!line.contains(p)) throw Error("point not on line");
        if (p.v[free[1]] == 0) return std::nullopt;
        return make_rational(p.v[free[0]], p.v[free[1]]);
    }
};

// F restricted to a line: affine polynomial in the chart parameter plus the
// multiplicity of the root at the chart's infinity, so that finite degrees
// and the infinity contribution always total deg F.
struct Restriction {
    LineChart chart;
    UniPoly poly;      // F(point_at(u)), zero polynomial when the line lies in B
    int inf_mult = 0;  // multiplicity at (s:t) = (1:0)
    bool line_in_curve = false;
};

inline Restriction restrict_to_line(const HomForm& F, const Line& l) {
    Restriction r{LineChart(l), UniPoly::zero(), 0, false};
    // coordinates as degree-<=1 polynomials in u
    std::array<UniPoly, 3> X;
    auto A = r.chart.at(make_rational(0), make_rational(1));
    auto B = r.chart.at(make_rational(1), make_rational(0));
    for (int i = 0; i < 3; ++i) X[i] = UniPoly({A[i], B[i]});
    UniPoly acc = UniPoly::zero();
    for (auto& [e, c] : F.terms) {
        UniPoly term = UniPoly::constant(c);
        for (int i = 0; i < 3; ++i)
            if (e[i]) term = term * poly_pow(X[i], e[i]);
        acc = acc + term;
    }
    r.poly = acc;
    if (acc.is_zero()) {
        r.line_in_curve = true;
        return r;
    }
    r.inf_mult = F.deg - acc.degree();
    return r;
}

struct ProfilePart {
    UniPoly factor;  // primitive integer squarefree factor; unused at infinity
    int deg;         // number of geometric points carried by this part
    int mult;        // common intersection multiplicity
    bool at_infinity = false;
};

struct IntersectionProfile {
    std::vector<ProfilePart> parts;
    bool line_in_curve = false;

    int total() const {
        int s = 0;
        for (auto& p : parts) s += p.deg * p.mult;
        return s;
    }
    int distinct_count() const {
        int s = 0;
        for (auto& p : parts) s += p.deg;
        return s;
    }
    int odd_point_count() const {
        int s = 0;
        for (auto& p : parts)
            if (p.mult % 2) s += p.deg;
        return s;
    }
    bool all_even() const {
        for (auto& p : parts)
            if (p.mult % 2) return false;
        return true;
    }
    std::vector<int> multiplicities() const {  // one entry per geometric point, descending
        std::vector<int> m;
        for (auto& p : parts)
            for (int i = 0; i < p.deg; ++i) m.push_back(p.mult);
        std::sort(m.rbegin(), m.rend());
        return m;
    }
};

inline IntersectionProfile intersection_profile(const HomForm& F, const Line& l) {
    Restriction r = restrict_to_line(F, l);
    IntersectionProfile prof;
    if (r.line_in_curve) {
        prof.line_in_curve = true;
        return prof;
    }
    if (r.poly.degree() > 0) {
        auto dec = squarefree_decompose(r.poly);
        for (auto& [f, e] : dec.parts) prof.parts.push_back({f, f.degree(), e, false});
    }
    if (r.inf_mult > 0) prof.parts.push_back({UniPoly::zero(), 1, r.inf_mult, true});
    if (prof.total() != F.deg) throw Error("intersection profile violates Bezout");
    return prof;
}

inline bool is_component(const HomForm& F, const Line& l) {
    return restrict_to_line(F, l).line_in_curve;
}

inline bool is_tritangent(const HomForm& F, const Line& l) {
    auto prof = intersection_profile(F, l);
    return !prof.line_in_curve && prof.all_even();
}

inline bool is_on_curve(const HomForm& F, const ProjPoint& p) { return eval(F, p) == 0; }

inline bool is_singular_point(const HomForm& F, const ProjPoint& p) {
    for (int i = 0; i < 3; ++i)
        if (eval(partial(F, i), p) != 0) return false;
    // Euler's relation makes this redundant in characteristic 0, still checked.
    return eval(F, p) == 0;
}

// A1 (node) test: nondegenerate quadratic part in local affine coordinates.
inline bool is_node(const HomForm& F, const ProjPoint& p) {
    if (!is_singular_point(F, p)) return false;
    int m = 0;
    while (p.v[m] == 0) ++m;
    std::array<int, 2> dirs{};
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != m) dirs[k++] = i;
    auto second = [&](int i, int j) { return eval(partial(partial(F, i), j), p); };
    Rational det = second(dirs[0], dirs[0]) * second(dirs[1], dirs[1]) -
                   second(dirs[0], dirs[1]) * second(dirs[0], dirs[1]);
    return det != 0;
}

inline Line tangent_line(const HomForm& F, const ProjPoint& p) {
    if (!is_on_curve(F, p)) throw Error("tangent line requested at a point off the curve");
    std::array<Rational, 3> g{eval(partial(F, 0), p), eval(partial(F, 1), p), eval(partial(F, 2), p)};
    if (g[0] == 0 && g[1] == 0 && g[2] == 0)
        throw Error("tangent line requested at a singular point");
    return Line(g);
}

// Two independent lines through P, chosen deterministically (first two
// independent cross products with the coordinate points).
inline std::pair<Line, Line> pencil_basis(const ProjPoint& P) {
    std::vector<Line> found;
    for (int i = 0; i < 3 && found.size() < 2; ++i) {
        std::array<Rational, 3> e{make_rational(i == 0), make_rational(i == 1), make_rational(i == 2)};
        std::array<Rational, 3> c{make_rational(P.v[1], 1) * e[2] - make_rational(P.v[2], 1) * e[1],
                                  make_rational(P.v[2], 1) * e[0] - make_rational(P.v[0], 1) * e[2],
                                  make_rational(P.v[0], 1) * e[1] - make_rational(P.v[1], 1) * e[0]};
        if (c[0] == 0 && c[1] == 0 && c[2] == 0) continue;  // P is this coordinate point
        Line cand(c);
        if (found.empty() || found[0] != cand) found.push_back(cand);
    }
    if (found.size() != 2) throw Error("could not build pencil basis");
    return {found[0], found[1]};
}

inline Rational eval_line(const Line& l, const ProjPoint& p) {
    return make_rational(l.a[0] * p.v[0] + l.a[1] * p.v[1] + l.a[2] * p.v[2], 1);
}

// Rational points on B found by sweeping the pencil of lines through
// sweepPoint with parameters of height <= heightBound; deduplicated, ordered
// by height then lexicographically.
inline std::vector<ProjPoint> rational_points_on_B(const HomForm& F, long heightBound,
                                                   const ProjPoint& sweepPoint) {
    if (heightBound < 1) throw Error("height bound must be >= 1");
    auto [l0, l1] = pencil_basis(sweepPoint);
    std::vector<ProjPoint> pts;
    auto consider_line = [&](long s, long t) {
        std::array<Rational, 3> c{
            make_rational(s * l0.a[0] + t * l1.a[0], 1),
            make_rational(s * l0.a[1] + t * l1.a[1], 1),
            make_rational(s * l0.a[2] + t * l1.a[2], 1)};
        if (c[0] == 0 && c[1] == 0 && c[2] == 0) return;
        Line l(c);
        Restriction r = restrict_to_line(F, l);
        if (r.line_in_curve) return;  // a component of B: skipped in the sweep
        if (r.poly.degree() >= 1)
            for (const Rational& u : rational_roots(r.poly)) pts.push_back(r.chart.point_at(u));
        if (r.inf_mult > 0) pts.push_back(r.chart.infinity_point());
    };
    for (long t = 0; t <= heightBound; ++t)
        for (long s = -heightBound; s <= heightBound; ++s) {
            if (s == 0 && t == 0) continue;
            if (t == 0 && s < 0) continue;  // (s:0) ~ (-s:0)
            long g = std::gcd(std::abs(s), std::abs(t));
            if (g != 1) continue;
            consider_line(s, t);
        }
    std::sort(pts.begin(), pts.end(), [](const ProjPoint& a, const ProjPoint& b) {
        Int ha = a.height(), hb = b.height();
        if (ha != hb) return ha < hb;
        return a.v < b.v;
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace k3pencil
