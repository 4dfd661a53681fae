#pragma once

// Smoothness certification for the branch sextic. The decision runs mod p:
// emptiness of the singular scheme of B mod p at a prime of good position
// implies smoothness over the rationals, because the singular locus is closed
// and proper over the integers. The mod-p decision itself is exact: resultant
// elimination filters candidate residue values, and each candidate is
// verified inside the residue field it generates.

#include "k3pencil/fp.hpp"
#include "k3pencil/plane.hpp"

namespace k3pencil {

namespace detail {

// Determinant over F_p[y] by fraction-free Bareiss elimination.
inline FpPoly fpy_det(const FpCtx& F, std::vector<std::vector<FpPoly>> M) {
    size_t n = M.size();
    FpPoly prev{1};
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (fpp::is_zero(M[k][k])) {
            size_t piv = k + 1;
            while (piv < n && fpp::is_zero(M[piv][k])) ++piv;
            if (piv == n) return {};
            std::swap(M[piv], M[k]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) {
                FpPoly t = fpp::sub(F, fpp::mul(F, M[i][j], M[k][k]), fpp::mul(F, M[i][k], M[k][j]));
                auto [q, r] = fpp::divrem(F, t, prev);
                if (!fpp::is_zero(r)) throw Error("Bareiss exact division failed");
                M[i][j] = q;
            }
        prev = M[k][k];
    }
    FpPoly d = M[n - 1][n - 1];
    if (sign < 0) d = fpp::scale(F, F.p - 1, d);
    return d;
}

// Sylvester resultant in x of two polynomials with F_p[y] coefficients,
// with the x-degrees taken as formal degrees (callers guarantee constant
// leading coefficients so formal == actual).
inline FpPoly fpy_resultant_x(const FpCtx& F, const std::vector<FpPoly>& a,
                              const std::vector<FpPoly>& b) {
    int m = static_cast<int>(a.size()) - 1, n = static_cast<int>(b.size()) - 1;
    std::vector<std::vector<FpPoly>> M(m + n, std::vector<FpPoly>(m + n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) M[i][i + j] = a[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) M[n + i][i + j] = b[n - j];
    return fpy_det(F, M);
}

// x^i-coefficients (as F_p[y] polys) of a form restricted to z = 1.
inline std::vector<FpPoly> as_x_poly_over_y(const FpForm& f) {
    std::vector<FpPoly> out(f.deg + 1);
    for (auto& [e, c] : f.terms) {
        auto& row = out[e[0]];
        if (static_cast<int>(row.size()) <= e[1]) row.resize(e[1] + 1, 0);
        row[e[1]] = c;
    }
    for (auto& row : out) fpp::trim(row);
    while (!out.empty() && fpp::is_zero(out.back())) out.pop_back();
    return out;
}

// Apply an invertible linear substitution x_i -> sum_j M[i][j] x_j' to a form.
inline FpForm fp_substitute(const FpCtx& F, const FpForm& f, const std::array<std::array<u64, 3>, 3>& M) {
    // dense polynomial arithmetic in three variables of degree <= 6
    auto mul3 = [&](const std::map<std::array<int, 3>, u64>& A,
                    const std::array<u64, 3>& lin) {
        std::map<std::array<int, 3>, u64> R;
        for (auto& [e, c] : A)
            for (int v = 0; v < 3; ++v) {
                if (!lin[v]) continue;
                auto e2 = e;
                e2[v] += 1;
                u64 add = F.mul(c, lin[v]);
                auto it = R.find(e2);
                if (it == R.end()) R[e2] = add;
                else it->second = F.add(it->second, add);
            }
        return R;
    };
    FpForm out;
    out.deg = f.deg;
    std::map<std::array<int, 3>, u64> acc;
    for (auto& [e, c] : f.terms) {
        std::map<std::array<int, 3>, u64> term{{{0, 0, 0}, c}};
        for (int v = 0; v < 3; ++v)
            for (int rep = 0; rep < e[v]; ++rep) term = mul3(term, M[v]);
        for (auto& [ee, cc] : term) {
            auto it = acc.find(ee);
            if (it == acc.end()) acc[ee] = cc;
            else it->second = F.add(it->second, cc);
        }
    }
    for (auto& [e, c] : acc)
        if (c) out.terms.emplace_back(e, c);
    return out;
}

inline u64 fp_eval(const FpCtx& F, const FpForm& f, u64 x0, u64 y0, u64 z0) {
    u64 r = 0;
    for (auto& [e, c] : f.terms) {
        u64 t = c;
        t = F.mul(t, F.pow(x0, e[0]));
        t = F.mul(t, F.pow(y0, e[1]));
        t = F.mul(t, F.pow(z0, e[2]));
        r = F.add(r, t);
    }
    return r;
}

// coefficient of a specific monomial
inline u64 fp_coeff(const FpForm& f, int i, int j, int k) {
    for (auto& [e, c] : f.terms)
        if (e[0] == i && e[1] == j && e[2] == k) return c;
    return 0;
}

}  // namespace detail

// Exact decision: is the singular locus of V(F) mod p empty over the
// algebraic closure of F_p? F must be integer-primitive.
inline bool singular_locus_empty_mod_p(const HomForm& F, u64 p) {
    FpCtx ctx(p);
    FpForm f0 = reduce_mod_p(F, ctx);
    if (f0.terms.empty()) throw Error("form vanishes mod p");
    bool need_f_check = (6 % p == 0);  // Euler's relation degenerates when p | deg

    u64 seed = 0x853C49E6748FEA9Bull;
    for (int attempt = 0; attempt < 64; ++attempt) {
        // coordinate change: identity first, then deterministic pseudo-random
        std::array<std::array<u64, 3>, 3> M{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
        if (attempt > 0) {
            auto rnd = [&]() {
                seed = seed * 6364136223846793005ull + 1442695040888963407ull;
                return (seed >> 13) % p;
            };
            u64 det = 0;
            while (det == 0) {
                for (auto& row : M)
                    for (auto& c : row) c = rnd();
                det = ctx.sub(
                    ctx.add(ctx.add(ctx.mul(M[0][0], ctx.mul(M[1][1], M[2][2])),
                                    ctx.mul(M[0][1], ctx.mul(M[1][2], M[2][0]))),
                            ctx.mul(M[0][2], ctx.mul(M[1][0], M[2][1]))),
                    ctx.add(ctx.add(ctx.mul(M[0][2], ctx.mul(M[1][1], M[2][0])),
                                    ctx.mul(M[0][0], ctx.mul(M[1][2], M[2][1]))),
                            ctx.mul(M[0][1], ctx.mul(M[1][0], M[2][2]))));
            }
        }
        FpForm g = attempt == 0 ? f0 : detail::fp_substitute(ctx, f0, M);
        FpForm gx = fp_partial(ctx, g, 0);
        FpForm gy = fp_partial(ctx, g, 1);
        FpForm gz = fp_partial(ctx, g, 2);
        // require constant (nonzero) x^5 coefficients for the resultant pair
        if (!detail::fp_coeff(gy, 5, 0, 0) || !detail::fp_coeff(gz, 5, 0, 0)) continue;
        bool have_gx = detail::fp_coeff(gx, 5, 0, 0) != 0;

        // chart z = 1: eliminate x. Roots of the resultants are necessary
        // conditions on the y-value of a common zero, so any nonzero
        // resultant from a constant-lead pair yields a complete candidate set.
        auto ay = detail::as_x_poly_over_y(gy);
        auto az = detail::as_x_poly_over_y(gz);
        FpPoly R1 = detail::fpy_resultant_x(ctx, ay, az);
        FpPoly g2;
        bool complete = false;
        if (!fpp::is_zero(R1)) {
            g2 = R1;
            complete = true;
        }
        if (have_gx) {
            auto ax = detail::as_x_poly_over_y(gx);
            FpPoly R2 = detail::fpy_resultant_x(ctx, ax, ay);
            if (!fpp::is_zero(R2)) {
                g2 = complete ? fpp::gcd(ctx, g2, R2) : R2;
                complete = true;
            }
        }
        if (!complete) {
            // two partials share a curve component; it meets the third
            // partial's zero locus, so the singular scheme is nonempty
            // (Euler's relation supplies the F-vanishing when p does not
            // divide the degree)
            if (6 % p != 0) return false;
            continue;
        }
        FpPoly cand = fpp::squarefree_part(ctx, g2);

        bool nonempty = false;
        auto verify_y = [&](const FpPoly& minpoly) -> bool {
            // residue field of the candidate y-value
            ExtCtx E(p, minpoly);
            FpPoly y0 = fpp::deg(minpoly) == 1 ? E.from_u64(ctx.neg(minpoly[0]))
                                               : FpPoly{0, 1};
            ExtPoly px = fp_restrict_y(E, gx, y0);
            ExtPoly py = fp_restrict_y(E, gy, y0);
            ExtPoly pz = fp_restrict_y(E, gz, y0);
            ExtPoly h = extp::gcd(E, extp::gcd(E, px, py), pz);
            if (need_f_check && extp::deg(h) > 0)
                h = extp::gcd(E, h, fp_restrict_y(E, g, y0));
            return extp::deg(h) > 0;
        };
        if (fpp::deg(cand) > 0) {
            for (const FpPoly& h : fpp::irreducible_factors(ctx, cand))
                if (verify_y(h)) {
                    nonempty = true;
                    break;
                }
        }

        // chart z = 0: binary forms in (x, y), dehomogenized at y = 1
        if (!nonempty) {
            auto line_poly = [&](const FpForm& h) {
                FpPoly r;
                for (auto& [e, c] : h.terms) {
                    if (e[2] != 0) continue;
                    if (static_cast<int>(r.size()) <= e[0]) r.resize(e[0] + 1, 0);
                    r[e[0]] = c;  // exponent triples are unique
                }
                fpp::trim(r);
                return r;
            };
            FpPoly bx = line_poly(gx), by = line_poly(gy), bz = line_poly(gz);
            // common projective root on z=0 away from (1:0:0): dehomogenize y=1
            FpPoly gg = fpp::gcd(ctx, fpp::gcd(ctx, bx, by), bz);
            if (need_f_check && fpp::deg(gg) > 0) gg = fpp::gcd(ctx, gg, line_poly(g));
            if (fpp::deg(gg) > 0) nonempty = true;
            // the point (1:0:0)
            if (!nonempty) {
                bool allzero = detail::fp_eval(ctx, gx, 1, 0, 0) == 0 &&
                               detail::fp_eval(ctx, gy, 1, 0, 0) == 0 &&
                               detail::fp_eval(ctx, gz, 1, 0, 0) == 0 &&
                               (!need_f_check || detail::fp_eval(ctx, g, 1, 0, 0) == 0);
                if (allzero) nonempty = true;
            }
        }
        return !nonempty;
    }
    throw Error("could not reach a usable coordinate position mod p");
}

// Good reduction: odd p, F stays a degree-6 form mod p, and B mod p is smooth.
inline bool good_reduction_check(const HomForm& F, u64 p) {
    if (p == 2) throw Error("p = 2 rejected: the double cover is inseparable");
    auto [Fi, unit] = primitive_int(F);
    FpCtx ctx(p);
    FpForm f = reduce_mod_p(Fi, ctx);
    if (f.terms.empty()) return false;
    return singular_locus_empty_mod_p(Fi, p);
}

struct SmoothnessCertificate {
    enum class Status { Smooth, Singular, Inconclusive } status;
    u64 prime = 0;                      // certifying prime when smooth
    std::optional<ProjPoint> witness;   // rational singular point when found

    bool is_smooth() const { return status == Status::Smooth; }
};

// One-sided certificate: "Smooth" is a proof; "Singular" carries a rational
// witness; "Inconclusive" means every tried prime had a nonempty singular
// locus but no rational witness was found within the sweep bound.
inline SmoothnessCertificate certify_smooth(const HomForm& F, long witnessHeightBound = 20) {
    auto [Fi, unit] = primitive_int(F);
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        try {
            FpCtx ctx(p);
            if (reduce_mod_p(Fi, ctx).terms.empty()) continue;
            if (singular_locus_empty_mod_p(Fi, p))
                return {SmoothnessCertificate::Status::Smooth, p, std::nullopt};
        } catch (const Error&) {
            continue;  // prime unusable (degenerate position); try the next
        }
    }
    // every prime saw a (possibly spurious) singular point: hunt for a witness
    for (long h = 1; h <= witnessHeightBound; ++h)
        for (long x0 = -h; x0 <= h; ++x0)
            for (long y0 = -h; y0 <= h; ++y0)
                for (long z0 = -h; z0 <= h; ++z0) {
                    if (std::max({std::abs(x0), std::abs(y0), std::abs(z0)}) != h) continue;
                    if (x0 == 0 && y0 == 0 && z0 == 0) continue;
                    ProjPoint pt(x0, y0, z0);
                    if (is_singular_point(Fi, pt))
                        return {SmoothnessCertificate::Status::Singular, 0, pt};
                }
    return {SmoothnessCertificate::Status::Inconclusive, 0, std::nullopt};
}

}  // namespace k3pencil
