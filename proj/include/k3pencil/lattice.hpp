#pragma once

// Shioda-Tate generic-rank arithmetic and the rank-2 lattice isotropic-class
// test behind the "no genus-1 fibration" argument.

#include "k3pencil/rational.hpp"

namespace k3pencil {

struct ShiodaInput {
    int rho;                            // geometric Neron-Severi rank of the fibered surface
    std::vector<int> fiberComponentCounts;  // total component counts of reducible fibers, each >= 2
    bool hasSection = true;
    bool trivialTrace = true;
};

// rank J(kbar(S)) = rho - 2 - sum (m_s - 1); the total-component-count
// convention matches the classical formula and the worked examples.
inline int shioda_tate_rank(const ShiodaInput& in) {
    if (!in.hasSection) throw Error("Shioda-Tate requires a section (hasSection = false)");
    if (!in.trivialTrace) throw Error("Shioda-Tate requires trivial trace (trivialTrace = false)");
    long r = in.rho - 2;
    for (int m : in.fiberComponentCounts) {
        if (m < 2) throw Error("reducible fiber component counts must be >= 2");
        r -= (m - 1);
    }
    if (r < 0) throw Error("inconsistent Shioda-Tate input: negative rank");
    return static_cast<int>(r);
}

struct GramMatrix2 {
    Int a, b, c;  // (a b; b c)

    Int pair(const std::array<Int, 2>& u, const std::array<Int, 2>& v) const {
        return a * u[0] * v[0] + b * (u[0] * v[1] + u[1] * v[0]) + c * u[1] * v[1];
    }
    Int norm(const std::array<Int, 2>& u) const { return pair(u, u); }
};

struct IsotropicClasses {
    bool form_is_zero = false;               // degenerate: every class isotropic
    std::vector<std::array<Int, 2>> classes;  // primitive representatives up to sign

    bool none() const { return !form_is_zero && classes.empty(); }
};

namespace detail {

inline std::array<Int, 2> primitive_vec(Int x, Int y) {
    Int g = gcd(x, y);
    if (g != 0) {
        x /= g;
        y /= g;
    }
    if (x < 0 || (x == 0 && y < 0)) {
        x = -x;
        y = -y;
    }
    return {x, y};
}

}  // namespace detail

// Nontrivial solutions of a A^2 + 2b AB + c B^2 = 0 over the integers exist
// exactly when b^2 - ac is a perfect square; primitive representatives are
// returned up to sign.
inline IsotropicClasses isotropic_primitive_classes(const GramMatrix2& g) {
    IsotropicClasses out;
    auto push = [&](Int x, Int y) {
        auto v = detail::primitive_vec(std::move(x), std::move(y));
        for (auto& w : out.classes)
            if (w == v) return;
        out.classes.push_back(v);
    };
    if (g.a == 0 && g.c == 0) {
        if (g.b == 0) {
            out.form_is_zero = true;  // zero form: every class is isotropic
            return out;
        }
        push(1, 0);
        push(0, 1);
        return out;
    }
    if (g.a == 0) {
        // B (2b A + c B) = 0
        push(1, 0);
        if (g.b != 0) push(g.c, -2 * g.b);
        return out;
    }
    // beta = 0 forces alpha = 0; solve the quadratic in alpha/beta
    Int D = g.b * g.b - g.a * g.c;
    if (D < 0 || !is_square(D)) return out;
    Int r = isqrt(D);
    push(-g.b + r, g.a);
    push(-g.b - r, g.a);
    return out;
}

// Keeps classes whose Gram pairing with every constraint vector meets the
// bound, for at least one of the two signs of the representative.
inline std::vector<std::array<Int, 2>> nef_constraint_filter(
    const GramMatrix2& g, const std::vector<std::array<Int, 2>>& classes,
    const std::vector<std::pair<std::array<Int, 2>, Int>>& constraints) {
    std::vector<std::array<Int, 2>> out;
    for (const auto& u : classes) {
        for (int s : {1, -1}) {
            std::array<Int, 2> v{s * u[0], s * u[1]};
            bool ok = true;
            for (const auto& [w, lo] : constraints)
                if (g.pair(v, w) < lo) {
                    ok = false;
                    break;
                }
            if (ok) {
                out.push_back(u);
                break;
            }
        }
    }
    return out;
}

}  // namespace k3pencil
