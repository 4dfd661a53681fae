#pragma once

// Exact arbitrary-precision integers and rationals on top of GMP.
// Rationals are kept canonical (positive denominator, reduced) by mpq_class
// as long as construction goes through the helpers below.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3pencil {

using Int = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

inline Rational make_rational(const Int& num, const Int& den) {
    if (den == 0) throw Error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(long num, long den = 1) {
    return make_rational(Int(num), Int(den));
}

inline Int num(const Rational& r) { return r.get_num(); }
inline Int den(const Rational& r) { return r.get_den(); }

inline int sign(const Rational& r) { return sgn(r); }
inline int sign(const Int& n) { return sgn(n); }

inline Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational rat_pow(const Rational& base, unsigned long e) {
    Rational r;
    mpq_set_ui(r.get_mpq_t(), 1, 1);
    Rational b = base;
    unsigned long k = e;
    while (k) {
        if (k & 1) r *= b;
        b *= b;
        k >>= 1;
    }
    return r;
}

inline bool is_square(const Int& n) {
    if (n < 0) return false;
    return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

inline Int isqrt(const Int& n) {
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

// Exact square root of a rational, if it is a square.
inline std::optional<Rational> rat_sqrt(const Rational& r) {
    if (sign(r) < 0) return std::nullopt;
    if (!is_square(num(r)) || !is_square(den(r))) return std::nullopt;
    return make_rational(isqrt(num(r)), isqrt(den(r)));
}

inline bool is_square(const Rational& r) { return rat_sqrt(r).has_value(); }

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// "num/den" (den omitted when 1), the canonical text form used everywhere.
inline std::string to_string(const Rational& r) {
    std::string s = num(r).get_str();
    if (den(r) != 1) s += "/" + den(r).get_str();
    return s;
}

inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return make_rational(Int(s), Int(1));
    return make_rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
}

// Height of a rational: max(|num|, den).
inline Int height(const Rational& r) {
    Int n = abs(num(r));
    return n > den(r) ? n : den(r);
}

// --- integer factorization (trial division + Pollard-Brent rho) ---
// Used by the rational-root theorem; inputs there are modest.

namespace detail {

inline bool is_probable_prime(const Int& n) {
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

inline Int pollard_brent(const Int& n, unsigned long seed) {
    // n odd composite, not a prime power of interest; returns a nontrivial factor.
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(seed);
    while (true) {
        Int y = rng.get_z_range(n - 3) + 2;
        Int c = rng.get_z_range(n - 3) + 1;
        Int m = 128, g = 1, r = 1, q = 1, x, ys;
        while (g == 1) {
            x = y;
            for (Int i = 0; i < r; ++i) y = (y * y + c) % n;
            Int k = 0;
            while (k < r && g == 1) {
                ys = y;
                Int lim = m < r - k ? m : r - k;
                for (Int i = 0; i < lim; ++i) {
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += m;
            }
            r *= 2;
        }
        if (g == n) {
            g = 1;
            while (g == 1) {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            }
        }
        if (g != n) return g;
        ++seed;
    }
}

inline void factor_into(Int n, std::vector<std::pair<Int, unsigned>>& out) {
    if (n <= 1) return;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul, 17ul, 19ul, 23ul, 29ul, 31ul, 37ul}) {
        unsigned e = 0;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            n /= static_cast<long>(p);
            ++e;
        }
        if (e) out.emplace_back(Int(static_cast<long>(p)), e);
        if (n == 1) return;
    }
    // trial division by small odd numbers
    Int d = 41;
    while (d * d <= n && d < 100000) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
        d += 2;
    }
    if (n == 1) return;
    if (is_probable_prime(n)) {
        out.emplace_back(n, 1);
        return;
    }
    Int f = pollard_brent(n, 0xC0FFEE);
    std::vector<std::pair<Int, unsigned>> sub;
    factor_into(f, sub);
    factor_into(n / f, sub);
    // merge duplicates
    for (auto& [p, e] : sub) {
        bool merged = false;
        for (auto& [q, g] : out)
            if (q == p) {
                g += e;
                merged = true;
                break;
            }
        if (!merged) out.emplace_back(p, e);
    }
}

}  // namespace detail

inline std::vector<std::pair<Int, unsigned>> factorize(const Int& n) {
    std::vector<std::pair<Int, unsigned>> out;
    detail::factor_into(abs(n), out);
    return out;
}

// All positive divisors of n (|n| if negative).
inline std::vector<Int> divisors(const Int& n) {
    auto fs = factorize(n);
    std::vector<Int> divs{Int(1)};
    for (auto& [p, e] : fs) {
        size_t base = divs.size();
        Int pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
            pk *= p;
            for (size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    return divs;
}

}  // namespace k3pencil
