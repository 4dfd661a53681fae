#pragma once

// Frobenius characteristic polynomials on H^2 of a K3 surface: functional
// equation checks, trace <-> coefficient conversion through Newton's
// identities, assembly of degree-22 candidates from eleven traces, counting
// eigenvalues that are p times a root of unity, and the resulting upper
// bound on the geometric Picard rank.

#include "k3pencil/unipoly.hpp"
#include "k3pencil/zeta.hpp"

namespace k3pencil {

struct CharPolyData {
    UniPoly poly;  // integer coefficients, monic
    Int p;
    int weight = 2;
    int sign = 0;  // functional-equation sign, +1 or -1
    enum class Provenance { Transcribed, Assembled } provenance = Provenance::Transcribed;

    int degree() const { return poly.degree(); }
};

// The weight-2 functional equation T^d P(p^2/T) = sign p^d P(T), coefficient
// form: c_{d-j} p^{2(d-j)} = sign p^d c_j for all j. Returns +1 or -1;
// throws if neither sign satisfies it.
inline int functional_equation_sign(const UniPoly& poly, const Int& p) {
    int d = poly.degree();
    if (d < 0 || poly.lead() != 1) throw Error("functional equation needs a monic polynomial");
    for (int sign : {1, -1}) {
        bool ok = true;
        for (int j = 0; j <= d && ok; ++j) {
            Rational lhs = poly.coeff(d - j) * make_rational(int_pow(p, 2 * (d - j)), 1);
            Rational rhs = make_rational(sign) * make_rational(int_pow(p, d), 1) * poly.coeff(j);
            if (lhs != rhs) ok = false;
        }
        if (ok) return sign;
    }
    throw Error("polynomial does not satisfy the weight-2 functional equation");
}

inline CharPolyData make_charpoly(const UniPoly& poly, const Int& p,
                                  CharPolyData::Provenance prov = CharPolyData::Provenance::Transcribed) {
    CharPolyData cp;
    cp.poly = poly;
    cp.p = p;
    cp.sign = functional_equation_sign(poly, p);
    cp.provenance = prov;
    for (const Rational& c : poly.c)
        if (den(c) != 1) throw Error("characteristic polynomial must have integer coefficients");
    return cp;
}

// Number of eigenvalues of cp that are p times a root of unity: normalize to
// Q(T) = p^{-d} poly(pT) and strip cyclotomic factors by exact division.
inline int count_unit_root_eigenvalues(const CharPolyData& cp) {
    int d = cp.poly.degree();
    // Q(T) = p^{-d} poly(p T): monic with rational coefficients
    std::vector<Rational> qc(d + 1);
    for (int i = 0; i <= d; ++i)
        qc[i] = cp.poly.coeff(i) * make_rational(int_pow(cp.p, i), int_pow(cp.p, d));
    UniPoly Q(std::move(qc));
    int count = 0;
    for (unsigned n = 1; n <= 2000; ++n) {
        unsigned long phi = euler_phi(n);
        if (phi > static_cast<unsigned long>(d)) continue;
        UniPoly cyc = cyclotomic(n);
        while (Q.degree() >= cyc.degree()) {
            auto [quot, rem] = divrem(Q, cyc);
            if (!rem.is_zero()) break;
            Q = quot;
            count += static_cast<int>(phi);
        }
    }
    return count;
}

// van Luijk: at a prime of good reduction, the geometric Picard rank is at
// most the number of Frobenius eigenvalues of absolute value p that are p
// times a root of unity.
inline int van_luijk_rho_bound(const CharPolyData& cp) { return count_unit_root_eigenvalues(cp); }

// Predicted point count over F_{p^k} from spectral data: factors of the
// degree-22 characteristic polynomial plus explicitly known algebraic
// eigenvalues. N_k = 1 + p^{2k} + sum lambda^k + sum power sums.
inline Int predicted_count(const std::vector<CharPolyData>& factors,
                           const std::vector<Int>& algebraicEigenvalues, const Int& p, int k) {
    int degsum = static_cast<int>(algebraicEigenvalues.size());
    for (const auto& f : factors) {
        if (f.p != p) throw Error("factor prime mismatch");
        degsum += f.degree();
    }
    if (degsum != 22) throw Error("spectral data must cover H^2: degrees sum to " +
                                  std::to_string(degsum) + ", not 22");
    Rational total = make_rational(1) + make_rational(int_pow(p, 2 * k), 1);
    for (const Int& lam : algebraicEigenvalues) {
        Int t;
        mpz_pow_ui(t.get_mpz_t(), lam.get_mpz_t(), k);
        total += make_rational(t, 1);
    }
    for (const auto& f : factors) {
        auto sums = power_sums_from_poly(f.poly, k);
        total += sums[k - 1];
    }
    if (den(total) != 1) throw Error("predicted count is not an integer");
    return num(total);
}

struct AssembledCharPoly {
    CharPolyData cp;       // full degree-22 candidate
    UniPoly residual;      // cp.poly with the known algebraic eigenvalues divided out
};

// Build degree-22 candidates from the first eleven traces: Newton's
// identities give the top half of the coefficients, the functional equation
// reflects the rest; candidates must come out integral and divisible by
// (T - lambda) for each known algebraic eigenvalue.
inline std::vector<AssembledCharPoly> assemble_charpoly(const std::vector<Int>& traces,
                                                        const Int& p,
                                                        const std::vector<Int>& knownAlgebraic) {
    if (traces.size() != 11) throw Error("assembly needs exactly 11 traces");
    const int d = 22;
    std::vector<AssembledCharPoly> out;
    for (int sign : {1, -1}) {
        // e_k from Newton's identities
        std::vector<Rational> e(12, make_rational(0));
        e[0] = make_rational(1);
        bool bad = false;
        for (int kk = 1; kk <= 11; ++kk) {
            Rational s = make_rational(0);
            for (int i = 1; i <= kk; ++i) {
                Rational term = e[kk - i] * make_rational(traces[i - 1], 1);
                s += (i % 2 ? term : Rational(-term));
            }
            e[kk] = s / make_rational(kk);
        }
        std::vector<Rational> c(d + 1, make_rational(0));
        c[d] = make_rational(1);
        for (int kk = 1; kk <= 11; ++kk) c[d - kk] = (kk % 2 ? Rational(-e[kk]) : e[kk]);
        // reflection: c_j = sign p^(d-2j) c_{d-j} for j < 11
        for (int j = 0; j < 11; ++j)
            c[j] = make_rational(sign) * make_rational(int_pow(p, d - 2 * j), 1) * c[d - j];
        // sign -1 forces the middle coefficient to vanish
        if (sign == -1 && c[11] != 0) continue;
        for (const Rational& cc : c)
            if (den(cc) != 1) bad = true;
        if (bad) continue;
        UniPoly poly{std::vector<Rational>(c)};
        // divide out the known algebraic eigenvalues
        UniPoly residual = poly;
        bool divides_ok = true;
        for (const Int& lam : knownAlgebraic) {
            UniPoly lin({make_rational(-lam, 1), make_rational(1)});
            auto [quot, rem] = divrem(residual, lin);
            if (!rem.is_zero()) {
                divides_ok = false;
                break;
            }
            residual = quot;
        }
        if (!divides_ok) continue;
        CharPolyData cp;
        cp.poly = poly;
        cp.p = p;
        cp.sign = sign;
        cp.provenance = CharPolyData::Provenance::Assembled;
        out.push_back({cp, residual});
    }
    if (out.empty()) throw Error("no integrally consistent candidate: traces look inconsistent");
    return out;
}

// Traces k = 1..m implied by spectral data (for round trips and prediction).
inline std::vector<Int> traces_from_spectrum(const std::vector<CharPolyData>& factors,
                                             const std::vector<Int>& algebraicEigenvalues, int m) {
    std::vector<Int> out;
    for (int k = 1; k <= m; ++k) {
        Rational t = make_rational(0);
        for (const auto& f : factors) t += power_sums_from_poly(f.poly, k)[k - 1];
        for (const Int& lam : algebraicEigenvalues) {
            Int pw;
            mpz_pow_ui(pw.get_mpz_t(), lam.get_mpz_t(), k);
            t += make_rational(pw, 1);
        }
        if (den(t) != 1) throw Error("non-integral trace");
        out.push_back(num(t));
    }
    return out;
}

}  // namespace k3pencil
