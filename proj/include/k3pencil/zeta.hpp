#pragma once

// Point counting on the double cover w^2 = F(x,y,z) over F_q, q = p^k.
// Under good reduction the count over the weighted-projective model equals
// the K3's count: each plane point contributes 1 + chi(F(pt)) points, chi the
// quadratic character with chi(0) = 0, so
//     N = q^2 + q + 1 + sum over the plane of chi(F(pt)).
//
// The table engine enumerates the multiplicative group by a generator.
// Elements live in two shapes at once: a packed vector of F_p digits in
// 16-bit lanes of a u64 (so field addition is one integer addition, no lane
// overflow for up to seven summands with p < 256), and a base-p index used
// for the character and logarithm tables. Horner is replaced by running
// logarithms: for x = g^a fixed and y = g^e the term c_i y^i is
// exp[log c_i + i*e], so the inner loop is table lookups and adds only.
//
// Scaling F by a non-square constant changes the count (quadratic twist), so
// rational input is made integral by square factors only.

#include "k3pencil/fp.hpp"
#include "k3pencil/smoothness.hpp"

#include <thread>

namespace k3pencil {

struct PrimeFieldCtx {
    Int p;

    explicit PrimeFieldCtx(const Int& prime) : p(prime) {
        if (p < 3) throw Error("need an odd prime");
        if (mpz_sizeinbase(p.get_mpz_t(), 2) > 62) throw Error("prime too large (>= 2^62)");
        if (mpz_probab_prime_p(p.get_mpz_t(), 32) == 0) throw Error("p is not prime");
    }
    u64 value() const { return p.get_ui(); }
};

struct ExtFieldCtx {
    u64 p;
    int k;
    FpPoly modulus;  // monic irreducible of degree k over F_p

    ExtFieldCtx(u64 prime, int ext, std::optional<FpPoly> mod = std::nullopt)
        : p(prime), k(ext), modulus() {
        PrimeFieldCtx check{Int(static_cast<unsigned long>(prime))};
        if (k < 1) throw Error("extension degree must be >= 1");
        FpCtx F(p);
        if (mod) {
            modulus = fpp::monic(F, *mod);
            if (fpp::deg(modulus) != k) throw Error("modulus degree mismatch");
            if (k > 1 && !fpp::is_irreducible(F, modulus)) throw Error("modulus is reducible");
        } else {
            modulus = smallest_irreducible(F, k);
        }
    }

    Int q() const { return int_pow(Int(static_cast<unsigned long>(p)), k); }

    // smallest monic irreducible of degree k in the lexicographic coefficient
    // order (constant coefficient fastest)
    static FpPoly smallest_irreducible(const FpCtx& F, int k) {
        if (k == 1) return FpPoly{0, 1};  // x
        std::vector<u64> lower(k, 0);
        while (true) {
            FpPoly f = lower;
            f.push_back(1);
            if (fpp::is_irreducible(F, f)) return f;
            int i = 0;
            while (i < k && ++lower[i] == F.p) lower[i++] = 0;
            if (i == k) throw Error("no irreducible polynomial found");
        }
    }
};

struct CountResult {
    Int p;
    int k;
    Int N;      // points of the double cover over F_{p^k}
    Int trace;  // N - 1 - p^{2k}

    CountResult(const Int& prime, int ext, const Int& count) : p(prime), k(ext), N(count) {
        Int q = int_pow(p, k);
        trace = N - 1 - q * q;
        if (abs(trace) > 22 * q) throw Error("count violates the K3 Weil bound");
    }
};

// Integral model with the same quadratic twist class: multiply by the square
// of the denominator lcm, then strip the largest square factor of the content.
inline HomForm integral_twist_model(const HomForm& F) {
    Int l = 1;
    for (auto& [e, c] : F.terms) l = lcm(l, den(c));
    HomForm G = make_rational(l * l, 1) * F;
    Int content = 0;
    for (auto& [e, c] : G.terms) content = gcd(content, num(c));
    Int sq = 1;
    for (auto& [prime, mult] : factorize(content))
        if (mult >= 2) sq *= int_pow(prime, mult - (mult % 2));
    return make_rational(1, sq) * G;
}

namespace detail {

// ---- table engine over F_q, q = p^k <= 2^24, p < 256, k <= 4 ----
struct CountTables {
    u64 p, q;
    int k;
    std::vector<u64> exp_packed;           // g^i in 16-bit lanes, doubled length
    std::vector<std::uint32_t> log_index;  // base-p index -> discrete log (q entries)
    std::vector<std::int8_t> chi;          // base-p index -> quadratic character
    std::vector<std::uint16_t> mod_p;      // lane value (< 8p) -> value mod p

    explicit CountTables(const ExtFieldCtx& E) : p(E.p), k(E.k) {
        Int qz = E.q();
        if (qz > (1 << 24)) throw Error("field too large for the table engine");
        q = qz.get_ui();
        if (p >= 256 || k > 4) throw Error("table engine needs p < 256 and k <= 4");
        ExtCtx ext(p, E.modulus);

        std::vector<Int> prime_factors;
        for (auto& [f, e] : factorize(qz - 1)) prime_factors.push_back(f);
        FpPoly gen;
        for (u64 trial = 1;; ++trial) {
            FpPoly cand = index_to_poly(trial);
            if (fpp::is_zero(cand)) continue;
            bool ok = true;
            for (const Int& r : prime_factors)
                if (ext.pow(cand, (qz - 1) / r) == ext.from_u64(1)) {
                    ok = false;
                    break;
                }
            if (ok) {
                gen = cand;
                break;
            }
        }

        exp_packed.assign(2 * (q - 1), 0);
        log_index.assign(q, 0);
        chi.assign(q, 0);
        FpPoly cur = ext.from_u64(1);
        for (u64 i = 0; i < q - 1; ++i) {
            u64 idx = poly_to_index(cur);
            exp_packed[i] = poly_to_packed(cur);
            log_index[idx] = static_cast<std::uint32_t>(i);
            chi[idx] = (i % 2 == 0) ? 1 : -1;
            cur = ext.mul(cur, gen);
        }
        if (!(cur == ext.from_u64(1))) throw Error("generator order mismatch");
        for (u64 i = 0; i < q - 1; ++i) exp_packed[q - 1 + i] = exp_packed[i];
        mod_p.assign(8 * p + 1, 0);
        for (u64 v = 0; v < mod_p.size(); ++v) mod_p[v] = static_cast<std::uint16_t>(v % p);
    }

    FpPoly index_to_poly(u64 idx) const {
        FpPoly f;
        while (idx) {
            f.push_back(idx % p);
            idx /= p;
        }
        fpp::trim(f);
        return f;
    }
    u64 poly_to_index(const FpPoly& f) const {
        u64 idx = 0;
        for (auto it = f.rbegin(); it != f.rend(); ++it) idx = idx * p + *it;
        return idx;
    }
    u64 poly_to_packed(const FpPoly& f) const {
        u64 v = 0;
        for (size_t i = 0; i < f.size(); ++i) v |= static_cast<u64>(f[i]) << (16 * i);
        return v;
    }
    // normalize a packed sum (each lane < 8p) back to a base-p index
    u64 packed_to_index(u64 v) const {
        u64 idx = 0;
        for (int i = k - 1; i >= 0; --i) idx = idx * p + mod_p[(v >> (16 * i)) & 0xFFFF];
        return idx;
    }
};

}  // namespace detail

// Cost gate: refuse blind enumeration beyond the limit of plane points.
inline Int count_cost(const Int& p, int k) {
    Int q = int_pow(p, k);
    return q * q;
}

inline Int default_count_cost_limit() { return Int(5000000000L); }

// Exact point count of w^2 = F over F_{p^k}. Requires good reduction at p
// (checked). The cost gate refuses large fields unless force = true.
inline CountResult count_points(const HomForm& F, const Int& p, int k, int threads = 1,
                                bool force = false,
                                std::optional<FpPoly> modulus = std::nullopt,
                                std::optional<Int> costLimit = std::nullopt) {
    if (F.deg != 6) throw Error("count_points expects a sextic");
    PrimeFieldCtx pc(p);
    HomForm Fi = integral_twist_model(F);
    Int limit = costLimit ? *costLimit : default_count_cost_limit();
    if (!force && count_cost(p, k) > limit)
        throw Error("counting cost " + count_cost(p, k).get_str() + " exceeds the gate (" +
                    limit.get_str() + "); use the force flag");
    {
        auto [Fprim, unit] = primitive_int(Fi);
        if (!good_reduction_check(Fprim, p.get_ui()))
            throw Error("bad reduction: the reduced branch sextic is singular");
        if (mpz_divisible_p(num(unit).get_mpz_t(), p.get_mpz_t()))
            throw Error("bad reduction: F vanishes mod p");
    }

    u64 pu = p.get_ui();
    FpCtx ctx(pu);
    FpForm f = reduce_mod_p(Fi, ctx);
    auto grid = fp_dehomogenize_z(f);  // grid[i][j] = coeff of x^i y^j (z fills the degree)

    Int q = int_pow(p, k);

    if (k == 1 && pu >= 256) {
        // large prime field: quadratic character via the Legendre symbol
        Int chi_total = 0;
        auto leg = [&](u64 v) -> long {
            if (!v) return 0;
            return mpz_legendre(Int(static_cast<unsigned long>(v)).get_mpz_t(), p.get_mpz_t());
        };
        for (u64 x = 0; x < pu; ++x) {
            FpPoly cy(7, 0);
            u64 xp = 1;
            for (int i = 0; i <= 6; ++i) {
                for (int j = 0; i + j <= 6; ++j)
                    if (grid[i][j]) cy[j] = ctx.add(cy[j], ctx.mul(grid[i][j], xp));
                xp = ctx.mul(xp, x);
            }
            for (u64 y = 0; y < pu; ++y) chi_total += leg(fpp::eval(ctx, cy, y));
        }
        FpPoly line(7, 0);
        for (int i = 0; i <= 6; ++i) line[i] = grid[i][6 - i];
        for (u64 x = 0; x < pu; ++x) chi_total += leg(fpp::eval(ctx, line, x));
        chi_total += leg(grid[6][0]);
        return CountResult(p, k, q * q + q + 1 + chi_total);
    }

    if (k > 4) {
        // generic chart enumeration with vector arithmetic (small q only)
        ExtFieldCtx E(pu, k, modulus);
        ExtCtx ext(pu, E.modulus);
        u64 qq = E.q().get_ui();
        auto idx_to_elem = [&](u64 idx) {
            FpPoly e;
            while (idx) {
                e.push_back(idx % pu);
                idx /= pu;
            }
            fpp::trim(e);
            return e;
        };
        long long chi_sum = 0;
        for (u64 xi = 0; xi < qq; ++xi) {
            FpPoly x = idx_to_elem(xi);
            std::array<FpPoly, 7> cy;
            std::vector<FpPoly> xp(7);
            xp[0] = ext.from_u64(1);
            for (int i = 1; i <= 6; ++i) xp[i] = ext.mul(xp[i - 1], x);
            for (int j = 0; j <= 6; ++j)
                for (int i = 0; i + j <= 6; ++i)
                    if (grid[i][j]) cy[j] = ext.add(cy[j], ext.mul(ext.from_u64(grid[i][j]), xp[i]));
            for (u64 yi = 0; yi < qq; ++yi) {
                FpPoly y = idx_to_elem(yi);
                FpPoly v;
                for (int j = 6; j >= 0; --j) v = ext.add(ext.mul(v, y), cy[j]);
                chi_sum += ext.chi(v);
            }
        }
        FpPoly linev;
        for (u64 xi = 0; xi < qq; ++xi) {
            FpPoly x = idx_to_elem(xi);
            FpPoly v;
            for (int i = 6; i >= 0; --i) v = ext.add(ext.mul(v, x), ext.from_u64(grid[i][6 - i]));
            chi_sum += ext.chi(v);
        }
        chi_sum += ext.chi(ext.from_u64(grid[6][0]));
        return CountResult(p, k, q * q + q + 1 + Int(static_cast<long>(chi_sum)));
    }

    ExtFieldCtx E(pu, k, modulus);
    detail::CountTables T(E);
    const u64 qq = T.q;
    const u64 qm1 = qq - 1;

    // worker over a range of x-exponents; ex == qm1 encodes x = 0
    auto run_range = [&](u64 ex_begin, u64 ex_end, long long& out) {
        long long local = 0;
        std::array<std::uint32_t, 7> lc{};
        std::array<std::uint32_t, 7> li{};
        std::array<int, 7> active{};
        for (u64 ex = ex_begin; ex < ex_end; ++ex) {
            // c_i(x) = sum_j grid[j][i] x^j  (i indexes powers of y)
            std::array<u64, 7> packed{};
            for (int j = 0; j <= 6; ++j) {
                if (ex == qm1 && j > 0) break;  // x = 0
                u64 xj_log = (ex == qm1) ? 0 : (static_cast<u64>(j) * ex) % qm1;
                for (int i = 0; i + j <= 6; ++i) {
                    u64 c = grid[j][i];
                    if (!c) continue;
                    packed[i] += T.exp_packed[T.log_index[c] + xj_log];
                }
            }
            int nactive = 0;
            for (int i = 0; i <= 6; ++i) {
                u64 idx = T.packed_to_index(packed[i]);
                if (i == 0) local += T.chi[idx];  // the y = 0 point of this column
                if (idx) {
                    active[nactive] = i;
                    lc[nactive] = T.log_index[idx];
                    li[nactive] = 0;
                    ++nactive;
                }
            }
            for (u64 ey = 0; ey < qm1; ++ey) {
                u64 acc = 0;
                for (int a = 0; a < nactive; ++a) {
                    acc += T.exp_packed[lc[a] + li[a]];
                    li[a] += active[a];
                    if (li[a] >= qm1) li[a] -= static_cast<std::uint32_t>(qm1);
                }
                local += T.chi[T.packed_to_index(acc)];
            }
        }
        out = local;
    };

    long long chi_sum = 0;
    int nthreads = std::max(1, threads);
    if (nthreads == 1) {
        long long out = 0;
        run_range(0, qq, out);  // covers ex = qm1, i.e. x = 0
        chi_sum += out;
    } else {
        std::vector<std::thread> pool;
        std::vector<long long> partial(nthreads, 0);
        u64 chunk = qq / nthreads + 1;
        for (int t = 0; t < nthreads; ++t) {
            u64 b = std::min<u64>(qq, t * chunk), e = std::min<u64>(qq, (t + 1) * chunk);
            if (b < e) pool.emplace_back(run_range, b, e, std::ref(partial[t]));
        }
        for (auto& th : pool) th.join();
        for (long long v : partial) chi_sum += v;
    }

    // line z = 0 (points (x:1:0)) and the point (1:0:0)
    for (u64 ex = 0; ex <= qm1; ++ex) {
        u64 packed = 0;
        for (int i = 0; i <= 6; ++i) {
            u64 c = grid[i][6 - i];
            if (!c) continue;
            if (ex == qm1) {  // x = 0
                if (i == 0) packed += c;
                continue;
            }
            u64 lg = T.log_index[c] + (static_cast<u64>(i) * ex) % qm1;
            packed += T.exp_packed[lg >= qm1 ? lg - qm1 : lg];
        }
        chi_sum += T.chi[T.packed_to_index(packed)];
    }
    chi_sum += T.chi[grid[6][0]];

    return CountResult(p, k, q * q + q + 1 + Int(static_cast<long>(chi_sum)));
}

// Independent oracle: enumerate the weighted-projective model naively with
// generic field arithmetic; every nonzero coordinate triple is visited and
// the scaling-orbit size q - 1 divides out at the end. Shares nothing with
// the table engine.
inline CountResult count_points_naive(const HomForm& F, const Int& p, int k,
                                      std::optional<FpPoly> modulus = std::nullopt) {
    HomForm Fi = integral_twist_model(F);
    u64 pu = p.get_ui();
    ExtFieldCtx E(pu, k, modulus);
    ExtCtx ext(pu, E.modulus);
    Int q = E.q();
    u64 qq = q.get_ui();
    FpCtx ctx(pu);
    FpForm f = reduce_mod_p(Fi, ctx);

    auto idx_to_elem = [&](u64 idx) {
        FpPoly e;
        while (idx) {
            e.push_back(idx % pu);
            idx /= pu;
        }
        fpp::trim(e);
        return e;
    };
    std::vector<int> chi(qq, 0);
    for (u64 i = 1; i < qq; ++i) chi[i] = ext.chi(idx_to_elem(i));

    Int total = 0;
    for (u64 xi = 0; xi < qq; ++xi)
        for (u64 yi = 0; yi < qq; ++yi)
            for (u64 zi = 0; zi < qq; ++zi) {
                if (!xi && !yi && !zi) continue;
                FpPoly x = idx_to_elem(xi), y = idx_to_elem(yi), z = idx_to_elem(zi);
                FpPoly v;
                for (auto& [e, c] : f.terms) {
                    FpPoly t = ext.from_u64(c);
                    for (int r = 0; r < e[0]; ++r) t = ext.mul(t, x);
                    for (int r = 0; r < e[1]; ++r) t = ext.mul(t, y);
                    for (int r = 0; r < e[2]; ++r) t = ext.mul(t, z);
                    v = ext.add(v, t);
                }
                u64 vi = 0;
                for (auto it = v.rbegin(); it != v.rend(); ++it) vi = vi * pu + *it;
                total += 1 + chi[vi];  // solutions w of w^2 = v
            }
    if (total % (q - 1) != 0) throw Error("weighted-projective orbit count not divisible");
    return CountResult(p, k, total / (q - 1));
}

}  // namespace k3pencil
