#include <catch2/catch_amalgamated.hpp>

#include "k3pencil/charpoly.hpp"

#include <random>

#include <json.hpp>

#include <fstream>

using namespace k3pencil;

namespace {

UniPoly load_phi20() {
    std::ifstream in(std::string(K3P_DATA_DIR) + "/phi20.json");
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    std::vector<Rational> c;
    for (const auto& s : j["coefficients"]) c.push_back(make_rational(Int(s.get<std::string>()), 1));
    return UniPoly(std::move(c));
}

UniPoly lin(long r) { return UniPoly({make_rational(-r), make_rational(1)}); }

}  // namespace

TEST_CASE("the transcribed degree-20 factor satisfies the functional equation") {
    UniPoly phi = load_phi20();
    REQUIRE(phi.degree() == 20);
    CHECK(functional_equation_sign(phi, Int(19)) == 1);
    CHECK(phi.coeff(0) == make_rational(int_pow(Int(19), 20), 1));
    CHECK(phi.coeff(1) == make_rational(Int(-21) * int_pow(Int(19), 18), 1));
    CHECK(phi.coeff(19) == make_rational(-21));

    auto sums = power_sums_from_poly(phi, 2);
    CHECK(sums[0] == make_rational(21));           // p_1 = -c_19
    CHECK(sums[1] == make_rational(21 * 21 - 2 * 19));  // p_2 = e1^2 - 2 e2 = 403
}

TEST_CASE("unit-root eigenvalue counts") {
    UniPoly phi = load_phi20();
    UniPoly full = lin(19) * lin(19) * phi;
    CharPolyData cp = make_charpoly(full, Int(19));
    CHECK(cp.sign == 1);
    CHECK(count_unit_root_eigenvalues(cp) == 2);
    CHECK(van_luijk_rho_bound(cp) == 2);

    CharPolyData phi_alone = make_charpoly(phi, Int(19));
    CHECK(count_unit_root_eigenvalues(phi_alone) == 0);

    // (T-p)^2 (T+p)^2 at p = 7: the four eigenvalues are +-p
    UniPoly pm = lin(7) * lin(7) * lin(-7) * lin(-7);
    CHECK(count_unit_root_eigenvalues(make_charpoly(pm, Int(7))) == 4);

    // fully cyclotomic degree-22: p^22 Phi_1^22 scaled, i.e. (T-p)^22
    UniPoly all = UniPoly::constant(make_rational(1));
    for (int i = 0; i < 22; ++i) all = all * lin(5);
    CHECK(van_luijk_rho_bound(make_charpoly(all, Int(5))) == 22);

    UniPoly bad = lin(3) * lin(5);
    CHECK_THROWS_AS(make_charpoly(bad, Int(19)), Error);
}

TEST_CASE("predicted counts from the worked spectral data") {
    UniPoly phi = load_phi20();
    CharPolyData cp = make_charpoly(phi, Int(19));
    std::vector<Int> algebraic{19, 19};
    CHECK(predicted_count({cp}, algebraic, Int(19), 1) == 421);
    CHECK(predicted_count({cp}, algebraic, Int(19), 2) == 131447);

    // fully algebraic H^2 sanity value: 1 + 22 p^k + p^{2k}
    std::vector<Int> all22(22, Int(19));
    CHECK(predicted_count({}, all22, Int(19), 1) == 1 + 22 * 19 + 361);
    CHECK(predicted_count({}, all22, Int(19), 3) ==
          1 + 22 * int_pow(Int(19), 3) + int_pow(Int(19), 6));

    CHECK_THROWS_AS(predicted_count({cp}, {Int(19)}, Int(19), 1), Error);  // degree 21 != 22
}

TEST_CASE("charpoly assembly round trips") {
    UniPoly phi = load_phi20();
    UniPoly full = lin(19) * lin(19) * phi;
    CharPolyData cp = make_charpoly(full, Int(19));
    auto traces = traces_from_spectrum({cp}, {}, 11);
    auto cands = assemble_charpoly(traces, Int(19), {Int(19), Int(19)});
    bool recovered = false;
    for (const auto& cand : cands)
        if (cand.cp.poly == full) {
            recovered = true;
            CHECK(cand.cp.sign == 1);
            CHECK(cand.residual == phi);
        }
    CHECK(recovered);

    // synthetic split polynomial (T^2 - p^2)^11 = prod (T -+ p zeta)
    UniPoly sym = UniPoly::constant(make_rational(1));
    for (int i = 0; i < 11; ++i) sym = sym * lin(7) * lin(-7);
    CharPolyData scp = make_charpoly(sym, Int(7));
    CHECK(scp.sign == -1);
    auto straces = traces_from_spectrum({scp}, {}, 11);
    auto scands = assemble_charpoly(straces, Int(7), {});
    bool srec = false;
    for (const auto& cand : scands)
        if (cand.cp.poly == sym) srec = true;
    CHECK(srec);

    // all-zero traces: both signs produce integrally consistent candidates
    auto zcands = assemble_charpoly(std::vector<Int>(11, Int(0)), Int(19), {});
    CHECK(zcands.size() == 2);
    for (const auto& cand : zcands) {
        CHECK(cand.cp.poly.coeff(22) == 1);
        CHECK(abs(num(cand.cp.poly.coeff(0))) == int_pow(Int(19), 22));
    }
}

TEST_CASE("assembly round trip on random weight-2-consistent polynomials") {
    std::mt19937_64 rng(0xFEEDFACEull);
    std::uniform_int_distribution<int> pick(0, 3);
    const long p = 13;
    int done = 0;
    while (done < 50) {
        // random product of (T-p), (T+p), and p-scaled cyclotomic quadratics
        UniPoly f = UniPoly::constant(make_rational(1));
        int deg = 0;
        std::uniform_int_distribution<int> which(0, 2);
        while (deg < 22) {
            int w = which(rng);
            if (w == 0) {
                f = f * lin(p);
                deg += 1;
            } else if (w == 1) {
                f = f * lin(-p);
                deg += 1;
            } else if (deg + 2 <= 22) {
                // p^2 Phi_4(T/p) = T^2 + p^2 (eigenvalues +- i p)
                f = f * UniPoly({make_rational(p * p), make_rational(0), make_rational(1)});
                deg += 2;
            }
        }
        CharPolyData cp;
        try {
            cp = make_charpoly(f, Int(p));
        } catch (const Error&) {
            continue;  // mixed signs can break the functional equation; skip
        }
        auto traces = traces_from_spectrum({cp}, {}, 11);
        auto cands = assemble_charpoly(traces, Int(p), {});
        bool rec = false;
        for (const auto& cand : cands)
            if (cand.cp.poly == f) rec = true;
        CHECK(rec);
        ++done;
    }
}
