#include <catch2/catch_amalgamated.hpp>

#include "k3pencil/parse.hpp"
#include "k3pencil/plane.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace k3pencil;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

HomForm load_example(int n) {
    return parse_form(read_file(std::string(K3P_DATA_DIR) + "/example" + std::to_string(n) + ".sextic"));
}

std::mt19937_64 rng(0xBEEFCAFEull);

HomForm random_sextic() {
    std::uniform_int_distribution<int> coeff(-6, 6);
    std::map<std::array<int, 3>, Rational> terms;
    for (int i = 0; i <= 6; ++i)
        for (int j = 0; i + j <= 6; ++j) {
            int c = coeff(rng);
            if (c) terms[{i, j, 6 - i - j}] = make_rational(c);
        }
    if (terms.empty()) terms[{6, 0, 0}] = make_rational(1);
    return HomForm(6, std::move(terms));
}

Line random_line() {
    std::uniform_int_distribution<int> coeff(-5, 5);
    while (true) {
        int a = coeff(rng), b = coeff(rng), c = coeff(rng);
        if (a || b || c) return Line(a, b, c);
    }
}

std::vector<int> mults(const IntersectionProfile& p) { return p.multiplicities(); }

}  // namespace

TEST_CASE("parser: basics, errors and round trip") {
    HomForm f = parse_form("x^2*y + 3*z^3");
    CHECK(f.deg == 3);
    CHECK(f.terms.size() == 2);
    CHECK(f.coeff(2, 1, 0) == 1);
    CHECK(f.coeff(0, 0, 3) == 3);

    HomForm ex1 = load_example(1);
    CHECK(ex1.deg == 6);
    CHECK(ex1.terms.size() == 14);

    CHECK_THROWS_AS(parse_form("x^2 + y^3"), ParseError);
    try {
        parse_form("x^2 + y^3");
    } catch (const ParseError& e) {
        CHECK(e.pos == 6);  // points at the offending second term
    }
    CHECK_THROWS_AS(parse_form("x + w"), ParseError);
    CHECK_THROWS_AS(parse_form("1/0 * x"), ParseError);
    CHECK_THROWS_AS(parse_form("x -"), ParseError);

    // print -> parse is the identity on canonical output
    for (int n = 1; n <= 3; ++n) {
        HomForm g = load_example(n);
        CHECK(parse_form(to_string(g)) == g);
    }
    // fractions survive the round trip
    HomForm q = parse_form("7/73*x^2 - 5*y*z + y^2");
    CHECK(parse_form(to_string(q)) == q);
}

TEST_CASE("example 1 restrictions match the worked computations") {
    HomForm F = load_example(1);

    // x = 0: restriction is 16 y^4 z^2
    Restriction rx = restrict_to_line(F, Line(1, 0, 0));
    // chart for x=0 keeps (y, z) as (s, t): affine poly 16 u^4, infinity mult 2
    CHECK(rx.poly == UniPoly({make_rational(0), make_rational(0), make_rational(0),
                              make_rational(0), make_rational(16)}));
    CHECK(rx.inf_mult == 2);
    auto px = intersection_profile(F, Line(1, 0, 0));
    CHECK(mults(px) == std::vector<int>{4, 2});
    CHECK(px.distinct_count() == 2);
    CHECK(is_tritangent(F, Line(1, 0, 0)));
    // split values: F(0:1:1) = 16 = (+-4)^2
    CHECK(eval(F, ProjPoint(0, 1, 1)) == make_rational(16));

    // z = 0: restriction is x y^2 (2x^3 + x^2 y + x y^2 + y^3)
    Restriction rz = restrict_to_line(F, Line(0, 0, 1));
    UniPoly expected = UniPoly({make_rational(0), make_rational(1)}) *
                       UniPoly({make_rational(1), make_rational(1), make_rational(1), make_rational(2)});
    CHECK(rz.poly == expected);  // u(2u^3+u^2+u+1) in the affine chart
    CHECK(rz.inf_mult == 2);     // the y^2 factor sits at the chart infinity (1:0:0)
    auto pz = intersection_profile(F, Line(0, 0, 1));
    CHECK(mults(pz) == std::vector<int>{2, 1, 1, 1, 1});
    CHECK(pz.distinct_count() == 5);
    CHECK_FALSE(is_tritangent(F, Line(0, 0, 1)));

    // constructed component: F' = x * G is detected
    HomForm G = parse_form("x^5 + y^5 + z^5");
    std::map<std::array<int, 3>, Rational> prod;
    for (auto& [e, c] : G.terms) prod[{e[0] + 1, e[1], e[2]}] = c;
    HomForm FP(6, std::move(prod));
    CHECK(is_component(FP, Line(1, 0, 0)));
}

TEST_CASE("example 2 restrictions, singular point, node type") {
    HomForm F = load_example(2);

    auto px = intersection_profile(F, Line(1, 0, 0));  // x = 0 -> 5 y^4 z^2
    CHECK(mults(px) == std::vector<int>{4, 2});
    CHECK(is_tritangent(F, Line(1, 0, 0)));

    auto py = intersection_profile(F, Line(0, 1, 0));  // y = 0 -> x z^2 (8x^3+x^2z+7xz^2+6z^3)
    CHECK(mults(py) == std::vector<int>{2, 1, 1, 1, 1});

    CHECK(is_singular_point(F, ProjPoint(1, 0, 0)));
    CHECK(is_node(F, ProjPoint(1, 0, 0)));  // quadratic part 2y^2 + 8z^2
    CHECK(is_on_curve(F, ProjPoint(0, 0, 1)));
    CHECK_FALSE(is_singular_point(F, ProjPoint(0, 0, 1)));
}

TEST_CASE("tangent lines") {
    HomForm F1 = load_example(1);
    CHECK(tangent_line(F1, ProjPoint(1, 0, 0)) == Line(0, 0, 1));  // z = 0 at R

    HomForm F3 = load_example(3);
    CHECK(tangent_line(F3, ProjPoint(1, 0, 0)) == Line(0, 11, 7));  // 11y + 7z = 0
    CHECK(eval(F3, ProjPoint(0, 1, 0)) == make_rational(63, 73));

    HomForm F2 = load_example(2);
    CHECK_THROWS_AS(tangent_line(F2, ProjPoint(1, 0, 0)), Error);  // singular point
    CHECK_THROWS_AS(tangent_line(F1, ProjPoint(0, 1, 1)), Error);  // off the curve
}

TEST_CASE("tangent line has contact of order >= 2") {
    HomForm F = load_example(1);
    for (const ProjPoint& p : rational_points_on_B(F, 2, ProjPoint(0, 0, 1))) {
        if (is_singular_point(F, p)) continue;
        Line T = tangent_line(F, p);
        CHECK(T.contains(p));
        auto prof = intersection_profile(F, T);
        if (prof.line_in_curve) continue;
        // locate p's multiplicity in the profile
        Restriction r = restrict_to_line(F, T);
        auto param = r.chart.param_of(p);
        int mult = 0;
        if (!param) mult = r.inf_mult;
        else {
            auto dec = squarefree_decompose(r.poly);
            for (auto& [f, e] : dec.parts)
                if (eval(f, *param) == 0) mult = e;
        }
        CHECK(mult >= 2);
    }
}

TEST_CASE("rational point sweeps") {
    HomForm F1 = load_example(1);
    auto pts = rational_points_on_B(F1, 1, ProjPoint(0, 0, 1));
    CHECK(std::find(pts.begin(), pts.end(), ProjPoint(1, 0, 0)) != pts.end());

    HomForm F3 = load_example(3);
    auto pts3 = rational_points_on_B(F3, 2, ProjPoint(0, 0, 1));
    CHECK(std::find(pts3.begin(), pts3.end(), ProjPoint(1, 0, 0)) != pts3.end());

    // x^6 + y^6 + z^6 has no rational points at all
    HomForm fermat = parse_form("x^6 + y^6 + z^6");
    CHECK(rational_points_on_B(fermat, 1, ProjPoint(0, 0, 1)).empty());
}

TEST_CASE("Bezout and branch-parity invariants on random pairs") {
    int tested = 0;
    while (tested < 200) {
        HomForm F = random_sextic();
        Line l = random_line();
        auto prof = intersection_profile(F, l);
        if (prof.line_in_curve) continue;
        ++tested;
        CHECK(prof.total() == 6);
        CHECK(prof.odd_point_count() % 2 == 0);
    }
}

TEST_CASE("profile invariance under rescaling") {
    HomForm F = load_example(1);
    HomForm G = make_rational(-7, 5) * F;
    for (const Line& l : {Line(1, 0, 0), Line(0, 0, 1), Line(1, -2, 3)}) {
        CHECK(mults(intersection_profile(F, l)) == mults(intersection_profile(G, l)));
        CHECK(intersection_profile(F, l).distinct_count() ==
              intersection_profile(G, l).distinct_count());
    }
}
