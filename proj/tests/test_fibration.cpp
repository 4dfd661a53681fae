#include <catch2/catch_amalgamated.hpp>

#include "k3pencil/fibration.hpp"
#include "k3pencil/parse.hpp"

#include <fstream>
#include <random>
#include <sstream>

using namespace k3pencil;

namespace {

HomForm load_example(int n) {
    std::ifstream in(std::string(K3P_DATA_DIR) + "/example" + std::to_string(n) + ".sextic");
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return parse_form(os.str());
}

// two rational nodes at (1:0:0) and (0:1:0), used by the two-singularity tests
HomForm two_node_sextic() {
    return parse_form(
        "x^4*y^2 + x^4*z^2 + x^2*y^4 + y^4*z^2 + z^6 + x^3*z^3 + y^3*z^3 + x^2*y^2*z^2");
}

// union of the lines x=0, y=0 (crossing at the node (0:0:1)) and a quartic
// whose restriction to z=0 is a perfect square: the line z=0 then has all of
// its odd intersection points on pencil lines contained in B
HomForm planted_bad_odd_points() {
    return parse_form("x*y*((x^2 + y^2)^2 + z^4)");
}

}  // namespace

TEST_CASE("fibration kinds and blowup bookkeeping") {
    HomForm F1 = load_example(1), F2 = load_example(2);
    PencilFibration f1 = build_fibration(F1, ProjPoint(0, 1, 1));
    CHECK(f1.kind == FibrationKind::Genus2);
    CHECK(f1.ns_rank_increment == 2);  // base point off B

    PencilFibration f2r = build_fibration(F2, ProjPoint(1, 0, 0));
    CHECK(f2r.kind == FibrationKind::Genus1);
    CHECK(f2r.ns_rank_increment == 0);

    PencilFibration f2p = build_fibration(F2, ProjPoint(0, 0, 1));
    CHECK(f2p.kind == FibrationKind::Genus2);  // on B but regular
    CHECK(f2p.ns_rank_increment == 2);
}

TEST_CASE("line pullback classification") {
    HomForm F1 = load_example(1);
    // generic line with squarefree restriction
    FiberClass c = classify_line_pullback(F1, Line(1, 1, 1));
    if (c.profile.distinct_count() == 6) CHECK(c.tag == FiberTag::SmoothGenus2);

    FiberClass cz = classify_line_pullback(F1, Line(0, 0, 1));
    CHECK(cz.tag == FiberTag::IntegralGeomGenus1);
    CHECK(cz.genus_of_normalization == 1);

    FiberClass cx = classify_line_pullback(F1, Line(1, 0, 0));
    CHECK(cx.tag == FiberTag::SplitEvenProfile);
}

TEST_CASE("fiber smoothness matches the discriminant root set") {
    HomForm F1 = load_example(1);
    PencilFibration fib = build_fibration(F1, ProjPoint(0, 1, 1));
    std::mt19937_64 rng(0x5EED5EEDull);
    std::uniform_int_distribution<long> numd(-40, 40);
    std::uniform_int_distribution<long> dend(1, 8);
    for (int i = 0; i < 100; ++i) {
        Rational t = make_rational(numd(rng), dend(rng));
        bool smooth = fiber_is_smooth(fib, t);
        bool delta_nonzero = eval(fib.delta, t) != 0;
        CHECK(smooth == delta_nonzero);
    }
    // the infinity fiber of this pencil is the tritangent x = 0: singular
    CHECK(fib.infinity_fiber_singular);
    CHECK(classify_fiber(fib, std::nullopt).tag == FiberTag::SplitEvenProfile);
}

TEST_CASE("example 1: z=0 is a saliently ramified bisection of pi_P") {
    HomForm F1 = load_example(1);
    PencilFibration fib = build_fibration(F1, ProjPoint(0, 1, 1));
    MultisectionCertificate cert = certify_saliently_ramified(fib, Line(0, 0, 1));
    CHECK(cert.saliently_ramified);
    CHECK(cert.genus_of_normalization == 1);
    // odd points: (0:1:0) projects to the tritangent (the infinity parameter
    // of this pencil); the three cubic points survive the stripping
    CHECK(cert.odd_params.at_infinity);
    CHECK(cert.odd_params.poly.degree() == 3);
    CHECK_FALSE(cert.residual_at_infinity);  // the infinity fiber is singular
    CHECK(cert.residual.degree() == 3);
    CHECK(divides(cert.residual, cert.odd_params.poly));
}

TEST_CASE("example 2: z=0 certifies against P=(0:0:1); genus-1 fibers behave") {
    HomForm F2 = load_example(2);
    PencilFibration fib = build_fibration(F2, ProjPoint(0, 0, 1));
    MultisectionCertificate cert = certify_saliently_ramified(fib, Line(0, 0, 1));
    CHECK(cert.saliently_ramified);
    CHECK(cert.genus_of_normalization == 1);

    // the degenerate tritangent x=0 is a pencil member: split fiber
    auto inf_cls = classify_fiber(fib, std::nullopt);
    CHECK(inf_cls.tag == FiberTag::SplitEvenProfile);

    // genus-1 fibration through the node R
    PencilFibration fr = build_fibration(F2, ProjPoint(1, 0, 0));
    int smooth_count = 0;
    for (long t = 1; t <= 50; ++t) {
        FiberClass cls = classify_fiber(fr, make_rational(t));
        bool delta_nonzero = eval(fr.delta, make_rational(t)) != 0;
        CHECK((cls.tag == FiberTag::SmoothGenus1) == delta_nonzero);
        if (cls.tag == FiberTag::SmoothGenus1) ++smooth_count;
    }
    CHECK(smooth_count == 50);
}

TEST_CASE("example 3: the tangent line at Q certifies against P=(0:1:0)") {
    HomForm F3 = load_example(3);
    CHECK(tangent_line(F3, ProjPoint(1, 0, 0)) == Line(0, 11, 7));
    auto prof = intersection_profile(F3, Line(0, 11, 7));
    CHECK(prof.distinct_count() == 5);
    PencilFibration fib = build_fibration(F3, ProjPoint(0, 1, 0));
    MultisectionCertificate cert = certify_saliently_ramified(fib, Line(0, 11, 7));
    CHECK(cert.saliently_ramified);
    CHECK(cert.genus_of_normalization == 1);
    CHECK(cert.odd_params.poly.degree() + (cert.odd_params.at_infinity ? 1 : 0) == 4);
}

TEST_CASE("odd parameter transport bookkeeping") {
    HomForm F1 = load_example(1);
    PencilFibration fib = build_fibration(F1, ProjPoint(0, 1, 1));
    // degree check: sum of odd-multiplicity degrees = poly degree + flag
    for (const Line& l : {Line(0, 0, 1), Line(1, 2, 3), Line(2, -1, 5)}) {
        if (l.contains(fib.base)) continue;
        auto prof = intersection_profile(F1, l);
        if (prof.line_in_curve || prof.all_even()) continue;
        OddParamPoly odd = odd_intersection_parameters(fib, l);
        CHECK(odd.poly.degree() + (odd.at_infinity ? 1 : 0) == prof.odd_point_count());
    }
    // tritangent: no odd points, constant transport, certificate refuses.
    // x=0 passes through (0:1:1), so run this from a base point off that line.
    PencilFibration fib2 = build_fibration(F1, ProjPoint(1, 1, 1));
    OddParamPoly none = odd_intersection_parameters(fib2, Line(1, 0, 0));
    CHECK(none.poly.degree() == 0);
    CHECK_FALSE(none.at_infinity);
    CHECK_THROWS_AS(certify_saliently_ramified(fib2, Line(1, 0, 0)), Error);
    // and through the base point it is rejected outright
    CHECK_THROWS_AS(certify_saliently_ramified(fib, Line(1, 0, 0)), Error);
}

TEST_CASE("planted configuration: all odd points on bad fibers -> not salient") {
    HomForm F = planted_bad_odd_points();
    // base point (0:0:1) is the node where x=0 and y=0 cross
    CHECK(is_node(F, ProjPoint(0, 0, 1)));
    PencilFibration fib = build_fibration(F, ProjPoint(0, 0, 1));
    // the lines x=0 and y=0 are pencil members contained in B
    CHECK((fib.lines_in_curve.degree() >= 1 || fib.infinity_line_in_curve));
    MultisectionCertificate cert = certify_saliently_ramified(fib, Line(0, 0, 1));
    CHECK_FALSE(cert.saliently_ramified);
    CHECK(cert.residual.degree() == 0);
    CHECK_FALSE(cert.residual_at_infinity);
}

TEST_CASE("tangent search finds the worked multisections") {
    HomForm F1 = load_example(1);
    PencilFibration fib1 = build_fibration(F1, ProjPoint(0, 1, 1));
    auto certs1 = tangent_multisection_search(fib1, 1);
    bool found_z = false;
    for (auto& c : certs1)
        if (c.line == Line(0, 0, 1)) {
            found_z = true;
            CHECK(c.saliently_ramified);
            CHECK(c.genus_of_normalization == 1);
        }
    CHECK(found_z);

    HomForm F3 = load_example(3);
    PencilFibration fib3 = build_fibration(F3, ProjPoint(0, 1, 0));
    auto certs3 = tangent_multisection_search(fib3, 1);
    bool found_t = false;
    for (auto& c : certs3)
        if (c.line == Line(0, 11, 7)) found_t = true;
    CHECK(found_t);

    // a union of six lines has no tangent bisections: every candidate line is
    // a component and the sweep skips it
    HomForm lines6 = parse_form("x*y*z*(x + y)*(x + z)*(y + z)");
    PencilFibration fib6 = build_fibration(lines6, ProjPoint(1, 2, 3));
    CHECK(tangent_multisection_search(fib6, 1).empty());
}

TEST_CASE("two-singularity multisections on a two-node sextic") {
    HomForm F = two_node_sextic();
    ProjPoint Q(1, 0, 0), Qp(0, 1, 0);
    CHECK(is_node(F, Q));
    CHECK(is_node(F, Qp));
    std::vector<Rational> samples{make_rational(1), make_rational(2), make_rational(3)};
    auto certs = two_singularity_multisections(F, Q, Qp, samples);
    CHECK(certs.size() >= 2);
    for (auto& c : certs) {
        CHECK(c.saliently_ramified);
        CHECK_FALSE(c.line.contains(Q));
        CHECK(c.line.contains(Qp));
    }
    // a sample hitting the line through both singular points is rejected
    Pencil pq(Qp);
    Line qq = line_through(Q, Qp);
    for (long s = -20; s <= 20; ++s) {
        if (pq.line_at(make_rational(s)) == qq) {
            CHECK_THROWS_AS(
                two_singularity_multisections(F, Q, Qp, {make_rational(s)}), Error);
            break;
        }
    }
    // type preconditions: both inputs must be singular
    CHECK_THROWS_AS(two_singularity_multisections(F, Q, ProjPoint(0, 0, 1), samples), Error);
}

TEST_CASE("certificate invariants hold on random inputs") {
    std::mt19937_64 rng(0xF1B0A110ull);
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<long> small(-2, 2);
    int done = 0;
    while (done < 25) {
        std::map<std::array<int, 3>, Rational> terms;
        for (int i = 0; i <= 6; ++i)
            for (int j = 0; i + j <= 6; ++j) {
                int c = coeff(rng);
                if (c) terms[{i, j, 6 - i - j}] = make_rational(c);
            }
        if (terms.empty()) continue;
        HomForm F(6, std::move(terms));
        long px = small(rng), py = small(rng), pz = small(rng);
        if (!px && !py && !pz) continue;
        ProjPoint P(px, py, pz);
        long la = small(rng), lb = small(rng), lc = small(rng);
        if (!la && !lb && !lc) continue;
        Line l(la, lb, lc);
        try {
            PencilFibration fib = build_fibration(F, P);
            MultisectionCertificate cert = certify_saliently_ramified(fib, l);
            ++done;
            // residual roots are a subset of the transported odd roots
            CHECK(divides(cert.residual, cert.odd_params.poly));
            // transported degree bookkeeping
            CHECK(cert.odd_params.poly.degree() + (cert.odd_params.at_infinity ? 1 : 0) ==
                  cert.profile.odd_point_count());
            // a true certificate always leaves something over a smooth fiber
            if (cert.saliently_ramified && cert.residual.degree() >= 1) {
                auto roots = rational_roots(cert.residual);
                for (const Rational& t : roots) CHECK(eval(fib.delta, t) != 0);
            }
        } catch (const Error&) {
            continue;  // precondition violations are expected on random input
        }
    }
}

TEST_CASE("certificates are invariant under rational rescaling of F") {
    HomForm F1 = load_example(1);
    HomForm G = make_rational(-3, 7) * F1;
    PencilFibration fa = build_fibration(F1, ProjPoint(0, 1, 1));
    PencilFibration fb = build_fibration(G, ProjPoint(0, 1, 1));
    MultisectionCertificate ca = certify_saliently_ramified(fa, Line(0, 0, 1));
    MultisectionCertificate cb = certify_saliently_ramified(fb, Line(0, 0, 1));
    CHECK(ca.saliently_ramified == cb.saliently_ramified);
    CHECK(ca.genus_of_normalization == cb.genus_of_normalization);
    CHECK(ca.residual == cb.residual);
    for (long t = -5; t <= 5; ++t)
        CHECK(classify_fiber(fa, make_rational(t)).tag == classify_fiber(fb, make_rational(t)).tag);
}
