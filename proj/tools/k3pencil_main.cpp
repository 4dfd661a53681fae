// k3pencil: analysis of pencils of genus-2 curves on degree-2 K3 surfaces.
//
// Subcommands: analyze, pencil, multisection, tangent-search, shioda,
// lattice, count, charpoly, elliptic, verify-example. All output is JSON on
// stdout (schema "k3pencil/1"); progress notes go to stderr.

#include "k3pencil/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace k3pencil;

namespace {

ProjPoint parse_point(const std::string& s) {
    std::array<Rational, 3> c;
    std::stringstream ss(s);
    std::string tok;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, tok, ',')) throw Error("point needs three comma-separated values");
        c[i] = rational_from_string(tok);
    }
    return ProjPoint(c);
}

Line parse_line(const std::string& s) {
    std::array<Rational, 3> c;
    std::stringstream ss(s);
    std::string tok;
    for (int i = 0; i < 3; ++i) {
        if (!std::getline(ss, tok, ',')) throw Error("line needs three comma-separated values");
        c[i] = rational_from_string(tok);
    }
    return Line(c);
}

std::vector<Rational> parse_rational_list(const std::string& s) {
    std::vector<Rational> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(rational_from_string(tok));
    return out;
}

std::optional<Int> env_cost_limit() {
    const char* v = std::getenv("K3PENCIL_MAX_COUNT_COST");
    if (!v) return std::nullopt;
    return Int(v);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// ------------------------------------------------------------------ analyze

int cmd_analyze(const std::string& sexticFile, long pointBound, long lineBound) {
    HomForm F = load_sextic(sexticFile);
    Json j = report_envelope("analyze");
    j["input"] = to_string(F);
    j["degree"] = F.deg;

    SmoothnessCertificate cert = certify_smooth(F);
    j["smoothness"] = to_json(cert);

    Json singular = Json::array();
    for (long h = 1; h <= pointBound; ++h)
        for (long x = -h; x <= h; ++x)
            for (long y = -h; y <= h; ++y)
                for (long z = -h; z <= h; ++z) {
                    if (std::max({std::abs(x), std::abs(y), std::abs(z)}) != h) continue;
                    if (!x && !y && !z) continue;
                    ProjPoint p(x, y, z);
                    if (p.height() != h) continue;  // only canonical representatives once
                    if (is_singular_point(F, p)) {
                        Json e;
                        e["point"] = to_json(p);
                        e["type"] = is_node(F, p) ? "node" : "other";
                        bool dup = false;
                        for (auto& prev : singular)
                            if (prev["point"] == e["point"]) dup = true;
                        if (!dup) singular.push_back(e);
                    }
                }
    j["rational_singular_points"] = singular;
    j["singular_sweep_bound"] = pointBound;

    Json rp = Json::array();
    for (const ProjPoint& p : rational_points_on_B(F, pointBound, ProjPoint(0, 0, 1)))
        rp.push_back(to_json(p));
    j["rational_points_on_B"] = rp;
    j["rational_point_sweep"] = {{"height_bound", pointBound}, {"sweep_point", {"0", "0", "1"}}};

    Json tritangents = Json::array();
    for (long a = -lineBound; a <= lineBound; ++a)
        for (long b = -lineBound; b <= lineBound; ++b)
            for (long c = -lineBound; c <= lineBound; ++c) {
                if (!a && !b && !c) continue;
                if (std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) != 1) continue;
                if (a < 0 || (a == 0 && b < 0) || (a == 0 && b == 0 && c < 0)) continue;
                Line l(a, b, c);
                if (is_tritangent(F, l)) tritangents.push_back(to_json(l));
            }
    j["tritangent_lines"] = tritangents;
    j["tritangent_scan_bound"] = lineBound;
    emit(j);
    return 0;
}

// ------------------------------------------------------------------- pencil

int cmd_pencil(const std::string& sexticFile, const std::string& point, long samples) {
    HomForm F = load_sextic(sexticFile);
    PencilFibration fib = build_fibration(F, parse_point(point));
    Json j = report_envelope("pencil");
    j["fibration"] = to_json(fib);
    Json fibers = Json::array();
    for (long t = 0; t < samples; ++t) {
        Json e;
        e["parameter"] = std::to_string(t);
        e["class"] = to_json(classify_fiber(fib, make_rational(t)));
        e["discriminant_nonzero"] = eval(fib.delta, make_rational(t)) != 0;
        fibers.push_back(e);
    }
    Json inf;
    inf["parameter"] = "infinity";
    inf["class"] = to_json(classify_fiber(fib, std::nullopt));
    fibers.push_back(inf);
    j["sampled_fibers"] = fibers;
    emit(j);
    return 0;
}

// ------------------------------------------------------------- multisection

int cmd_multisection(const std::string& sexticFile, const std::string& point,
                     const std::string& line) {
    HomForm F = load_sextic(sexticFile);
    PencilFibration fib = build_fibration(F, parse_point(point));
    MultisectionCertificate cert = certify_saliently_ramified(fib, parse_line(line));
    Json j = report_envelope("multisection");
    j["fibration"] = to_json(fib);
    j["certificate"] = to_json(cert);
    emit(j);
    return cert.saliently_ramified ? 0 : 1;
}

int cmd_tangent_search(const std::string& sexticFile, const std::string& point, long bound) {
    HomForm F = load_sextic(sexticFile);
    PencilFibration fib = build_fibration(F, parse_point(point));
    Json j = report_envelope("tangent-search");
    j["fibration"] = to_json(fib);
    j["height_bound"] = bound;
    Json certs = Json::array();
    for (const auto& c : tangent_multisection_search(fib, bound)) certs.push_back(to_json(c));
    j["certificates"] = certs;
    emit(j);
    return 0;
}

// ------------------------------------------------------------------ lattice

int cmd_shioda(int rho, const std::string& fibers, bool noSection, bool nontrivialTrace) {
    ShiodaInput in;
    in.rho = rho;
    in.hasSection = !noSection;
    in.trivialTrace = !nontrivialTrace;
    if (!fibers.empty()) {
        std::stringstream ss(fibers);
        std::string tok;
        while (std::getline(ss, tok, ',')) in.fiberComponentCounts.push_back(std::stoi(tok));
    }
    int rank = shioda_tate_rank(in);
    Json j = report_envelope("shioda");
    j["rho"] = in.rho;
    j["fiber_component_counts"] = in.fiberComponentCounts;
    j["rank"] = rank;
    emit(j);
    return 0;
}

int cmd_lattice(const std::string& gram, const std::string& constraints) {
    auto g3 = parse_rational_list(gram);
    if (g3.size() != 3) throw Error("--gram expects a,b,c for the matrix (a b; b c)");
    GramMatrix2 g{num(g3[0]), num(g3[1]), num(g3[2])};
    auto iso = isotropic_primitive_classes(g);
    Json j = report_envelope("lattice");
    j["gram"] = {g.a.get_str(), g.b.get_str(), g.c.get_str()};
    if (iso.form_is_zero) j["isotropic"] = "all";
    else if (iso.none()) j["isotropic"] = "none";
    else {
        Json arr = Json::array();
        for (auto& v : iso.classes) arr.push_back({v[0].get_str(), v[1].get_str()});
        j["isotropic"] = arr;
    }
    if (!constraints.empty() && !iso.form_is_zero && !iso.none()) {
        std::vector<std::pair<std::array<Int, 2>, Int>> cons;
        std::stringstream ss(constraints);
        std::string tok;
        while (std::getline(ss, tok, ';')) {
            auto v = parse_rational_list(tok);
            if (v.size() != 3) throw Error("constraint format: x,y,min;...");
            cons.push_back({{num(v[0]), num(v[1])}, num(v[2])});
        }
        Json arr = Json::array();
        for (auto& v : nef_constraint_filter(g, iso.classes, cons))
            arr.push_back({v[0].get_str(), v[1].get_str()});
        j["after_constraints"] = arr;
    }
    emit(j);
    return 0;
}

// -------------------------------------------------------------------- count

int cmd_count(const std::string& sexticFile, const std::string& p, int k, int threads, bool force,
              const std::string& modulus, bool naive) {
    HomForm F = load_sextic(sexticFile);
    Int prime(p);
    std::optional<FpPoly> mod;
    if (!modulus.empty()) {
        FpPoly m;
        std::stringstream ss(modulus);
        std::string tok;
        while (std::getline(ss, tok, ',')) m.push_back(std::stoull(tok));
        mod = m;
    }
    if (count_cost(prime, k) > Int(100000000L))
        std::cerr << "counting " << count_cost(prime, k).get_str() << " plane points...\n";
    CountResult r = naive ? count_points_naive(F, prime, k, mod)
                          : count_points(F, prime, k, threads, force, mod, env_cost_limit());
    Json j = report_envelope("count");
    j["result"] = to_json(r);
    j["threads"] = threads;
    j["engine"] = naive ? "naive-weighted" : "tables";
    emit(j);
    return 0;
}

// ----------------------------------------------------------------- charpoly

int cmd_charpoly(const std::string& file, const std::string& p, const std::string& algebraic,
                 int predict, const std::string& traces) {
    Json j = report_envelope("charpoly");
    Int prime(p);
    std::vector<Int> alg;
    if (!algebraic.empty()) {
        std::stringstream ss(algebraic);
        std::string tok;
        while (std::getline(ss, tok, ',')) alg.push_back(Int(tok));
    }
    if (!traces.empty()) {
        std::vector<Int> tr;
        std::stringstream ss(traces);
        std::string tok;
        while (std::getline(ss, tok, ',')) tr.push_back(Int(tok));
        auto cands = assemble_charpoly(tr, prime, alg);
        Json arr = Json::array();
        for (const auto& c : cands) {
            Json e;
            e["candidate"] = to_json(c.cp);
            e["residual_after_known_eigenvalues"] = to_json(c.residual);
            arr.push_back(e);
        }
        j["assembled"] = arr;
        emit(j);
        return 0;
    }
    UniPoly poly = load_integer_poly_json(file);
    CharPolyData cp = make_charpoly(poly, prime);
    j["factor"] = to_json(cp);
    j["unit_root_eigenvalues"] = count_unit_root_eigenvalues(cp);
    int total_deg = cp.degree() + static_cast<int>(alg.size());
    if (total_deg == 22) {
        // full spectral data: the van Luijk bound applies to the whole H^2
        UniPoly full = poly;
        for (const Int& lam : alg)
            full = full * UniPoly({make_rational(-lam, 1), make_rational(1)});
        CharPolyData fullcp = make_charpoly(full, prime);
        j["van_luijk_rho_bound"] = van_luijk_rho_bound(fullcp);
        if (predict > 0) {
            Json arr = Json::array();
            for (int k = 1; k <= predict; ++k) {
                Json e;
                e["k"] = k;
                e["predicted_N"] = predicted_count({cp}, alg, prime, k).get_str();
                arr.push_back(e);
            }
            j["predicted_counts"] = arr;
        }
    }
    emit(j);
    return 0;
}

// ----------------------------------------------------------------- elliptic

int cmd_elliptic_rank(const std::string& A, const std::string& B, long bound) {
    WeierstrassCurve E(rational_from_string(A), rational_from_string(B));
    auto cert = rank_ge_one_certificate(E, bound);
    Json j = report_envelope("elliptic rank-cert");
    j["curve"] = to_json(E);
    j["height_bound"] = bound;
    if (cert) {
        j["non_torsion_point"] = to_json(*cert);
        j["rank"] = ">= 1 certified; a full rank computation needs descent";
    } else {
        j["non_torsion_point"] = nullptr;
        j["rank"] = "no certificate within the bound";
    }
    emit(j);
    return cert ? 0 : 1;
}

int cmd_elliptic_quartic(const std::string& coeffs, const std::string& point,
                         const std::string& file, long bound) {
    QuarticModel q = !file.empty() ? load_quartic_json(file) : [&]() {
        auto v = parse_rational_list(coeffs);
        if (v.size() != 5) throw Error("--coeffs expects e,d,c,b,a (lowest degree first)");
        return QuarticModel({v[0], v[1], v[2], v[3], v[4]});
    }();
    Json j = report_envelope("elliptic quartic");
    auto [I, J] = quartic_invariants(q);
    j["invariants"] = {{"I", to_string(I)}, {"J", to_string(J)}};
    j["jacobian"] = to_json(jacobian_cubic(q));
    std::optional<std::pair<Rational, Rational>> pt;
    if (!point.empty()) {
        auto v = parse_rational_list(point);
        if (v.size() != 2) throw Error("--point expects u,w");
        pt = std::make_pair(v[0], v[1]);
    } else {
        auto pts = quartic_point_search(q, bound);
        Json arr = Json::array();
        for (auto& [u, w] : pts) arr.push_back({to_string(u), to_string(w)});
        j["points_found"] = arr;
        if (!pts.empty()) pt = pts.front();
    }
    if (pt) {
        auto res = quartic_to_weierstrass(q, pt);
        j["weierstrass"] = to_json(res.curve);
        j["marked_point_image"] = to_json(res.image);
        j["companion_point"] = to_json(res.companion);
        j["twist_to_jacobian"] = to_string(res.twist);
        ECPoint witness;
        bool have = false;
        if (!res.companion.infinity && !is_torsion(res.curve, res.companion)) {
            witness = res.companion;
            have = true;
        } else if (auto c = rank_ge_one_certificate(res.curve, bound)) {
            witness = *c;
            have = true;
        }
        if (have) j["rank_certificate"] = to_json(witness);
        else j["rank_certificate"] = nullptr;
    }
    emit(j);
    return 0;
}

int cmd_elliptic_quartic_search(const std::string& coeffs, const std::string& file, long bound) {
    QuarticModel q = !file.empty() ? load_quartic_json(file) : [&]() {
        auto v = parse_rational_list(coeffs);
        if (v.size() != 5) throw Error("--coeffs expects e,d,c,b,a (lowest degree first)");
        return QuarticModel({v[0], v[1], v[2], v[3], v[4]});
    }();
    Json j = report_envelope("elliptic quartic-search");
    Json arr = Json::array();
    for (auto& [u, w] : quartic_point_search(q, bound)) arr.push_back({to_string(u), to_string(w)});
    j["height_bound"] = bound;
    j["points"] = arr;
    emit(j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"pencils of genus-2 curves on degree-2 K3 surfaces: exact analysis tools"};
    app.require_subcommand(1);

    std::string sextic, point, line, gram, constraints, p = "19", modulus, algebraic, traces;
    std::string A, B, coeffs, quarticFile, dataDir = "data";
    long pointBound = 3, lineBound = 2, bound = 60, samples = 10;
    int k = 1, threads = 1, rho = 0, predict = 0, exampleN = 1;
    bool force = false, naive = false, noSection = false, nontrivialTrace = false, deep = false;

    auto* analyze = app.add_subcommand("analyze", "smoothness, singular points, tritangent scan");
    analyze->add_option("--sextic", sextic, "sextic file")->required();
    analyze->add_option("--point-bound", pointBound, "height bound for point sweeps");
    analyze->add_option("--line-bound", lineBound, "coefficient bound for the tritangent scan");

    auto* pencil = app.add_subcommand("pencil", "fibration induced by the pencil through a point");
    pencil->add_option("--sextic", sextic)->required();
    pencil->add_option("--point", point, "base point x,y,z")->required();
    pencil->add_option("--samples", samples, "number of sampled fiber parameters");

    auto* multisection = app.add_subcommand("multisection", "saliently-ramified certificate");
    multisection->add_option("--sextic", sextic)->required();
    multisection->add_option("--point", point, "base point x,y,z")->required();
    multisection->add_option("--line", line, "multisection line a,b,c")->required();

    auto* tangent = app.add_subcommand("tangent-search", "tangent-line multisection search");
    tangent->add_option("--sextic", sextic)->required();
    tangent->add_option("--point", point, "base point x,y,z")->required();
    tangent->add_option("--bound", bound, "height bound for points on B");

    auto* shioda = app.add_subcommand("shioda", "Shioda-Tate generic rank");
    shioda->add_option("--rho", rho, "Neron-Severi rank of the fibered surface")->required();
    std::string fibers;
    shioda->add_option("--fibers", fibers, "comma-separated reducible fiber component counts");
    shioda->add_flag("--no-section", noSection);
    shioda->add_flag("--nontrivial-trace", nontrivialTrace);

    auto* lattice = app.add_subcommand("lattice", "isotropic classes of a rank-2 lattice");
    lattice->add_option("--gram", gram, "a,b,c for the Gram matrix (a b; b c)")->required();
    lattice->add_option("--constraints", constraints, "x,y,min;... pairing constraints");

    auto* count = app.add_subcommand("count", "point count of w^2 = F over F_{p^k}");
    count->add_option("--sextic", sextic)->required();
    count->add_option("--p", p, "odd prime");
    count->add_option("--k", k, "extension degree");
    count->add_option("--threads", threads);
    count->add_flag("--force-large", force, "override the counting cost gate");
    count->add_option("--modulus", modulus, "extension modulus coefficients c0,c1,...,1");
    count->add_flag("--naive", naive, "use the naive weighted-projective oracle");

    auto* charpoly = app.add_subcommand("charpoly", "Frobenius characteristic polynomial tools");
    charpoly->add_option("--file", quarticFile, "JSON file with integer coefficients");
    charpoly->add_option("--p", p, "prime");
    charpoly->add_option("--algebraic", algebraic, "known algebraic eigenvalues, comma-separated");
    charpoly->add_option("--predict", predict, "emit predicted counts for k = 1..N");
    charpoly->add_option("--traces", traces, "assemble candidates from 11 traces");

    auto* elliptic = app.add_subcommand("elliptic", "elliptic curve utilities");
    elliptic->require_subcommand(1);
    auto* rank = elliptic->add_subcommand("rank-cert", "search a non-torsion point");
    rank->add_option("--A", A)->required();
    rank->add_option("--B", B)->required();
    rank->add_option("--bound", bound);
    auto* quartic = elliptic->add_subcommand("quartic", "quartic model to Weierstrass form");
    quartic->add_option("--coeffs", coeffs, "e,d,c,b,a lowest degree first");
    quartic->add_option("--file", quarticFile, "JSON file with quartic coefficients");
    quartic->add_option("--point", point, "marked rational point u,w");
    quartic->add_option("--bound", bound);
    auto* qsearch = elliptic->add_subcommand("quartic-search", "rational points on a quartic");
    qsearch->add_option("--coeffs", coeffs);
    qsearch->add_option("--file", quarticFile);
    qsearch->add_option("--bound", bound);

    auto* verify = app.add_subcommand("verify-example", "run a worked-example verification suite");
    verify->add_option("--n", exampleN, "example number (1, 2 or 3)")->required();
    verify->add_option("--data", dataDir, "data directory");
    verify->add_flag("--deep", deep, "include the k=3 point count (example 1)");
    verify->add_option("--threads", threads);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*analyze) return cmd_analyze(sextic, pointBound, lineBound);
        if (*pencil) return cmd_pencil(sextic, point, samples);
        if (*multisection) return cmd_multisection(sextic, point, line);
        if (*tangent) return cmd_tangent_search(sextic, point, bound);
        if (*shioda) return cmd_shioda(rho, fibers, noSection, nontrivialTrace);
        if (*lattice) return cmd_lattice(gram, constraints);
        if (*count) return cmd_count(sextic, p, k, threads, force, modulus, naive);
        if (*charpoly) return cmd_charpoly(quarticFile, p, algebraic, predict, traces);
        if (*rank) return cmd_elliptic_rank(A, B, bound);
        if (*quartic) return cmd_elliptic_quartic(coeffs, point, quarticFile, bound);
        if (*qsearch) return cmd_elliptic_quartic_search(coeffs, quarticFile, bound);
        if (*verify) {
            VerifyOptions opt{dataDir, deep, threads};
            ExampleReport rep = verify_example(exampleN, opt);
            emit(rep.to_json_report());
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
