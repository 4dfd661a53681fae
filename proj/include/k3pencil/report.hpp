#pragma once

// JSON serialization of library objects; schema "k3pencil/1": rationals are
// "num/den" strings, polynomials are coefficient arrays lowest degree first.

#include "k3pencil/charpoly.hpp"
#include "k3pencil/elliptic.hpp"
#include "k3pencil/fibration.hpp"
#include "k3pencil/lattice.hpp"
#include "k3pencil/smoothness.hpp"

#include <json.hpp>

namespace k3pencil {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const UniPoly& f) {
    Json a = Json::array();
    for (int i = 0; i <= f.degree(); ++i) a.push_back(to_string(f.coeff(i)));
    return a;
}

inline Json to_json(const ProjPoint& p) {
    return Json::array({p.v[0].get_str(), p.v[1].get_str(), p.v[2].get_str()});
}

inline Json to_json(const Line& l) {
    return Json::array({l.a[0].get_str(), l.a[1].get_str(), l.a[2].get_str()});
}

inline Json to_json(const IntersectionProfile& prof) {
    Json parts = Json::array();
    for (const auto& p : prof.parts) {
        Json e;
        e["multiplicity"] = p.mult;
        e["degree"] = p.deg;
        if (p.at_infinity) e["at_chart_infinity"] = true;
        else e["factor"] = to_json(p.factor);
        parts.push_back(e);
    }
    Json j;
    j["line_in_curve"] = prof.line_in_curve;
    j["parts"] = parts;
    if (!prof.line_in_curve) {
        j["multiplicities"] = prof.multiplicities();
        j["distinct_points"] = prof.distinct_count();
    }
    return j;
}

inline Json to_json(const FiberClass& c) {
    Json j;
    j["tag"] = to_string(c.tag);
    if (c.genus_of_normalization >= 0) {
        j["genus_of_normalization"] = c.genus_of_normalization;
        j["genus_is_upper_bound"] = c.genus_is_upper_bound;
    }
    j["profile"] = to_json(c.profile);
    return j;
}

inline Json to_json(const MultisectionCertificate& cert) {
    Json j;
    j["line"] = to_json(cert.line);
    j["base_point"] = to_json(cert.base_point);
    j["saliently_ramified"] = cert.saliently_ramified;
    j["genus_of_normalization"] = cert.genus_of_normalization;
    j["profile"] = to_json(cert.profile);
    j["odd_param_poly"] = to_json(cert.odd_params.poly);
    j["odd_param_at_infinity"] = cert.odd_params.at_infinity;
    j["residual_poly"] = to_json(cert.residual);
    j["residual_at_infinity"] = cert.residual_at_infinity;
    return j;
}

inline Json to_json(const PencilFibration& fib) {
    Json j;
    j["base_point"] = to_json(fib.base);
    j["kind"] = fib.kind == FibrationKind::Genus2 ? "genus2" : "genus1";
    j["pencil_l0"] = to_json(fib.pencil.l0);
    j["pencil_l1"] = to_json(fib.pencil.l1);
    j["parameter_convention"] = "line(tau) = l0 + tau*l1; infinity parameter = l1";
    j["discriminant_degree"] = fib.delta.degree();
    j["infinity_fiber_singular"] = fib.infinity_fiber_singular;
    j["ns_rank_increment"] = fib.ns_rank_increment;
    if (fib.lines_in_curve.degree() > 0) j["lines_in_curve_params"] = to_json(fib.lines_in_curve);
    j["infinity_line_in_curve"] = fib.infinity_line_in_curve;
    return j;
}

inline Json to_json(const SmoothnessCertificate& c) {
    Json j;
    switch (c.status) {
        case SmoothnessCertificate::Status::Smooth:
            j["status"] = "smooth";
            j["certifying_prime"] = c.prime;
            break;
        case SmoothnessCertificate::Status::Singular:
            j["status"] = "singular";
            j["witness"] = to_json(*c.witness);
            break;
        case SmoothnessCertificate::Status::Inconclusive:
            j["status"] = "inconclusive";
            break;
    }
    return j;
}

inline Json to_json(const CountResult& r) {
    Json j;
    j["p"] = r.p.get_str();
    j["k"] = r.k;
    j["N"] = r.N.get_str();
    j["trace"] = r.trace.get_str();
    return j;
}

inline Json to_json(const CharPolyData& cp) {
    Json j;
    j["p"] = cp.p.get_str();
    j["degree"] = cp.poly.degree();
    j["sign"] = cp.sign;
    j["provenance"] = cp.provenance == CharPolyData::Provenance::Transcribed ? "transcribed" : "assembled";
    j["coefficients"] = to_json(cp.poly);
    return j;
}

inline Json to_json(const WeierstrassCurve& E) {
    Json j;
    j["A"] = to_string(E.A);
    j["B"] = to_string(E.B);
    j["j_invariant"] = to_string(E.j_invariant());
    return j;
}

inline Json to_json(const ECPoint& P) {
    if (P.infinity) return "infinity";
    return Json::array({to_string(P.x), to_string(P.y)});
}

inline Json report_envelope(const std::string& command) {
    Json j;
    j["schema"] = "k3pencil/1";
    j["command"] = command;
    return j;
}

}  // namespace k3pencil
