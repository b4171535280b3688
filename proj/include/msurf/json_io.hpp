// JSON (de)serialization for the CLI and solution files.  All numeric
// payloads are decimal strings ("p/q" for exact rationals, [re, im] decimal
// string pairs for complex values) so outputs stay precision-faithful and
// diffable.

#ifndef MSURF_JSON_IO_HPP
#define MSURF_JSON_IO_HPP

#include "msurf/liegen.hpp"
#include "msurf/singular.hpp"
#include "msurf/tame.hpp"

#include <json.hpp>

#include <cctype>

namespace msurf {

using json = nlohmann::json;

inline json complex_to_json(const Complex& z, size_t digits = 0) {
    return json::array({z.re().to_decimal(digits), z.im().to_decimal(digits)});
}

inline Complex complex_from_json(const json& j, long prec) {
    if (j.is_string()) return Complex(Real(j.get<std::string>(), prec), Real(prec));
    if (j.is_number()) return Complex(Real(j.get<double>(), prec), Real(prec));
    if (!j.is_array() || j.size() != 2)
        raise("BadInput", "complex value must be [re, im] or a decimal string");
    auto part = [&](const json& e) {
        return e.is_string() ? Real(e.get<std::string>(), prec) : Real(e.get<double>(), prec);
    };
    return Complex(part(j[0]), part(j[1]));
}

inline json coef_to_json(const Coef& c, long prec) {
    if (c.exact()) return rat_to_string(c.rat());
    return complex_to_json(c.value(prec));
}

inline Coef coef_from_json(const json& j, long prec) {
    if (j.is_string()) return Coef(rat_from_string(j.get<std::string>()));
    if (j.is_number_integer()) return Coef(Rat(j.get<long>()));
    if (j.is_array()) return Coef(complex_from_json(j, prec));
    raise("BadInput", "surface coefficient must be \"p/q\", an integer, or [re, im]");
}

inline json params_to_json(const SurfaceParams& s, long prec) {
    return json{{"A", coef_to_json(s.A, prec)}, {"B", coef_to_json(s.B, prec)},
                {"C", coef_to_json(s.C, prec)}, {"D", coef_to_json(s.D, prec)},
                {"E", coef_to_json(s.E, prec)}};
}

inline SurfaceParams params_from_json(const json& j, long prec) {
    for (const char* key : {"A", "B", "C", "D", "E"})
        if (!j.contains(key)) raise("BadInput", std::string("surface JSON missing key ") + key);
    return SurfaceParams(coef_from_json(j["A"], prec), coef_from_json(j["B"], prec),
                         coef_from_json(j["C"], prec), coef_from_json(j["D"], prec),
                         coef_from_json(j["E"], prec));
}

inline json point_to_json(const SurfacePoint& p) {
    return json{{"x", complex_to_json(p.x)},
                {"y", complex_to_json(p.y)},
                {"z", complex_to_json(p.z)},
                {"residual", complex_to_json(p.residual, 8)}};
}

inline SurfacePoint point_from_json(const SurfaceParams& s, const json& j, long prec) {
    if (j.is_array() && j.size() == 3)
        return make_point(s, complex_from_json(j[0], prec), complex_from_json(j[1], prec),
                          complex_from_json(j[2], prec));
    if (j.is_object())
        return make_point(s, complex_from_json(j["x"], prec), complex_from_json(j["y"], prec),
                          complex_from_json(j["z"], prec));
    raise("BadInput", "point must be [x, y, z] or {x:, y:, z:}");
}

// ---- univariate complex polynomials (shear times) ----

inline const char* var_name(Var v) { return v == Var::x ? "x" : v == Var::y ? "y" : "z"; }

// Canonical one-variable form with decimal complex coefficients:
// "(re,im)*z^0+(re,im)*z^2", ascending powers, zero coefficients omitted.
inline std::string cpoly_to_canonical(const CPoly1& p, Var v) {
    if (p.is_zero()) return "0";
    std::string out;
    const auto& c = p.coeffs();
    for (size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        if (!out.empty()) out += "+";
        out += "(" + c[k].re().to_decimal() + "," + c[k].im().to_decimal() + ")*";
        out += var_name(v);
        out += "^" + std::to_string(k);
    }
    return out;
}

inline CPoly1 cpoly_from_canonical(const std::string& s, long prec) {
    if (s == "0") return CPoly1();
    std::vector<Complex> coeffs;
    size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '+') ++i;
        if (i >= s.size() || s[i] != '(')
            raise("BadInput", "time polynomial term must start with '(re,im)': " + s);
        size_t comma = s.find(',', i);
        size_t close = s.find(')', i);
        if (comma == std::string::npos || close == std::string::npos || comma > close)
            raise("BadInput", "unbalanced coefficient in time polynomial: " + s);
        Real re(s.substr(i + 1, comma - i - 1), prec);
        Real im(s.substr(comma + 1, close - comma - 1), prec);
        size_t caret = s.find('^', close);
        if (caret == std::string::npos) raise("BadInput", "missing exponent in: " + s);
        size_t end = caret + 1;
        while (end < s.size() && std::isdigit((unsigned char)s[end])) ++end;
        size_t k = std::stoul(s.substr(caret + 1, end - caret - 1));
        if (coeffs.size() <= k) coeffs.resize(k + 1, Complex(prec));
        coeffs[k] = Complex(re, im);
        i = end;
    }
    return CPoly1(std::move(coeffs));
}

inline json cpoly_to_json(const CPoly1& p) {
    json arr = json::array();
    for (auto& c : p.coeffs()) arr.push_back(complex_to_json(c));
    return arr;
}

inline CPoly1 cpoly_from_json(const json& j, long prec) {
    if (j.is_string()) return cpoly_from_canonical(j.get<std::string>(), prec);
    std::vector<Complex> coeffs;
    for (auto& e : j) coeffs.push_back(complex_from_json(e, prec));
    return CPoly1(std::move(coeffs));
}

inline Var var_from_string(const std::string& s) {
    if (s == "x") return Var::x;
    if (s == "y") return Var::y;
    if (s == "z") return Var::z;
    raise("BadInput", "axis must be one of x, y, z");
}

inline json automorphism_to_json(const Automorphism& F) {
    json arr = json::array();
    for (auto& f : F.factors)
        arr.push_back(json{{"axis", var_name(f.axis)},
                           {"time_poly", cpoly_to_canonical(f.time_poly, f.axis)}});
    return arr;
}

inline Automorphism automorphism_from_json(const json& j, long prec) {
    Automorphism F;
    for (auto& e : j)
        F.factors.push_back(ShearFlow{var_from_string(e.at("axis").get<std::string>()),
                                      cpoly_from_json(e.at("time_poly"), prec)});
    return F;
}

// ---- singularity reports ----

inline json report_to_json(const SingularityReport& r) {
    json pt;
    if (r.point.exact) {
        pt = json::array({rat_to_string(r.point.rational[0]), rat_to_string(r.point.rational[1]),
                          rat_to_string(r.point.rational[2])});
    } else {
        pt = json::array({complex_to_json(r.point.numeric.x), complex_to_json(r.point.numeric.y),
                          complex_to_json(r.point.numeric.z)});
    }
    json out{{"type", ade_name(r)},
             {"hessian_corank", r.hessian_corank},
             {"point", pt},
             {"point_exact", r.point.exact},
             {"evidence", r.evidence}};
    if (r.type == AdeType::A) {
        out["k"] = r.k;
        out["k_is_lower_bound"] = r.k_overflow;
        if (r.k > 5)
            out["warning"] = "k exceeds the k <= 5 range expected for Markov-type surfaces";
    }
    return out;
}

// ---- certificates ----

inline json cert_store_to_json(const CertStore& store) {
    json arr = json::array();
    for (size_t i = 0; i < store.size(); ++i) {
        const CertNode& n = store.node(i);
        switch (n.kind) {
        case CertNode::Kind::Generator:
            arr.push_back(json{{"op", "gen"}, {"index", n.gen}});
            break;
        case CertNode::Kind::Bracket:
            arr.push_back(json{{"op", "bracket"}, {"left", n.left}, {"right", n.right}});
            break;
        case CertNode::Kind::Combination: {
            json combo = json::array();
            for (auto& [c, id] : n.combo) combo.push_back(json::array({rat_to_string(c), id}));
            arr.push_back(json{{"op", "combo"}, {"terms", combo}});
            break;
        }
        }
    }
    return arr;
}

inline json certificate_bundle_to_json(const SurfaceParams& s, SpanResult& span,
                                       const std::vector<Mono>& targets, long prec) {
    json out;
    out["surface"] = params_to_json(s, prec);
    out["max_gen_deg"] = 0;  // filled by caller when known
    out["rank"] = span.basis.rank();
    out["dimension"] = span.basis.space().dim();
    out["max_deg"] = span.basis.space().max_deg();
    json gens = json::array();
    for (auto& g : span.generators)
        gens.push_back(poly_to_string(Poly::monomial(g.mono, Rat(1))));
    out["generators"] = gens;
    json ms = json::array();
    for (auto& m : targets) {
        auto res = certify_monomial(span, m);
        json entry;
        entry["monomial"] = poly_to_string(Poly::monomial(m, Rat(1)));
        if (auto* c = std::get_if<Certificate>(&res)) {
            entry["in_span"] = true;
            entry["root"] = c->root;
            entry["replays"] = certificate_replays(span, *c, s);
        } else {
            entry["in_span"] = false;
        }
        ms.push_back(std::move(entry));
    }
    out["monomials"] = ms;
    out["derivations"] = cert_store_to_json(span.certs);
    return out;
}

// ---- tame solutions ----

inline json tame_solution_to_json(const TameSolution& sol) {
    json out;
    out["n"] = sol.eta.size();
    json eta = json::array();
    for (size_t t : sol.eta) eta.push_back(t);
    out["eta"] = eta;
    out["precision"] = sol.prec;
    out["seed"] = sol.seed;
    json trips = json::array();
    for (auto& t : sol.triples)
        trips.push_back(json::array({t.x.get_str(), t.y.get_str(), t.z.get_str()}));
    out["triples"] = trips;
    out["f"] = cpoly_to_json(sol.f);
    out["g"] = cpoly_to_json(sol.g);
    out["h"] = cpoly_to_json(sol.h);
    out["automorphism"] = automorphism_to_json(sol.F);
    json res = json::array();
    for (auto& r : sol.residuals) res.push_back(r.to_decimal(8));
    out["residuals"] = res;
    out["max_residual"] = sol.max_residual.to_decimal(8);
    return out;
}

inline TameSolution tame_solution_from_json(const json& j) {
    TameSolution sol;
    sol.prec = j.at("precision").get<long>();
    sol.seed = j.at("seed").get<std::uint64_t>();
    for (auto& e : j.at("eta")) sol.eta.push_back(e.get<size_t>());
    for (auto& e : j.at("triples"))
        sol.triples.emplace_back(BigInt(e[0].get<std::string>()), BigInt(e[1].get<std::string>()),
                                 BigInt(e[2].get<std::string>()));
    sol.f = cpoly_from_json(j.at("f"), sol.prec);
    sol.g = cpoly_from_json(j.at("g"), sol.prec);
    sol.h = cpoly_from_json(j.at("h"), sol.prec);
    sol.F = automorphism_from_json(j.at("automorphism"), sol.prec);
    sol.max_residual = Real(j.at("max_residual").get<std::string>(), sol.prec);
    return sol;
}

} // namespace msurf

#endif
