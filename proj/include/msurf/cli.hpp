// Command-line frontend: subcommand dispatch with JSON I/O.  Kept in a
// header so the test suite can drive it in-process; tools/msurf_cli.cpp is a
// two-line main.
//
// Exit codes: 0 success, 1 domain error (structured JSON error object on
// stdout), 2 usage error.

#ifndef MSURF_CLI_HPP
#define MSURF_CLI_HPP

#include "msurf/json_io.hpp"
#include "msurf/markov.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace msurf {

namespace cli_detail {

struct Common {
    long precision = 0;  // 0 = unset; resolved against env/config/default
    std::uint64_t seed = 1;
    int threads = 1;
    std::string surface_name;
    std::string params_json;
    std::string config_file;
    std::string out_file;
    double tolerance = 0.0;  // 0 = default membership tolerance
};

inline void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--precision", c.precision, "working precision in bits (>= 53)");
    cmd->add_option("--seed", c.seed, "PRNG seed for deterministic replay");
    cmd->add_option("--threads", c.threads, "worker threads for sample verification");
    cmd->add_option("--surface", c.surface_name, "named surface (markov)");
    cmd->add_option("--params", c.params_json, "surface JSON {\"A\":..,\"E\":..}");
    cmd->add_option("--config", c.config_file, "key=value config file");
    cmd->add_option("--out", c.out_file, "write JSON to this file instead of stdout");
    cmd->add_option("--tolerance", c.tolerance, "membership tolerance override");
}

inline std::map<std::string, std::string> read_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise("BadInput", "cannot open config file " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return kv;
}

inline long resolve_precision(const Common& c) {
    if (c.precision > 0) {
        if (c.precision < kMinPrec) raise("BadInput", "precision must be >= 53");
        return c.precision;
    }
    if (const char* env = std::getenv("MSURF_PRECISION")) {
        long p = std::atol(env);
        if (p >= kMinPrec) return p;
    }
    return kDefaultPrec;
}

inline SurfaceParams resolve_surface(const Common& c, long prec) {
    if (!c.config_file.empty()) {
        auto kv = read_config(c.config_file);
        auto get = [&](const char* k) {
            auto it = kv.find(k);
            if (it == kv.end()) raise("BadInput", std::string("config missing ") + k);
            return rat_from_string(it->second);
        };
        return SurfaceParams::rational(get("A"), get("B"), get("C"), get("D"), get("E"));
    }
    if (!c.params_json.empty())
        return params_from_json(json::parse(c.params_json), prec);
    if (c.surface_name.empty() || c.surface_name == "markov") return SurfaceParams::markov();
    raise("BadInput", "unknown surface '" + c.surface_name + "'");
}

inline void emit(const Common& c, std::ostream& out, const json& j) {
    if (!c.out_file.empty()) {
        std::ofstream f(c.out_file);
        if (!f) raise("BadInput", "cannot write " + c.out_file);
        f << j.dump(2) << "\n";
    } else {
        out << j.dump(2) << "\n";
    }
}

inline std::string read_arg_or_file(const std::string& s) {
    if (!s.empty() && s[0] == '@') {
        std::ifstream in(s.substr(1));
        if (!in) raise("BadInput", "cannot open " + s.substr(1));
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    return s;
}

inline std::vector<size_t> parse_map(const std::string& pairs, size_t n) {
    // "1:2,2:3,...": 1-based source:target pairs
    std::vector<size_t> eta(n, size_t(-1));
    std::stringstream ss(pairs);
    std::string pair;
    while (std::getline(ss, pair, ',')) {
        size_t colon = pair.find(':');
        if (colon == std::string::npos) raise("BadInput", "map entries must be src:dst");
        size_t src = std::stoul(pair.substr(0, colon));
        size_t dst = std::stoul(pair.substr(colon + 1));
        if (src < 1 || src > n) raise("BadInput", "map source out of range");
        if (dst < 1) raise("BadInput", "map targets are 1-based");
        eta[src - 1] = dst - 1;
    }
    for (size_t j = 0; j < n; ++j)
        if (eta[j] == size_t(-1)) raise("BadInput", "map must cover every source 1.." + std::to_string(n));
    return eta;
}

inline std::string echo_args(const std::vector<std::string>& args) {
    std::string joined;
    for (auto& a : args) {
        if (!joined.empty()) joined += " ";
        joined += a;
    }
    return joined;
}

inline json selftest_run(long prec, std::uint64_t seed) {
    json checks = json::array();
    auto record = [&](const std::string& name, bool ok, const std::string& note = "") {
        checks.push_back(json{{"check", name}, {"ok", ok}, {"note", note}});
    };
    Prng rng(seed);
    auto s = SurfaceParams::markov();

    // reduction idempotence + ring homomorphism on random polynomials
    auto random_poly = [&](unsigned deg) {
        Poly p;
        for (int t = 0; t < 8; ++t) {
            unsigned i = unsigned(rng.next_int(0, int(deg)));
            unsigned j = unsigned(rng.next_int(0, int(deg - i)));
            unsigned k = unsigned(rng.next_int(0, int(deg - i - j)));
            p.add_term(Mono::xyz(i, j, k), rng.next_rat(6, 3));
        }
        return p;
    };
    {
        bool ok = true;
        for (int t = 0; t < 6 && ok; ++t) {
            Poly p = random_poly(5), q = random_poly(4);
            NormalPoly r = poly_reduce(p, s);
            ok = ok && poly_reduce(r.p, s) == r;
            ok = ok && poly_reduce(p * q, s) == poly_reduce(poly_reduce(p, s).p * poly_reduce(q, s).p, s);
        }
        record("core.reduce.idempotent+homomorphism", ok);
    }
    {
        bool ok = true;
        for (int t = 0; t < 4 && ok; ++t) {
            Poly f = random_poly(3), g = random_poly(3), h = random_poly(3);
            Poly jac = bracket_raw(f, bracket_raw(g, h, s), s)
                     + bracket_raw(g, bracket_raw(h, f, s), s)
                     + bracket_raw(h, bracket_raw(f, g, s), s);
            ok = ok && jac.is_zero() && casimir_check(f, s).is_zero();
        }
        record("poisson.jacobi+casimir", ok);
    }
    {
        SurfacePoint p = random_surface_point(s, rng, prec);
        Complex t = rng.next_complex(-0.5, 0.5, prec);
        Complex u = rng.next_complex(-0.5, 0.5, prec);
        SurfacePoint a = flow_axis(s, Var::z, flow_axis(s, Var::z, p, t), u);
        SurfacePoint b = flow_axis(s, Var::z, p, t + u);
        Vec3 d = a.coords() - b.coords();
        bool ok = d.max_abs() < pow2(-(prec - 80), prec) * (Real(1L, prec) + a.coords().max_abs());
        ok = ok && abs(a.residual) < membership_tolerance(prec) * 100;
        record("flows.group_law+invariance", ok, d.max_abs().to_decimal(4));
    }
    {
        auto span = close_span(s, 3, 3);
        NormalSpace sp3(3);
        record("liegen.rank_deg3", span.basis.rank() == sp3.dim(),
               std::to_string(span.basis.rank()) + "/" + std::to_string(sp3.dim()));
        record("liegen.lemma_identities", verify_lemma_identities(s, 2, 2, 1).all_ok());
    }
    {
        auto triples = enumerate_ordered(BigInt(30));
        bool ok = triples.size() == 5 && triples[4].z == 29;
        record("markov.bound30", ok);
    }
    {
        auto g = model_fields(GermKind::A, 3);
        auto d = decompose_tangent_field(g, g.Lambda * poly_var(Var::x));
        record("singular.model_decompose", d.fy == poly_var(Var::z));
    }
    {
        auto reports = classify_surface(s, 10.0, prec);
        bool ok = reports.size() == 1 && reports[0].type == AdeType::A && reports[0].k == 1;
        record("singular.markov_A1", ok);
    }
    return checks;
}

} // namespace cli_detail

// Returns the process exit code; all output goes to the given streams.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace cli_detail;
    CLI::App app{"Markov-type cubic surfaces: exact Poisson algebra, complete flows, "
                 "ADE singularities, Markov triples, tame interpolation"};
    app.require_subcommand(1);

    Common c;

    // classify
    auto* cmd_classify = app.add_subcommand("classify", "locate and classify singular points");
    double box = 1000.0;
    add_common(cmd_classify, c);
    cmd_classify->add_option("--box", box, "search box bound on |coordinate|");

    // flow
    auto* cmd_flow = app.add_subcommand("flow", "apply an automorphism or axis flow to a point");
    std::string point_arg, auto_arg, axis_arg = "z", time_arg = "0";
    add_common(cmd_flow, c);
    cmd_flow->add_option("--point", point_arg, "[x,y,z] JSON (decimal strings)")->required();
    cmd_flow->add_option("--automorphism", auto_arg, "automorphism JSON or @file");
    cmd_flow->add_option("--axis", axis_arg, "axis for a single flow (x|y|z)");
    cmd_flow->add_option("--time", time_arg, "complex time 're' or '[re,im]'");
    int orbit_samples = 0;
    std::string orbit_csv;
    cmd_flow->add_option("--orbit", orbit_samples,
                         "emit N equally spaced orbit samples on [0, time] as CSV");
    cmd_flow->add_option("--orbit-csv", orbit_csv, "CSV output path (default stdout)");

    // bracket
    auto* cmd_bracket = app.add_subcommand("bracket", "Poisson bracket of two polynomials");
    std::string poly_f, poly_g;
    add_common(cmd_bracket, c);
    cmd_bracket->add_option("f", poly_f, "first polynomial (canonical string)")->required();
    cmd_bracket->add_option("g", poly_g, "second polynomial")->required();

    // certify
    auto* cmd_certify = app.add_subcommand("certify", "Poisson-Lie span closure certificates");
    unsigned max_gen_deg = 6, max_deg = 6;
    bool full_pairing = false;
    std::string monomials_arg;
    add_common(cmd_certify, c);
    cmd_certify->add_option("--max-gen-deg", max_gen_deg, "largest generator exponent");
    cmd_certify->add_option("--max-deg", max_deg, "normal-form degree cap");
    cmd_certify->add_flag("--full-pairing", full_pairing, "bracket against all basis elements");
    cmd_certify->add_option("--monomials", monomials_arg,
                            "comma-separated monomials to certify (default: all in the space)");

    // markov
    auto* cmd_markov = app.add_subcommand("markov", "Markov triple enumeration and growth");
    cmd_markov->require_subcommand(1);
    auto* cmd_m_enum = cmd_markov->add_subcommand("enumerate", "ordered triples up to a bound");
    std::string bound_arg = "1000";
    add_common(cmd_m_enum, c);
    cmd_m_enum->add_option("--bound", bound_arg, "max coordinate bound (integer)");
    auto* cmd_m_fit = cmd_markov->add_subcommand("fit", "Zagier growth-law fit");
    size_t fit_count = 200, fit_from = 1;
    add_common(cmd_m_fit, c);
    cmd_m_fit->add_option("--count", fit_count, "number of Markov numbers");
    cmd_m_fit->add_option("--from", fit_from, "first index of the fit window");
    auto* cmd_m_lag = cmd_markov->add_subcommand("lagrange", "Lagrange spectrum value of z");
    std::string lag_z = "1";
    add_common(cmd_m_lag, c);
    cmd_m_lag->add_option("--z", lag_z, "Markov number");

    // tame
    auto* cmd_tame = app.add_subcommand("tame", "tame interpolation of Markov triples");
    cmd_tame->require_subcommand(1);
    auto* cmd_t_build = cmd_tame->add_subcommand("build", "build the interpolating automorphism");
    size_t tame_n = 5;
    std::string map_arg;
    add_common(cmd_t_build, c);
    cmd_t_build->add_option("--n", tame_n,
                        "number of source triples (desk scale: precision demands grow quickly beyond ~12)");
    cmd_t_build->add_option("--map", map_arg, "injective map, e.g. 1:2,2:3,3:1 (1-based)")
        ->required();
    auto* cmd_t_verify = cmd_tame->add_subcommand("verify", "replay a solution file");
    std::string sol_file;
    int verify_samples = 0;
    add_common(cmd_t_verify, c);
    cmd_t_verify->add_option("--solution", sol_file, "solution JSON file")->required();
    double fd_step = 1e-18, sample_radius = 1e-12;
    cmd_t_verify->add_option("--symplectic-samples", verify_samples,
                             "also estimate the symplectic defect at this many random points");
    cmd_t_verify->add_option("--fd-step", fd_step,
                             "finite-difference step for the defect (tiny: the interpolants "
                             "have huge higher derivatives)");
    cmd_t_verify->add_option("--sample-radius", sample_radius,
                             "sampling radius around the interpolated triples");

    // selftest
    auto* cmd_selftest = app.add_subcommand("selftest", "run the built-in invariant suite");
    add_common(cmd_selftest, c);

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n" << app.help() << "\n";
        return 2;
    }

    try {
        long prec = resolve_precision(c);

        if (cmd_classify->parsed()) {
            SurfaceParams s = resolve_surface(c, prec);
            auto reports = classify_surface(s, box, prec);
            json arr = json::array();
            for (auto& r : reports) arr.push_back(report_to_json(r));
            emit(c, out, arr);
            return 0;
        }

        if (cmd_flow->parsed()) {
            SurfaceParams s = resolve_surface(c, prec);
            SurfacePoint p = point_from_json(s, json::parse(read_arg_or_file(point_arg)), prec);
            Real tol = c.tolerance > 0 ? Real(c.tolerance, prec) : membership_tolerance(prec);
            if (abs(p.residual) > tol)
                raise("NotOnSurface", "input point residual " + abs(p.residual).to_decimal(6));
            SurfacePoint img;
            if (!auto_arg.empty()) {
                Automorphism F =
                    automorphism_from_json(json::parse(read_arg_or_file(auto_arg)), prec);
                img = F.apply(s, p);
            } else {
                json tj = json::parse(time_arg, nullptr, false);
                Complex t = tj.is_discarded() ? Complex(Real(time_arg, prec), Real(prec))
                                              : complex_from_json(tj, prec);
                Var axis = var_from_string(axis_arg);
                if (orbit_samples > 0) {
                    // CSV orbit samples for external plotting
                    std::ostringstream csv;
                    csv << "k,t_re,t_im,x_re,x_im,y_re,y_im,z_re,z_im\n";
                    for (int k = 0; k <= orbit_samples; ++k) {
                        Complex tk = t * long(k) / long(orbit_samples);
                        SurfacePoint q = flow_axis(s, axis, p, tk);
                        csv << k << "," << tk.re().to_decimal(17) << ","
                            << tk.im().to_decimal(17) << "," << q.x.re().to_decimal(17) << ","
                            << q.x.im().to_decimal(17) << "," << q.y.re().to_decimal(17) << ","
                            << q.y.im().to_decimal(17) << "," << q.z.re().to_decimal(17) << ","
                            << q.z.im().to_decimal(17) << "\n";
                    }
                    if (!orbit_csv.empty()) {
                        std::ofstream f(orbit_csv);
                        if (!f) raise("BadInput", "cannot write " + orbit_csv);
                        f << csv.str();
                    } else {
                        out << csv.str();
                    }
                    return 0;
                }
                img = flow_axis(s, axis, p, t);
            }
            emit(c, out, point_to_json(img));
            return 0;
        }

        if (cmd_bracket->parsed()) {
            SurfaceParams s = resolve_surface(c, prec);
            NormalPoly r = bracket(poly_from_string(poly_f), poly_from_string(poly_g), s);
            emit(c, out, json{{"bracket", poly_to_string(r.p)}});
            return 0;
        }

        if (cmd_certify->parsed()) {
            SurfaceParams s = resolve_surface(c, prec);
            CloseSpanOptions opt;
            opt.full_pairing = full_pairing;
            auto span = close_span(s, max_gen_deg, max_deg, opt);
            std::vector<Mono> targets;
            if (!monomials_arg.empty()) {
                std::stringstream ss(monomials_arg);
                std::string tok;
                while (std::getline(ss, tok, ',')) {
                    Poly p = poly_from_string(tok);
                    if (p.size() != 1 || p.terms().begin()->second != 1)
                        raise("BadInput", "certify targets must be plain monomials");
                    targets.push_back(p.terms().begin()->first);
                }
            } else {
                for (size_t i = 0; i < span.basis.space().dim(); ++i)
                    targets.push_back(span.basis.space().mono(i));
            }
            json bundle = certificate_bundle_to_json(s, span, targets, prec);
            bundle["max_gen_deg"] = max_gen_deg;
            emit(c, out, bundle);
            return 0;
        }

        if (cmd_m_enum->parsed()) {
            auto triples = enumerate_ordered(BigInt(bound_arg));
            // JSON lines: one compact triple per line
            std::ostringstream lines;
            for (auto& t : triples)
                lines << json::array({t.x.get_str(), t.y.get_str(), t.z.get_str()}).dump()
                      << "\n";
            if (!c.out_file.empty()) {
                std::ofstream f(c.out_file);
                if (!f) raise("BadInput", "cannot write " + c.out_file);
                f << lines.str();
            } else {
                out << lines.str();
            }
            return 0;
        }

        if (cmd_m_fit->parsed()) {
            auto fit = zagier_fit(fit_count, fit_from, prec);
            json res = json::array();
            for (auto& r : fit.residuals) res.push_back(r.to_decimal(8));
            emit(c, out,
                 json{{"C", fit.slope.to_decimal(12)},
                      {"intercept", fit.intercept.to_decimal(12)},
                      {"from", fit.from},
                      {"to", fit.to},
                      {"residuals", res}});
            return 0;
        }

        if (cmd_m_lag->parsed()) {
            Real v = lagrange_value(BigInt(lag_z), prec);
            emit(c, out, json{{"z", lag_z}, {"lagrange", v.to_decimal()}});
            return 0;
        }

        if (cmd_t_build->parsed()) {
            TameProblem prob;
            prob.n = tame_n;
            prob.eta = parse_map(map_arg, tame_n);
            prob.prec = c.precision;  // 0 = module default max(512, 64n)
            prob.seed = c.seed;
            TameSolution sol = build_tame_automorphism(prob);
            emit(c, out, tame_solution_to_json(sol));
            return 0;
        }

        if (cmd_t_verify->parsed()) {
            std::ifstream in(sol_file);
            if (!in) raise("BadInput", "cannot open " + sol_file);
            json j = json::parse(in);
            TameSolution sol = tame_solution_from_json(j);
            const SurfaceParams s = SurfaceParams::markov();
            json res = json::array();
            Real worst(sol.prec);
            for (size_t jx = 0; jx < sol.eta.size(); ++jx) {
                SurfacePoint img = sol.F.apply(s, triple_point(s, sol.triples[jx], sol.prec));
                const MarkovTriple& want = sol.triples[sol.eta[jx]];
                Real e = detail::rel_err(img.x, Complex(want.x, sol.prec));
                e = max(e, detail::rel_err(img.y, Complex(want.y, sol.prec)));
                e = max(e, detail::rel_err(img.z, Complex(want.z, sol.prec)));
                res.push_back(e.to_decimal(8));
                worst = max(worst, e);
            }
            json outj{{"residuals", res}, {"max_residual", worst.to_decimal(8)}};
            if (verify_samples > 0) {
                // sample near the interpolated triples (see tame.hpp), in
                // parallel chunks governed by --threads
                Prng rng(c.seed);
                std::vector<SurfacePoint> pts;
                for (int i = 0; i < verify_samples; ++i) {
                    const MarkovTriple& t = sol.triples[rng.next_below(sol.eta.size())];
                    pts.push_back(random_surface_point_near(
                        s, triple_point(s, t, sol.prec), sample_radius, rng, sol.prec));
                }
                int nthreads = std::max(1, c.threads);
                std::vector<Real> worst_per(nthreads, Real(sol.prec));
                std::vector<std::thread> pool;
                Real h(fd_step, sol.prec);
                for (int w = 0; w < nthreads; ++w)
                    pool.emplace_back([&, w] {
                        for (size_t i = w; i < pts.size(); i += size_t(nthreads))
                            worst_per[w] =
                                max(worst_per[w], check_symplectic(s, sol.F, pts[i], h));
                    });
                for (auto& th : pool) th.join();
                Real defect(sol.prec);
                for (auto& wv : worst_per) defect = max(defect, wv);
                outj["max_symplectic_defect"] = defect.to_decimal(8);
            }
            emit(c, out, outj);
            return 0;
        }

        if (cmd_selftest->parsed()) {
            json checks = selftest_run(prec, c.seed);
            bool all = true;
            for (auto& ch : checks) all = all && ch["ok"].get<bool>();
            emit(c, out, json{{"ok", all}, {"checks", checks}});
            return all ? 0 : 1;
        }

        raise("BadInput", "no subcommand matched");
    } catch (const Error& e) {
        json ej{{"error",
                 {{"code", e.code()}, {"message", e.what()}, {"input", echo_args(args)}}}};
        out << ej.dump(2) << "\n";
        return 1;
    } catch (const std::exception& e) {
        json ej{{"error",
                 {{"code", "Internal"}, {"message", e.what()}, {"input", echo_args(args)}}}};
        out << ej.dump(2) << "\n";
        return 1;
    }
    return 0;
}

} // namespace msurf

#endif
