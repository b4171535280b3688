// Constructive tameness of the ordered Markov triples: given an injective
// map eta on the first n triples, build a holomorphic symplectic
// automorphism
//
//     F = G^{-1} o phi^x_{h(x)} o phi^y_{g(y)} o G,      G = phi^z_{f(z)},
//
// that realizes p_j -> p_{eta(j)}.  f places the triples at generic complex
// positions (the faraway mechanism: gamma(z) t = tau - i sigma with sigma
// large makes the moving coordinates grow like e^sigma/2), g matches the
// x-coordinates by inverting the flow (a quadratic in T = exp(i gamma t)),
// h matches the remaining two.  Mittag-Leffler osculation degenerates to
// polynomial interpolation through the finitely many nodes present.

#ifndef MSURF_TAME_HPP
#define MSURF_TAME_HPP

#include "msurf/flows.hpp"
#include "msurf/markov.hpp"

#include <algorithm>
#include <map>

namespace msurf {

// --------------------------------------------------------------------------
// Sign conditions of the surjectivity lemma (Markov surface, fixed root
// gamma(z) = sqrt(4 - 9z^2)):  X +- iy != 0,  x +- iY != 0, and the
// zero-order terms of the two normalized quadratics differ.
// --------------------------------------------------------------------------

struct SignConditionsReport {
    Complex gamma, X, Y;
    Real margin_X_iy;     // min |X +- iy|
    Real margin_x_iY;     // min |x +- iY|
    Real margin_cross;    // |(ix-Y)(iy-X) - (X+iy)(ix+Y)|
    bool ok = false;
};

inline SignConditionsReport sign_conditions(const Complex& x, const Complex& y, const Complex& z) {
    long prec = x.prec();
    Real tol = pow2(-(prec / 4), prec);
    Complex w = Complex(4L, prec) - z * z * 9;
    if (abs(z) < tol || abs(w) < tol)
        raise("ExcludedZ", "sign conditions require z != 0 and 4 - 9z^2 != 0");
    Complex gamma = sqrt(w);
    Complex X = (x * 2 - y * z * 3) / gamma;
    Complex Y = (y * 2 - x * z * 3) / gamma;
    Complex iy(-y.im(), y.re());
    Complex iY(-Y.im(), Y.re());
    Complex ix(-x.im(), x.re());
    SignConditionsReport rep{gamma, X, Y, Real(prec), Real(prec), Real(prec), false};
    rep.margin_X_iy = min(abs(X + iy), abs(X - iy));
    rep.margin_x_iY = min(abs(x + iY), abs(x - iY));
    rep.margin_cross = abs((ix - Y) * (iy - X) - (X + iy) * (ix + Y));
    rep.ok = rep.margin_X_iy > tol && rep.margin_x_iY > tol && rep.margin_cross > tol;
    return rep;
}

// --------------------------------------------------------------------------
// Flow-time solver: all t with pi_target(phi^axis_t(pt)) = target, from the
// quadratic (i xbar + Y) T^2 - 2i (u - cx) T + (i xbar - Y) = 0 in
// T = exp(i gamma t), taken back by the principal logarithm.
// --------------------------------------------------------------------------

namespace detail {

struct AxisFrame {
    Complex m1, m2, fixed;  // moving pair and fixed coordinate
    Complex Am, Bm;         // inhomogeneous coefficients in the moving slots
    int m1_coord, m2_coord; // which of x/y/z the slots map back to (0/1/2)
};

inline AxisFrame axis_frame(const SurfaceParams& s, Var axis, const SurfacePoint& pt, long prec) {
    auto pv = values(s, prec);
    switch (axis) {
    case Var::z: return {pt.x, pt.y, pt.z, pv.A, pv.B, 0, 1};
    case Var::x: return {pt.y, pt.z, pt.x, pv.B, pv.C, 1, 2};
    default:     return {pt.z, pt.x, pt.y, pv.C, pv.A, 2, 0};
    }
}

// Stable complex quadratic a T^2 + b T + c = 0.
inline std::vector<Complex> solve_quadratic(const Complex& a, const Complex& b, const Complex& c,
                                            const Real& tiny) {
    std::vector<Complex> roots;
    if (abs(a) < tiny) {
        if (abs(b) < tiny) return roots;
        roots.push_back((-c) / b);
        return roots;
    }
    Complex disc = b * b - a * c * 4;
    Complex sq = sqrt(disc);
    // pick the sign that avoids cancellation in b + sq
    Complex bp = b + sq, bm = b - sq;
    Complex q = (abs(bp) >= abs(bm)) ? bp : bm;
    if (abs(q) < tiny) {  // b and disc both negligible: T^2 = -c/a
        roots.push_back(sqrt(-c / a));
        roots.push_back(-roots[0]);
        return roots;
    }
    q = q * Real(-0.5, b.prec());
    roots.push_back(q / a);
    roots.push_back(c / q);
    return roots;
}

} // namespace detail

// All flow times (principal branch) mapping the chosen moving coordinate of
// pt onto `target` under phi^axis.  Results are sorted canonically.
inline std::vector<Complex> solve_flow_time(const SurfaceParams& s, Var axis,
                                            const SurfacePoint& pt, Var target_coord,
                                            const Complex& target) {
    long prec = pt.prec();
    Real tiny = pow2(-(prec - prec / 8), prec);
    auto fr = detail::axis_frame(s, axis, pt, prec);
    auto pv = detail::values(s, prec);
    Complex w = Complex(4L, prec) - pv.E * pv.E * fr.fixed * fr.fixed;
    if (abs(w) < pow2(-(prec / 4), prec))
        raise("ExcludedZ", "flow inversion requires gamma != 0 at the fixed coordinate");
    Complex gamma = sqrt(w);
    Complex cx = (fr.Am * 2 - fr.Bm * pv.E * fr.fixed) / w;
    Complex cy = (fr.Bm * 2 - fr.Am * pv.E * fr.fixed) / w;
    Complex xbar = fr.m1 - cx;
    Complex ybar = fr.m2 - cy;
    Complex Xg = (fr.m1 * 2 + pv.E * fr.m2 * fr.fixed - fr.Am) / gamma;
    Complex Yg = (fr.m2 * 2 + pv.E * fr.m1 * fr.fixed - fr.Bm) / gamma;
    auto mul_i = [](const Complex& v) { return Complex(-v.im(), v.re()); };

    int tgt = int(target_coord);
    Complex a(prec), b(prec), c(prec);
    if (tgt == fr.m1_coord) {
        a = mul_i(xbar) + Yg;
        b = mul_i(target - cx) * (-2L);
        c = mul_i(xbar) - Yg;
    } else if (tgt == fr.m2_coord) {
        a = mul_i(ybar) - Xg;
        b = mul_i(target - cy) * (-2L);
        c = mul_i(ybar) + Xg;
    } else {
        raise("BadCaps", "target coordinate is fixed by this axis flow");
    }

    auto Ts = detail::solve_quadratic(a, b, c, tiny);
    std::vector<Complex> times;
    for (auto& T : Ts) {
        if (abs(T) < tiny) continue;
        Complex t = log(T) / mul_i(gamma);
        times.push_back(t);
    }
    if (times.empty())
        raise("NoSolution", "flow-time quadratic degenerated (precondition violated)");
    std::sort(times.begin(), times.end(), [](const Complex& u, const Complex& v) {
        if (u.re() != v.re()) return u.re() < v.re();
        return u.im() < v.im();
    });
    return times;
}

// --------------------------------------------------------------------------
// The tame builder.
// --------------------------------------------------------------------------

struct TameProblem {
    size_t n = 1;                  // sources: the first n ordered triples
    std::vector<size_t> eta;       // injective, 0-based, eta[j] indexes the triple list
    long prec = 0;                 // 0: default max(512, 64 n)
    std::uint64_t seed = 1;
    int retry_budget = 24;
    double margin = 0.125;         // separation margin epsilon
    double sigma_factor = 4.0;     // sigma_0 = sigma_factor * log(1 + max coordinate)
    long max_prec = 4096;          // escalation cap
    double accept_tol = 1e-15;     // max componentwise relative residual
};

struct TameSolution {
    CPoly1 f, g, h;
    Automorphism F;
    std::vector<MarkovTriple> triples;  // the first N ordered triples
    std::vector<size_t> eta;
    std::vector<Real> residuals;        // per source, componentwise max relative
    Real max_residual{kDefaultPrec};
    long prec = 0;
    std::uint64_t seed = 0;
};

inline SurfacePoint triple_point(const SurfaceParams& s, const MarkovTriple& t, long prec) {
    return make_point(s, Complex(Real(t.x, prec), Real(prec)), Complex(Real(t.y, prec), Real(prec)),
                      Complex(Real(t.z, prec), Real(prec)));
}

namespace detail {

inline Real rel_err(const Complex& got, const Complex& want) {
    Real scale = max(Real(1L, got.prec()), abs(want));
    return abs(got - want) / scale;
}

struct BuildAttemptFailed {
    std::string code;
    std::string message;
};

inline TameSolution build_tame_attempt(const TameProblem& prob, long prec) {
    const SurfaceParams s = SurfaceParams::markov();
    const size_t n = prob.n;
    size_t need = n;
    for (size_t t : prob.eta) need = std::max(need, t + 1);

    // first N ordered triples
    BigInt bound = 64;
    std::vector<MarkovTriple> triples;
    while (true) {
        triples = enumerate_ordered(bound);
        if (triples.size() >= need) break;
        bound *= bound;
    }
    triples.erase(triples.begin() + long(need), triples.end());

    Prng rng(prob.seed);
    Real eps(prob.margin, prec);
    Real two_thirds = Real(2L, prec) / Real(3L, prec);

    // ----- Step 1: choose the z-flow time per distinct z (ascending) -----
    std::map<BigInt, std::vector<size_t>> by_z;
    for (size_t j = 0; j < triples.size(); ++j) by_z[triples[j].z].push_back(j);

    Real raw_max(1L, prec);
    for (auto& t : triples) raw_max = max(raw_max, Real(t.z, prec));
    Real sigma0 = log(Real(1L, prec) + raw_max) * Real(prob.sigma_factor, prec);

    std::vector<Complex> znodes, tnodes;
    std::vector<Complex> placed_x, placed_y;
    Real twopi = pi(prec) * 2;

    for (auto& [zval, idxs] : by_z) {
        Complex z(zval, prec);
        Complex w = Complex(4L, prec) - z * z * 9;
        Complex gamma = sqrt(w);
        bool ok = false;
        for (int attempt = 0; attempt < prob.retry_budget && !ok; ++attempt) {
            Real tau = rng.next_real(0.0, 1.0, prec) * twopi;
            Real sigma = sigma0 * pow2(attempt, prec);
            Complex gt(tau, -sigma);
            Complex t = gt / gamma;
            std::vector<Complex> xs, ys;
            bool good = true;
            for (size_t j : idxs) {
                SurfacePoint p = triple_point(s, triples[j], prec);
                SurfacePoint img = flow_axis(s, Var::z, p, t);
                auto away = [&](const Complex& v) {
                    if (abs(v) < eps) return false;
                    if (abs(v - Complex(two_thirds)) < eps) return false;
                    if (abs(v + Complex(two_thirds)) < eps) return false;
                    return true;
                };
                if (!away(img.x) || !away(img.y)) { good = false; break; }
                for (auto& u : placed_x)
                    if (abs(img.x - u) < eps) { good = false; break; }
                for (auto& u : placed_y)
                    if (abs(img.y - u) < eps) { good = false; break; }
                for (auto& u : xs)
                    if (abs(img.x - u) < eps) { good = false; break; }
                for (auto& u : ys)
                    if (abs(img.y - u) < eps) { good = false; break; }
                if (!good) break;
                // the surjectivity lemma must apply at the image for steps 2-3
                auto cond = sign_conditions(img.x, img.y, img.z);
                if (!cond.ok) { good = false; break; }
                xs.push_back(img.x);
                ys.push_back(img.y);
            }
            if (good) {
                znodes.push_back(z);
                tnodes.push_back(t);
                placed_x.insert(placed_x.end(), xs.begin(), xs.end());
                placed_y.insert(placed_y.end(), ys.begin(), ys.end());
                ok = true;
            }
        }
        if (!ok)
            throw BuildAttemptFailed{"RetryExhausted",
                                     "step 1 could not separate the images at z = " + zval.get_str()};
    }

    TameSolution sol;
    sol.f = CPoly1::interpolate(znodes, tnodes, prec);
    sol.triples = triples;
    sol.eta = prob.eta;
    sol.prec = prec;
    sol.seed = prob.seed;

    ShearFlow G{Var::z, sol.f};
    std::vector<SurfacePoint> primed;
    for (auto& t : triples) primed.push_back(G.apply(s, triple_point(s, t, prec)));

    Real match_tol = pow2(-(prec / 4), prec);

    // ----- Steps 2 and 3: per source, solve flow times along y then x -----
    std::vector<Complex> g_nodes, g_vals, h_nodes, h_vals;
    for (size_t j = 0; j < n; ++j) {
        const SurfacePoint& src = primed[j];
        const SurfacePoint& dst = primed[prob.eta[j]];
        bool done = false;
        auto t2_candidates = solve_flow_time(s, Var::y, src, Var::x, dst.x);
        for (auto& t2 : t2_candidates) {
            SurfacePoint q = flow_axis(s, Var::y, src, t2);
            if (rel_err(q.x, dst.x) > match_tol) continue;
            std::vector<Complex> t3_candidates;
            try {
                t3_candidates = solve_flow_time(s, Var::x, q, Var::y, dst.y);
            } catch (const Error&) {
                continue;
            }
            for (auto& t3 : t3_candidates) {
                SurfacePoint r = flow_axis(s, Var::x, q, t3);
                if (rel_err(r.y, dst.y) > match_tol) continue;
                if (rel_err(r.z, dst.z) > match_tol) continue;
                g_nodes.push_back(src.y);
                g_vals.push_back(t2);
                h_nodes.push_back(dst.x);
                h_vals.push_back(t3);
                done = true;
                break;
            }
            if (done) break;
        }
        if (!done)
            throw BuildAttemptFailed{"RootSelectionFailure",
                                     "no quadratic root matched both coordinates for source " +
                                         std::to_string(j)};
    }

    sol.g = CPoly1::interpolate(g_nodes, g_vals, prec);
    sol.h = CPoly1::interpolate(h_nodes, h_vals, prec);
    sol.F = Automorphism{{G.inverse(), ShearFlow{Var::x, sol.h}, ShearFlow{Var::y, sol.g}, G}};

    // ----- end-to-end verification -----
    sol.max_residual = Real(prec);
    for (size_t j = 0; j < n; ++j) {
        SurfacePoint img = sol.F.apply(s, triple_point(s, triples[j], prec));
        const MarkovTriple& want = triples[prob.eta[j]];
        Real e = rel_err(img.x, Complex(want.x, prec));
        e = max(e, rel_err(img.y, Complex(want.y, prec)));
        e = max(e, rel_err(img.z, Complex(want.z, prec)));
        sol.residuals.push_back(e);
        sol.max_residual = max(sol.max_residual, e);
    }
    return sol;
}

} // namespace detail

// Builds and verifies; escalates precision (x2) until the residual target is
// met or the cap is reached.
inline TameSolution build_tame_automorphism(const TameProblem& prob) {
    if (prob.eta.size() != prob.n) raise("BadCaps", "eta must have exactly n entries");
    {
        std::set<size_t> uniq(prob.eta.begin(), prob.eta.end());
        if (uniq.size() != prob.eta.size()) raise("BadCaps", "eta must be injective");
    }
    long prec = prob.prec > 0 ? prob.prec : std::max<long>(512, 64 * long(prob.n));
    std::string last_code = "VerificationFailure", last_msg;
    while (prec <= prob.max_prec) {
        try {
            TameSolution sol = detail::build_tame_attempt(prob, prec);
            Real target(prob.accept_tol, prec);
            if (sol.max_residual < target) return sol;
            last_msg = "max residual " + sol.max_residual.to_decimal(6) + " at " +
                       std::to_string(prec) + " bits";
        } catch (const detail::BuildAttemptFailed& f) {
            last_code = f.code;
            last_msg = f.message;
        }
        prec *= 2;
    }
    raise(last_code, "tame build failed up to the precision cap: " + last_msg);
}

// Random smooth surface point near a base point: perturb (y, z), re-solve x
// by the quadratic root closest to the base.
inline SurfacePoint random_surface_point_near(const SurfaceParams& s, const SurfacePoint& base,
                                              double radius, Prng& rng, long prec) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Complex y = base.y + rng.next_complex(-radius, radius, prec);
        Complex z = base.z + rng.next_complex(-radius, radius, prec);
        auto pv = detail::values(s, prec);
        Complex b = pv.E * y * z - pv.A;
        Complex c = y * y + z * z - pv.B * y - pv.C * z - pv.D;
        Complex root = sqrt(b * b - c * 4);
        Complex x1 = (root - b) / 2, x2 = (-root - b) / 2;
        Complex x = (abs(x1 - base.x) <= abs(x2 - base.x)) ? x1 : x2;
        SurfacePoint pt = make_point(s, x, y, z);
        if (spanning_rank(s, pt) == 2) return pt;
    }
    raise("SamplingFailed", "could not sample a smooth point near the base");
}

// Max finite-difference symplecticity defect of the solution's automorphism
// over random smooth surface points.  Samples live near the interpolated
// triples: the shear interpolants are entire, so far from the nodes they
// grow double-exponentially and the flows overflow any working range.
inline Real verify_symplectic_at_points(const TameSolution& sol, int samples, const Real& h,
                                        Prng& rng, double radius = 0.05) {
    const SurfaceParams s = SurfaceParams::markov();
    size_t n_sources = sol.eta.size();
    Real worst(sol.prec);
    for (int i = 0; i < samples; ++i) {
        const MarkovTriple& t = sol.triples[rng.next_below(n_sources)];
        SurfacePoint base = triple_point(s, t, sol.prec);
        SurfacePoint pt = random_surface_point_near(s, base, radius, rng, sol.prec);
        worst = max(worst, check_symplectic(s, sol.F, pt, h));
    }
    return worst;
}

} // namespace msurf

#endif
