// Singular locus of Markov-type surfaces: locating the singular points by
// elimination, classifying them as ADE germs (A_k via the formal splitting
// lemma, D_4 via the 3-jet factorization), and the model-germ calculus for
// the A_k and D_k model surfaces
//
//     A_k:  x^2 + y^2 + z^{k+1} = 0        D_k:  x(y^2 + x^{k-2}) + z^2 = 0
//
// including the constructive decomposition of a tangential polynomial field
// into C[M]-combinations of V^x, V^y, V^z plus the residual Lambda (and K)
// directions.

#ifndef MSURF_SINGULAR_HPP
#define MSURF_SINGULAR_HPP

#include "msurf/flows.hpp"
#include "msurf/poisson.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace msurf {

// --------------------------------------------------------------------------
// Rescaling to E = 1:  (x,y,z) -> (x/E, y/E, z/E) and P -> E^2 P, so
// (A,B,C,D,E) -> (AE, BE, CE, DE^2, 1).  Singular points map by p -> E p.
// --------------------------------------------------------------------------

struct RescaleResult {
    SurfaceParams params;
    Rat scale;  // rescaled point = scale * original point
};

inline RescaleResult rescale_to_E1(const SurfaceParams& s) {
    Rat E = s.E.rat();
    return {SurfaceParams::rational(s.A.rat() * E, s.B.rat() * E, s.C.rat() * E,
                                    s.D.rat() * E * E, Rat(1)),
            E};
}

// --------------------------------------------------------------------------
// Univariate helpers over Q (dense, ascending coefficients).
// --------------------------------------------------------------------------

namespace uni {

using QPoly = std::vector<Rat>;

inline void trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int deg(const QPoly& p) { return int(p.size()) - 1; }

inline QPoly add(const QPoly& a, const QPoly& b) {
    QPoly r(std::max(a.size(), b.size()), Rat(0));
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

inline QPoly mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

inline QPoly scale(const QPoly& a, const Rat& c) {
    QPoly r = a;
    for (auto& x : r) x *= c;
    trim(r);
    return r;
}

inline QPoly derivative(const QPoly& a) {
    if (a.size() <= 1) return {};
    QPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = a[i] * long(i);
    return r;
}

// Remainder of a by b (b nonzero).
inline QPoly rem(QPoly a, const QPoly& b) {
    trim(a);
    while (deg(a) >= deg(b) && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    return a;
}

inline QPoly gcd(QPoly a, QPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        QPoly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.empty()) {
        Rat lead = a.back();
        for (auto& c : a) c /= lead;
    }
    return a;
}

// Exact division (caller guarantees divisibility).
inline QPoly div_exact(QPoly a, const QPoly& b) {
    trim(a);
    QPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, Rat(0));
    while (deg(a) >= deg(b) && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    return q;
}

inline QPoly square_free_part(const QPoly& p) {
    QPoly g = gcd(p, derivative(p));
    if (deg(g) <= 0) return p;
    return div_exact(p, g);
}

inline Complex eval(const QPoly& p, const Complex& z, long prec) {
    Complex acc(prec);
    for (size_t i = p.size(); i-- > 0;) acc = acc * z + Complex(p[i], prec);
    return acc;
}

// Durand-Kerner: all complex roots of a square-free polynomial.
inline std::vector<Complex> roots(const QPoly& p, long prec) {
    int n = deg(p);
    if (n <= 0) return {};
    Real bound(1L, prec);
    for (int i = 0; i < n; ++i) bound = max(bound, abs(Complex(p[i] / p[n], prec)));
    bound = bound + Real(1L, prec);
    std::vector<Complex> w;
    Complex seed(0.4, 0.9, prec);
    Complex cur = seed;
    for (int i = 0; i < n; ++i) {
        w.push_back(cur * Complex(bound));
        cur = cur * seed;
    }
    Real tol = pow2(-(prec - 24), prec) * bound;
    for (int iter = 0; iter < 400; ++iter) {
        Real worst(prec);
        for (int i = 0; i < n; ++i) {
            Complex denom(1L, prec);
            for (int j = 0; j < n; ++j)
                if (j != i) denom *= (w[i] - w[j]);
            Complex delta = eval(p, w[i], prec) / (Complex(p[n], prec) * denom);
            w[i] -= delta;
            worst = max(worst, abs(delta));
        }
        if (worst < tol) break;
    }
    return w;
}

} // namespace uni

// --------------------------------------------------------------------------
// Singular point search: solve grad P = 0 (E = 1) by eliminating
// x = (A - yz)/2, reducing to g1, g2 in (y, z), then Res_y -> univariate in
// z; keep only solutions with P = 0.
// --------------------------------------------------------------------------

struct FoundPoint {
    Vec3 numeric;
    bool exact = false;
    std::array<Rat, 3> rational{Rat(0), Rat(0), Rat(0)};
};

struct FindResult {
    std::vector<FoundPoint> points;
    bool used_fallback = false;
};

namespace detail {

// Continued-fraction rational reconstruction of a real value.
inline std::optional<Rat> reconstruct_rat(const Real& v, long prec, const BigInt& max_den) {
    Real x = v;
    Rat p0(0), q0(1), p1(1), q1(0);  // convergents
    Real tol = pow2(-(prec / 2), prec);
    for (int i = 0; i < 64; ++i) {
        mpfr_t fl;
        mpfr_init2(fl, x.prec());
        mpfr_floor(fl, x.raw());
        mpz_class a;
        mpfr_get_z(a.get_mpz_t(), fl, MPFR_RNDN);
        mpfr_clear(fl);
        Rat pn = Rat(a) * p1 + p0;
        Rat qn = Rat(a) * q1 + q0;
        p0 = p1; q0 = q1; p1 = pn; q1 = qn;
        if (q1.get_num() > max_den) return std::nullopt;
        Rat cand = p1 / q1;
        Real err = abs(v - Real(cand, v.prec()));
        if (err < tol) return cand;
        Real frac = x - Real(BigInt(a), x.prec());
        if (abs(frac) < pow2(-(v.prec() - 16), v.prec())) return std::nullopt;
        x = Real(1L, x.prec()) / frac;
    }
    return std::nullopt;
}

inline std::optional<std::array<Rat, 3>> snap_point(const SurfaceParams& s, const Vec3& p,
                                                    long prec) {
    Real imtol = pow2(-(prec / 2), prec);
    if (abs(p.x.im()) > imtol || abs(p.y.im()) > imtol || abs(p.z.im()) > imtol)
        return std::nullopt;
    BigInt max_den(1);
    max_den <<= 32;
    auto rx = reconstruct_rat(p.x.re(), prec, max_den);
    auto ry = reconstruct_rat(p.y.re(), prec, max_den);
    auto rz = reconstruct_rat(p.z.re(), prec, max_den);
    if (!rx || !ry || !rz) return std::nullopt;
    // exact verification: grad P = 0 and P = 0
    Poly P = defining_poly(s);
    auto value = [&](const Poly& q) {
        Poly r = q.subst(poly_const(*rx), poly_const(*ry), poly_const(*rz));
        return r.coeff(Mono::one());
    };
    if (value(P) != 0) return std::nullopt;
    for (Var v : {Var::x, Var::y, Var::z})
        if (value(P.derivative(v)) != 0) return std::nullopt;
    return std::array<Rat, 3>{*rx, *ry, *rz};
}

} // namespace detail

inline FindResult find_singular_points(const SurfaceParams& s, double box, long prec) {
    if (s.E.rat() != 1) raise("BadCaps", "find_singular_points requires E = 1 (rescale first)");
    const Rat A = s.A.rat(), B = s.B.rat(), C = s.C.rat();
    FindResult out;

    // R(z) = -z (2B - Az)^2 + A (2B - Az)(4 - z^2) + (4z - 2C)(4 - z^2)^2
    uni::QPoly lin{2 * B, -A};                     // 2B - Az
    uni::QPoly four{Rat(4), Rat(0), Rat(-1)};      // 4 - z^2
    uni::QPoly t1 = uni::mul(uni::QPoly{Rat(0), Rat(-1)}, uni::mul(lin, lin));
    uni::QPoly t2 = uni::scale(uni::mul(lin, four), A);
    uni::QPoly t3 = uni::mul(uni::QPoly{-2 * C, Rat(4)}, uni::mul(four, four));
    uni::QPoly R = uni::add(uni::add(t1, t2), t3);

    std::vector<Complex> zs;
    bool degenerate = uni::deg(R) <= 0;
    if (!degenerate) {
        uni::QPoly Rsf = uni::square_free_part(R);
        zs = uni::roots(Rsf, prec);
    } else {
        out.used_fallback = true;
        // R identically constant: fall back to a multistart Newton sweep on
        // (g1, g2) over a deterministic complex grid.
        Prng rng(0x5eedULL);
        auto g = [&](const Complex& y, const Complex& z) {
            Complex g1 = y * 4 + Complex(A, prec) * z - y * z * z - Complex(2 * B, prec);
            Complex g2 = z * 4 + Complex(A, prec) * y - y * y * z - Complex(2 * C, prec);
            return std::pair{g1, g2};
        };
        for (int trial = 0; trial < 200; ++trial) {
            Complex y = rng.next_complex(-box, box, prec);
            Complex z = rng.next_complex(-box, box, prec);
            for (int it = 0; it < 80; ++it) {
                auto [g1, g2] = g(y, z);
                // Jacobian of (g1, g2) wrt (y, z)
                Complex j11 = Complex(4L, prec) - z * z;
                Complex j12 = Complex(A, prec) - y * z * 2;
                Complex j21 = Complex(A, prec) - y * z * 2;
                Complex j22 = Complex(4L, prec) - y * y;
                Complex det = j11 * j22 - j12 * j21;
                if (abs(det) < pow2(-(prec / 2), prec)) break;
                Complex dy = (g1 * j22 - g2 * j12) / det;
                Complex dz = (j11 * g2 - j21 * g1) / det;
                y -= dy;
                z -= dz;
                if (abs(dy) + abs(dz) < pow2(-(prec - 32), prec)) break;
            }
            auto [g1, g2] = g(y, z);
            if (abs(g1) + abs(g2) < pow2(-(prec / 2), prec)) zs.push_back(z);
        }
    }

    Real tol = pow2(-(prec / 2), prec);
    std::vector<Vec3> candidates;
    auto push_candidate = [&](const Complex& x, const Complex& y, const Complex& z) {
        candidates.push_back({x, y, z});
    };

    for (auto& z0 : zs) {
        Complex den = Complex(4L, prec) - z0 * z0;
        if (abs(den) > tol) {
            Complex y0 = Complex(2 * B, prec) - Complex(A, prec) * z0;
            y0 = y0 / den;
            Complex x0 = (Complex(A, prec) - y0 * z0) / 2;
            push_candidate(x0, y0, z0);
        }
    }
    // z = +-2 fiber: g1 degenerates to the constant A z0 - 2B there.
    for (long sgn : {1L, -1L}) {
        Rat z0 = Rat(2 * sgn);
        if (A * z0 - 2 * B != 0) continue;
        // g2(y, z0) = -z0 y^2 + A y + (4 z0 - 2C) = 0
        Complex a(-z0, prec), b(A, prec), c(4 * z0 - 2 * C, prec);
        Complex disc = sqrt(b * b - a * c * 4);
        for (int pick : {0, 1}) {
            Complex y0 = (pick ? (-b - disc) : (-b + disc)) / (a * 2);
            Complex x0 = (Complex(A, prec) - y0 * Complex(z0, prec)) / 2;
            push_candidate(x0, y0, Complex(z0, prec));
        }
    }

    // keep critical points on the surface, dedupe, snap
    Real keep_tol = pow2(-(prec / 4), prec);
    for (auto& cand : candidates) {
        Vec3 g = eval_grad(s, cand.x, cand.y, cand.z, prec);
        Complex Pv = eval_P(s, cand.x, cand.y, cand.z, prec);
        if (g.max_abs() > keep_tol || abs(Pv) > keep_tol) continue;
        if (cand.max_abs() > Real(box, prec)) continue;
        bool dup = false;
        for (auto& have : out.points) {
            Vec3 d = have.numeric - cand;
            if (d.max_abs() < keep_tol) { dup = true; break; }
        }
        if (dup) continue;
        FoundPoint fp;
        fp.numeric = cand;
        if (auto snapped = detail::snap_point(s, cand, prec)) {
            fp.exact = true;
            fp.rational = *snapped;
            fp.numeric = {Complex(fp.rational[0], prec), Complex(fp.rational[1], prec),
                          Complex(fp.rational[2], prec)};
        }
        out.points.push_back(std::move(fp));
    }
    return out;
}

// --------------------------------------------------------------------------
// ADE classification at a singular point.
// --------------------------------------------------------------------------

enum class AdeType { Smooth, A, D4, JetDegenerate };

struct SingularityReport {
    AdeType type = AdeType::Smooth;
    unsigned k = 0;             // for A_k
    int hessian_corank = -1;
    bool k_overflow = false;    // residual order exceeded the degree cap
    std::string evidence;
    FoundPoint point;
};

inline const char* ade_name(const SingularityReport& r) {
    switch (r.type) {
    case AdeType::Smooth: return "Smooth";
    case AdeType::D4: return "D4";
    case AdeType::JetDegenerate: return "JetDegenerate";
    case AdeType::A: return "A";
    }
    return "?";
}

namespace detail {

constexpr unsigned kSplitCap = 10;

// Shared splitting-lemma engine, templated on the coefficient ring.  ZeroFn
// decides coefficient vanishing (exact for Rat, tolerance for Complex).
template <class C, class ZeroFn>
struct Splitter {
    ZeroFn is_zero;
    std::function<C(long)> from_long;

    using P3 = TPoly<C>;

    // coefficient of the monomial linear in var v, as a polynomial in the
    // others: sum over terms with deg_v == 1 of (term / v).
    P3 linear_part(const P3& p, Var v) const {
        P3 r;
        for (auto& [m, c] : p.terms()) {
            if (m[v] != 1) continue;
            Mono d = m;
            d[v] = 0;
            if (d.deg() == 0 && m.deg() == 1) continue;  // the pure linear term is handled by shift
            r.add_term(d, c);
        }
        return r;
    }

    P3 drop_zero(const P3& p) const {
        P3 r;
        for (auto& [m, c] : p.terms())
            if (!is_zero(c)) r.add_term(m, c);
        return r;
    }

    // Diagonalizes the quadratic part by congruence substitutions applied to
    // the whole (truncated) polynomial.  Returns the diagonal entries; the
    // polynomial is modified so its degree-2 part is sum d_i v_i^2 with the
    // nonzero d_i leading.
    std::array<C, 3> diagonalize(P3& p) const {
        auto quad = [&](int i, int j) {
            Mono m;
            m.e[i] += 1;
            m.e[j] += 1;
            C c = p.coeff(m);
            if (i == j) return c;
            return c;  // off-diagonal: coefficient of v_i v_j (the form has 2 Q_ij)
        };
        std::array<Var, 3> vars{Var::x, Var::y, Var::z};
        std::array<C, 3> diag{from_long(0), from_long(0), from_long(0)};
        for (int i = 0; i < 3; ++i) {
            // ensure a nonzero diagonal pivot at slot i if possible
            if (is_zero(quad(i, i))) {
                int swap_j = -1, mix_j = -1;
                for (int j = i + 1; j < 3; ++j) {
                    if (!is_zero(quad(j, j)) && swap_j < 0) swap_j = j;
                    if (!is_zero(quad(i, j)) && mix_j < 0) mix_j = j;
                }
                if (swap_j >= 0) {
                    p = swap_vars(p, vars[i], vars[swap_j]);
                } else if (mix_j >= 0) {
                    // v_mix -> v_mix + v_i turns the cross term into a square
                    p = add_var(p, vars[mix_j], vars[i]);
                } else {
                    continue;  // the remaining block is zero
                }
            }
            C d = quad(i, i);
            if (is_zero(d)) continue;
            diag[i] = d;
            for (int j = i + 1; j < 3; ++j) {
                C cij = quad(i, j);
                if (is_zero(cij)) continue;
                // v_i -> v_i - (c_ij / 2d) v_j
                p = shear_var(p, vars[i], vars[j], neg(div(cij, mul(from_long(2), d))));
                p = p.truncate(kSplitCap);
            }
        }
        p = drop_zero(p.truncate(kSplitCap));
        return diag;
    }

    static C neg(const C& a) { return -a; }
    static C mul(const C& a, const C& b) { return a * b; }
    static C div(const C& a, const C& b) {
        if constexpr (std::is_same_v<C, Rat>) return a / b;
        else return a / b;
    }

    P3 swap_vars(const P3& p, Var a, Var b) const {
        P3 r;
        for (auto& [m, c] : p.terms()) {
            Mono n = m;
            std::swap(n[a], n[b]);
            r.add_term(n, c);
        }
        return r;
    }

    // substitute v_a -> v_a + v_b
    P3 add_var(const P3& p, Var a, Var b) const {
        std::array<P3, 3> subst = identity_subst(p);
        subst[size_t(a)] += P3::variable(b, from_long(1));
        return p.subst(subst[0], subst[1], subst[2]);
    }

    // substitute v_a -> v_a + c * v_b
    P3 shear_var(const P3& p, Var a, Var b, const C& c) const {
        std::array<P3, 3> subst = identity_subst(p);
        subst[size_t(a)] += P3::variable(b, from_long(1)) * c;
        return p.subst(subst[0], subst[1], subst[2]);
    }

    std::array<P3, 3> identity_subst(const P3&) const {
        return {P3::variable(Var::x, from_long(1)), P3::variable(Var::y, from_long(1)),
                P3::variable(Var::z, from_long(1))};
    }

    // Removes all terms linear in v (given its square coefficient d) by the
    // iterated substitution v -> v - B/(2d); each pass strictly raises the
    // order of the linear part, so the cap bounds the loop.
    void kill_linear(P3& p, Var v, const C& d) const {
        for (unsigned pass = 0; pass <= kSplitCap + 2; ++pass) {
            P3 B = drop_zero(linear_part(p, v));
            if (B.is_zero()) return;
            P3 shift;
            C c2d = div(from_long(-1), mul(from_long(2), d));
            for (auto& [m, c] : B.terms()) shift.add_term(m, c * c2d);
            std::array<P3, 3> subst = identity_subst(p);
            subst[size_t(v)] += shift;
            p = drop_zero(p.subst(subst[0], subst[1], subst[2]).truncate(kSplitCap));
        }
    }

    // Residual in the given kernel variables after all squares are split off:
    // the terms free of every non-kernel variable.
    P3 residual(const P3& p, std::initializer_list<Var> kernel) const {
        auto in_kernel = [&](Var v) {
            for (Var k : kernel)
                if (k == v) return true;
            return false;
        };
        P3 r;
        for (auto& [m, c] : p.terms()) {
            bool pure = true;
            for (Var v : {Var::x, Var::y, Var::z})
                if (!in_kernel(v) && m[v] > 0) pure = false;
            if (pure) r.add_term(m, c);
        }
        return r;
    }
};

} // namespace detail

// Classify a singular point of an E = 1 surface.  Exact path when both the
// parameters and the point are rational; numeric with tolerances otherwise.
inline SingularityReport classify(const SurfaceParams& s, const FoundPoint& pt, long prec) {
    if (s.E.rat() != 1) raise("BadCaps", "classify requires E = 1 (rescale first)");
    SingularityReport rep;
    rep.point = pt;
    std::ostringstream ev;

    Vec3 g = eval_grad(s, pt.numeric.x, pt.numeric.y, pt.numeric.z, prec);
    Complex Pv = eval_P(s, pt.numeric.x, pt.numeric.y, pt.numeric.z, prec);
    Real tol = pow2(-(prec / 4), prec);
    if (g.max_abs() > tol || abs(Pv) > tol)
        raise("NotSingular", "point does not satisfy N = 0, P = 0");

    if (pt.exact) {
        // exact shifted Taylor expansion
        Poly P = defining_poly(s);
        Poly shifted = P.subst(poly_var(Var::x) + poly_const(pt.rational[0]),
                               poly_var(Var::y) + poly_const(pt.rational[1]),
                               poly_var(Var::z) + poly_const(pt.rational[2]));
        detail::Splitter<Rat, bool (*)(const Rat&)> sp{
            [](const Rat& c) { return c == 0; }, [](long n) { return Rat(n); }};
        auto run = sp;
        TPoly<Rat> p = shifted;
        auto diag = run.diagonalize(p);
        int rank = 0;
        for (auto& d : diag)
            if (d != 0) ++rank;
        rep.hessian_corank = 3 - rank;
        ev << "diag(" << diag[0].get_str() << "," << diag[1].get_str() << ","
           << diag[2].get_str() << ")";
        if (rank == 3) {
            rep.type = AdeType::A;
            rep.k = 1;
            ev << "; nondegenerate Hessian, Morse normal form";
        } else if (rank == 2) {
            run.kill_linear(p, Var::x, diag[0]);
            run.kill_linear(p, Var::y, diag[1]);
            TPoly<Rat> gres = run.residual(p, {Var::z});
            if (gres.is_zero()) {
                rep.type = AdeType::A;
                rep.k_overflow = true;
                rep.k = detail::kSplitCap;  // lower bound: order exceeds the cap
                ev << "; residual vanishes to the degree cap";
            } else {
                unsigned ord = detail::kSplitCap + 1;
                Rat lead(0);
                for (auto& [m, c] : gres.terms())
                    if (m.deg() < ord) { ord = m.deg(); lead = c; }
                rep.type = AdeType::A;
                rep.k = ord - 1;
                ev << "; residual " << lead.get_str() << "*z^" << ord << " + O(z^" << ord + 1
                   << ")";
            }
        } else {
            // corank 2: split off the single square, factor the 3-jet of the rest
            run.kill_linear(p, Var::x, diag[0]);
            TPoly<Rat> gres = run.residual(p, {Var::y, Var::z});
            Rat a = gres.coeff(Mono::xyz(0, 3, 0)), b = gres.coeff(Mono::xyz(0, 2, 1));
            Rat c = gres.coeff(Mono::xyz(0, 1, 2)), d = gres.coeff(Mono::xyz(0, 0, 3));
            Rat disc = Rat(18) * a * b * c * d - Rat(4) * b * b * b * d + b * b * c * c
                     - Rat(4) * a * c * c * c - Rat(27) * a * a * d * d;
            bool jet_zero = (a == 0 && b == 0 && c == 0 && d == 0);
            ev << "; 3-jet " << a.get_str() << "*y^3+" << b.get_str() << "*y^2z+" << c.get_str()
               << "*yz^2+" << d.get_str() << "*z^3, disc=" << disc.get_str();
            if (!jet_zero && disc != 0) {
                rep.type = AdeType::D4;
            } else {
                rep.type = AdeType::JetDegenerate;
            }
        }
        rep.evidence = ev.str();
        return rep;
    }

    // numeric path
    CPoly P;
    {
        Poly Pq = defining_poly(s);
        for (auto& [m, c] : Pq.terms()) P.add_term(m, Complex(c, prec));
    }
    CPoly shifted = P.subst(CPoly::variable(Var::x, Complex(1L, prec)) + CPoly::constant(pt.numeric.x),
                            CPoly::variable(Var::y, Complex(1L, prec)) + CPoly::constant(pt.numeric.y),
                            CPoly::variable(Var::z, Complex(1L, prec)) + CPoly::constant(pt.numeric.z));
    Real ztol = pow2(-(prec / 3), prec);
    auto zero_fn = [ztol](const Complex& c) { return abs(c) < ztol; };
    detail::Splitter<Complex, decltype(zero_fn)> sp{zero_fn,
                                                    [prec](long n) { return Complex(n, prec); }};
    CPoly p = shifted;
    auto diag = sp.diagonalize(p);
    int rank = 0;
    for (auto& d : diag)
        if (!zero_fn(d)) ++rank;
    rep.hessian_corank = 3 - rank;
    ev << "numeric diag";
    if (rank == 3) {
        rep.type = AdeType::A;
        rep.k = 1;
    } else if (rank == 2) {
        sp.kill_linear(p, Var::x, diag[0]);
        sp.kill_linear(p, Var::y, diag[1]);
        CPoly gres = sp.drop_zero(sp.residual(p, {Var::z}));
        if (gres.is_zero()) {
            rep.type = AdeType::A;
            rep.k_overflow = true;
            rep.k = detail::kSplitCap;
        } else {
            unsigned ord = detail::kSplitCap + 1;
            for (auto& [m, c] : gres.terms()) ord = std::min(ord, m.deg());
            rep.type = AdeType::A;
            rep.k = ord - 1;
        }
    } else {
        sp.kill_linear(p, Var::x, diag[0]);
        CPoly gres = sp.drop_zero(sp.residual(p, {Var::y, Var::z}));
        Complex a = gres.coeff(Mono::xyz(0, 3, 0)), b = gres.coeff(Mono::xyz(0, 2, 1));
        Complex c = gres.coeff(Mono::xyz(0, 1, 2)), d = gres.coeff(Mono::xyz(0, 0, 3));
        Complex disc = Complex(18L, prec) * a * b * c * d - Complex(4L, prec) * b * b * b * d
                     + b * b * c * c - Complex(4L, prec) * a * c * c * c
                     - Complex(27L, prec) * a * a * d * d;
        bool jet_zero = zero_fn(a) && zero_fn(b) && zero_fn(c) && zero_fn(d);
        rep.type = (!jet_zero && !zero_fn(disc)) ? AdeType::D4 : AdeType::JetDegenerate;
    }
    rep.evidence = ev.str();
    return rep;
}

// Convenience: find and classify everything (E arbitrary; rescales
// internally and reports points in the original coordinates).
inline std::vector<SingularityReport> classify_surface(const SurfaceParams& s, double box,
                                                       long prec) {
    auto rs = rescale_to_E1(s);
    double scaled_box = box * std::abs(rs.scale.get_d()) + 1.0;
    FindResult found = find_singular_points(rs.params, scaled_box, prec);
    std::vector<SingularityReport> out;
    for (auto& fp : found.points) {
        SingularityReport rep = classify(rs.params, fp, prec);
        // map the point back to the original coordinates (divide by E)
        Complex inv = Complex(Rat(1) / rs.scale, prec);
        rep.point.numeric = {rep.point.numeric.x * inv, rep.point.numeric.y * inv,
                             rep.point.numeric.z * inv};
        if (rep.point.exact)
            for (auto& c : rep.point.rational) c /= rs.scale;
        out.push_back(std::move(rep));
    }
    return out;
}

// --------------------------------------------------------------------------
// Model germs.
// --------------------------------------------------------------------------

enum class GermKind { A, D };

struct ModelGerm {
    GermKind kind;
    unsigned k;
    Poly P;            // defining polynomial of the model surface
    Var reduce_var;    // variable whose square the ideal rewrites
    Poly reduce_subst; // reduce_var^2 -> this
    SymbolicField Vx, Vy, Vz, Lambda, K;  // K is zero for A-models

    Poly reduce(const Poly& q) const { return reduce_quadratic(q, reduce_var, reduce_subst); }

    SymbolicField reduce_field(const SymbolicField& W) const {
        return {reduce(W.cx), reduce(W.cy), reduce(W.cz)};
    }

    bool is_tangential(const SymbolicField& W) const {
        Poly n = P.derivative(Var::x) * W.cx + P.derivative(Var::y) * W.cy
               + P.derivative(Var::z) * W.cz;
        return reduce(n).is_zero();
    }
};

inline ModelGerm model_fields(GermKind kind, unsigned k) {
    ModelGerm g;
    g.kind = kind;
    g.k = k;
    long kk = long(k);
    if (kind == GermKind::A) {
        if (k < 1) raise("BadCaps", "A_k model requires k >= 1");
        g.P = poly_mono(2, 0, 0) + poly_mono(0, 2, 0) + poly_mono(0, 0, k + 1);
        g.reduce_var = Var::x;
        g.reduce_subst = -(poly_mono(0, 2, 0) + poly_mono(0, 0, k + 1));
        // Vx = (k+1) z^k d/dy - 2y d/dz, cyclic friends, and the Euler-type Lambda
        g.Vx = {Poly(), poly_mono(0, 0, k, Rat(kk + 1)), poly_mono(0, 1, 0, Rat(-2))};
        g.Vy = {poly_mono(0, 0, k, Rat(-kk - 1)), Poly(), poly_mono(1, 0, 0, Rat(2))};
        g.Vz = {poly_mono(0, 1, 0, Rat(2)), poly_mono(1, 0, 0, Rat(-2)), Poly()};
        g.Lambda = {poly_mono(1, 0, 0, Rat(kk + 1)), poly_mono(0, 1, 0, Rat(kk + 1)),
                    poly_mono(0, 0, 1, Rat(2))};
        g.K = {Poly(), Poly(), Poly()};
    } else {
        if (k < 4) raise("BadCaps", "D_k model requires k >= 4");
        g.P = poly_mono(1, 2, 0) + poly_mono(k - 1, 0, 0) + poly_mono(0, 0, 2);
        g.reduce_var = Var::z;
        g.reduce_subst = -(poly_mono(1, 2, 0) + poly_mono(k - 1, 0, 0));
        Poly Py = poly_mono(0, 2, 0) + poly_mono(k - 2, 0, 0, Rat(kk - 1));  // y^2 + (k-1)x^{k-2}
        g.Vx = {Poly(), poly_mono(0, 0, 1, Rat(2)), poly_mono(1, 1, 0, Rat(-2))};
        g.Vy = {poly_mono(0, 0, 1, Rat(-2)), Poly(), Py};
        g.Vz = {poly_mono(1, 1, 0, Rat(2)), -Py, Poly()};
        g.Lambda = {poly_mono(1, 0, 0, Rat(2)), poly_mono(0, 1, 0, Rat(kk - 2)),
                    poly_mono(0, 0, 1, Rat(kk - 1))};
        g.K = {Poly(), poly_mono(0, 2, 0) + poly_mono(k - 2, 0, 0), poly_mono(0, 1, 1)};
    }
    // tangency of every named field is part of the contract
    for (const SymbolicField* f : {&g.Vx, &g.Vy, &g.Vz, &g.Lambda, &g.K})
        if (!f->is_zero() && !g.is_tangential(*f))
            raise("ModelBug", "model field failed exact tangency");
    return g;
}

// --------------------------------------------------------------------------
// Constructive decomposition of a tangential field (the Lemmas' proofs made
// executable).  All arithmetic exact over Q.
// --------------------------------------------------------------------------

struct Decomposition {
    Poly fx, fy, fz;           // C[M]-coefficients of V^x, V^y, V^z
    std::vector<Rat> lambda;   // residual z^i Lambda (A) / x^i Lambda (D)
    Rat kappa{0};              // residual K (D only)
};

inline SymbolicField recompose(const ModelGerm& g, const Decomposition& d) {
    SymbolicField W = g.Vx * d.fx + g.Vy * d.fy + g.Vz * d.fz;
    Var rv = (g.kind == GermKind::A) ? Var::z : Var::x;
    for (size_t i = 0; i < d.lambda.size(); ++i)
        if (d.lambda[i] != 0)
            W = W + g.Lambda * poly_mono(rv == Var::x ? unsigned(i) : 0, 0,
                                         rv == Var::z ? unsigned(i) : 0, d.lambda[i]);
    if (d.kappa != 0) W = W + g.K * poly_const(d.kappa);
    return g.reduce_field(W);
}

inline Decomposition decompose_tangent_field(const ModelGerm& g, const SymbolicField& W_in) {
    if (!g.is_tangential(W_in)) raise("NotTangential", "field is not tangential to the model");
    SymbolicField W = g.reduce_field(W_in);
    Decomposition out;
    long kk = long(g.k);

    if (g.kind == GermKind::A) {
        // Step 1: kill dz(W) with f^x V^x + f^y V^y + f^Lam Lambda.
        Poly fLam;  // polynomial in z only
        for (auto& [m, c] : W.cz.terms()) {
            if (m[Var::y] >= 1) {
                Mono t = m;
                t[Var::y] -= 1;
                out.fx.add_term(t, -c / 2);
            } else if (m[Var::x] >= 1) {
                Mono t = m;
                t[Var::x] -= 1;
                out.fy.add_term(t, c / 2);
            } else if (m[Var::z] >= 1) {
                Mono t = m;
                t[Var::z] -= 1;
                fLam.add_term(t, c / 2);
            } else {
                raise("NotTangential", "dz component has a constant term");
            }
        }
        SymbolicField Wp = W - g.Vx * out.fx - g.Vy * out.fy - g.Lambda * fLam;
        Wp = g.reduce_field(Wp);
        if (!Wp.cz.is_zero()) raise("DecompositionFailure", "dz残 component did not cancel");
        // Step 2: W' = a dx + b dy with 2xa + 2yb = 0 mod ideal implies
        // a = -y b1 + x y a1', b = (y^2 + z^{k+1}) a1' + x b1, and
        // W' = ((x a1' - b1)/2) V^z.
        Poly a = Wp.cx, b = Wp.cy;
        Poly a0, ahat, b0, b1;
        for (auto& [m, c] : a.terms()) {
            if (m[Var::x] >= 1) {
                Mono t = m;
                t[Var::x] -= 1;
                ahat.add_term(t, c);
            } else {
                a0.add_term(m, c);
            }
        }
        for (auto& [m, c] : b.terms()) {
            if (m[Var::x] >= 1) {
                Mono t = m;
                t[Var::x] -= 1;
                b1.add_term(t, c);
            } else {
                b0.add_term(m, c);
            }
        }
        // ahat must be divisible by y
        Poly a1p;
        for (auto& [m, c] : ahat.terms()) {
            if (m[Var::y] < 1) raise("DecompositionFailure", "x-part of dx component not divisible by y");
            Mono t = m;
            t[Var::y] -= 1;
            a1p.add_term(t, c);
        }
        Poly y_poly = poly_var(Var::y);
        if (a0 + y_poly * b1 != Poly())
            raise("DecompositionFailure", "a0 != -y b1");
        Poly yy_zk1 = poly_mono(0, 2, 0) + poly_mono(0, 0, g.k + 1);
        if (b0 != yy_zk1 * a1p)
            raise("DecompositionFailure", "b0 != (y^2 + z^{k+1}) a1'");
        out.fz = (poly_var(Var::x) * a1p - b1) * Rat(1, 2);
        // Residual: fLam is a polynomial in z; z^i Lambda for i >= k reduces
        // via z^k Lambda = y V^x - x V^y.
        out.lambda.assign(g.k, Rat(0));
        for (auto& [m, c] : fLam.terms()) {
            unsigned i = m[Var::z];
            if (i < g.k) {
                out.lambda[i] += c;
            } else {
                out.fx.add_term(Mono::xyz(0, 1, i - g.k), c);
                out.fy.add_term(Mono::xyz(1, 0, i - g.k), -c);
            }
        }
    } else {
        // D_k model.  Step 1: kill dx(W) with f^y V^y + f^z V^z + f^Lam Lambda.
        Poly fLam;  // pure powers of x
        Poly fy1, fz1;
        for (auto& [m, c] : W.cx.terms()) {
            if (m[Var::z] >= 1) {
                Mono t = m;
                t[Var::z] -= 1;
                fy1.add_term(t, -c / 2);
            } else if (m[Var::x] >= 1 && m[Var::y] >= 1) {
                Mono t = m;
                t[Var::x] -= 1;
                t[Var::y] -= 1;
                fz1.add_term(t, c / 2);
            } else if (m[Var::x] >= 1) {
                Mono t = m;
                t[Var::x] -= 1;
                fLam.add_term(t, c / 2);
            } else {
                raise("NotTangential", "dx component has a pure-y part");
            }
        }
        out.fy = fy1;
        out.fz = fz1;
        SymbolicField Wp = W - g.Vy * fy1 - g.Vz * fz1 - g.Lambda * fLam;
        Wp = g.reduce_field(Wp);
        if (!Wp.cx.is_zero()) raise("DecompositionFailure", "dx component did not cancel");
        // Step 2: W' = b dy + c dz; b = (y^2+x^{k-2}) c1' + z b1,
        // c = -xy b1 + z y c1'; then W' = (b1/2) V^x + c1' K.
        Poly b = Wp.cy, c = Wp.cz;
        Poly b0, b1, c0, c1;
        for (auto& [m, cf] : b.terms()) {
            if (m[Var::z] >= 1) {
                Mono t = m;
                t[Var::z] -= 1;
                b1.add_term(t, cf);
            } else {
                b0.add_term(m, cf);
            }
        }
        for (auto& [m, cf] : c.terms()) {
            if (m[Var::z] >= 1) {
                Mono t = m;
                t[Var::z] -= 1;
                c1.add_term(t, cf);
            } else {
                c0.add_term(m, cf);
            }
        }
        Poly c1p;
        for (auto& [m, cf] : c1.terms()) {
            if (m[Var::y] < 1) raise("DecompositionFailure", "z-part of dz component not divisible by y");
            Mono t = m;
            t[Var::y] -= 1;
            c1p.add_term(t, cf);
        }
        if (c0 + poly_mono(1, 1, 0) * b1 != Poly())
            raise("DecompositionFailure", "c0 != -xy b1");
        Poly yy_xk2 = poly_mono(0, 2, 0) + poly_mono(g.k - 2, 0, 0);
        if (b0 != yy_xk2 * c1p)
            raise("DecompositionFailure", "b0 != (y^2 + x^{k-2}) c1'");
        out.fx = out.fx + b1 * Rat(1, 2);
        Poly fK = c1p;

        // Residual reduction: rewrite x^i Lambda (i > k-2) and every
        // non-constant multiple of K via the module relations
        //   z Lam = -x V^y + ((k-2)/2) y V^x         xy Lam = x V^z - ((k-1)/2) z V^x
        //   y Lam = V^z + (k-1) K                    x K = -(1/2) z V^x
        //   y K = z V^y - y V^z - x^{k-2} Lam        z K = ((y^2+x^{k-2})/2) V^x
        // (signs verified exactly against the displayed fields).
        out.lambda.assign(g.k - 1, Rat(0));
        std::vector<std::pair<Mono, Rat>> lam_work(fLam.terms().begin(), fLam.terms().end());
        std::vector<std::pair<Mono, Rat>> kap_work(fK.terms().begin(), fK.terms().end());
        while (!lam_work.empty() || !kap_work.empty()) {
            if (!lam_work.empty()) {
                auto [m, cf] = lam_work.back();
                lam_work.pop_back();
                if (m[Var::z] >= 1) {
                    Mono t = m;
                    t[Var::z] -= 1;
                    out.fy.add_term(t * Mono::var(Var::x), -cf);
                    out.fx.add_term(t * Mono::var(Var::y), cf * Rat(kk - 2, 2));
                } else if (m[Var::x] >= 1 && m[Var::y] >= 1) {
                    Mono t = m;
                    t[Var::x] -= 1;
                    t[Var::y] -= 1;
                    out.fz.add_term(t * Mono::var(Var::x), cf);
                    out.fx.add_term(t * Mono::var(Var::z), -cf * Rat(kk - 1, 2));
                } else if (m[Var::y] >= 1) {
                    Mono t = m;
                    t[Var::y] -= 1;
                    out.fz.add_term(t, cf);
                    kap_work.emplace_back(t, cf * (kk - 1));
                } else if (m[Var::x] >= g.k - 1) {
                    Mono t = m;
                    t[Var::x] -= g.k - 1;
                    lam_work.emplace_back(t * Mono::xyz(1, 2, 0), -cf);
                    lam_work.emplace_back(t * Mono::xyz(0, 0, 2), -cf);
                } else {
                    out.lambda[m[Var::x]] += cf;
                }
                continue;
            }
            auto [m, cf] = kap_work.back();
            kap_work.pop_back();
            if (m[Var::x] >= 1) {
                Mono t = m;
                t[Var::x] -= 1;
                out.fx.add_term(t * Mono::var(Var::z), -cf / 2);
            } else if (m[Var::y] >= 1) {
                Mono t = m;
                t[Var::y] -= 1;
                out.fy.add_term(t * Mono::var(Var::z), cf);
                out.fz.add_term(t * Mono::var(Var::y), -cf);
                lam_work.emplace_back(t * Mono::var(Var::x, g.k - 2), -cf);
            } else if (m[Var::z] >= 1) {
                Mono t = m;
                t[Var::z] -= 1;
                Poly contrib = (poly_mono(0, 2, 0) + poly_mono(g.k - 2, 0, 0)) * Rat(1, 2);
                out.fx = out.fx + contrib * Poly::monomial(t, cf);
            } else {
                out.kappa += cf;
            }
        }
    }

    out.fx = g.reduce(out.fx);
    out.fy = g.reduce(out.fy);
    out.fz = g.reduce(out.fz);
    // contract: recomposition reproduces the input modulo the model ideal
    SymbolicField back = recompose(g, out);
    SymbolicField orig = g.reduce_field(W_in);
    if (!(back == orig))
        raise("DecompositionFailure", "recomposition mismatch");
    return out;
}

// --------------------------------------------------------------------------
// Numeric germ pairings: i_{V^c} omega = -dc at random smooth model points,
// plus the non-symplecticity ratios d(i_Lambda omega)/omega = 2 and
// d(i_K omega)/omega = y via a finite-difference exterior derivative.
// --------------------------------------------------------------------------

struct GermPairingReport {
    Real max_pairing_error{kDefaultPrec};
    Real max_antisym_error{kDefaultPrec};
    Real lambda_ratio_error{kDefaultPrec};  // |d(i_Lam w)/w - 2|
    Real kappa_ratio_error{kDefaultPrec};   // |d(i_K w)/w - y| (D models)
};

namespace detail {

inline Complex omega_from_gradient(const Vec3& g, const Vec3& u, const Vec3& v) {
    Real ax = abs(g.x), ay = abs(g.y), az = abs(g.z);
    if (az >= ax && az >= ay) return (u.x * v.y - u.y * v.x) / g.z;
    if (ax >= ay) return (u.y * v.z - u.z * v.y) / g.x;
    return (u.z * v.x - u.x * v.z) / g.y;
}

} // namespace detail

inline GermPairingReport germ_pairings(const ModelGerm& g, Prng& rng, long prec, int samples) {
    GermPairingReport rep{Real(prec), Real(prec), Real(prec), Real(prec)};

    auto grad_at = [&](const Vec3& p) {
        return Vec3{g.P.derivative(Var::x).eval(p.x, p.y, p.z, prec),
                    g.P.derivative(Var::y).eval(p.x, p.y, p.z, prec),
                    g.P.derivative(Var::z).eval(p.x, p.y, p.z, prec)};
    };
    auto field_at = [&](const SymbolicField& f, const Vec3& p) {
        return f.eval(p.x, p.y, p.z, prec);
    };

    // random smooth model point: draw the two free coordinates away from 0,
    // solve the quadratic coordinate.
    auto sample_point = [&]() {
        while (true) {
            Complex u = rng.next_complex(0.4, 1.6, prec);
            Complex v = rng.next_complex(0.4, 1.6, prec);
            Vec3 p{Complex(prec), Complex(prec), Complex(prec)};
            if (g.kind == GermKind::A) {
                // x^2 = -(y^2 + z^{k+1})
                Complex rhs = -(u * u + pow_ui(v, g.k + 1));
                Complex x = sqrt(rhs);
                if (rng.next_bool()) x = -x;
                p = {x, u, v};
            } else {
                // z^2 = -(x y^2 + x^{k-1})
                Complex rhs = -(u * v * v + pow_ui(u, g.k - 1));
                Complex z = sqrt(rhs);
                if (rng.next_bool()) z = -z;
                p = {u, v, z};
            }
            if (grad_at(p).max_abs() > Real(0.01, prec)) return p;
        }
    };

    for (int s = 0; s < samples; ++s) {
        Vec3 p = sample_point();
        Vec3 grad = grad_at(p);
        Vec3 vx = field_at(g.Vx, p), vy = field_at(g.Vy, p), vz = field_at(g.Vz, p);
        // random tangent W as a combination of the named fields
        Vec3 W = vx * rng.next_complex(-1, 1, prec) + vy * rng.next_complex(-1, 1, prec)
               + vz * rng.next_complex(-1, 1, prec);
        // i_{V^x} omega = -dx  etc.
        Real e1 = abs(detail::omega_from_gradient(grad, vx, W) + W.x);
        Real e2 = abs(detail::omega_from_gradient(grad, vy, W) + W.y);
        Real e3 = abs(detail::omega_from_gradient(grad, vz, W) + W.z);
        rep.max_pairing_error = max(rep.max_pairing_error, max(e1, max(e2, e3)));
        rep.max_antisym_error =
            max(rep.max_antisym_error, abs(detail::omega_from_gradient(grad, W, W)));
    }

    // finite-difference exterior derivative of alpha = i_X omega in a local
    // graph chart: solve the steepest coordinate from the other two.
    auto d_ratio = [&](const SymbolicField& X, const Vec3& p0) {
        Vec3 g0 = grad_at(p0);
        // solve-variable: largest |gradient| component
        int sv = 0;
        Real gb = abs(g0.x);
        if (abs(g0.y) > gb) { sv = 1; gb = abs(g0.y); }
        if (abs(g0.z) > gb) { sv = 2; gb = abs(g0.z); }
        int a = (sv + 1) % 3, b = (sv + 2) % 3;
        auto get = [](const Vec3& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); };
        auto setc = [](Vec3& v, int i, const Complex& c) {
            (i == 0 ? v.x : (i == 1 ? v.y : v.z)) = c;
        };
        // psi(da, db): displace free coords, re-solve sv by Newton
        auto psi = [&](const Complex& da, const Complex& db) {
            Vec3 q = p0;
            setc(q, a, get(p0, a) + da);
            setc(q, b, get(p0, b) + db);
            for (int it = 0; it < 60; ++it) {
                Complex Pv = g.P.eval(q.x, q.y, q.z, prec);
                Vec3 gr = grad_at(q);
                Complex gs = get(gr, sv);
                Complex step = Pv / gs;
                setc(q, sv, get(q, sv) - step);
                if (abs(step) < pow2(-(prec - 16), prec)) break;
            }
            return q;
        };
        // alpha(tangent) with tangent from implicit differentiation
        auto alpha_comp = [&](const Vec3& q, int free_var) {
            Vec3 gr = grad_at(q);
            Vec3 t{Complex(prec), Complex(prec), Complex(prec)};
            setc(t, free_var, Complex(1L, prec));
            setc(t, sv, -get(gr, free_var) / get(gr, sv));
            Vec3 Xv = field_at(X, q);
            return detail::omega_from_gradient(gr, Xv, t);
        };
        Real h = pow2(-(prec / 3), prec);
        Complex ch(h, Real(prec));
        // d alpha (e_a, e_b) = d/da alpha_b - d/db alpha_a
        Complex dab = (alpha_comp(psi(ch, Complex(prec)), b)
                     - alpha_comp(psi(-ch, Complex(prec)), b)) / (ch * 2);
        Complex dba = (alpha_comp(psi(Complex(prec), ch), a)
                     - alpha_comp(psi(Complex(prec), -ch), a)) / (ch * 2);
        Complex dalpha = dab - dba;
        // omega(e_a^tan, e_b^tan) in the same chart
        Vec3 gr = grad_at(p0);
        Vec3 ta{Complex(prec), Complex(prec), Complex(prec)};
        Vec3 tb{Complex(prec), Complex(prec), Complex(prec)};
        setc(ta, a, Complex(1L, prec));
        setc(ta, sv, -get(gr, a) / get(gr, sv));
        setc(tb, b, Complex(1L, prec));
        setc(tb, sv, -get(gr, b) / get(gr, sv));
        Complex w = detail::omega_from_gradient(gr, ta, tb);
        return dalpha / w;
    };

    // Lambda is the weighted Euler field, so d(i_Lambda w) = L_Lambda w =
    // (weighted degree of w) * w: factor 2 for A_k models, 1 for D_k.
    Vec3 p0 = sample_point();
    Complex lam_ratio = d_ratio(g.Lambda, p0);
    long expect = (g.kind == GermKind::A) ? 2 : 1;
    rep.lambda_ratio_error = abs(lam_ratio - Complex(expect, prec));
    if (g.kind == GermKind::D) {
        Complex kap_ratio = d_ratio(g.K, p0);
        rep.kappa_ratio_error = abs(kap_ratio - p0.y);
    }
    return rep;
}

} // namespace msurf

#endif
