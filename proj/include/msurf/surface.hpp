// Markov-type surfaces  x^2 + y^2 + z^2 + Exyz - Ax - By - Cz - D = 0,  E != 0,
// their normal form N = dP, the symplectic form omega on the smooth part, and
// tangent-space rank checks.

#ifndef MSURF_SURFACE_HPP
#define MSURF_SURFACE_HPP

#include "msurf/errors.hpp"
#include "msurf/poly.hpp"
#include "msurf/prng.hpp"

#include <array>
#include <optional>

namespace msurf {

// A surface coefficient: exact rational, or a complex number at some
// precision.  The classical instances are all rational; the numeric variant
// exists for flow/singularity experiments off the rational locus.
class Coef {
public:
    Coef() : rat_(0), exact_(true) {}
    Coef(Rat q) : rat_(std::move(q)), exact_(true) {}
    Coef(long n) : rat_(n), exact_(true) {}
    Coef(Complex z) : rat_(0), num_(std::move(z)), exact_(false) {}

    bool exact() const { return exact_; }

    const Rat& rat() const {
        if (!exact_) raise("NotRational", "coefficient is numeric, exact value required");
        return rat_;
    }

    Complex value(long prec) const {
        return exact_ ? Complex(rat_, prec) : num_.round_to(prec);
    }

    bool is_zero() const { return exact_ ? rat_ == 0 : num_.is_zero(); }

private:
    Rat rat_;
    Complex num_{kMinPrec};
    bool exact_;
};

struct SurfaceParams {
    Coef A, B, C, D, E;

    SurfaceParams(Coef a, Coef b, Coef c, Coef d, Coef e)
        : A(std::move(a)), B(std::move(b)), C(std::move(c)), D(std::move(d)), E(std::move(e)) {
        if (E.is_zero()) raise("DegenerateSurface", "Markov-type surface requires E != 0");
    }

    bool exact() const {
        return A.exact() && B.exact() && C.exact() && D.exact() && E.exact();
    }

    static SurfaceParams markov() { return SurfaceParams(0, 0, 0, 0, Rat(-3)); }

    static SurfaceParams rational(Rat a, Rat b, Rat c, Rat d, Rat e) {
        return SurfaceParams(Coef(std::move(a)), Coef(std::move(b)), Coef(std::move(c)),
                             Coef(std::move(d)), Coef(std::move(e)));
    }
};

// x^2 + y^2 + z^2 + Exyz - Ax - By - Cz - D as an exact polynomial.
inline Poly defining_poly(const SurfaceParams& s) {
    Poly p = poly_mono(2, 0, 0) + poly_mono(0, 2, 0) + poly_mono(0, 0, 2);
    p += poly_mono(1, 1, 1, s.E.rat());
    p -= poly_mono(1, 0, 0, s.A.rat());
    p -= poly_mono(0, 1, 0, s.B.rat());
    p -= poly_mono(0, 0, 1, s.C.rat());
    p -= poly_const(s.D.rat());
    return p;
}

// What z^2 is rewritten to modulo the surface ideal.
inline Poly z_square_substitute(const SurfaceParams& s) {
    Poly r = poly_mono(1, 0, 0, s.A.rat()) + poly_mono(0, 1, 0, s.B.rat())
           + poly_mono(0, 0, 1, s.C.rat()) + poly_const(s.D.rat());
    r -= poly_mono(2, 0, 0) + poly_mono(0, 2, 0) + poly_mono(1, 1, 1, s.E.rat());
    return r;
}

// Normal form: the unique representative with z-degree <= 1 modulo the ideal.
struct NormalPoly {
    Poly p;

    NormalPoly() = default;
    explicit NormalPoly(Poly q) : p(std::move(q)) {
        if (p.degree_in(Var::z) > 1)
            raise("NotNormal", "NormalPoly requires z-degree <= 1");
    }

    bool is_zero() const { return p.is_zero(); }
    friend bool operator==(const NormalPoly& a, const NormalPoly& b) { return a.p == b.p; }
    friend bool operator!=(const NormalPoly& a, const NormalPoly& b) { return !(a == b); }
};

inline NormalPoly poly_reduce(const Poly& p, const SurfaceParams& s) {
    return NormalPoly(reduce_quadratic(p, Var::z, z_square_substitute(s)));
}

inline Complex poly_eval(const Poly& p, const Complex& x, const Complex& y, const Complex& z,
                         long prec) {
    return p.eval(x, y, z, prec);
}

struct Vec3 {
    Complex x, y, z;

    long prec() const { return x.prec(); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(const Complex& s) const { return {x * s, y * s, z * s}; }
    Vec3 operator*(long s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(const Complex& s) const { return {x / s, y / s, z / s}; }

    Real max_abs() const { return max(abs(x), max(abs(y), abs(z))); }
};

struct SurfacePoint {
    Complex x, y, z;
    Complex residual;  // P(x,y,z) at construction precision

    long prec() const { return x.prec(); }
    Vec3 coords() const { return {x, y, z}; }
};

namespace detail {

struct ParamValues {
    Complex A, B, C, D, E;
};

inline ParamValues values(const SurfaceParams& s, long prec) {
    return {s.A.value(prec), s.B.value(prec), s.C.value(prec), s.D.value(prec), s.E.value(prec)};
}

} // namespace detail

inline Complex eval_P(const SurfaceParams& s, const Complex& x, const Complex& y,
                      const Complex& z, long prec) {
    auto pv = detail::values(s, prec);
    return x * x + y * y + z * z + pv.E * x * y * z - pv.A * x - pv.B * y - pv.C * z - pv.D;
}

// Components of N = dP; these are also the three chart denominators of omega
// (in the order dy^dz, dz^dx, dx^dy).
inline Vec3 eval_grad(const SurfaceParams& s, const Complex& x, const Complex& y,
                      const Complex& z, long prec) {
    auto pv = detail::values(s, prec);
    return {x * 2 + pv.E * y * z - pv.A,
            y * 2 + pv.E * x * z - pv.B,
            z * 2 + pv.E * x * y - pv.C};
}

// Gradient components as exact polynomials (2x+Eyz-A, 2y+Exz-B, 2z+Exy-C).
inline std::array<Poly, 3> normal_form_polys(const SurfaceParams& s) {
    Poly P = defining_poly(s);
    return {P.derivative(Var::x), P.derivative(Var::y), P.derivative(Var::z)};
}

inline Real membership_tolerance(long prec) { return pow2(-(prec - 32), prec); }

struct OnSurfaceResult {
    bool on;
    Complex residual;
};

inline OnSurfaceResult on_surface(const SurfaceParams& s, const Complex& x, const Complex& y,
                                  const Complex& z, const Real& tol) {
    Complex r = eval_P(s, x, y, z, x.prec());
    return {abs(r) < tol, r};
}

inline SurfacePoint make_point(const SurfaceParams& s, const Complex& x, const Complex& y,
                               const Complex& z) {
    return {x, y, z, eval_P(s, x, y, z, x.prec())};
}

// Markov triples live at integer coordinates.
inline SurfacePoint integer_point(const SurfaceParams& s, long x, long y, long z, long prec) {
    return make_point(s, Complex(x, prec), Complex(y, prec), Complex(z, prec));
}

// omega(u, v) at pt using the chart whose denominator is largest in
// magnitude.  The three chart expressions agree on tangent pairs; tests
// check this rather than assuming it.
inline Complex omega_eval(const SurfaceParams& s, const SurfacePoint& pt, const Vec3& u,
                          const Vec3& v) {
    long prec = pt.prec();
    Vec3 g = eval_grad(s, pt.x, pt.y, pt.z, prec);
    Real ax = abs(g.x), ay = abs(g.y), az = abs(g.z);
    Real floor_tol = pow2(-(prec / 2), prec);
    if (ax < floor_tol && ay < floor_tol && az < floor_tol)
        raise("AllChartsSingular", "all three omega chart denominators vanish (singular point)");
    // numerators: (u x v) components
    if (az >= ax && az >= ay) return (u.x * v.y - u.y * v.x) / g.z;  // dx^dy / P_z
    if (ax >= ay) return (u.y * v.z - u.z * v.y) / g.x;              // dy^dz / P_x
    return (u.z * v.x - u.x * v.z) / g.y;                            // dz^dx / P_y
}

// All three chart values (where the denominator is not tiny); used by the
// chart-agreement tests.
inline std::vector<Complex> omega_all_charts(const SurfaceParams& s, const SurfacePoint& pt,
                                             const Vec3& u, const Vec3& v, const Real& denom_floor) {
    long prec = pt.prec();
    Vec3 g = eval_grad(s, pt.x, pt.y, pt.z, prec);
    std::vector<Complex> out;
    if (abs(g.z) > denom_floor) out.push_back((u.x * v.y - u.y * v.x) / g.z);
    if (abs(g.x) > denom_floor) out.push_back((u.y * v.z - u.z * v.y) / g.x);
    if (abs(g.y) > denom_floor) out.push_back((u.z * v.x - u.x * v.z) / g.y);
    return out;
}

// Values of the complete fields V^x, V^y, V^z at a point; rows of the
// antisymmetric coefficient matrix of the spanning remark.
inline std::array<Vec3, 3> field_frame(const SurfaceParams& s, const SurfacePoint& pt) {
    long prec = pt.prec();
    Vec3 g = eval_grad(s, pt.x, pt.y, pt.z, prec);
    Complex zero(prec);
    return {Vec3{zero, g.z, -g.y},    // V^x
            Vec3{-g.z, zero, g.x},    // V^y
            Vec3{g.y, -g.x, zero}};   // V^z
}

// Rank of the antisymmetric 3x3 matrix above: 2 at smooth points, 0 where
// all components of N vanish.  Antisymmetric matrices never have odd rank.
inline int spanning_rank(const SurfaceParams& s, const SurfacePoint& pt, const Real& tol) {
    Vec3 g = eval_grad(s, pt.x, pt.y, pt.z, pt.prec());
    return (abs(g.x) < tol && abs(g.y) < tol && abs(g.z) < tol) ? 0 : 2;
}

inline int spanning_rank(const SurfaceParams& s, const SurfacePoint& pt) {
    return spanning_rank(s, pt, membership_tolerance(pt.prec()));
}

// |N(v)| at pt; tangency is checked, not enforced by type.
inline Real tangency_defect(const SurfaceParams& s, const SurfacePoint& pt, const Vec3& v) {
    Vec3 g = eval_grad(s, pt.x, pt.y, pt.z, pt.prec());
    return abs(g.x * v.x + g.y * v.y + g.z * v.z);
}

// Random smooth surface point: draw (y, z), solve the quadratic in x, retry
// while the gradient is negligible.
inline SurfacePoint random_surface_point(const SurfaceParams& s, Prng& rng, long prec,
                                         double box = 2.0) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Complex y = rng.next_complex(-box, box, prec);
        Complex z = rng.next_complex(-box, box, prec);
        auto pv = detail::values(s, prec);
        // x^2 + (Eyz - A)x + (y^2 + z^2 - By - Cz - D) = 0
        Complex b = pv.E * y * z - pv.A;
        Complex c = y * y + z * z - pv.B * y - pv.C * z - pv.D;
        Complex disc = b * b - c * 4;
        Complex root = sqrt(disc);
        if (rng.next_bool()) root = -root;
        Complex x = (root - b) / 2;
        SurfacePoint pt = make_point(s, x, y, z);
        if (spanning_rank(s, pt) == 2) return pt;
    }
    raise("SamplingFailed", "could not sample a smooth surface point");
}

} // namespace msurf

#endif
