// Closed-form flows of the complete fields V^x, V^y, V^z and of their shears
// f(c) V^c, composed into automorphisms of the surface.
//
// The z-flow fixes z and solves the affine linear system in (x, y) whose
// matrix has characteristic polynomial l^2 + 4 - E^2 z^2.  Writing
// w = 4 - E^2 z^2 the solution only involves
//
//     C0 = cos(t sqrt(w)),  S0 = sin(t sqrt(w))/sqrt(w),  V0 = (1 - C0)/w,
//
// all entire in (t, w): square-root ambiguities cancel because the three are
// even in sqrt(w), and the w -> 0 singularities cancel in the limit.  Near
// w = 0 they are summed as power series in u = t^2 w.  The x- and y-flows
// are the z-flow conjugated by the cyclic substitution x->y->z->x,
// A->B->C->A.

#ifndef MSURF_FLOWS_HPP
#define MSURF_FLOWS_HPP

#include "msurf/surface.hpp"

#include <vector>

namespace msurf {

struct EntireTrig {
    Complex C0, S0, V0;
};

// Threshold between the series and trig branches of entire_trig.
inline constexpr double kSeriesTheta = 0.25;

inline EntireTrig entire_trig(const Complex& w, const Complex& t, long prec) {
    Complex u = t * t * w;
    Real theta(kSeriesTheta, prec);
    if (abs(u) >= theta) {
        Complex s = sqrt(w);             // any branch; results are even in s
        Complex ts = t * s;
        Complex C0 = cos(ts);
        Complex S0 = sin(ts) / s;
        Complex V0 = (Complex(1L, prec) - C0) / w;
        return {C0, S0, V0};
    }
    // series in u: sum (-u)^n / (2n+d)!  for d = 0, 1, 2
    Real cut = pow2(-(prec + 16), prec);
    Complex mu = -u;
    Complex c(1L, prec), s(1L, prec), v(1L, prec);
    Complex tc = c, ts = s, tv = v;
    for (long n = 0; n < 4 * prec; ++n) {
        long k = 2 * n;
        tc = tc * mu / ((k + 1) * (k + 2));
        ts = ts * mu / ((k + 2) * (k + 3));
        tv = tv * mu / ((k + 3) * (k + 4));
        c += tc;
        s += ts;
        v += tv;
        if (abs(tc) < cut && abs(ts) < cut && abs(tv) < cut) break;
    }
    return {c, t * s, t * t * v / 2};
}

namespace detail {

// Image of the moving coordinate pair under the closed-form flow.
struct MovingPair {
    Complex a, b;
};

// The z-flow formulas for generic slot names: fixed coordinate zf, moving
// (xm, ym), inhomogeneous coefficients (Am, Bm) sitting in the slots of A, B.
inline MovingPair flow_core(const Complex& E, const Complex& Am, const Complex& Bm,
                            const Complex& xm, const Complex& ym, const Complex& zf,
                            const Complex& t, long prec) {
    Complex w = Complex(4L, prec) - E * E * zf * zf;
    EntireTrig et = entire_trig(w, t, prec);
    Complex bx = ym * 2 + E * xm * zf - Bm;   // 2y + Exz - B
    Complex ax = xm * 2 + E * ym * zf - Am;   // 2x + Eyz - A
    Complex ix = Am * 2 - Bm * E * zf;        // 2A - BEz
    Complex iy = Bm * 2 - Am * E * zf;        // 2B - AEz
    return {xm * et.C0 + bx * et.S0 + ix * et.V0,
            ym * et.C0 - ax * et.S0 + iy * et.V0};
}

inline Real drift_scale(const SurfaceParams& s, const Vec3& in, const Vec3& out, long prec) {
    Real m = max(in.max_abs(), out.max_abs());
    auto pv = values(s, prec);
    Real coefs = abs(pv.A) + abs(pv.B) + abs(pv.C) + abs(pv.D) + abs(pv.E);
    Real m1 = m + Real(1L, prec);
    return m1 * m1 * m1 * (coefs + Real(2L, prec));
}

} // namespace detail

inline Real flow_drift_tolerance(long prec) { return pow2(-(prec - 64), prec); }

// phi^z_t; the result is post-checked: flows preserve P exactly, so the
// computed drift |P(out) - P(in)| is pure roundoff and a large value means
// the working precision is exhausted.
inline SurfacePoint flow_axis(const SurfaceParams& s, Var axis, const SurfacePoint& pt,
                              const Complex& t) {
    long prec = pt.prec();
    auto pv = detail::values(s, prec);
    detail::MovingPair mp{Complex(prec), Complex(prec)};
    SurfacePoint out;
    switch (axis) {
    case Var::z:
        mp = detail::flow_core(pv.E, pv.A, pv.B, pt.x, pt.y, pt.z, t, prec);
        out = make_point(s, mp.a, mp.b, pt.z);
        break;
    case Var::x:  // cyclic image of the z-flow: slots (y, z | x), coefficients (B, C)
        mp = detail::flow_core(pv.E, pv.B, pv.C, pt.y, pt.z, pt.x, t, prec);
        out = make_point(s, pt.x, mp.a, mp.b);
        break;
    case Var::y:  // slots (z, x | y), coefficients (C, A)
        mp = detail::flow_core(pv.E, pv.C, pv.A, pt.z, pt.x, pt.y, t, prec);
        out = make_point(s, mp.b, pt.y, mp.a);
        break;
    }
    if (!out.x.is_finite() || !out.y.is_finite() || !out.z.is_finite())
        raise("SurfaceDrift", "flow overflowed the working range (time too large for this point)");
    Real drift = abs(out.residual - pt.residual);
    Real scale = detail::drift_scale(s, pt.coords(), out.coords(), prec);
    if (drift > flow_drift_tolerance(prec) * scale)
        raise("SurfaceDrift", "flow left the surface beyond tolerance (precision exhausted)");
    return out;
}

inline SurfacePoint flow_z(const SurfaceParams& s, const SurfacePoint& pt, const Complex& t) {
    return flow_axis(s, Var::z, pt, t);
}

// Univariate polynomial with arbitrary-precision complex coefficients
// (ascending powers); the time polynomial of a shear flow.
class CPoly1 {
public:
    CPoly1() = default;
    explicit CPoly1(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

    static CPoly1 constant(const Complex& c) { return CPoly1({c}); }

    // Newton divided differences through distinct nodes, expanded to
    // monomial coefficients.
    static CPoly1 interpolate(const std::vector<Complex>& nodes,
                              const std::vector<Complex>& values, long prec) {
        size_t n = nodes.size();
        if (n == 0 || values.size() != n)
            raise("BadInterpolation", "interpolate: node/value count mismatch");
        std::vector<Complex> dd, nd;
        dd.reserve(n);
        nd.reserve(n);
        for (auto& v : values) dd.push_back(v.round_to(prec));
        for (auto& v : nodes) nd.push_back(v.round_to(prec));
        for (size_t level = 1; level < n; ++level)
            for (size_t j = n - 1; j >= level; --j)
                dd[j] = (dd[j] - dd[j - 1]) / (nd[j] - nd[j - level]);
        std::vector<Complex> out(n, Complex(prec));
        std::vector<Complex> basis{Complex(1L, prec)};  // prod_{i<j} (v - nd[i])
        for (size_t j = 0; j < n; ++j) {
            for (size_t k = 0; k < basis.size(); ++k) out[k] += dd[j] * basis[k];
            if (j + 1 < n) {
                std::vector<Complex> nb(basis.size() + 1, Complex(prec));
                for (size_t k = 0; k < basis.size(); ++k) {
                    nb[k + 1] += basis[k];
                    nb[k] -= nd[j] * basis[k];
                }
                basis = std::move(nb);
            }
        }
        return CPoly1(std::move(out));
    }

    const std::vector<Complex>& coeffs() const { return c_; }
    size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    bool is_zero() const { return c_.empty(); }

    Complex eval(const Complex& v) const {
        long prec = v.prec();
        Complex acc(prec);
        for (size_t k = c_.size(); k-- > 0;) acc = acc * v + c_[k].round_to(prec);
        return acc;
    }

    CPoly1 operator-() const {
        std::vector<Complex> n = c_;
        for (auto& x : n) x = -x;
        return CPoly1(std::move(n));
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Complex> c_;
};

// Shear flow phi^axis_{f(c)} where c is the coordinate fixed by V^axis; a
// plain axis flow is the constant-polynomial case.
struct ShearFlow {
    Var axis = Var::z;
    CPoly1 time_poly;

    static ShearFlow axis_flow(Var a, const Complex& t) { return {a, CPoly1::constant(t)}; }

    Complex fixed_coordinate(const SurfacePoint& pt) const {
        switch (axis) {
        case Var::x: return pt.x;
        case Var::y: return pt.y;
        default: return pt.z;
        }
    }

    SurfacePoint apply(const SurfaceParams& s, const SurfacePoint& pt) const {
        return flow_axis(s, axis, pt, time_poly.eval(fixed_coordinate(pt)));
    }

    ShearFlow inverse() const { return {axis, -time_poly}; }
};

// Ordered composition of shear flows; the list reads left-to-right as
// mathematical composition, so the last entry acts first.
struct Automorphism {
    std::vector<ShearFlow> factors;

    static Automorphism identity() { return {}; }

    SurfacePoint apply(const SurfaceParams& s, const SurfacePoint& pt) const {
        SurfacePoint cur = pt;
        for (size_t i = factors.size(); i-- > 0;) cur = factors[i].apply(s, cur);
        return cur;
    }
};

// Finite-difference symplecticity defect of F at pt:
// |omega(F_*u, F_*v) - omega(u, v)| / |omega(u, v)| with central differences
// of step h; exact flows give O(h^2).
inline Real check_symplectic(const SurfaceParams& s, const Automorphism& F,
                             const SurfacePoint& pt, const Real& h) {
    long prec = pt.prec();
    auto frame = field_frame(s, pt);
    auto cross_mag = [&](const Vec3& u, const Vec3& v) {
        Complex cx = u.y * v.z - u.z * v.y;
        Complex cy = u.z * v.x - u.x * v.z;
        Complex cz = u.x * v.y - u.y * v.x;
        return max(abs(cx), max(abs(cy), abs(cz)));
    };
    int bi = 0, bj = 1;
    Real best = cross_mag(frame[0], frame[1]);
    for (auto [i, j] : {std::pair{0, 2}, std::pair{1, 2}}) {
        Real m = cross_mag(frame[i], frame[j]);
        if (m > best) { best = m; bi = i; bj = j; }
    }
    if (best < pow2(-(prec / 2), prec))
        raise("DegenerateFrame", "no independent tangent pair at this point");
    Vec3 u = frame[bi], v = frame[bj];
    u = u / Complex(u.max_abs());
    v = v / Complex(v.max_abs());

    Complex w0 = omega_eval(s, pt, u, v);
    Complex ch(h, Real(prec));
    auto push = [&](const Vec3& d) {
        SurfacePoint pp = make_point(s, pt.x + ch * d.x, pt.y + ch * d.y, pt.z + ch * d.z);
        SurfacePoint pm = make_point(s, pt.x - ch * d.x, pt.y - ch * d.y, pt.z - ch * d.z);
        SurfacePoint ip = F.apply(s, pp);
        SurfacePoint im = F.apply(s, pm);
        return Vec3{(ip.x - im.x) / (ch * 2), (ip.y - im.y) / (ch * 2), (ip.z - im.z) / (ch * 2)};
    };
    Vec3 fu = push(u), fv = push(v);
    SurfacePoint base = F.apply(s, pt);
    Complex w1 = omega_eval(s, base, fu, fv);
    return abs(w1 - w0) / abs(w0);
}

} // namespace msurf

#endif
