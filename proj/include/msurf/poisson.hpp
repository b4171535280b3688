// The Poisson structure of C[x,y,z] with Casimir P (the defining polynomial
// of the surface).
//
// Convention, fixed once and asserted in tests: the Hamiltonian field of f is
//
//     V_f = grad(P) x grad(f),
//
// so  bracket(f,g) = V_f(g) = det d(f,g,P)/d(x,y,z),  i_{V_f} omega = -df,
// and {f,g} = omega(V_f, V_g).  With this choice V_x, V_y, V_z are exactly
// the displayed complete fields (hamiltonian_field(x) = +V^x), and the
// generator table is {x,y} = 2z+Exy-C, {y,z} = 2x+Eyz-A, {z,x} = 2y+Exz-B.

#ifndef MSURF_POISSON_HPP
#define MSURF_POISSON_HPP

#include "msurf/surface.hpp"

namespace msurf {

// A polynomial vector field c_x d/dx + c_y d/dy + c_z d/dz.
struct SymbolicField {
    Poly cx, cy, cz;

    SymbolicField operator+(const SymbolicField& o) const {
        return {cx + o.cx, cy + o.cy, cz + o.cz};
    }
    SymbolicField operator-(const SymbolicField& o) const {
        return {cx - o.cx, cy - o.cy, cz - o.cz};
    }
    SymbolicField operator*(const Poly& f) const { return {cx * f, cy * f, cz * f}; }

    friend bool operator==(const SymbolicField& a, const SymbolicField& b) {
        return a.cx == b.cx && a.cy == b.cy && a.cz == b.cz;
    }

    // V(g) as a polynomial.
    Poly apply(const Poly& g) const {
        return cx * g.derivative(Var::x) + cy * g.derivative(Var::y) + cz * g.derivative(Var::z);
    }

    Vec3 eval(const Complex& x, const Complex& y, const Complex& z, long prec) const {
        return {cx.eval(x, y, z, prec), cy.eval(x, y, z, prec), cz.eval(x, y, z, prec)};
    }

    bool is_zero() const { return cx.is_zero() && cy.is_zero() && cz.is_zero(); }
};

// {f,g} before reduction: det of the Jacobian of (f, g, P).
inline Poly bracket_raw(const Poly& f, const Poly& g, const SurfaceParams& s) {
    Poly P = defining_poly(s);
    Poly fx = f.derivative(Var::x), fy = f.derivative(Var::y), fz = f.derivative(Var::z);
    Poly gx = g.derivative(Var::x), gy = g.derivative(Var::y), gz = g.derivative(Var::z);
    Poly Px = P.derivative(Var::x), Py = P.derivative(Var::y), Pz = P.derivative(Var::z);
    return fx * (gy * Pz - gz * Py) - fy * (gx * Pz - gz * Px) + fz * (gx * Py - gy * Px);
}

inline NormalPoly bracket(const Poly& f, const Poly& g, const SurfaceParams& s) {
    return poly_reduce(bracket_raw(f, g, s), s);
}

// V_f = grad(P) x grad(f); tangential by construction (N(V_f) = 0 in
// C[x,y,z], no reduction needed).
inline SymbolicField hamiltonian_field(const Poly& f, const SurfaceParams& s) {
    Poly P = defining_poly(s);
    Poly fx = f.derivative(Var::x), fy = f.derivative(Var::y), fz = f.derivative(Var::z);
    Poly Px = P.derivative(Var::x), Py = P.derivative(Var::y), Pz = P.derivative(Var::z);
    return {Py * fz - Pz * fy, Pz * fx - Px * fz, Px * fy - Py * fx};
}

// {P, f}: identically zero as a polynomial, before any ideal reduction.
inline Poly casimir_check(const Poly& f, const SurfaceParams& s) {
    return bracket_raw(defining_poly(s), f, s);
}

// The three generator brackets, plus the Leibniz extension of the table.
// The extension is the second route of the dual-route check against the
// determinant formula.
class BracketTable {
public:
    explicit BracketTable(const SurfaceParams& s) : s_(s) {
        auto g = normal_form_polys(s);
        xy_ = g[2];            // {x,y} = P_z
        yz_ = g[0];            // {y,z} = P_x
        zx_ = g[1];            // {z,x} = P_y
    }

    const Poly& xy() const { return xy_; }
    const Poly& yz() const { return yz_; }
    const Poly& zx() const { return zx_; }

    // {f, g} by bilinear + Leibniz extension of the generator table only.
    Poly extend(const Poly& f, const Poly& g) const {
        Poly acc;
        for (auto& [mf, cf] : f.terms())
            for (auto& [mg, cg] : g.terms())
                acc += mono_bracket(mf, mg) * (cf * cg);
        return acc;
    }

private:
    Poly table(Var a, Var b) const {
        if (a == b) return Poly();
        if (a == Var::x && b == Var::y) return xy_;
        if (a == Var::y && b == Var::z) return yz_;
        if (a == Var::z && b == Var::x) return zx_;
        return -table(b, a);
    }

    // {m, n} for monomials by the Leibniz rule:
    // {u m', n} = u {m', n} + m' {u, n} and {u, v n'} = v... applied
    // recursively down to generator pairs.
    Poly mono_bracket(const Mono& m, const Mono& n) const {
        for (Var v : {Var::x, Var::y, Var::z}) {
            if (m[v] == 0) continue;
            Mono rest = m;
            rest[v] -= 1;
            if (rest.deg() == 0) return var_mono_bracket(v, n);
            return Poly::monomial(Mono::var(v), Rat(1)) * mono_bracket(rest, n)
                 + Poly::monomial(rest, Rat(1)) * var_mono_bracket(v, n);
        }
        return Poly();  // m == 1
    }

    Poly var_mono_bracket(Var v, const Mono& n) const {
        for (Var u : {Var::x, Var::y, Var::z}) {
            if (n[u] == 0) continue;
            Mono rest = n;
            rest[u] -= 1;
            if (rest.deg() == 0) return table(v, u);
            return Poly::monomial(Mono::var(u), Rat(1)) * var_mono_bracket(v, rest)
                 + Poly::monomial(rest, Rat(1)) * table(v, u);
        }
        return Poly();  // n == 1
    }

    SurfaceParams s_;
    Poly xy_, yz_, zx_;
};

} // namespace msurf

#endif
