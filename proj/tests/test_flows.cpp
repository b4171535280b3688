#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msurf/flows.hpp"
#include "msurf/poisson.hpp"
#include "oracles.hpp"

using namespace msurf;

static Complex c_re(double v, long prec) { return Complex(Real(v, prec), Real(prec)); }

TEST_CASE("entire_trig: limits, oracle value, branch continuity") {
    long prec = 256;
    Real tol = pow2(-(prec - 32), prec);

    SUBCASE("w = 0 gives (1, t, t^2/2)") {
        Complex t(0.37, -0.2, prec);
        auto e = entire_trig(Complex(prec), t, prec);
        CHECK(abs(e.C0 - Complex(1L, prec)) < tol);
        CHECK(abs(e.S0 - t) < tol);
        CHECK(abs(e.V0 - t * t / 2) < tol);
    }
    SUBCASE("t = 0 gives (1, 0, 0)") {
        auto e = entire_trig(Complex(2.5, 0.5, prec), Complex(prec), prec);
        CHECK(abs(e.C0 - Complex(1L, prec)) < tol);
        CHECK(abs(e.S0) < tol);
        CHECK(abs(e.V0) < tol);
    }
    SUBCASE("w = -5, t = 1: C0 = cosh(sqrt 5)") {
        auto e = entire_trig(c_re(-5.0, prec), c_re(1.0, prec), prec);
        Real s5 = sqrt(Real(5L, prec));
        Real cosh5 = (exp(s5) + exp(-s5)) / 2;  // independent route via mpfr exp
        CHECK(abs(e.C0 - Complex(cosh5)) < tol);
        Real sinh5 = (exp(s5) - exp(-s5)) / 2;
        CHECK(abs(e.S0 - Complex(sinh5 / s5)) < tol);
    }
    SUBCASE("series and trig branches agree across the threshold") {
        // |t^2 w| sweeps an annulus around theta = 1/4
        Prng rng(7);
        for (int i = 0; i < 12; ++i) {
            Complex dir = rng.next_complex(-1, 1, prec);
            dir = dir / Complex(abs(dir));
            Real mag = Real(0.26, prec) - Real(0.02, prec) * long(i % 3);
            Complex w = dir * Complex(mag);
            Complex t = c_re(0.95 + 0.01 * double(i % 7), prec);  // |t^2 w| straddles 1/4
            auto a = entire_trig(w, t, prec);
            // force the other branch by scaling t and w in compensating ways:
            // C0, S0, V0 only depend on (t^2 w, t), so compare against the
            // series evaluated by an independent direct summation
            Complex u = t * t * w;
            Complex c(prec), term(1L, prec);
            for (long n = 0; n < 200; ++n) {
                c += term;
                term = term * (-u) / ((2 * n + 1) * (2 * n + 2));
                if (abs(term) < pow2(-(prec + 8), prec)) break;
            }
            CHECK(abs(a.C0 - c) < tol);
        }
    }
}

TEST_CASE("flow_z: identity at t = 0 and RK4 agreement") {
    long prec = 256;
    auto s = SurfaceParams::markov();
    SurfacePoint p = integer_point(s, 1, 1, 1, prec);

    SUBCASE("t = 0 is the identity") {
        SurfacePoint q = flow_z(s, p, Complex(prec));
        CHECK(abs(q.x - p.x).is_zero());
        CHECK(abs(q.y - p.y).is_zero());
    }
    SUBCASE("t = 0.1 from (1,1,1) matches RK4 to 1e-10") {
        Complex t = c_re(0.1, prec);
        SurfacePoint q = flow_z(s, p, t);
        Vec3 o = oracles::rk4_flow_adaptive(s, Var::z, p.coords(), t, prec);
        CHECK((q.coords() - o).max_abs() < Real(1e-10, prec));
        CHECK(abs(q.residual) < Real(1e-30, prec));
    }
    SUBCASE("series branch: 4 - E^2 z^2 = 0 at z = 2/3 stays on the surface") {
        // point with z = 2/3 + 1e-9, on the surface by construction
        Complex z = c_re(2.0 / 3.0, prec) + c_re(1e-9, prec);
        Complex y = c_re(0.8, prec);
        // x^2 + (Eyz)x + (y^2 + z^2) = 0
        Complex b = s.E.value(prec) * y * z;
        Complex x = (sqrt(b * b - (y * y + z * z) * 4) - b) / 2;
        SurfacePoint q0 = make_point(s, x, y, z);
        REQUIRE(abs(q0.residual) < pow2(-(prec - 40), prec));
        Complex t = c_re(0.25, prec);
        SurfacePoint q = flow_z(s, q0, t);
        CHECK(abs(q.residual) < Real(1e-30, prec));
        Vec3 o = oracles::rk4_flow_adaptive(s, Var::z, q0.coords(), t, prec);
        CHECK((q.coords() - o).max_abs() < Real(1e-10, prec));
    }
}

TEST_CASE("flow_axis: cyclic conjugation") {
    long prec = 256;
    auto s = SurfaceParams::rational(Rat(1), Rat(-2), Rat(3, 2), Rat(1), Rat(-3));
    Prng rng(19);
    SurfacePoint p = random_surface_point(s, rng, prec);
    Complex t = c_re(0.05, prec);

    SUBCASE("axis z is flow_z") {
        SurfacePoint a = flow_axis(s, Var::z, p, t);
        SurfacePoint b = flow_z(s, p, t);
        CHECK(abs(a.x - b.x).is_zero());
    }
    SUBCASE("axis x fixes x, axis y fixes y") {
        CHECK(abs(flow_axis(s, Var::x, p, t).x - p.x).is_zero());
        CHECK(abs(flow_axis(s, Var::y, p, t).y - p.y).is_zero());
    }
    SUBCASE("each axis flow matches its RK4 oracle") {
        auto markov = SurfaceParams::markov();
        SurfacePoint p125 = integer_point(markov, 1, 2, 5, prec);
        for (Var axis : {Var::x, Var::y, Var::z}) {
            Complex tt = c_re(0.05, prec);
            SurfacePoint q = flow_axis(markov, axis, p125, tt);
            Vec3 o = oracles::rk4_flow_adaptive(markov, axis, p125.coords(), tt, prec);
            CHECK((q.coords() - o).max_abs() < Real(1e-10, prec));
        }
    }
}

TEST_CASE("flow properties: group law, surface invariance, t=0 derivative") {
    long prec = 256;
    auto s = SurfaceParams::markov();
    Prng rng(37);

    SUBCASE("one-parameter group law") {
        for (int i = 0; i < 6; ++i) {
            SurfacePoint p = random_surface_point(s, rng, prec);
            Var axis = Var(rng.next_int(0, 2));
            Complex a = rng.next_complex(-0.5, 0.5, prec), b = rng.next_complex(-0.5, 0.5, prec);
            SurfacePoint q1 = flow_axis(s, axis, flow_axis(s, axis, p, a), b);
            SurfacePoint q2 = flow_axis(s, axis, p, a + b);
            Real scale = Real(1L, prec) + q1.coords().max_abs();
            CHECK((q1.coords() - q2.coords()).max_abs() < pow2(-(prec - 64), prec) * scale);
        }
    }
    SUBCASE("surface invariance for |t| <= 10") {
        for (int i = 0; i < 6; ++i) {
            SurfacePoint p = random_surface_point(s, rng, prec, 1.0);
            Complex t = rng.next_complex(-1.0, 1.0, prec) * 10L;
            // moderate |Im gamma t| keeps magnitudes representable; the flow
            // itself raises SurfaceDrift if precision is exhausted
            SurfacePoint q = flow_axis(s, Var::z, p, t);
            Real scale = q.coords().max_abs() + Real(1L, prec);
            CHECK(abs(q.residual) < pow2(-(prec - 64), prec) * scale * scale * scale);
        }
    }
    SUBCASE("d/dt at t = 0 equals the displayed V^z") {
        SurfacePoint p = random_surface_point(s, rng, prec);
        Real h(1e-8, prec);
        Complex ch(h);
        SurfacePoint qp = flow_z(s, p, ch), qm = flow_z(s, p, -ch);
        Vec3 fd = (qp.coords() - qm.coords()) / (ch * 2);
        Vec3 field = oracles::axis_field(s, Var::z, p.coords(), prec);
        CHECK((fd - field).max_abs() < Real(1e-12, prec));
    }
}

TEST_CASE("automorphisms: identity, inverses, composition") {
    long prec = 256;
    auto s = SurfaceParams::markov();
    SurfacePoint p = integer_point(s, 1, 2, 5, prec);

    SUBCASE("empty automorphism is the identity") {
        SurfacePoint q = Automorphism::identity().apply(s, p);
        CHECK(abs(q.x - p.x).is_zero());
    }
    SUBCASE("axis flow composed with its inverse") {
        Complex t = c_re(0.4, prec);
        Automorphism F{{ShearFlow::axis_flow(Var::z, t), ShearFlow::axis_flow(Var::z, -t)}};
        SurfacePoint q = F.apply(s, p);
        CHECK((q.coords() - p.coords()).max_abs() < pow2(-(prec - 64), prec) * 100);
    }
    SUBCASE("shear flow evaluates its polynomial at the fixed coordinate") {
        // f(z) = z^2 at z = 5 equals an axis flow at t = 25
        CPoly1 f({Complex(prec), Complex(prec), Complex(1L, prec)});
        ShearFlow shear{Var::z, f};
        SurfacePoint a = shear.apply(s, p);
        SurfacePoint b = flow_axis(s, Var::z, p, c_re(25.0, prec));
        CHECK((a.coords() - b.coords()).max_abs() < pow2(-(prec - 96), prec) * (a.coords().max_abs() + Real(1L, prec)));
    }
}

TEST_CASE("check_symplectic: defect magnitude and O(h^2) scaling") {
    long prec = 256;
    auto s = SurfaceParams::markov();
    SurfacePoint p = integer_point(s, 1, 1, 1, prec);

    SUBCASE("identity automorphism") {
        Real d = check_symplectic(s, Automorphism::identity(), p, Real(1e-5, prec));
        CHECK(d < Real(1e-20, prec));
    }
    SUBCASE("axis flow at (1,1,1)") {
        Automorphism F{{ShearFlow::axis_flow(Var::z, c_re(0.3, prec))}};
        Real d1 = check_symplectic(s, F, p, Real(1e-5, prec));
        CHECK(d1 < Real(1e-6, prec));
        Real d2 = check_symplectic(s, F, p, Real(5e-6, prec));
        CHECK(d2 < d1 / Real(2.5, prec));  // O(h^2): halving should quarter it
    }
    SUBCASE("shear flow f(z) = z^2") {
        CPoly1 f({Complex(prec), Complex(prec), Complex(1L, prec)});
        Automorphism F{{ShearFlow{Var::z, f}}};
        Real d1 = check_symplectic(s, F, p, Real(1e-5, prec));
        CHECK(d1 < Real(1e-6, prec));
        Real d2 = check_symplectic(s, F, p, Real(5e-6, prec));
        CHECK(d2 < d1 / Real(2.5, prec));
    }
    SUBCASE("degenerate frame at the singular point") {
        SurfacePoint origin = integer_point(s, 0, 0, 0, prec);
        CHECK_THROWS_AS(check_symplectic(s, Automorphism::identity(), origin, Real(1e-5, prec)),
                        Error);
    }
}

TEST_CASE("flows overflow raises SurfaceDrift instead of returning NaN") {
    long prec = 64;
    auto s = SurfaceParams::markov();
    SurfacePoint p = integer_point(s, 2, 5, 29, prec);
    // gamma(29) ~ 87i, so a real time 1e17 makes cosh(|gamma t|) overflow
    // even MPFR's exponent range
    CHECK_THROWS_AS(flow_z(s, p, c_re(1e17, prec)), Error);
}

TEST_CASE("other named family members: Cayley cubic and Mordell's equation") {
    long prec = 256;
    // Cayley: x^2+y^2+z^2+xyz = 4  ->  A=B=C=0, D=4, E=1
    auto cayley = SurfaceParams::rational(Rat(0), Rat(0), Rat(0), Rat(4), Rat(1));
    // Mordell: x^2+y^2+z^2 = 2xyz + 5  ->  E=-2, D=5
    auto mordell = SurfaceParams::rational(Rat(0), Rat(0), Rat(0), Rat(5), Rat(-2));
    Prng rng(59);
    for (auto& s : {cayley, mordell}) {
        // membership, flow vs RK4, bracket table on the same footing as Markov
        SurfacePoint p = random_surface_point(s, rng, prec);
        Complex t(0.15, -0.1, prec);
        for (Var axis : {Var::x, Var::y, Var::z}) {
            SurfacePoint q = flow_axis(s, axis, p, t);
            Vec3 o = oracles::rk4_flow_adaptive(s, axis, p.coords(), t, prec);
            CHECK((q.coords() - o).max_abs() < Real(1e-10, prec));
            CHECK(abs(q.residual) < Real(1e-30, prec));
        }
        BracketTable table(s);
        CHECK(bracket(poly_var(Var::x), poly_var(Var::y), s).p == table.xy());
    }
}

TEST_CASE("CPoly1: interpolation reproduces node values") {
    long prec = 256;
    Prng rng(43);
    std::vector<Complex> nodes, values;
    for (int i = 0; i < 6; ++i) {
        nodes.push_back(Complex(long(i * i + 1), prec));
        values.push_back(rng.next_complex(-5, 5, prec));
    }
    CPoly1 f = CPoly1::interpolate(nodes, values, prec);
    CHECK(f.degree() <= 5);
    for (size_t i = 0; i < nodes.size(); ++i)
        CHECK(abs(f.eval(nodes[i]) - values[i]) < pow2(-(prec - 64), prec));
    CHECK_THROWS(CPoly1::interpolate({}, {}, prec));
}
