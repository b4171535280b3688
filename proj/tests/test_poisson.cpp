#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msurf/poisson.hpp"

using namespace msurf;

static Poly rand_poly(Prng& rng, unsigned deg, int terms = 8) {
    Poly p;
    for (int t = 0; t < terms; ++t) {
        unsigned i = unsigned(rng.next_int(0, int(deg)));
        unsigned j = unsigned(rng.next_int(0, int(deg - i)));
        unsigned k = unsigned(rng.next_int(0, int(deg - i - j)));
        p.add_term(Mono::xyz(i, j, k), rng.next_rat(9, 4));
    }
    return p;
}

TEST_CASE("generator table") {
    auto s = SurfaceParams::rational(Rat(1), Rat(2), Rat(3), Rat(4), Rat(-3));
    BracketTable table(s);
    CHECK(table.xy() == poly_from_string("2*z - 3*x*y - 3"));   // 2z + Exy - C
    CHECK(table.yz() == poly_from_string("2*x - 3*y*z - 1"));   // 2x + Eyz - A
    CHECK(table.zx() == poly_from_string("2*y - 3*x*z - 2"));   // 2y + Exz - B

    CHECK(bracket(poly_var(Var::x), poly_var(Var::y), s).p == table.xy());
    CHECK(bracket(poly_var(Var::y), poly_var(Var::x), s).p == -table.xy());
}

TEST_CASE("{f, f} = 0 and bilinearity") {
    auto s = SurfaceParams::markov();
    Prng rng(3);
    for (int t = 0; t < 6; ++t) {
        Poly f = rand_poly(rng, 4);
        CHECK(bracket_raw(f, f, s).is_zero());
        Poly g = rand_poly(rng, 4), h = rand_poly(rng, 3);
        CHECK(bracket_raw(f + g, h, s) == bracket_raw(f, h, s) + bracket_raw(g, h, s));
    }
}

TEST_CASE("{x, x^k y} display at k = 3") {
    auto s = SurfaceParams::rational(Rat(1), Rat(2), Rat(3), Rat(4), Rat(5));
    // {x, x^3 y} = 2 x^3 z + E x^4 y - C x^3
    Poly lhs = bracket_raw(poly_var(Var::x), poly_from_string("x^3*y"), s);
    Poly rhs = poly_from_string("2*x^3*z + 5*x^4*y - 3*x^3");
    CHECK(lhs == rhs);
}

TEST_CASE("hamiltonian_field: displayed complete fields and Leibniz scaling") {
    auto s = SurfaceParams::rational(Rat(1), Rat(2), Rat(3), Rat(4), Rat(-3));
    auto N = normal_form_polys(s);

    // hamiltonian_field(z) = V^z = (2y+Exz-B) d/dx - (2x+Eyz-A) d/dy, exactly
    SymbolicField Vz = hamiltonian_field(poly_var(Var::z), s);
    CHECK(Vz.cx == N[1]);
    CHECK(Vz.cy == -N[0]);
    CHECK(Vz.cz.is_zero());
    // and the other two displayed fields
    SymbolicField Vx = hamiltonian_field(poly_var(Var::x), s);
    CHECK(Vx.cy == N[2]);
    CHECK(Vx.cz == -N[1]);
    SymbolicField Vy = hamiltonian_field(poly_var(Var::y), s);
    CHECK(Vy.cx == -N[2]);
    CHECK(Vy.cz == N[0]);

    CHECK(hamiltonian_field(poly_const(42), s).is_zero());

    // f = x^2: field is 2x * (field of x), coefficientwise
    SymbolicField Vx2 = hamiltonian_field(poly_from_string("x^2"), s);
    Poly two_x = poly_from_string("2*x");
    CHECK(Vx2.cx == Vx.cx * two_x);
    CHECK(Vx2.cy == Vx.cy * two_x);
    CHECK(Vx2.cz == Vx.cz * two_x);

    // bracket(f, g) = V_f(g) for random pairs
    Prng rng(8);
    for (int t = 0; t < 5; ++t) {
        Poly f = rand_poly(rng, 3), g = rand_poly(rng, 3);
        CHECK(bracket_raw(f, g, s) == hamiltonian_field(f, s).apply(g));
    }
}

TEST_CASE("Casimir: {P, f} is the zero polynomial before reduction") {
    auto s = SurfaceParams::markov();
    CHECK(casimir_check(poly_var(Var::x), s).is_zero());
    CHECK(casimir_check(defining_poly(s), s).is_zero());
    CHECK(casimir_check(poly_from_string("x^2*y*z^3"), s).is_zero());
    Prng rng(17);
    for (int t = 0; t < 10; ++t) CHECK(casimir_check(rand_poly(rng, 4), s).is_zero());
}

TEST_CASE("Jacobi identity holds exactly in C[x,y,z]") {
    Prng rng(29);
    auto s = SurfaceParams::rational(Rat(1, 2), Rat(-1), Rat(3), Rat(-2, 3), Rat(1));
    for (int t = 0; t < 8; ++t) {
        Poly f = rand_poly(rng, 4, 5), g = rand_poly(rng, 4, 5), h = rand_poly(rng, 4, 5);
        Poly jac = bracket_raw(f, bracket_raw(g, h, s), s)
                 + bracket_raw(g, bracket_raw(h, f, s), s)
                 + bracket_raw(h, bracket_raw(f, g, s), s);
        CHECK(jac.is_zero());
    }
}

TEST_CASE("determinant formula agrees with the table-Leibniz extension") {
    Prng rng(41);
    for (int trial = 0; trial < 6; ++trial) {
        auto s = trial % 2 ? SurfaceParams::rational(rng.next_rat(4, 2), rng.next_rat(4, 2),
                                                     rng.next_rat(4, 2), rng.next_rat(4, 2), Rat(2))
                           : SurfaceParams::markov();
        BracketTable table(s);
        Poly f = rand_poly(rng, 4, 6), g = rand_poly(rng, 4, 6);
        CHECK(bracket_raw(f, g, s) == table.extend(f, g));
    }
}

TEST_CASE("omega compatibility: omega(V_f, V_g) = {f,g} numerically") {
    long prec = 256;
    Prng rng(53);
    auto s = SurfaceParams::markov();
    for (int t = 0; t < 6; ++t) {
        Poly f = rand_poly(rng, 3, 5), g = rand_poly(rng, 3, 5);
        SurfacePoint pt = random_surface_point(s, rng, prec);
        Vec3 vf = hamiltonian_field(f, s).eval(pt.x, pt.y, pt.z, prec);
        Vec3 vg = hamiltonian_field(g, s).eval(pt.x, pt.y, pt.z, prec);
        Complex lhs = omega_eval(s, pt, vf, vg);
        Complex rhs = bracket(f, g, s).p.eval(pt.x, pt.y, pt.z, prec);
        Real scale = Real(1L, prec) + abs(rhs);
        CHECK(abs(lhs - rhs) < pow2(-(prec - 80), prec) * scale);
    }
}

TEST_CASE("tangency: N(V_f) reduces to zero for random f") {
    Prng rng(61);
    auto s = SurfaceParams::rational(Rat(2), Rat(0), Rat(-1), Rat(5), Rat(-3));
    auto N = normal_form_polys(s);
    for (int t = 0; t < 6; ++t) {
        SymbolicField V = hamiltonian_field(rand_poly(rng, 4), s);
        Poly nv = N[0] * V.cx + N[1] * V.cy + N[2] * V.cz;
        CHECK(nv.is_zero());  // exact even before reduction
        CHECK(poly_reduce(nv, s).is_zero());
    }
}
