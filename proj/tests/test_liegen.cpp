#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "msurf/liegen.hpp"
#include "msurf/prng.hpp"

#include <numeric>

using namespace msurf;

TEST_CASE("normal space dimensions") {
    CHECK(NormalSpace(6).dim() == 49);  // 28 monomials x^i y^j + 21 with a z factor
    CHECK(NormalSpace(3).dim() == 10 + 6);
    CHECK(NormalSpace(1).dim() == 4);   // 1, x, y, z
}

TEST_CASE("close_span: seeds span themselves at deg 1") {
    auto s = SurfaceParams::markov();
    auto span = close_span(s, 1, 1);
    CHECK(span.basis.rank() == 4);
    CHECK(span.basis.contains(NormalPoly(poly_var(Var::x))));
    CHECK(span.basis.contains(NormalPoly(poly_const(1))));
    CHECK(!span.basis.contains(NormalPoly(poly_from_string("x*y"))));
}

TEST_CASE("close_span: one bracket round brings in xy, yz, zx") {
    auto s = SurfaceParams::markov();
    auto span = close_span(s, 1, 2);
    for (const char* m : {"x*y", "y*z", "z*x"})
        CHECK(span.basis.contains(NormalPoly(poly_from_string(m))));
}

TEST_CASE("close_span: full rank 49 at caps (6,6), certificates replay") {
    auto s = SurfaceParams::markov();
    auto span = close_span(s, 6, 6);
    CHECK(span.basis.rank() == span.basis.space().dim());

    // every row certificate replays to its row polynomial exactly
    for (auto& [pivot, row] : span.basis.rows()) {
        NormalPoly replayed = span.certs.replay(row.cert, span.generator_polys, s);
        CHECK(replayed == span.basis.space().from_vector(row.vec));
    }

    SUBCASE("certify_monomial: leaf, defining-equation path, generic") {
        for (const char* m : {"1", "x*y*z", "x^3*y^2*z"}) {
            auto res = certify_monomial(span, poly_from_string(m).terms().begin()->first);
            auto* c = std::get_if<Certificate>(&res);
            REQUIRE(c != nullptr);
            CHECK(certificate_replays(span, *c, s));
        }
    }
    SUBCASE("degree-7 monomial is outside the space") {
        auto res = certify_monomial(span, Mono::xyz(7, 0, 0));
        CHECK(std::holds_alternative<NotInSpan>(res));
    }
}

TEST_CASE("close_span: generic rational parameters also reach full rank") {
    auto s = SurfaceParams::rational(Rat(1, 2), Rat(-2), Rat(3), Rat(-1, 3), Rat(2));
    auto span = close_span(s, 6, 6);
    CHECK(span.basis.rank() == 49);
}

TEST_CASE("close_span is independent of the seeding order") {
    auto s = SurfaceParams::markov();
    auto base = close_span(s, 4, 4);
    std::vector<size_t> order(13);  // 1 + 3*4 generators
    std::iota(order.begin(), order.end(), size_t(0));
    Prng rng(99);
    for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.next_below(i)]);
    CloseSpanOptions opt;
    opt.seed_order = &order;
    auto shuffled = close_span(s, 4, 4, opt);
    CHECK(base.basis.rank() == shuffled.basis.rank());
    CHECK(base.basis.pivots() == shuffled.basis.pivots());
    // mutual containment of row spaces
    for (auto& [pivot, row] : base.basis.rows())
        CHECK(shuffled.basis.contains(base.basis.space().from_vector(row.vec)));
}

TEST_CASE("monotonicity: span(g) is contained in span(g+1) at fixed cap") {
    auto s = SurfaceParams::markov();
    auto small = close_span(s, 2, 5);
    auto large = close_span(s, 3, 5);
    for (auto& [pivot, row] : small.basis.rows())
        CHECK(large.basis.contains(small.basis.space().from_vector(row.vec)));
    CHECK(large.basis.rank() >= small.basis.rank());
}

TEST_CASE("full pairing closes at least as fast") {
    auto s = SurfaceParams::markov();
    CloseSpanOptions opt;
    opt.full_pairing = true;
    auto full = close_span(s, 6, 6, opt);
    CHECK(full.basis.rank() == 49);
}

TEST_CASE("generation-lemma identities across the parameter grid") {
    auto markov = SurfaceParams::markov();
    auto generic = SurfaceParams::rational(Rat(1), Rat(-2), Rat(3, 2), Rat(5), Rat(7, 3));
    for (auto& s : {markov, generic}) {
        // k = 1 base cases and the edge instances
        CHECK(verify_lemma_identities(s, 1, 1, 0).all_ok());
        CHECK(verify_lemma_identities(s, 1, 1, 1).all_ok());  // p = k edge
        CHECK(verify_lemma_identities(s, 3, 3, 2).all_ok());  // k = m branch
        for (unsigned k = 1; k <= 4; ++k)
            for (unsigned m = 1; m <= 4; ++m)
                for (unsigned p = 0; p <= k; ++p) {
                    auto rep = verify_lemma_identities(s, k, m, p);
                    if (!rep.all_ok()) {
                        for (auto& c : rep.checks)
                            if (!c.ok) MESSAGE(c.name, " mismatch: ", c.mismatch);
                    }
                    CHECK(rep.all_ok());
                }
    }
    CHECK_THROWS(verify_lemma_identities(markov, 2, 1, 3));  // p > k
}

TEST_CASE("certificate replay has teeth: wrong targets are rejected") {
    auto s = SurfaceParams::markov();
    auto span = close_span(s, 2, 2);
    auto res = certify_monomial(span, Mono::xyz(1, 1, 0));
    auto* c = std::get_if<Certificate>(&res);
    REQUIRE(c != nullptr);
    CHECK(certificate_replays(span, *c, s));
    Certificate tampered{Mono::xyz(0, 1, 1), c->root};  // xy derivation, yz target
    CHECK(!certificate_replays(span, tampered, s));
}

TEST_CASE("bad caps are rejected") {
    auto s = SurfaceParams::markov();
    CHECK_THROWS(close_span(s, 0, 3));
    CHECK_THROWS(close_span(s, 4, 3));
}
