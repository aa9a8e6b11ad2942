#include "doctest.h"

#include "fgl/parse.hpp"
#include "fgl/pseries.hpp"
#include "gen.hpp"

using namespace fgl;

TEST_SUITE("properties") {

TEST_CASE("ring axioms")
{
    for (int trial = 0; trial < 200; ++trial) {
        const Poly f = gen::poly(), g = gen::poly(), h = gen::poly();
        CHECK(f * g == g * f);
        CHECK(f + g == g + f);
        CHECK((f * g) * h == f * (g * h));
        CHECK(f * (g + h) == f * g + f * h);
        CHECK((f - f).is_zero());
    }
}

TEST_CASE("substitute is a ring map")
{
    for (int trial = 0; trial < 100; ++trial) {
        const std::map<std::string, Poly> bind{{"x", gen::poly(2, 2)}, {"y", gen::poly(2, 2)}, {"z", gen::poly(2, 2)}};
        const Poly f = gen::poly(3, 2), g = gen::poly(3, 2);
        CHECK(substitute(f * g, bind) == substitute(f, bind) * substitute(g, bind));
        CHECK(substitute(f + g, bind) == substitute(f, bind) + substitute(g, bind));
    }
}

TEST_CASE("graded components sum to f")
{
    for (int trial = 0; trial < 100; ++trial) {
        const Poly f = gen::poly(6, 4);
        Poly sum(f.vars());
        for (unsigned w = 0; w <= 16; ++w)
            sum += graded_component(f, w);
        CHECK(sum == f);
    }
}

TEST_CASE("reduction mod 7 commutes with + and *")
{
    for (int trial = 0; trial < 200; ++trial) {
        const Poly f = gen::poly(), g = gen::poly();
        CHECK(reduce_mod_p(f * g, 7) == reduce_mod_p(f, 7) * reduce_mod_p(g, 7));
        CHECK(reduce_mod_p(f + g, 7) == reduce_mod_p(f, 7) + reduce_mod_p(g, 7));
    }
}

TEST_CASE("canonical text parses back")
{
    for (int trial = 0; trial < 200; ++trial) {
        const Poly f = gen::poly(5, 4);
        CHECK(parse_poly(f.to_string(), f.vars()) == f);
        const Poly r = reduce_mod_p(f, 7);
        CHECK(parse_poly(r.to_string(), r.vars(), r.ring()) == r);
    }
}

TEST_CASE("series: inverse, round trip through the law")
{
    for (int trial = 0; trial < 25; ++trial) {
        const auto l = gen::log_shaped(8);
        const auto e = comp_inverse(l);
        CHECK(comp_inverse(e) == l);
        CHECK(series_compose(l, e) == Series1<Rational>::identity(8, Rational(0)));
        const auto f = fgl_from_log(l, 8);
        CHECK(check_fgl_axioms(f, 8).ok);
        CHECK(log_from_fgl(f) == l);
    }
}

TEST_CASE("zlocal_kernel on random 7-local matrices")
{
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t r = static_cast<std::size_t>(gen::uniform(1, 4)), c = static_cast<std::size_t>(gen::uniform(2, 6));
        RatMatrix m(r, c);
        for (auto& x : m.entries)
            x = gen::rational();
        const auto ker = zlocal_kernel(m, 7);
        CHECK(ker.size() == c - rref(m).pivot_cols.size());
        FpEchelon ech(c, 7);
        for (const auto& v : ker) {
            for (std::size_t i = 0; i < r; ++i) {
                Rational s = 0;
                for (std::size_t j = 0; j < c; ++j)
                    s += m(i, j) * v[j];
                CHECK(s == 0);
            }
            CHECK(ech.insert(reduce_vector_mod_p(v, 7))); // independent mod p
        }
    }
}

}
