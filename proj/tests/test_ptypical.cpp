#include "doctest.h"

#include "fgl/parse.hpp"
#include "fgl/ptypical.hpp"
#include "oracles.hpp"

using namespace fgl;

namespace {

const RelationSet& rs33()
{
    static const RelationSet rs = kernel_relations(2, 0, 33);
    return rs;
}

// images of v_n at a1 = 4, a2 = -3/2 (roots 3 and 1) from the numeric logarithm
std::vector<oracle::Q> numeric_images(unsigned p, unsigned n)
{
    const auto lg = oracle::log_from_roots(3, 1, static_cast<unsigned>(upow(p, n)));
    std::vector<oracle::Q> l(n + 1), v(n + 1);
    for (unsigned k = 1; k <= n; ++k)
        l[k] = lg[upow(p, k)];
    for (unsigned k = 1; k <= n; ++k) {
        oracle::Q s = p * l[k];
        for (unsigned i = 1; i < k; ++i) {
            oracle::Q pw = 1;
            for (unsigned long e = 0; e < upow(p, i); ++e)
                pw *= v[k - i];
            s -= pw * l[i];
        }
        v[k] = s;
    }
    return v;
}

const std::map<std::string, oracle::Q> at_roots{{"a1", 4}, {"a2", oracle::Q(-3, 2)}};

} // namespace

TEST_SUITE("ptypical") {

TEST_CASE("p-typical logarithm")
{
    const auto t = abel_vars();
    const auto l2 = ptypical_log(2, 4);
    CHECK(l2[2] == parse_poly("-1/2*a1", t));
    CHECK(l2[3].is_zero());
    CHECK(l2[4] == parse_poly("-1/4*a1*(a1^2 - 8/3*a2)", t));
    const auto l3 = ptypical_log(3, 3);
    CHECK(l3[2].is_zero());
    CHECK(l3[3] == parse_poly("1/3*(a1^2 - a2)", t));
    const auto l0 = ptypical_log(2, 2);
    CHECK(substitute(l0[2], {{"a1", Poly(t)}, {"a2", Poly(t)}}).is_zero());
}

TEST_CASE("p-typical law satisfies the axioms")
{
    for (unsigned p : {2u, 3u}) {
        const auto rep = check_fgl_axioms(fgl_from_log(ptypical_log(p, 12), 12), 12);
        CHECK_MESSAGE(rep.ok, rep.witness);
    }
}

TEST_CASE("images of v_1..v_3 for p = 2")
{
    const auto cm = classify_v_images(2, 4);
    const auto t = abel_vars();
    CHECK(cm.image(1) == parse_poly("-a1", t));
    CHECK(cm.image(2) == parse_poly("4/3*a1*a2", t));
    CHECK(cm.image(3) == parse_poly("284/105*a1^5*a2 - 808/105*a1^3*a2^2 + 128/35*a1*a2^3", t));
}

TEST_CASE("images at a numeric point against the Hazewinkel inversion")
{
    for (unsigned p : {2u, 3u}) {
        const unsigned n = p == 2 ? 4 : 3;
        const auto cm = classify_v_images(p, n);
        const auto want = numeric_images(p, n);
        for (unsigned k = 1; k <= n; ++k) {
            CHECK(oracle::eval(cm.image(k), at_roots) == want[k]);
            CHECK(cm.image(k).is_homogeneous(static_cast<unsigned>(upow(p, k) - 1)));
            for (const auto& [m, c] : cm.image(k).terms())
                CHECK(is_p_local(c, p));
        }
    }
}

TEST_CASE("v_4 has seven terms; the five-term display misses a1*a2^7 and a1^3*a2^6")
{
    const auto t = abel_vars();
    const Poly shown = parse_poly("184108/45045*a1^13*a2 - 1108792/15015*a1^11*a2^2 + 4521344416/10135125*a1^9*a2^3"
                                  " - 1265861152/1126125*a1^7*a2^4 + 107918689792/91216125*a1^5*a2^5", t);
    const Poly v4 = classify_v_images(2, 4).image(4);
    CHECK(v4.size() == 7);
    const Poly rest = v4 - shown;
    CHECK(rest == parse_poly("262144/6435*a1*a2^7 - 414949376/921375*a1^3*a2^6", t));
    CHECK(oracle::eval(shown, at_roots) != numeric_images(2, 4)[4]);
}

TEST_CASE("kernel: counts, rank additivity, relations map to zero")
{
    const auto& rs = rs33();
    const auto cm = classify_v_images(2, rs.depth);
    std::vector<unsigned> weights;
    for (unsigned n = 1; n <= rs.depth; ++n)
        weights.push_back((1u << n) - 1);
    const auto counts = oracle::monomial_counts(weights, 33);
    for (unsigned w = 0; w <= 33; ++w) {
        const auto& wk = rs.weights[w];
        CHECK(wk.monomial_count == counts[w]);
        CHECK(wk.monomial_count == wk.rank + wk.kernel_dimension());
        for (const auto& r : wk.relations) {
            CHECK(cm.apply(r.poly).is_zero());
            CHECK(r.poly.is_homogeneous(w));
            CHECK(r.reduction == reduce_mod_p(r.poly, 2));
        }
        if (w <= 8)
            CHECK(wk.relations.empty());
    }
}

TEST_CASE("kernel rank against an independent rank over Q")
{
    const auto& rs = rs33();
    const auto cm = classify_v_images(2, rs.depth);
    for (unsigned w : {9u, 17u, 21u, 24u}) {
        const auto monos = monomials_of_weight(*rs.vars, w);
        std::vector<Poly> images;
        std::map<Monomial, std::size_t> col;
        for (const auto& m : monos) {
            Poly f(rs.vars);
            f.add_term(m, 1);
            images.push_back(cm.apply(f));
            for (const auto& [am, c] : images.back().terms())
                col.emplace(am, col.size());
        }
        RatMatrix mat(col.size(), monos.size());
        for (std::size_t j = 0; j < images.size(); ++j)
            for (const auto& [am, c] : images[j].terms())
                mat(col.at(am), j) = c;
        CHECK(rref(mat).pivot_cols.size() == rs.weights[w].rank);
    }
}

TEST_CASE("minimal relations in low weight")
{
    const auto& rs = rs33();
    REQUIRE(rs.weights[9].minimal_count() == 1);
    for (const auto& r : rs.weights[9].relations)
        if (r.minimal)
            CHECK(r.reduction.to_string() == "v1^3*v2^2");
    CHECK(rs.weights[9].rank + 1 == rs.weights[9].monomial_count);
}

TEST_CASE("mod 2 presentation and the v2^7 witness")
{
    const auto& rs = rs33();
    const auto pres = mod2_presentation(rs);
    CHECK(pres.matches_expected);
    CHECK(pres.expected_missing.empty());
    REQUIRE(pres.witness.found);
    CHECK(pres.witness.weight == 21);
    const Poly v1 = Poly::variable(rs.vars, "v1", Ring::modp(2));
    CHECK(reduce_mod_p(pres.witness.target, 2) == v1 * pres.witness.cofactor + pres.witness.relation);
    // the relation part is an F_2 combination of kernel reductions at weight 21
    FpEchelon ech(monomials_of_weight(*rs.vars, 21).size(), 2);
    const auto monos = monomials_of_weight(*rs.vars, 21);
    auto vec = [&](const Poly& f) {
        std::vector<std::uint32_t> v(monos.size(), 0);
        for (std::size_t i = 0; i < monos.size(); ++i)
            v[i] = static_cast<std::uint32_t>(f.coefficient(monos[i]).get_num().get_ui() % 2);
        return v;
    };
    for (const auto& r : rs.weights[21].relations)
        ech.insert(vec(r.reduction));
    auto rel = vec(pres.witness.relation);
    CHECK_FALSE(ech.reduce(rel));
}

TEST_CASE("generating function")
{
    const auto parts = genfun_parts(60);
    const auto closed = genfun_closed(60);
    CHECK(parts.sum() == closed);
    CHECK(closed.nonnegative());
    CHECK(closed.coeffs[0] == 1);
    CHECK(closed.coeffs[1] == 1);
    CHECK(parts.free_part.to_string().rfind("1 + t^3 + t^6 + t^7 + ", 0) == 0);
    CHECK(parts.v1_part.to_string().rfind("t + t^2 + t^3 + 2*t^4 + 2*t^5 + ", 0) == 0);
    for (unsigned k = 0; k < 7; ++k)
        CHECK(parts.power_part.coeffs[k] == 0);
    CHECK(parts.power_part.coeffs[7] == 1);
}

TEST_CASE("closed form counts monomials without the v1 v_i^2 v_j^2 shape")
{
    const auto closed = genfun_closed(40);
    const auto count = oracle::filtered_counts(40, [](const std::vector<unsigned>& e) {
        std::size_t squares = 0;
        bool any_square = false;
        for (std::size_t i = 1; i < e.size(); ++i)
            if (e[i] >= 2) {
                ++squares;
                any_square = true;
            }
        const bool shaped = (e[0] >= 3 && any_square) || (e[0] >= 1 && squares >= 2);
        return !shaped;
    });
    for (unsigned w = 0; w <= 40; ++w)
        CHECK(closed.coeffs[w] == count[w]);
}

TEST_CASE("conjecture report through weight 20")
{
    const auto rep = conjecture_check(20);
    CHECK(rep.all_consistent());
    const auto counts = oracle::monomial_counts({1, 3, 7, 15}, 20);
    for (const auto& l : rep.lines)
        if (l.weight <= 8)
            CHECK(l.computed_rank == counts[l.weight]);
}

}
