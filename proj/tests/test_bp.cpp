#include "doctest.h"

#include "fgl/bp.hpp"
#include "fgl/parse.hpp"
#include "oracles.hpp"

using namespace fgl;

TEST_SUITE("bp") {

TEST_CASE("l_4 for p = 2 has 2^3 summands before collecting")
{
    const auto vars = bp_vars(2, 4);
    const Poly l4 = bp_log_closed(2, 4, vars);
    CHECK(l4.size() == 8);
    CHECK(l4.is_homogeneous(15));
}

TEST_CASE("recursive and closed logarithms agree")
{
    for (unsigned p : {2u, 3u, 5u}) {
        const auto vars = bp_vars(p, 4);
        const auto rec = bp_log_recursive(p, 4, vars);
        for (unsigned n = 1; n <= 4; ++n) {
            CHECK(rec[n - 1] == bp_log_closed(p, n, vars));
            CHECK(rec[n - 1].is_homogeneous(static_cast<unsigned>(upow(p, n) - 1)));
        }
    }
}

TEST_CASE("logarithm at numeric v against the Hazewinkel recursion")
{
    const std::vector<oracle::Q> v{0, oracle::Q(3, 2), oracle::Q(-2), oracle::Q(5, 7), oracle::Q(1, 3)};
    for (unsigned p : {2u, 3u}) {
        const auto vars = bp_vars(p, 4);
        const auto l = bp_log_recursive(p, 4, vars);
        const auto want = oracle::hazewinkel_log(p, v, 4);
        std::map<std::string, oracle::Q> at;
        for (unsigned k = 1; k <= 4; ++k)
            at["v" + std::to_string(k)] = v[k];
        for (unsigned n = 1; n <= 4; ++n)
            CHECK(oracle::eval(l[n - 1], at) == want[n]);
    }
}

TEST_CASE("alpha_11")
{
    CHECK(bp_fgl_coeff(2, 1, 1).to_string() == "-v1");
    CHECK(bp_fgl_coeff(3, 1, 1).is_zero());
    CHECK(bp_fgl_coeff(3, 1, 2).to_string() == "-v1");
    CHECK(bp_fgl_coeff(5, 2, 2).is_zero());
    CHECK_THROWS_AS(bp_fgl_coeff(4, 1, 1), DomainError);
}

TEST_CASE("BP law at numeric v against the dense oracle")
{
    for (unsigned p : {2u, 3u}) {
        const unsigned n = p == 2 ? 7 : 8;
        const BPContext ctx(p, 2);
        const std::vector<oracle::Q> v{0, oracle::Q(2, 3), oracle::Q(-5, 4)};
        std::map<std::string, oracle::Q> at{{"v1", v[1]}, {"v2", v[2]}};
        const auto l = oracle::hazewinkel_log(p, v, 2);
        oracle::Dense1 dl(n + 1, oracle::Q(0));
        dl[1] = 1;
        for (unsigned k = 1; upow(p, k) <= n; ++k)
            dl[upow(p, k)] = l[k];
        const auto f = oracle::fgl_from_log(dl, n);
        for (unsigned i = 1; i < n; ++i)
            for (unsigned j = 1; i + j <= n; ++j)
                CHECK(oracle::eval(ctx.fgl_coeff(i, j), at) == f[i][j]);
    }
}

TEST_CASE("leading alpha relation")
{
    const auto r0 = leading_alpha_relation(2, 0, 1);
    CHECK(r0.scalar == -1);
    CHECK(r0.alpha.to_string() == "-v1");
    CHECK(leading_alpha_relation(2, 1, 1).scalar == Rational(-1, 3));
    CHECK(leading_alpha_relation(3, 1, 1).scalar == Rational(-1, 28));
    for (unsigned p : {2u, 3u, 5u})
        for (unsigned n = 0; n <= 2; ++n)
            for (unsigned k = 1; k < p; ++k) {
                const auto r = leading_alpha_relation(p, n, k);
                CHECK(r.valuation == 1);
                CHECK(r.linear_term_cancels);
                CHECK(r.scalar_matches_alpha);
            }
    CHECK_THROWS_AS(leading_alpha_relation(3, 1, 3), DomainError);
}

TEST_CASE("express_v_in_alphas: displayed v_1, v_2")
{
    CHECK(express_v_in_alphas(2, 1, {1}).to_string() == "-alpha_1_1");
    CHECK(express_v_in_alphas(2, 2, {1, 1}).to_string() == "-1/3*alpha_2_2 + 4/3*alpha_1_1^3");
    CHECK(express_v_in_alphas(3, 1, {1}).to_string() == "-alpha_1_2");
    CHECK(express_v_in_alphas(3, 2, {1, 1}).to_string() == "-1/28*alpha_3_6 + 27/28*alpha_1_2^4");
}

TEST_CASE("express_v_in_alphas: substituting the alphas back gives v_n")
{
    for (unsigned p : {2u, 3u})
        for (unsigned n = 1; n <= 3; ++n) {
            const Poly expr = express_v_in_alphas(p, n, std::vector<unsigned>(n, 1));
            const BPContext ctx(p, n);
            std::map<std::string, Poly> bind;
            for (unsigned m = 0; m < n; ++m) {
                const auto i = static_cast<unsigned>(upow(p, m)), j = static_cast<unsigned>((p - 1) * upow(p, m));
                bind.emplace(alpha_name(i, j), ctx.fgl_coeff(i, j));
            }
            CHECK(substitute(expr, bind) == ctx.v(n));
        }
}

TEST_CASE("p = 2 v_3 needs the alpha_11 alpha_22^2 term")
{
    // The three-term display leaves v_3 short by a nonzero polynomial in v.
    const BPContext ctx(2, 3);
    const auto t = make_vars({{"alpha_1_1", 1}, {"alpha_2_2", 3}, {"alpha_4_4", 7}});
    const Poly shown = parse_poly("-1/35*alpha_4_4 + 302/315*alpha_1_1^4*alpha_2_2 - 170/63*alpha_1_1^7", t);
    const Poly back = substitute(shown, {{"alpha_1_1", ctx.fgl_coeff(1, 1)},
                                         {"alpha_2_2", ctx.fgl_coeff(2, 2)},
                                         {"alpha_4_4", ctx.fgl_coeff(4, 4)}});
    CHECK_FALSE(back == ctx.v(3));
}

}
