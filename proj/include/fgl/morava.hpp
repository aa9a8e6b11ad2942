#pragma once

// The G(s) law with v_s = 1 and its mod p reduction (Morava K-theory).
//
// Two independent routes: the rational multinomial formula for the law with
// logarithm x + x^{p^s}/p + x^{p^{2s}}/p^2 + ..., and the fixed point of
//   F(x, y) = F(W^(1), W^(p)^{p^{s-1}}, W^(p^2)^{p^{2(s-1)}}, ...)
// computed directly in F_p.

#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "fgl/mpoly.hpp"
#include "fgl/pseries.hpp"
#include "fgl/ratint.hpp"

namespace fgl {

inline Series1<Rational> gs_log(unsigned s, unsigned p, unsigned truncation)
{
    require_prime(p);
    if (s == 0)
        throw DomainError("height s must be at least 1");
    auto l = Series1<Rational>::identity(truncation, Rational(0));
    Integer deg = ipow(Integer(p), s);
    for (unsigned k = 1; deg <= truncation; ++k, deg *= ipow(Integer(p), s))
        l[static_cast<unsigned>(deg.get_ui())] = make_rational(1, ipow(Integer(p), k));
    return l;
}

namespace detail {

// e_m = (p^{ms} - 1) / (p^s - 1), the weight of the m-th nu in units of p^s - 1.
inline std::vector<unsigned> gs_levels(unsigned p, unsigned s, unsigned total)
{
    std::vector<unsigned> degs; // p^{ms} for m >= 1 with p^{ms} - 1 <= total
    for (unsigned m = 1;; ++m) {
        const auto d = upow(p, m * s);
        if (d - 1 > total)
            break;
        degs.push_back(static_cast<unsigned>(d));
    }
    return degs;
}

// All c with n = c_0 + sum_m degs[m] c_{m+1}; entry 0 is c_0.
inline std::vector<std::vector<unsigned>> split_by_degrees(unsigned n, const std::vector<unsigned>& degs)
{
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(degs.size() + 1, 0);
    auto rec = [&](auto&& self, std::size_t m, unsigned left) -> void {
        if (m == degs.size()) {
            cur[0] = left;
            out.push_back(cur);
            return;
        }
        for (unsigned c = 0; c * degs[m] <= left; ++c) {
            cur[m + 1] = c;
            self(self, m + 1, left - c * degs[m]);
        }
        cur[m + 1] = 0;
    };
    rec(rec, 0, n);
    return out;
}

inline Rational gs_term(const std::vector<unsigned>& iv, const std::vector<unsigned>& jv,
                        const std::vector<unsigned>& kv, unsigned p)
{
    unsigned count = iv[0] + jv[0];
    unsigned ksum = 0;
    unsigned pexp = 0;
    Integer denom = factorial(iv[0]) * factorial(jv[0]);
    for (std::size_t m = 1; m < iv.size(); ++m) {
        count += iv[m] + jv[m] + kv[m];
        ksum += kv[m];
        pexp += static_cast<unsigned>(m) * (iv[m] + jv[m] + kv[m]);
        denom *= factorial(iv[m]) * factorial(jv[m]) * factorial(kv[m]);
    }
    denom *= ipow(Integer(p), pexp);
    Rational q = make_rational(factorial(count - 1), denom);
    return ksum % 2 ? Rational(-q) : q;
}

} // namespace detail

/// alpha_ij of the G(s) law: sum over nu with sum nu_m (p^{ms} - 1) = i + j - 1
/// and splittings i_m + j_m + k_m = nu_m.
inline Rational gs_fgl_coeff(unsigned p, unsigned s, unsigned i, unsigned j)
{
    require_prime(p);
    if (s == 0)
        throw DomainError("height s must be at least 1");
    if (i == 0 || j == 0)
        throw DomainError("gs_fgl_coeff needs i, j >= 1");
    const unsigned total = i + j - 1;
    const auto unit = static_cast<unsigned>(upow(p, s) - 1);
    if (total % unit != 0)
        return 0;
    const auto degs = detail::gs_levels(p, s, total);
    const std::size_t r = degs.size();

    Rational sum = 0;
    std::vector<unsigned> nu(r + 1, 0);
    auto over_nu = [&](auto&& self, std::size_t m, unsigned left) -> void {
        if (m == r) {
            if (left != 0)
                return;
            // i_m + j_m <= nu_m, k_m takes the rest
            std::vector<unsigned> iv(r + 1, 0), jv(r + 1, 0), kv(r + 1, 0);
            auto over_i = [&](auto&& si, std::size_t a, unsigned ileft) -> void {
                if (a == r + 1) {
                    iv[0] = ileft;
                    auto over_j = [&](auto&& sj, std::size_t b, unsigned jleft) -> void {
                        if (b == r + 1) {
                            jv[0] = jleft;
                            sum += detail::gs_term(iv, jv, kv, p);
                            return;
                        }
                        for (unsigned c = 0; c + iv[b] <= nu[b] && c * degs[b - 1] <= jleft; ++c) {
                            jv[b] = c;
                            kv[b] = nu[b] - iv[b] - c;
                            sj(sj, b + 1, jleft - c * degs[b - 1]);
                        }
                        jv[b] = 0;
                    };
                    over_j(over_j, 1, j);
                    return;
                }
                for (unsigned c = 0; c <= nu[a] && c * degs[a - 1] <= ileft; ++c) {
                    iv[a] = c;
                    si(si, a + 1, ileft - c * degs[a - 1]);
                }
                iv[a] = 0;
            };
            over_i(over_i, 1, i);
            return;
        }
        const unsigned w = degs[m] - 1;
        for (unsigned c = 0; c * w <= left; ++c) {
            nu[m + 1] = c;
            self(self, m + 1, left - c * w);
        }
        nu[m + 1] = 0;
    };
    over_nu(over_nu, 0, total);
    return sum;
}

/// Same coefficient organised by k = (i + j - 1) / (p^s - 1): choose the
/// splittings of i and j first, then k_m with sum e_m k_m = k - sum e_m (i_m + j_m).
inline Rational gs_fgl_coeff_by_k(unsigned p, unsigned s, unsigned i, unsigned j)
{
    require_prime(p);
    if (s == 0)
        throw DomainError("height s must be at least 1");
    if (i == 0 || j == 0)
        throw DomainError("gs_fgl_coeff needs i, j >= 1");
    const auto unit = static_cast<unsigned>(upow(p, s) - 1);
    if ((i + j - 1) % unit != 0)
        return 0;
    const unsigned k = (i + j - 1) / unit;
    const auto degs = detail::gs_levels(p, s, i + j - 1);
    const std::size_t r = degs.size();
    std::vector<unsigned> e(r + 1, 0);
    for (std::size_t m = 1; m <= r; ++m)
        e[m] = (degs[m - 1] - 1) / unit;

    Rational sum = 0;
    const auto isplits = detail::split_by_degrees(i, degs);
    const auto jsplits = detail::split_by_degrees(j, degs);
    std::vector<unsigned> kv(r + 1, 0);
    for (const auto& iv : isplits)
        for (const auto& jv : jsplits) {
            unsigned used = 0;
            for (std::size_t m = 1; m <= r; ++m)
                used += e[m] * (iv[m] + jv[m]);
            if (used > k)
                continue;
            auto over_k = [&](auto&& self, std::size_t m, unsigned left) -> void {
                if (m == r + 1) {
                    if (left == 0)
                        sum += detail::gs_term(iv, jv, kv, p);
                    return;
                }
                for (unsigned c = 0; c * e[m] <= left; ++c) {
                    kv[m] = c;
                    self(self, m + 1, left - c * e[m]);
                }
                kv[m] = 0;
            };
            over_k(over_k, 1, k - used);
        }
    return sum;
}

/// Rational G(s) law tabulated from gs_fgl_coeff.
inline Series2<Rational> gs_fgl(unsigned p, unsigned s, unsigned truncation)
{
    Series2<Rational> f(truncation, Rational(0));
    if (truncation >= 1) {
        f.at(1, 0) = 1;
        f.at(0, 1) = 1;
    }
    for (unsigned d = 2; d <= truncation; ++d)
        for (unsigned i = 1; i < d; ++i)
            f.at(i, d - i) = gs_fgl_coeff(p, s, i, d - i);
    return f;
}

inline VarTablePtr witt_vars() { return make_vars({{"x", 1}, {"y", 1}}); }

/// W^(n)(x, y) by Sum_{d | n} W^(n/d)^d / d = (x^n + y^n) / n.
class WittCache {
public:
    WittCache() : vars_(witt_vars()) {}

    const VarTablePtr& vars() const { return vars_; }

    /// Integral, symmetric and homogeneous of degree n.
    const Poly& get(unsigned n)
    {
        if (n == 0)
            throw DomainError("witt_symmetric needs n >= 1");
        std::lock_guard lock(mu_);
        return compute(n);
    }

private:
    const Poly& compute(unsigned n)
    {
        if (auto it = cache_.find(n); it != cache_.end())
            return it->second;
        const Poly x = Poly::variable(vars_, "x");
        const Poly y = Poly::variable(vars_, "y");
        Poly w = (x.pow(n) + y.pow(n)) / Rational(n);
        for (unsigned d = 2; d <= n; ++d)
            if (n % d == 0)
                w -= lift_to_q(compute(n / d)).pow(d) / Rational(d);
        for (const auto& [m, c] : w.terms())
            if (c.get_den() != 1)
                throw InvariantError("W^(" + std::to_string(n) + ") has non-integral coefficient " + to_string(c));
        return cache_.emplace(n, change_ring(w, Ring::integers())).first->second;
    }

    VarTablePtr vars_;
    std::map<unsigned, Poly> cache_;
    std::mutex mu_;
};

inline Poly witt_symmetric(unsigned n)
{
    static WittCache cache;
    return cache.get(n);
}

/// Bivariate F_p series of a polynomial in x, y.
inline Series2<Fp> to_series_modp(const Poly& f, std::uint32_t p, unsigned truncation)
{
    Series2<Fp> out(truncation, Fp(0, p));
    const std::size_t ix = f.vars()->index_of("x");
    const std::size_t iy = f.vars()->index_of("y");
    for (const auto& [m, c] : f.terms()) {
        const unsigned a = m.exps[ix], b = m.exps[iy];
        if (a + b <= truncation)
            out.at(a, b) += Fp::from_rational(c, p);
    }
    return out;
}

/// f^{p^k} over F_p: exponents scale by p^k, coefficients are fixed.
inline Series2<Fp> frobenius(const Series2<Fp>& f, unsigned k)
{
    const unsigned n = f.truncation();
    const auto q = upow(f.zero().modulus(), k);
    Series2<Fp> out(n, f.zero());
    for (const auto& [ij, c] : f.nonzero_terms()) {
        const auto a = ij.first * q, b = ij.second * q;
        if (a + b <= n)
            out.at(static_cast<unsigned>(a), static_cast<unsigned>(b)) = c;
    }
    return out;
}

struct MoravaFGL {
    unsigned p = 2;
    unsigned s = 1;
    unsigned truncation = 0;
    Series2<Fp> law{0, Fp(0, 2)};
    unsigned iterations = 0;
};

/// w_0 = x + y and w_m = W^(p^m)^{p^{m(s-1)}} for p^{ms} <= truncation.
inline std::vector<Series2<Fp>> ravenel_arguments(unsigned p, unsigned s, unsigned truncation)
{
    std::vector<Series2<Fp>> w;
    w.push_back(Series2<Fp>::x(truncation, Fp(0, p)) + Series2<Fp>::y(truncation, Fp(0, p)));
    for (unsigned m = 1; upow(p, m * s) <= truncation; ++m) {
        const auto base = to_series_modp(witt_symmetric(static_cast<unsigned>(upow(p, m))), p, truncation);
        w.push_back(frobenius(base, m * (s - 1)));
    }
    return w;
}

/// Fixed point of F <- F(...F(F(w_0, w_1), w_2)..., w_r) starting from x + y.
inline MoravaFGL ravenel_fgl_modp(unsigned p, unsigned s, unsigned truncation)
{
    require_prime(p);
    if (s == 0)
        throw DomainError("height s must be at least 1");
    MoravaFGL out;
    out.p = p;
    out.s = s;
    out.truncation = truncation;
    const auto w = ravenel_arguments(p, s, truncation);
    Series2<Fp> f = w[0];
    for (unsigned iter = 1; iter <= truncation + 1; ++iter) {
        Series2<Fp> g = w[0];
        for (std::size_t m = 1; m < w.size(); ++m)
            g = compose2(f, g, w[m]);
        if (g == f) {
            out.law = std::move(f);
            out.iterations = iter;
            return out;
        }
        f = std::move(g);
    }
    throw InvariantError("Ravenel iteration did not stabilise at degree " + std::to_string(truncation));
}

struct ApproxReport {
    bool ok = true;
    unsigned checked_degree = 0;
    std::string statement;
    std::string witness; // first offending coefficient, empty when ok
};

/// F == x + y - sum_{0<j<p} C(p,j)/p x^{j p^{s-1}} y^{(p-j) p^{s-1}} mod (x^M, y^M), M = p^{2(s-1)}.
/// truncation 0 means 2M - 2, the top degree outside the ideal.
inline ApproxReport verify_wp_approx(unsigned p, unsigned s, unsigned truncation = 0)
{
    require_prime(p);
    if (s < 2)
        throw DomainError("the x^{p^{2(s-1)}} approximation needs s > 1");
    const auto big_m = static_cast<unsigned>(upow(p, 2 * (s - 1)));
    const auto q = static_cast<unsigned>(upow(p, s - 1));
    if (truncation == 0)
        truncation = 2 * big_m - 2;
    const auto law = ravenel_fgl_modp(p, s, truncation).law;

    Series2<Fp> approx = Series2<Fp>::x(truncation, Fp(0, p)) + Series2<Fp>::y(truncation, Fp(0, p));
    for (unsigned j = 1; j < p; ++j)
        if (j * q + (p - j) * q <= truncation)
            approx.at(j * q, (p - j) * q) -= Fp::from_rational(make_rational(binomial(p, j), Integer(p)), p);

    ApproxReport r;
    r.checked_degree = truncation;
    r.statement = "F = " + approx.to_string() + " mod (x^" + std::to_string(big_m) + ", y^" + std::to_string(big_m) + ")";
    for (unsigned d = 0; d <= truncation && r.ok; ++d)
        for (unsigned a = 0; a <= d; ++a) {
            const unsigned b = d - a;
            if (a >= big_m || b >= big_m)
                continue;
            if (!(law.coeff(a, b) == approx.coeff(a, b))) {
                r.ok = false;
                r.witness = "coefficient of x^" + std::to_string(a) + "*y^" + std::to_string(b);
                break;
            }
        }
    return r;
}

namespace detail {

// Divide a homogeneous degree-d form over F_2, given as c[a] at x^a y^{d-a},
// by x^m y^m (x^m + y^m); m is a power of 2 so x^m + y^m = (x + y)^m.
inline bool divisible_by_bv_generator(std::vector<std::uint32_t> c, unsigned m)
{
    const std::size_t d = c.size() - 1;
    if (d < 3 * m)
        return std::all_of(c.begin(), c.end(), [](auto v) { return v == 0; });
    for (std::size_t a = 0; a <= d; ++a)
        if (c[a] && (a < m || d - a < m))
            return false;
    // quotient by x^m y^m: coefficients at x^{a-m} y^{d-a-m}; then long division by x^m + y^m
    std::vector<std::uint32_t> g(c.begin() + m, c.end() - m);
    const std::size_t e = g.size() - 1;
    for (std::size_t top = e; top + 1 > m; --top) {
        if (!g[top])
            continue;
        g[top] ^= 1;
        g[top - m] ^= 1;
    }
    return std::all_of(g.begin(), g.end(), [](auto v) { return v == 0; });
}

} // namespace detail

/// p = 2, s = n: F == x + y + (xy + (x+y)(xy)^{2^{n-1}})^{2^{n-1}} mod ((x+y)xy)^{2^{2n-2}},
/// degree by degree up to the truncation. truncation 0 means 4 * 2^{2n-2}.
inline ApproxReport verify_bv_approx(unsigned n, unsigned truncation = 0)
{
    if (n < 2)
        throw DomainError("verify_bv_approx needs n >= 2");
    const auto half = static_cast<unsigned>(upow(2, n - 1));
    const auto m = static_cast<unsigned>(upow(2, 2 * n - 2));
    if (truncation == 0)
        truncation = 4 * m;
    const auto law = ravenel_fgl_modp(2, n, truncation).law;

    const Fp zero(0, 2);
    const auto x = Series2<Fp>::x(truncation, zero);
    const auto y = Series2<Fp>::y(truncation, zero);
    auto xy = x * y;
    auto xyh = Series2<Fp>::constant(truncation, Fp(1, 2));
    for (unsigned k = 0; k < half; ++k)
        xyh = xyh * xy;
    const auto inner = xy + (x + y) * xyh;
    const auto approx = x + y + frobenius(inner, n - 1);
    const auto diff = law - approx;

    ApproxReport r;
    r.checked_degree = truncation;
    r.statement = "F = x + y + (x*y + (x + y)*(x*y)^" + std::to_string(half) + ")^" + std::to_string(half) +
                  " mod ((x + y)*x*y)^" + std::to_string(m);
    for (unsigned d = 0; d <= truncation; ++d) {
        std::vector<std::uint32_t> c(d + 1);
        for (unsigned a = 0; a <= d; ++a)
            c[a] = diff.coeff(a, d - a).value();
        if (!detail::divisible_by_bv_generator(std::move(c), m)) {
            r.ok = false;
            r.witness = "degree " + std::to_string(d) + " part of the difference";
            break;
        }
    }
    return r;
}

} // namespace fgl
