#pragma once

// The Abel formal group law F = x R(y) + y R(x), R(x) = 1 + (a1/2) x + a2 x^2 + a3 x^3 + ...
// i.e. F = x + y + a1 xy + sum_{n>=2} a_n (x^n y + x y^n), over Q[a1, a2].

#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fgl/mpoly.hpp"
#include "fgl/pseries.hpp"
#include "fgl/ratint.hpp"

namespace fgl {

inline VarTablePtr abel_vars() { return make_vars({{"a1", 1}, {"a2", 2}}); }

/// Variables of the exponential e^{ut}(e^{vt} - 1)/v.
inline VarTablePtr uv_vars() { return make_vars({{"u", 1}, {"v", 1}}); }

/// Root variables: exp = (e^{a t} - e^{b t}) / (a - b).
inline VarTablePtr root_vars() { return make_vars({{"a", 1}, {"b", 1}}); }

/// The law truncated at total degree `truncation` from a_1..a_{truncation-1};
/// coeffs[n] is a_n, coeffs[0] is ignored.
inline Series2<Poly> abel_fgl(const std::vector<Poly>& coeffs, unsigned truncation)
{
    if (coeffs.size() < 3)
        throw DomainError("abel_fgl needs a_1 and a_2");
    const Poly zero = zero_like(coeffs[1]);
    Series2<Poly> f(truncation, zero);
    if (truncation >= 1) {
        f.at(1, 0) = one_like(zero);
        f.at(0, 1) = one_like(zero);
    }
    if (truncation >= 2)
        f.at(1, 1) = coeffs[1];
    for (unsigned n = 2; n + 1 <= truncation; ++n) {
        if (n >= coeffs.size())
            throw DomainError("a_" + std::to_string(n) + " missing for truncation " + std::to_string(truncation));
        f.at(n, 1) = coeffs[n];
        f.at(1, n) = coeffs[n];
    }
    return f;
}

/// a_0..a_n with a_n for n >= 3 fixed by associativity. Entry 0 is zero.
/// The new unknown a_n first appears, linearly with a constant coefficient,
/// in the degree n + 1 part of F(F(x,y),z) - F(x,F(y,z)).
inline std::vector<Poly> abel_coeffs_assoc(unsigned n_max)
{
    if (n_max < 2)
        throw DomainError("abel_coeffs_assoc needs N >= 2");
    const auto vars = abel_vars();
    std::vector<Poly> a{Poly(vars), Poly::variable(vars, "a1"), Poly::variable(vars, "a2")};
    for (unsigned n = 3; n <= n_max; ++n) {
        const auto ext = make_vars({{"a1", 1}, {"a2", 2}, {"unknown", n}});
        std::vector<Poly> trial;
        for (const auto& c : a)
            trial.push_back(embed(c, ext));
        const Poly u = Poly::variable(ext, "unknown");
        trial.push_back(u);
        const auto defect = associativity_defect(abel_fgl(trial, n + 1), n + 1, n + 1);

        const Monomial um = u.terms().begin()->first;
        std::optional<Poly> solution;
        for (const auto& [abc, d] : defect) {
            const Rational lead = d.coefficient(um);
            Poly rest(ext);
            for (const auto& [m, c] : d.terms()) {
                if (m == um)
                    continue;
                if (m.exps[2] != 0)
                    throw InvariantError("associativity defect for a_" + std::to_string(n) +
                                         " has a non-constant coefficient on the unknown");
                rest.add_term(m, c);
            }
            if (lead == 0)
                continue; // checked after substitution below
            Poly value = -rest / lead;
            if (solution && !(*solution == value))
                throw InvariantError("inconsistent associativity equations for a_" + std::to_string(n));
            solution = std::move(value);
        }
        if (!solution)
            throw InvariantError("a_" + std::to_string(n) + " is not determined by associativity");
        // every defect entry must vanish at the solution
        const auto back = make_vars({{"a1", 1}, {"a2", 2}});
        Poly sol = Poly(back);
        for (const auto& [m, c] : solution->terms())
            sol.add_term(make_monomial(*back, {m.exps[0], m.exps[1]}), c);
        for (const auto& [abc, d] : defect) {
            std::map<std::string, Poly> bind{{"a1", Poly::variable(back, "a1")},
                                             {"a2", Poly::variable(back, "a2")},
                                             {"unknown", sol}};
            if (!substitute(d, bind).is_zero())
                throw InvariantError("associativity cannot be solved for a_" + std::to_string(n));
        }
        a.push_back(embed(sol, vars));
    }
    return a;
}

/// Product formula with a = a1, b = -2 a2:
///   a_n = b A_n, A_2 = -1/2, A_n = delta_n / n! prod_{j=2}^{[n/2]} ((j-1)(n-j) a^2 + (n-2j+1)^2 b),
///   delta_{2s} = -(2s-1), delta_{2s+1} = 2 s^2 a.
/// Entry n is a_n; entries 0 and 1 are 0 and a1.
inline std::vector<Poly> abel_coeffs_closed(unsigned n_max)
{
    if (n_max < 2)
        throw DomainError("abel_coeffs_closed needs N >= 2");
    const auto vars = abel_vars();
    const Poly a = Poly::variable(vars, "a1");
    const Poly b = Poly::variable(vars, "a2") * Rational(-2);
    std::vector<Poly> out{Poly(vars), a};
    for (unsigned n = 2; n <= n_max; ++n) {
        Poly big_a(vars);
        if (n == 2) {
            big_a = Poly::constant(vars, make_rational(-1, 2));
        } else {
            const unsigned s = n / 2;
            Poly delta = n % 2 == 0 ? Poly::constant(vars, -Rational(2 * s - 1)) : a * Rational(2 * s * s);
            Poly prod = Poly::constant(vars, 1);
            for (unsigned j = 2; j <= n / 2; ++j) {
                const long lin = static_cast<long>(n) - 2 * static_cast<long>(j) + 1;
                prod = prod * (a * a * Rational((j - 1) * (n - j)) + b * Rational(lin * lin));
            }
            big_a = delta * prod / Rational(factorial(n));
        }
        out.push_back(b * big_a);
    }
    return out;
}

/// omega(t) = 1 + a1 t + a2 t^2 + ... from a_1..a_N.
inline Series1<Poly> abel_invariant_differential(const std::vector<Poly>& coeffs, unsigned truncation)
{
    if (coeffs.size() <= truncation)
        throw DomainError("need a_1..a_" + std::to_string(truncation));
    Series1<Poly> omega(truncation, zero_like(coeffs[1]));
    omega[0] = one_like(coeffs[1]);
    for (unsigned n = 1; n <= truncation; ++n)
        omega[n] = coeffs[n];
    return omega;
}

/// m_0..m_N of log = sum m_k t^{k+1} as the integral of 1/omega; m_0 = 1.
inline std::vector<Poly> abel_log_integral(const std::vector<Poly>& coeffs, unsigned n_max)
{
    const auto log = abel_invariant_differential(coeffs, n_max).reciprocal().integral();
    std::vector<Poly> m;
    for (unsigned k = 0; k <= n_max; ++k)
        m.push_back(log[k + 1]);
    return m;
}

inline std::vector<Poly> abel_log_integral(unsigned n_max) { return abel_log_integral(abel_coeffs_closed(std::max(2u, n_max)), n_max); }

/// m_{n-1} = (1/n) prod_{j=1}^{n-1} ((n-2j)/sqrt(j(n-j)) sqrt(2 a2) - a1), with
/// factors j and n-j paired into a1^2 - 2 a2 (n-2j)^2 / (j(n-j)) and -a1 left over for even n.
inline Poly abel_log_product(unsigned n)
{
    if (n < 2)
        throw DomainError("abel_log_product needs n >= 2");
    const auto vars = abel_vars();
    const Poly a1 = Poly::variable(vars, "a1");
    const Poly a2 = Poly::variable(vars, "a2");
    Poly prod = Poly::constant(vars, make_rational(1, n));
    for (unsigned j = 1; 2 * j < n; ++j) {
        const long d = static_cast<long>(n) - 2 * static_cast<long>(j);
        prod = prod * (a1 * a1 - a2 * make_rational(2 * d * d, Integer(j) * (n - j)));
    }
    if (n % 2 == 0)
        prod = prod * -a1;
    return prod;
}

/// Coefficients of t^0..t^N of the logarithm in the u, v parametrization:
/// t^k has ((-1)^{k-1} / k!) prod_{i=1}^{k-1} (k u + i v).
inline std::vector<Poly> abel_log_uv(unsigned n_max)
{
    const auto vars = uv_vars();
    const Poly u = Poly::variable(vars, "u");
    const Poly v = Poly::variable(vars, "v");
    std::vector<Poly> out{Poly(vars)};
    for (unsigned k = 1; k <= n_max; ++k) {
        Poly c = Poly::constant(vars, make_rational(k % 2 ? 1 : -1, factorial(k)));
        for (unsigned i = 1; i < k; ++i)
            c = c * (u * Rational(k) + v * Rational(i));
        out.push_back(std::move(c));
    }
    return out;
}

inline Series1<Poly> abel_log_uv_series(unsigned n_max)
{
    const auto c = abel_log_uv(n_max);
    Series1<Poly> s(n_max, zero_like(c[0]));
    for (unsigned k = 1; k <= n_max; ++k)
        s[k] = c[k];
    return s;
}

/// e^{ut}(e^{vt} - 1)/v; t^k has ((u+v)^k - u^k) / (v k!).
inline Series1<Poly> exp_abel_uv(unsigned n_max)
{
    const auto vars = uv_vars();
    const Poly u = Poly::variable(vars, "u");
    const Poly v = Poly::variable(vars, "v");
    Series1<Poly> e(n_max, Poly(vars));
    for (unsigned k = 1; k <= n_max; ++k) {
        Poly c(vars);
        for (unsigned j = 1; j <= k; ++j)
            c += u.pow(k - j) * v.pow(j - 1) * Rational(binomial(k, j));
        e[k] = c / Rational(factorial(k));
    }
    return e;
}

/// Writes a symmetric f(a, b) as a polynomial in e1 = a + b, e2 = a b, then
/// maps e1 -> a1, e2 -> -2 a2. Throws DomainError when f is not symmetric.
inline Poly roots_to_a(const Poly& f)
{
    const auto& rv = *f.vars();
    if (rv.size() != 2 || rv[0].name != "a" || rv[1].name != "b")
        throw DomainError("roots_to_a expects a polynomial in a, b");
    const auto av = abel_vars();
    const Poly e1 = Poly::variable(av, "a1");
    const Poly e2 = Poly::variable(av, "a2") * Rational(-2);
    const Poly ra = Poly::variable(f.vars(), "a");
    const Poly rb = Poly::variable(f.vars(), "b");
    Poly rest = f;
    Poly out(av);
    while (!rest.is_zero()) {
        // term with the largest power of a
        auto lead = rest.terms().begin();
        for (auto it = rest.terms().begin(); it != rest.terms().end(); ++it)
            if (it->first.exps[0] > lead->first.exps[0] ||
                (it->first.exps[0] == lead->first.exps[0] && it->first.exps[1] > lead->first.exps[1]))
                lead = it;
        const unsigned i = lead->first.exps[0], j = lead->first.exps[1];
        if (i < j)
            throw DomainError("polynomial " + f.to_string() + " is not symmetric in a, b");
        const Rational c = lead->second;
        rest -= (ra + rb).pow(i - j) * (ra * rb).pow(j) * c;
        out += e1.pow(i - j) * e2.pow(j) * c;
    }
    return out;
}

/// u = b, v = a - b.
inline Poly uv_to_roots(const Poly& f)
{
    const auto rv = root_vars();
    const Poly a = Poly::variable(rv, "a");
    const Poly b = Poly::variable(rv, "b");
    return substitute(f, {{"u", b}, {"v", a - b}});
}

/// A polynomial in u, v rewritten in a1, a2 through the root variables.
inline Poly uv_to_a(const Poly& f) { return roots_to_a(uv_to_roots(f)); }

/// a1 -> 2u + v, a2 -> -u(u+v)/2.
inline Poly a_to_uv(const Poly& f)
{
    const auto vars = uv_vars();
    const Poly u = Poly::variable(vars, "u");
    const Poly v = Poly::variable(vars, "v");
    return substitute(f, {{"a1", u * Rational(2) + v}, {"a2", u * (u + v) * make_rational(-1, 2)}});
}

/// Everything about the law at a fixed truncation, computed once.
class AbelContext {
public:
    enum class Method { Assoc, Closed };

    explicit AbelContext(unsigned truncation, Method method = Method::Closed)
        : truncation_(truncation), vars_(abel_vars())
    {
        const unsigned top = std::max(2u, truncation);
        a_ = method == Method::Assoc ? abel_coeffs_assoc(top) : abel_coeffs_closed(top);
        m_ = abel_log_integral(a_, truncation);
    }

    unsigned truncation() const { return truncation_; }
    const VarTablePtr& vars() const { return vars_; }
    const Poly& a(unsigned n) const { return a_.at(n); }
    const Poly& m(unsigned k) const { return m_.at(k); }
    const std::vector<Poly>& coefficients() const { return a_; }
    const std::vector<Poly>& log_coefficients() const { return m_; }

    Series2<Poly> law() const { return abel_fgl(a_, truncation_); }

    Series1<Poly> log_series() const
    {
        Series1<Poly> s(truncation_, Poly(vars_));
        for (unsigned k = 0; k + 1 <= truncation_; ++k)
            s[k + 1] = m_[k];
        return s;
    }

private:
    unsigned truncation_;
    VarTablePtr vars_;
    std::vector<Poly> a_;
    std::vector<Poly> m_;
};

struct MembershipSample {
    long k = 0;
    long l = 0;
    bool ok = true;
    std::string image;   // f(k t, l t)
    std::string witness; // first coefficient with a stray denominator
};

/// f(k t, l t) in Z[t, 1/(k-l)] for each sampled pair.
inline std::vector<MembershipSample> lambda_membership_sample(const Poly& f,
                                                              const std::vector<std::pair<long, long>>& pairs)
{
    const auto& rv = *f.vars();
    if (rv.size() != 2 || rv[0].name != "a" || rv[1].name != "b")
        throw DomainError("membership sampling expects a polynomial in a, b");
    Poly swapped(f.vars(), f.ring());
    for (const auto& [m, c] : f.terms())
        swapped.add_term(make_monomial(rv, {m.exps[1], m.exps[0]}), c);
    if (!(swapped == f))
        throw DomainError("polynomial " + f.to_string() + " is not symmetric in a, b");

    const auto tv = make_vars({{"t", 1}});
    const Poly t = Poly::variable(tv, "t");
    std::vector<MembershipSample> out;
    for (const auto& [k, l] : pairs) {
        if (k == l)
            throw DomainError("membership sample needs k != l");
        MembershipSample r{k, l};
        const Poly img = substitute(f, {{"a", t * Rational(k)}, {"b", t * Rational(l)}});
        r.image = img.to_string();
        const Integer diff = abs(Integer(k) - Integer(l));
        for (const auto& [m, c] : img.terms()) {
            Integer den = c.get_den();
            Integer g;
            while (den != 1 && (g = gcd(den, diff)) != 1)
                den /= g;
            if (den != 1) {
                r.ok = false;
                r.witness = "coefficient " + to_string(c) + " of " + monomial_text(*tv, m);
                break;
            }
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace fgl
