#pragma once

// Truncated power series in one (Series1) or two (Series2) formal variables,
// generic over the coefficient ring C (Rational, Fp or Poly). A formal group
// law is a Series2 whose coefficients obey the unit, commutativity and
// associativity identities up to the truncation degree.

#include <algorithm>
#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "fgl/mpoly.hpp"
#include "fgl/ratint.hpp"

namespace fgl {

namespace detail {

// (negative, magnitude text) with an empty magnitude meaning 1.
inline std::pair<bool, std::string> coeff_factor(const Rational& q)
{
    return {q < 0, q == 1 || q == -1 ? std::string() : to_string(Rational(abs(q)))};
}

inline std::pair<bool, std::string> coeff_factor(const Fp& a)
{
    const long b = a.balanced();
    const long m = b < 0 ? -b : b;
    return {b < 0, m == 1 ? std::string() : std::to_string(m)};
}

inline std::pair<bool, std::string> coeff_factor(const Poly& f)
{
    if (f.size() == 1) {
        const auto& [m, c] = *f.terms().begin();
        Rational shown = c;
        if (f.ring().kind == RingKind::Fp)
            shown = Fp(c.get_num().get_si(), f.ring().p).balanced();
        const bool neg = shown < 0;
        const Rational mag = neg ? Rational(-shown) : shown;
        const std::string mono = monomial_text(*f.vars(), m);
        if (mono.empty())
            return {neg, mag == 1 ? std::string() : to_string(mag)};
        return {neg, mag == 1 ? mono : to_string(mag) + "*" + mono};
    }
    return {false, "(" + f.to_string() + ")"};
}

inline std::string power_text(const std::string& var, unsigned e)
{
    if (e == 0)
        return {};
    return e == 1 ? var : var + "^" + std::to_string(e);
}

inline void append_term(std::string& out, bool neg, const std::string& coeff, const std::string& mono)
{
    if (out.empty())
        out += neg ? "-" : "";
    else
        out += neg ? " - " : " + ";
    if (coeff.empty())
        out += mono.empty() ? "1" : mono;
    else if (mono.empty())
        out += coeff;
    else
        out += coeff + "*" + mono;
}

inline bool supports_division(const Rational&) { return true; }
inline bool supports_division(const Fp&) { return false; }
inline bool supports_division(const Poly& f) { return f.ring().kind == RingKind::Q; }

inline Rational scale(const Rational& c, const Rational& q) { return c * q; }
inline Fp scale(const Fp& c, const Rational& q) { return c * Fp::from_rational(q, c.modulus()); }
inline Poly scale(const Poly& c, const Rational& q) { return c * q; }

} // namespace detail

template <class C>
class Series1 {
public:
    /// Zero series with coefficients of t^0..t^N.
    Series1(unsigned truncation, C zero) : zero_(std::move(zero)), c_(truncation + 1, zero_) {}

    /// The series t.
    static Series1 identity(unsigned truncation, const C& zero)
    {
        Series1 s(truncation, zero);
        if (truncation >= 1)
            s.c_[1] = one_like(zero);
        return s;
    }

    unsigned truncation() const { return static_cast<unsigned>(c_.size() - 1); }
    const C& zero() const { return zero_; }
    const C& operator[](unsigned k) const { return k < c_.size() ? c_[k] : zero_; }
    C& operator[](unsigned k) { return c_.at(k); }

    /// Coefficients t^1 = 1 and t^0 = 0.
    bool is_log_shaped() const
    {
        return truncation() >= 1 && is_zero(c_[0]) && c_[1] == one_like(zero_);
    }

    Series1 truncated(unsigned n) const
    {
        Series1 s(n, zero_);
        for (unsigned k = 0; k <= n && k < c_.size(); ++k)
            s.c_[k] = c_[k];
        return s;
    }

    Series1& operator+=(const Series1& o)
    {
        c_.resize(std::min(c_.size(), o.c_.size()), zero_);
        for (std::size_t k = 0; k < c_.size(); ++k)
            c_[k] += o.c_[k];
        return *this;
    }

    Series1& operator-=(const Series1& o)
    {
        c_.resize(std::min(c_.size(), o.c_.size()), zero_);
        for (std::size_t k = 0; k < c_.size(); ++k)
            c_[k] -= o.c_[k];
        return *this;
    }

    friend Series1 operator+(Series1 a, const Series1& b) { return a += b; }
    friend Series1 operator-(Series1 a, const Series1& b) { return a -= b; }

    friend Series1 operator*(const Series1& a, const Series1& b)
    {
        const unsigned n = std::min(a.truncation(), b.truncation());
        Series1 out(n, a.zero_);
        for (unsigned i = 0; i <= n; ++i) {
            if (is_zero(a.c_[i]))
                continue;
            for (unsigned j = 0; i + j <= n; ++j)
                if (!is_zero(b.c_[j]))
                    out.c_[i + j] += a.c_[i] * b.c_[j];
        }
        return out;
    }

    /// 1/s for a series with constant term 1, by the recursive convolution.
    Series1 reciprocal() const
    {
        if (!(c_[0] == one_like(zero_)))
            throw DomainError("reciprocal needs constant term 1");
        const unsigned n = truncation();
        Series1 r(n, zero_);
        r.c_[0] = one_like(zero_);
        for (unsigned k = 1; k <= n; ++k) {
            C acc = zero_;
            for (unsigned i = 1; i <= k; ++i)
                if (!is_zero(c_[i]))
                    acc += c_[i] * r.c_[k - i];
            r.c_[k] = -acc;
        }
        return r;
    }

    Series1 derivative() const
    {
        const unsigned n = truncation();
        Series1 d(n == 0 ? 0 : n - 1, zero_);
        for (unsigned k = 1; k <= n; ++k)
            d.c_[k - 1] = detail::scale(c_[k], Rational(k));
        return d;
    }

    /// Termwise antiderivative with zero constant term; truncation grows by one.
    Series1 integral() const
    {
        if (!detail::supports_division(zero_))
            throw DomainError("integration needs a Q-algebra of coefficients");
        const unsigned n = truncation();
        Series1 s(n + 1, zero_);
        for (unsigned k = 0; k <= n; ++k)
            s.c_[k + 1] = detail::scale(c_[k], Rational(1, k + 1));
        return s;
    }

    friend bool operator==(const Series1& a, const Series1& b) { return a.c_ == b.c_; }

    std::string to_string(const std::string& var = "t") const
    {
        std::string out;
        for (unsigned k = 0; k < c_.size(); ++k) {
            if (is_zero(c_[k]))
                continue;
            auto [neg, coeff] = detail::coeff_factor(c_[k]);
            detail::append_term(out, neg, coeff, detail::power_text(var, k));
        }
        return out.empty() ? "0" : out;
    }

private:
    C zero_;
    std::vector<C> c_;
};

/// f(g) truncated at the common truncation; g must have zero constant term.
template <class C>
Series1<C> series_compose(const Series1<C>& f, const Series1<C>& g)
{
    if (!is_zero(g[0]))
        throw DomainError("inner series must have zero constant term");
    const unsigned n = std::min(f.truncation(), g.truncation());
    Series1<C> gt = g.truncated(n);
    Series1<C> out(n, f.zero());
    // Horner: f0 + g (f1 + g (f2 + ...))
    for (unsigned k = n + 1; k-- > 0;) {
        out = out * gt;
        out[0] += f[k];
    }
    return out;
}

/// Composition inverse of a logarithm-shaped series via the explicit
/// multinomial sum over k_1 + 2k_2 + ... = n:
///   e_n = sum (-1)^{k_1+k_2+...} (n+k_1+k_2+...)! / ((n+1)! k_1! k_2! ...) m_1^{k_1} m_2^{k_2} ...
/// where m_i is the coefficient of t^{i+1} and e_n that of t^{n+1} in the inverse.
template <class C>
Series1<C> comp_inverse(const Series1<C>& m)
{
    if (!m.is_log_shaped())
        throw DomainError("comp_inverse needs a series t + O(t^2)");
    const unsigned big_n = m.truncation();
    const C zero = m.zero();
    Series1<C> e = Series1<C>::identity(big_n, zero);

    std::vector<unsigned> active; // indices i with m_i != 0
    for (unsigned i = 1; i + 1 <= big_n; ++i)
        if (!is_zero(m[i + 1]))
            active.push_back(i);
    std::vector<std::vector<C>> powers(active.size());
    auto mpow = [&](std::size_t a, unsigned k) -> const C& {
        auto& cache = powers[a];
        if (cache.empty())
            cache.push_back(one_like(zero));
        while (cache.size() <= k)
            cache.push_back(cache.back() * m[active[a] + 1]);
        return cache[k];
    };

    for (unsigned n = 1; n + 1 <= big_n; ++n) {
        C sum = zero;
        std::vector<unsigned> ks(active.size(), 0);
        const Integer np1_fact = factorial(n + 1);
        auto rec = [&](auto&& self, std::size_t a, unsigned left) -> void {
            if (left == 0) {
                unsigned total = 0;
                Integer denom = np1_fact;
                for (std::size_t t = 0; t < ks.size(); ++t) {
                    total += ks[t];
                    denom *= factorial(ks[t]);
                }
                Rational coef = make_rational(factorial(n + total), denom);
                if (total % 2)
                    coef = -coef;
                C term = scalar_like(zero, coef);
                for (std::size_t t = 0; t < ks.size(); ++t)
                    if (ks[t])
                        term = term * mpow(t, ks[t]);
                sum += term;
                return;
            }
            if (a == active.size())
                return;
            const unsigned w = active[a];
            for (unsigned k = 0; k * w <= left; ++k) {
                ks[a] = k;
                self(self, a + 1, left - k * w);
            }
            ks[a] = 0;
        };
        rec(rec, 0, n);
        e[n + 1] = sum;
    }
    return e;
}

template <class C>
class Series2 {
public:
    Series2(unsigned truncation, C zero)
        : n_(truncation), zero_(std::move(zero)), c_((truncation + 1) * (truncation + 2) / 2, zero_)
    {
    }

    static Series2 x(unsigned truncation, const C& zero)
    {
        Series2 s(truncation, zero);
        if (truncation >= 1)
            s.at(1, 0) = one_like(zero);
        return s;
    }

    static Series2 y(unsigned truncation, const C& zero)
    {
        Series2 s(truncation, zero);
        if (truncation >= 1)
            s.at(0, 1) = one_like(zero);
        return s;
    }

    static Series2 constant(unsigned truncation, const C& c)
    {
        Series2 s(truncation, zero_like(c));
        s.at(0, 0) = c;
        return s;
    }

    /// f(x) viewed as a series in x, y.
    static Series2 in_x(const Series1<C>& f, unsigned truncation)
    {
        Series2 s(truncation, f.zero());
        for (unsigned k = 0; k <= truncation && k <= f.truncation(); ++k)
            s.at(k, 0) = f[k];
        return s;
    }

    static Series2 in_y(const Series1<C>& f, unsigned truncation)
    {
        Series2 s(truncation, f.zero());
        for (unsigned k = 0; k <= truncation && k <= f.truncation(); ++k)
            s.at(0, k) = f[k];
        return s;
    }

    unsigned truncation() const { return n_; }
    const C& zero() const { return zero_; }

    const C& coeff(unsigned i, unsigned j) const { return i + j <= n_ ? c_[index(i, j)] : zero_; }
    C& at(unsigned i, unsigned j)
    {
        if (i + j > n_)
            throw DomainError("coefficient beyond truncation");
        return c_[index(i, j)];
    }

    Series2 truncated(unsigned n) const
    {
        Series2 s(n, zero_);
        for (unsigned d = 0; d <= std::min(n, n_); ++d)
            for (unsigned i = 0; i <= d; ++i)
                s.at(i, d - i) = coeff(i, d - i);
        return s;
    }

    /// Exchange x and y.
    Series2 swapped() const
    {
        Series2 s(n_, zero_);
        for (unsigned d = 0; d <= n_; ++d)
            for (unsigned i = 0; i <= d; ++i)
                s.at(d - i, i) = coeff(i, d - i);
        return s;
    }

    /// Nonzero coefficients as ((i, j), c), by total degree then descending i.
    std::vector<std::pair<std::pair<unsigned, unsigned>, C>> nonzero_terms() const
    {
        std::vector<std::pair<std::pair<unsigned, unsigned>, C>> out;
        for (unsigned d = 0; d <= n_; ++d)
            for (unsigned i = d + 1; i-- > 0;)
                if (!is_zero(coeff(i, d - i)))
                    out.push_back({{i, d - i}, coeff(i, d - i)});
        return out;
    }

    Series2& operator+=(const Series2& o)
    {
        if (o.n_ < n_)
            *this = truncated(o.n_);
        for (unsigned d = 0; d <= n_; ++d)
            for (unsigned i = 0; i <= d; ++i)
                c_[index(i, d - i)] += o.coeff(i, d - i);
        return *this;
    }

    Series2& operator-=(const Series2& o)
    {
        if (o.n_ < n_)
            *this = truncated(o.n_);
        for (unsigned d = 0; d <= n_; ++d)
            for (unsigned i = 0; i <= d; ++i)
                c_[index(i, d - i)] -= o.coeff(i, d - i);
        return *this;
    }

    friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
    friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }

    Series2& operator*=(const C& c)
    {
        for (auto& x : c_)
            if (!is_zero(x))
                x = x * c;
        return *this;
    }

    friend Series2 operator*(const Series2& a, const Series2& b)
    {
        const unsigned n = std::min(a.n_, b.n_);
        Series2 out(n, a.zero_);
        std::vector<std::pair<std::pair<unsigned, unsigned>, const C*>> bt;
        for (unsigned d = 0; d <= n; ++d)
            for (unsigned i = 0; i <= d; ++i)
                if (!is_zero(b.coeff(i, d - i)))
                    bt.push_back({{i, d - i}, &b.c_[b.index(i, d - i)]});
        for (unsigned d = 0; d <= n; ++d) {
            for (unsigned i = 0; i <= d; ++i) {
                const C& ca = a.coeff(i, d - i);
                if (is_zero(ca))
                    continue;
                const unsigned j = d - i;
                for (const auto& [ij, cb] : bt) {
                    if (d + ij.first + ij.second > n)
                        break;
                    out.c_[out.index(i + ij.first, j + ij.second)] += ca * *cb;
                }
            }
        }
        return out;
    }

    friend bool operator==(const Series2& a, const Series2& b) { return a.n_ == b.n_ && a.c_ == b.c_; }

    std::string to_string(const std::string& xv = "x", const std::string& yv = "y") const
    {
        std::string out;
        for (const auto& [ij, c] : nonzero_terms()) {
            auto [neg, coeff] = detail::coeff_factor(c);
            std::string mono = detail::power_text(xv, ij.first);
            const std::string ym = detail::power_text(yv, ij.second);
            if (!ym.empty())
                mono = mono.empty() ? ym : mono + "*" + ym;
            detail::append_term(out, neg, coeff, mono);
        }
        return out.empty() ? "0" : out;
    }

private:
    std::size_t index(unsigned i, unsigned j) const
    {
        const std::size_t d = i + j;
        return d * (d + 1) / 2 + j;
    }

    unsigned n_;
    C zero_;
    std::vector<C> c_;
};

/// f(s) for a one-variable f and a two-variable s with zero constant term.
template <class C>
Series2<C> evaluate(const Series1<C>& f, const Series2<C>& s)
{
    if (!is_zero(s.coeff(0, 0)))
        throw DomainError("inner series must have zero constant term");
    const unsigned n = std::min(f.truncation(), s.truncation());
    Series2<C> out(n, f.zero());
    Series2<C> st = s.truncated(n);
    for (unsigned k = n + 1; k-- > 0;) {
        out = out * st;
        out.at(0, 0) += f[k];
    }
    return out;
}

/// Powers s^0, ..., s^n truncated at the truncation of s.
template <class C>
std::vector<Series2<C>> powers(const Series2<C>& s, unsigned n)
{
    std::vector<Series2<C>> out;
    out.push_back(Series2<C>::constant(s.truncation(), one_like(s.zero())));
    for (unsigned k = 1; k <= n; ++k)
        out.push_back(out.back() * s);
    return out;
}

/// F(a, b) where a and b have zero constant term.
template <class C>
Series2<C> compose2(const Series2<C>& f, const Series2<C>& a, const Series2<C>& b)
{
    if (!is_zero(a.coeff(0, 0)) || !is_zero(b.coeff(0, 0)))
        throw DomainError("arguments must have zero constant term");
    const unsigned n = std::min({f.truncation(), a.truncation(), b.truncation()});
    // Lowest degree of b bounds how many powers of b can contribute.
    unsigned bmin = n + 1;
    for (unsigned d = 1; d <= n && bmin > n; ++d)
        for (unsigned i = 0; i <= d; ++i)
            if (!is_zero(b.coeff(i, d - i))) {
                bmin = d;
                break;
            }
    const auto apow = powers(a.truncated(n), n);
    Series2<C> out(n, f.zero());
    Series2<C> bpow = Series2<C>::constant(n, one_like(f.zero()));
    const Series2<C> bt = b.truncated(n);
    for (unsigned j = 0; j <= n && (j == 0 || j * bmin <= n); ++j) {
        Series2<C> inner(n, f.zero());
        for (unsigned i = 0; i + j <= n; ++i) {
            const C& c = f.coeff(i, j);
            if (is_zero(c))
                continue;
            Series2<C> t = apow[i];
            t *= c;
            inner += t;
        }
        out += inner * bpow;
        bpow = bpow * bt;
    }
    return out;
}

/// F(x, y) = e(l(x) + l(y)) for a logarithm l, e its composition inverse.
template <class C>
Series2<C> fgl_from_log(const Series1<C>& l, unsigned truncation)
{
    if (!l.is_log_shaped())
        throw DomainError("fgl_from_log needs a series t + O(t^2)");
    if (truncation > l.truncation())
        throw DomainError("logarithm truncation below requested degree");
    const Series1<C> lt = l.truncated(truncation);
    const Series1<C> e = comp_inverse(lt);
    const Series2<C> sum = Series2<C>::in_x(lt, truncation) + Series2<C>::in_y(lt, truncation);
    return evaluate(e, sum);
}

/// Coefficient of x^i y^j in e(m(x) + m(y)) by the closed multinomial sum,
/// where m(x) = x + sum m_k x^{k+1} is given as a logarithm-shaped series:
///   sum over nu with sum k*nu_k = i+j-1, i = i_0 + sum (k+1) i_k, j = j_0 + sum (k+1) j_k,
///   i_k + j_k + k_k = nu_k, of
///   (-1)^{sum k_k} (i_0 + j_0 + sum(i_k + j_k + k_k) - 1)! / (i_0! j_0! prod i_k! j_k! k_k!) prod m_k^{nu_k}.
template <class C>
C fgl_coeff_general(unsigned i, unsigned j, const Series1<C>& m)
{
    if (i == 0 || j == 0)
        throw DomainError("fgl_coeff_general needs i, j >= 1");
    const unsigned total = i + j - 1;
    if (m.truncation() < i + j)
        throw DomainError("logarithm truncation below i + j");
    const C zero = m.zero();

    std::vector<unsigned> active; // k with m_k != 0 and k <= i+j-1
    for (unsigned k = 1; k <= total; ++k)
        if (!is_zero(m[k + 1]))
            active.push_back(k);
    const std::size_t r = active.size();

    std::vector<std::vector<C>> pw(r);
    auto mpow = [&](std::size_t a, unsigned e) -> const C& {
        auto& cache = pw[a];
        if (cache.empty())
            cache.push_back(one_like(zero));
        while (cache.size() <= e)
            cache.push_back(cache.back() * m[active[a] + 1]);
        return cache[e];
    };

    // Decompositions n = n_0 + sum (k+1) n_k over active k.
    auto decompositions = [&](unsigned n) {
        std::vector<std::vector<unsigned>> out;
        std::vector<unsigned> cur(r, 0);
        auto rec = [&](auto&& self, std::size_t a, unsigned left) -> void {
            if (a == r) {
                out.push_back(cur);
                return;
            }
            const unsigned w = active[a] + 1;
            for (unsigned c = 0; c * w <= left; ++c) {
                cur[a] = c;
                self(self, a + 1, left - c * w);
            }
            cur[a] = 0;
        };
        rec(rec, 0, n);
        return out;
    };

    const auto idec = decompositions(i);
    const auto jdec = decompositions(j);
    C sum = zero;
    std::vector<unsigned> kk(r, 0);
    for (const auto& iv : idec) {
        unsigned isum = 0;
        for (std::size_t a = 0; a < r; ++a)
            isum += (active[a] + 1) * iv[a];
        const unsigned i0 = i - isum;
        for (const auto& jv : jdec) {
            unsigned jsum = 0;
            unsigned used = 0;
            for (std::size_t a = 0; a < r; ++a) {
                jsum += (active[a] + 1) * jv[a];
                used += active[a] * (iv[a] + jv[a]);
            }
            const unsigned j0 = j - jsum;
            if (used > total)
                continue;
            // k_k with sum k * k_k = total - used
            auto rec = [&](auto&& self, std::size_t a, unsigned left) -> void {
                if (a == r) {
                    if (left != 0)
                        return;
                    unsigned count = i0 + j0;
                    unsigned ksum = 0;
                    Integer denom = factorial(i0) * factorial(j0);
                    for (std::size_t t = 0; t < r; ++t) {
                        count += iv[t] + jv[t] + kk[t];
                        ksum += kk[t];
                        denom *= factorial(iv[t]) * factorial(jv[t]) * factorial(kk[t]);
                    }
                    Rational coef = make_rational(factorial(count - 1), denom);
                    if (ksum % 2)
                        coef = -coef;
                    C term = scalar_like(zero, coef);
                    for (std::size_t t = 0; t < r; ++t) {
                        const unsigned nu = iv[t] + jv[t] + kk[t];
                        if (nu)
                            term = term * mpow(t, nu);
                    }
                    sum += term;
                    return;
                }
                const unsigned w = active[a];
                for (unsigned c = 0; c * w <= left; ++c) {
                    kk[a] = c;
                    self(self, a + 1, left - c * w);
                }
                kk[a] = 0;
            };
            rec(rec, 0, total - used);
        }
    }
    return sum;
}

/// Logarithm of F as the integral of 1/omega, omega(x) = dF/dy (x, 0).
template <class C>
Series1<C> log_from_fgl(const Series2<C>& f)
{
    if (!detail::supports_division(f.zero()))
        throw DomainError("log_from_fgl needs coefficients in a Q-algebra");
    const unsigned n = f.truncation();
    if (n == 0)
        throw DomainError("truncation must be positive");
    Series1<C> omega(n - 1, f.zero());
    for (unsigned i = 0; i + 1 <= n; ++i)
        omega[i] = f.coeff(i, 1);
    return omega.reciprocal().integral();
}

/// Outcome of an axiom check; `witness` names the first failing coefficient.
struct FglReport {
    bool ok = true;
    std::string axiom;
    std::string witness;
};

/// Coefficients of F(F(x,y),z) - F(x,F(y,z)) at total degree d, keyed by (a,b,c).
/// Uses F(F(x,y),z) = sum_i F_{i,c} [x^a y^b] F^i and the mirrored identity.
template <class C>
std::vector<std::pair<std::array<unsigned, 3>, C>> associativity_defect(const Series2<C>& f, unsigned lo, unsigned hi)
{
    const unsigned n = f.truncation();
    hi = std::min(hi, n);
    const auto p = powers(f, hi);
    std::vector<std::pair<std::array<unsigned, 3>, C>> out;
    for (unsigned d = lo; d <= hi; ++d)
        for (unsigned a = 0; a <= d; ++a)
            for (unsigned b = 0; a + b <= d; ++b) {
                const unsigned c = d - a - b;
                C lhs = f.zero();
                for (unsigned i = 0; i <= a + b && i + c <= n; ++i)
                    if (!is_zero(f.coeff(i, c)))
                        lhs += f.coeff(i, c) * p[i].coeff(a, b);
                C rhs = f.zero();
                for (unsigned j = 0; j <= b + c && a + j <= n; ++j)
                    if (!is_zero(f.coeff(a, j)))
                        rhs += f.coeff(a, j) * p[j].coeff(b, c);
                C diff = lhs - rhs;
                if (!is_zero(diff))
                    out.push_back({{a, b, c}, std::move(diff)});
            }
    return out;
}

/// Checks F(x,0) = x, F(0,y) = y, F(x,y) = F(y,x) and associativity up to total degree n.
template <class C>
FglReport check_fgl_axioms(const Series2<C>& f, unsigned n)
{
    n = std::min(n, f.truncation());
    const C one = one_like(f.zero());
    for (unsigned k = 0; k <= n; ++k) {
        const C expect = k == 1 ? one : f.zero();
        if (!(f.coeff(k, 0) == expect))
            return {false, "unit", "coefficient (" + std::to_string(k) + ",0)"};
        if (!(f.coeff(0, k) == expect))
            return {false, "unit", "coefficient (0," + std::to_string(k) + ")"};
    }
    for (unsigned d = 2; d <= n; ++d)
        for (unsigned i = 1; i < d; ++i)
            if (!(f.coeff(i, d - i) == f.coeff(d - i, i)))
                return {false, "commutativity",
                        "coefficient (" + std::to_string(i) + "," + std::to_string(d - i) + ") vs (" +
                            std::to_string(d - i) + "," + std::to_string(i) + ")"};
    const auto defect = associativity_defect(f, 0, n);
    if (!defect.empty()) {
        const auto& [abc, c] = defect.front();
        return {false, "associativity",
                "coefficient of x^" + std::to_string(abc[0]) + "*y^" + std::to_string(abc[1]) + "*z^" +
                    std::to_string(abc[2])};
    }
    return {};
}

} // namespace fgl
