#pragma once

// Sparse multivariate polynomials over Q, Z or F_p in named, weighted variables.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fgl/ratint.hpp"

namespace fgl {

enum class RingKind { Q, Z, Fp };

struct Ring {
    RingKind kind = RingKind::Q;
    std::uint32_t p = 0;

    static Ring rationals() { return {RingKind::Q, 0}; }
    static Ring integers() { return {RingKind::Z, 0}; }
    static Ring modp(std::uint32_t p)
    {
        require_prime(p);
        return {RingKind::Fp, p};
    }

    std::string name() const
    {
        switch (kind) {
        case RingKind::Q:
            return "Q";
        case RingKind::Z:
            return "Z";
        case RingKind::Fp:
            return "F_" + std::to_string(p);
        }
        return "?";
    }

    friend bool operator==(const Ring&, const Ring&) = default;
};

struct Variable {
    std::string name;
    unsigned weight = 1;

    friend bool operator==(const Variable&, const Variable&) = default;
};

/// Ordered variable list; the order fixes the canonical monomial order.
class VarTable {
public:
    VarTable() = default;
    explicit VarTable(std::vector<Variable> vars) : vars_(std::move(vars))
    {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            for (std::size_t j = 0; j < i; ++j)
                if (vars_[i].name == vars_[j].name)
                    throw DomainError("duplicate variable name " + vars_[i].name);
    }

    std::size_t size() const { return vars_.size(); }
    const Variable& operator[](std::size_t i) const { return vars_[i]; }
    const std::vector<Variable>& variables() const { return vars_; }

    std::optional<std::size_t> find(const std::string& name) const
    {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name)
                return i;
        return std::nullopt;
    }

    std::size_t index_of(const std::string& name) const
    {
        if (auto i = find(name))
            return *i;
        throw DomainError("unknown variable " + name);
    }

    friend bool operator==(const VarTable&, const VarTable&) = default;

private:
    std::vector<Variable> vars_;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

inline VarTablePtr make_vars(std::vector<Variable> vars)
{
    return std::make_shared<const VarTable>(std::move(vars));
}

inline bool same_vars(const VarTablePtr& a, const VarTablePtr& b)
{
    return a == b || (a && b && *a == *b);
}

/// Exponent vector with its cached weight. Ordered by weight, then
/// lexicographically on exponents in variable order.
struct Monomial {
    unsigned weight = 0;
    std::vector<unsigned> exps;

    unsigned degree() const
    {
        unsigned d = 0;
        for (auto e : exps)
            d += e;
        return d;
    }

    auto operator<=>(const Monomial&) const = default;
    bool operator==(const Monomial&) const = default;
};

inline Monomial unit_monomial(const VarTable& vars) { return Monomial{0, std::vector<unsigned>(vars.size(), 0)}; }

inline Monomial make_monomial(const VarTable& vars, std::vector<unsigned> exps)
{
    if (exps.size() != vars.size())
        throw DomainError("exponent vector has wrong length");
    Monomial m{0, std::move(exps)};
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        m.weight += m.exps[i] * vars[i].weight;
    return m;
}

inline Monomial operator*(const Monomial& a, const Monomial& b)
{
    Monomial m{a.weight + b.weight, a.exps};
    for (std::size_t i = 0; i < m.exps.size(); ++i)
        m.exps[i] += b.exps[i];
    return m;
}

inline bool divides(const Monomial& a, const Monomial& b)
{
    for (std::size_t i = 0; i < a.exps.size(); ++i)
        if (a.exps[i] > b.exps[i])
            return false;
    return true;
}

inline std::string monomial_text(const VarTable& vars, const Monomial& m)
{
    std::string out;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0)
            continue;
        if (!out.empty())
            out += "*";
        out += vars[i].name;
        if (m.exps[i] > 1)
            out += "^" + std::to_string(m.exps[i]);
    }
    return out;
}

class Poly {
public:
    using Terms = std::map<Monomial, Rational>;

    Poly() : vars_(make_vars({})) {}
    explicit Poly(VarTablePtr vars, Ring ring = Ring::rationals()) : vars_(std::move(vars)), ring_(ring) {}

    static Poly constant(VarTablePtr vars, const Rational& c, Ring ring = Ring::rationals())
    {
        Poly f(std::move(vars), ring);
        f.add_term(unit_monomial(*f.vars_), c);
        return f;
    }

    static Poly variable(VarTablePtr vars, const std::string& name, Ring ring = Ring::rationals())
    {
        Poly f(std::move(vars), ring);
        auto m = unit_monomial(*f.vars_);
        const auto i = f.vars_->index_of(name);
        m.exps[i] = 1;
        m.weight = (*f.vars_)[i].weight;
        f.add_term(m, 1);
        return f;
    }

    static Poly term(VarTablePtr vars, const Rational& c, std::vector<unsigned> exps, Ring ring = Ring::rationals())
    {
        Poly f(std::move(vars), ring);
        f.add_term(make_monomial(*f.vars_, std::move(exps)), c);
        return f;
    }

    const VarTablePtr& vars() const { return vars_; }
    const Ring& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.weight == 0 && terms_.begin()->first.degree() == 0); }

    Rational coefficient(const Monomial& m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    Rational coefficient(const std::vector<unsigned>& exps) const { return coefficient(make_monomial(*vars_, exps)); }

    Rational constant_term() const { return coefficient(unit_monomial(*vars_)); }

    /// Adds c * m, normalizing c into the ring.
    void add_term(const Monomial& m, const Rational& c)
    {
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(m, 0);
        it->second = normalize(it->second + c);
        if (it->second == 0)
            terms_.erase(it);
    }

    Poly& operator+=(const Poly& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, c);
        return *this;
    }

    Poly& operator-=(const Poly& o)
    {
        check_compatible(o);
        for (const auto& [m, c] : o.terms_)
            add_term(m, -c);
        return *this;
    }

    Poly& operator*=(const Rational& c)
    {
        if (normalize(c) == 0) {
            terms_.clear();
            return *this;
        }
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second = normalize(it->second * c);
            if (it->second == 0)
                it = terms_.erase(it);
            else
                ++it;
        }
        return *this;
    }

    Poly& operator/=(const Rational& c)
    {
        if (c == 0)
            throw DomainError("division by zero");
        if (ring_.kind == RingKind::Fp) {
            const Fp inv = Fp::from_rational(c, ring_.p).inverse();
            return *this *= Rational(inv.value());
        }
        *this *= Rational(1) / c;
        if (ring_.kind == RingKind::Z)
            for (const auto& [m, q] : terms_)
                if (q.get_den() != 1)
                    throw DomainError("division leaves Z");
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a)
    {
        a *= Rational(-1);
        return a;
    }
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend Poly operator/(Poly a, const Rational& c) { return a /= c; }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        a.check_compatible(b);
        Poly out(a.vars_, a.ring_);
        if (a.is_zero() || b.is_zero())
            return out;
        for (const auto& [ma, ca] : a.terms_)
            for (const auto& [mb, cb] : b.terms_)
                out.add_term(ma * mb, ca * cb);
        return out;
    }

    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly pow(unsigned e) const
    {
        Poly result = constant(vars_, 1, ring_);
        Poly base = *this;
        while (e) {
            if (e & 1)
                result *= base;
            e >>= 1;
            if (e)
                base = base * base;
        }
        return result;
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        return a.ring_ == b.ring_ && same_vars(a.vars_, b.vars_) && a.terms_ == b.terms_;
    }

    /// Weights of the monomials present.
    std::vector<unsigned> weights() const
    {
        std::vector<unsigned> w;
        for (const auto& [m, c] : terms_)
            if (w.empty() || w.back() != m.weight)
                w.push_back(m.weight);
        return w;
    }

    bool is_homogeneous(unsigned w) const
    {
        for (const auto& [m, c] : terms_)
            if (m.weight != w)
                return false;
        return true;
    }

    /// Canonical text: "-1/3*alpha_2_2 + 4/3*alpha_1_1^3".
    std::string to_string() const
    {
        if (terms_.empty())
            return "0";
        std::string out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Rational shown = c;
            if (ring_.kind == RingKind::Fp)
                shown = Fp(c.get_num().get_si(), ring_.p).balanced();
            const bool neg = shown < 0;
            const Rational mag = neg ? Rational(-shown) : shown;
            const std::string mono = monomial_text(*vars_, m);
            if (first)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            first = false;
            if (mono.empty())
                out += fgl::to_string(mag);
            else if (mag == 1)
                out += mono;
            else
                out += fgl::to_string(mag) + "*" + mono;
        }
        return out;
    }

    nlohmann::json to_json() const
    {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [m, c] : terms_) {
            nlohmann::json exps = nlohmann::json::object();
            for (std::size_t i = 0; i < m.exps.size(); ++i)
                if (m.exps[i])
                    exps[(*vars_)[i].name] = m.exps[i];
            terms.push_back({{"coeff", fgl::to_string(c)}, {"exps", exps}});
        }
        return {{"ring", ring_.name()}, {"terms", terms}};
    }

private:
    Rational normalize(const Rational& c) const
    {
        switch (ring_.kind) {
        case RingKind::Q:
            return c;
        case RingKind::Z:
            if (c.get_den() != 1)
                throw DomainError("non-integral coefficient " + fgl::to_string(c) + " in Z");
            return c;
        case RingKind::Fp:
            return Rational(Fp::from_rational(c, ring_.p).value());
        }
        return c;
    }

    void check_compatible(const Poly& o) const
    {
        if (!(ring_ == o.ring_))
            throw DomainError("ring mismatch: " + ring_.name() + " vs " + o.ring_.name());
        if (!same_vars(vars_, o.vars_))
            throw DomainError("variable table mismatch");
    }

    VarTablePtr vars_;
    Ring ring_;
    Terms terms_;
};

inline std::string to_string(const Poly& f) { return f.to_string(); }

inline Poly zero_like(const Poly& f) { return Poly(f.vars(), f.ring()); }
inline Poly one_like(const Poly& f) { return Poly::constant(f.vars(), 1, f.ring()); }
inline bool is_zero(const Poly& f) { return f.is_zero(); }
inline Poly scalar_like(const Poly& f, const Rational& q) { return Poly::constant(f.vars(), q, f.ring()); }

/// Image of f under the ring map sending each variable to a polynomial.
/// All images share one ring and variable table.
inline Poly substitute(const Poly& f, const std::map<std::string, Poly>& bindings)
{
    if (bindings.empty()) {
        if (f.is_zero())
            throw DomainError("substitute needs at least one binding to fix the target ring");
        if (!f.is_constant())
            throw DomainError("missing binding for a variable of " + f.to_string());
    }
    const Poly& proto = bindings.begin()->second;
    const auto& vars = *f.vars();
    std::vector<const Poly*> images(vars.size(), nullptr);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        auto it = bindings.find(vars[i].name);
        if (it != bindings.end()) {
            if (!(it->second.ring() == proto.ring()) || !same_vars(it->second.vars(), proto.vars()))
                throw DomainError("bindings do not share a ring");
            images[i] = &it->second;
        }
    }
    // Powers are reused across terms.
    std::vector<std::vector<Poly>> powers(vars.size());
    auto power = [&](std::size_t i, unsigned e) -> const Poly& {
        auto& cache = powers[i];
        if (cache.empty())
            cache.push_back(one_like(proto));
        while (cache.size() <= e)
            cache.push_back(cache.back() * *images[i]);
        return cache[e];
    };
    Poly out = zero_like(proto);
    for (const auto& [m, c] : f.terms()) {
        Poly t = scalar_like(proto, c);
        for (std::size_t i = 0; i < m.exps.size(); ++i) {
            if (m.exps[i] == 0)
                continue;
            if (!images[i])
                throw DomainError("missing binding for variable " + vars[i].name);
            t = t * power(i, m.exps[i]);
        }
        out += t;
    }
    return out;
}

/// Terms of weight exactly w.
inline Poly graded_component(const Poly& f, unsigned w)
{
    Poly out = zero_like(f);
    for (const auto& [m, c] : f.terms())
        if (m.weight == w)
            out.add_term(m, c);
    return out;
}

/// Coefficientwise image in F_p of a polynomial with p-local coefficients.
inline Poly reduce_mod_p(const Poly& f, std::uint32_t p)
{
    if (f.ring().kind == RingKind::Fp && f.ring().p != p)
        throw DomainError("cannot reduce an F_" + std::to_string(f.ring().p) + " polynomial mod " + std::to_string(p));
    Poly out(f.vars(), Ring::modp(p));
    for (const auto& [m, c] : f.terms())
        out.add_term(m, Rational(Fp::from_rational(c, p).value()));
    return out;
}

/// Same terms viewed over another ring (coefficients must be valid there).
inline Poly change_ring(const Poly& f, Ring ring)
{
    Poly out(f.vars(), ring);
    for (const auto& [m, c] : f.terms())
        out.add_term(m, c);
    return out;
}

/// Lift an F_p polynomial to Q using representatives in [0, p).
inline Poly lift_to_q(const Poly& f)
{
    Poly out(f.vars(), Ring::rationals());
    for (const auto& [m, c] : f.terms())
        out.add_term(m, c);
    return out;
}

/// Rewrites f over another variable table, matching variables by name.
inline Poly embed(const Poly& f, const VarTablePtr& target)
{
    const auto& from = *f.vars();
    std::vector<std::size_t> map(from.size());
    for (std::size_t i = 0; i < from.size(); ++i)
        map[i] = target->index_of(from[i].name);
    Poly out(target, f.ring());
    for (const auto& [m, c] : f.terms()) {
        std::vector<unsigned> exps(target->size(), 0);
        for (std::size_t i = 0; i < m.exps.size(); ++i)
            exps[map[i]] += m.exps[i];
        out.add_term(make_monomial(*target, std::move(exps)), c);
    }
    return out;
}

/// All exponent vectors of the given weight, in canonical order.
inline std::vector<Monomial> monomials_of_weight(const VarTable& vars, unsigned w)
{
    std::vector<Monomial> out;
    std::vector<unsigned> exps(vars.size(), 0);
    auto rec = [&](auto&& self, std::size_t i, unsigned left) -> void {
        if (i == vars.size()) {
            if (left == 0)
                out.push_back(make_monomial(vars, exps));
            return;
        }
        const unsigned wi = vars[i].weight;
        if (wi == 0)
            throw DomainError("weight-zero variable in graded enumeration");
        for (unsigned e = 0; e * wi <= left; ++e) {
            exps[i] = e;
            self(self, i + 1, left - e * wi);
        }
        exps[i] = 0;
    };
    rec(rec, 0, w);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace fgl
