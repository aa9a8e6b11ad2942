#pragma once

// Brown-Peterson logarithm and formal group law in Hazewinkel generators.
//
// The logarithm is x + l_1 x^p + l_2 x^{p^2} + ..., with
//   p l_n = v_n + v_{n-1}^p l_1 + v_{n-2}^{p^2} l_2 + ... + v_1^{p^{n-1}} l_{n-1}.
// Weights are half the topological degree: w(v_n) = p^n - 1.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fgl/mpoly.hpp"
#include "fgl/pseries.hpp"
#include "fgl/ratint.hpp"

namespace fgl {

/// v_1..v_depth with weights p^k - 1.
inline VarTablePtr bp_vars(unsigned p, unsigned depth)
{
    require_prime(p);
    std::vector<Variable> vars;
    for (unsigned k = 1; k <= depth; ++k)
        vars.push_back({"v" + std::to_string(k), static_cast<unsigned>(upow(p, k) - 1)});
    return make_vars(std::move(vars));
}

/// l_1..l_n from the recursion; entry k-1 holds l_k.
inline std::vector<Poly> bp_log_recursive(unsigned p, unsigned n, const VarTablePtr& vars)
{
    require_prime(p);
    if (n == 0)
        throw DomainError("bp_log_recursive needs n >= 1");
    if (vars->size() < n)
        throw DomainError("variable table too shallow for l_" + std::to_string(n));
    std::vector<Poly> l;
    for (unsigned k = 1; k <= n; ++k) {
        Poly acc = Poly::variable(vars, "v" + std::to_string(k));
        for (unsigned i = 1; i < k; ++i)
            acc += Poly::variable(vars, "v" + std::to_string(k - i)).pow(static_cast<unsigned>(upow(p, i))) * l[i - 1];
        l.push_back(acc / Rational(p));
    }
    return l;
}

inline std::vector<Poly> bp_log_recursive(unsigned p, unsigned n) { return bp_log_recursive(p, n, bp_vars(p, n)); }

/// l_n as the sum over compositions n_1 + ... + n_k = n of
/// v_{n_1} v_{n_2}^{p^{n_1}} v_{n_3}^{p^{n_1+n_2}} ... / p^k.
inline Poly bp_log_closed(unsigned p, unsigned n, const VarTablePtr& vars)
{
    require_prime(p);
    if (n == 0)
        throw DomainError("bp_log_closed needs n >= 1");
    if (vars->size() < n)
        throw DomainError("variable table too shallow for l_" + std::to_string(n));
    Poly sum(vars);
    std::vector<unsigned> parts;
    auto rec = [&](auto&& self, unsigned left) -> void {
        if (left == 0) {
            std::vector<unsigned> exps(vars->size(), 0);
            unsigned prefix = 0;
            for (auto part : parts) {
                exps[part - 1] += static_cast<unsigned>(upow(p, prefix));
                prefix += part;
            }
            sum += Poly::term(vars, make_rational(1, ipow(Integer(p), parts.size())), exps);
            return;
        }
        for (unsigned part = 1; part <= left; ++part) {
            parts.push_back(part);
            self(self, left - part);
            parts.pop_back();
        }
    };
    rec(rec, n);
    return sum;
}

inline Poly bp_log_closed(unsigned p, unsigned n) { return bp_log_closed(p, n, bp_vars(p, n)); }

/// Depth needed so that every l_k with p^k - 1 <= degree is available.
inline unsigned bp_depth_for_degree(unsigned p, unsigned degree)
{
    unsigned k = 0;
    while (upow(p, k + 1) - 1 <= degree)
        ++k;
    return k;
}

/// Prime, depth, generators and cached l_1..l_depth.
class BPContext {
public:
    BPContext(unsigned p, unsigned depth) : p_(p), depth_(depth), vars_(bp_vars(p, depth))
    {
        if (depth > 0)
            l_ = bp_log_recursive(p, depth, vars_);
    }

    unsigned prime() const { return p_; }
    unsigned depth() const { return depth_; }
    const VarTablePtr& vars() const { return vars_; }
    const std::vector<Poly>& l() const { return l_; }

    Poly v(unsigned k) const { return Poly::variable(vars_, "v" + std::to_string(k)); }

    /// x + l_1 x^p + l_2 x^{p^2} + ... truncated at degree n.
    Series1<Poly> log_series(unsigned n) const
    {
        auto s = Series1<Poly>::identity(n, Poly(vars_));
        for (unsigned k = 1; upow(p_, k) <= n; ++k) {
            if (k > depth_)
                throw DomainError("BP depth " + std::to_string(depth_) + " too small for degree " + std::to_string(n));
            s[static_cast<unsigned>(upow(p_, k))] = l_[k - 1];
        }
        return s;
    }

    /// alpha_ij by the multinomial sum restricted to the indices p^k - 1, with
    /// sum nu_k (p^k - 1) = i + j - 1; zero unless (p-1) | (i+j-1).
    Poly fgl_coeff(unsigned i, unsigned j) const
    {
        if (i == 0 || j == 0)
            throw DomainError("bp_fgl_coeff needs i, j >= 1");
        if ((i + j - 1) % (p_ - 1) != 0)
            return Poly(vars_);
        if (bp_depth_for_degree(p_, i + j - 1) > depth_)
            throw DomainError("BP depth " + std::to_string(depth_) + " too small for alpha_" + std::to_string(i) +
                              "_" + std::to_string(j));
        return fgl_coeff_general(i, j, log_series(i + j));
    }

private:
    unsigned p_;
    unsigned depth_;
    VarTablePtr vars_;
    std::vector<Poly> l_;
};

inline Poly bp_fgl_coeff(unsigned p, unsigned i, unsigned j)
{
    return BPContext(p, std::max(1u, bp_depth_for_degree(p, i + j - 1))).fgl_coeff(i, j);
}

/// The scalar c = -p / C(p^{n+1}, k p^n) with v_{n+1} = c alpha + decomposables.
struct LeadingAlphaRelation {
    Rational scalar;
    Integer binomial;
    unsigned valuation = 0;
    unsigned i = 0;
    unsigned j = 0;
    Poly alpha;
    bool linear_term_cancels = false; // alpha + C l_{n+1} has no v_{n+1} term
    bool scalar_matches_alpha = false; // coefficient of v_{n+1} in alpha is 1/c
};

inline LeadingAlphaRelation leading_alpha_relation(unsigned p, unsigned n, unsigned k)
{
    require_prime(p);
    if (k == 0 || k >= p)
        throw DomainError("leading_alpha_relation requires 0 < k < p");
    LeadingAlphaRelation r;
    const auto pn = static_cast<unsigned>(upow(p, n));
    r.i = k * pn;
    r.j = (p - k) * pn;
    r.binomial = binomial(pn * p, k * pn);
    r.valuation = padic_valuation(r.binomial, p);
    r.scalar = make_rational(-Integer(p), r.binomial);
    if (!is_p_local(r.scalar, p))
        throw InvariantError("leading scalar is not p-local");

    const BPContext ctx(p, n + 1);
    r.alpha = ctx.fgl_coeff(r.i, r.j);
    const Poly shifted = r.alpha + ctx.l()[n] * Rational(r.binomial);
    const Monomial vlin = ctx.v(n + 1).terms().begin()->first;
    r.linear_term_cancels = shifted.coefficient(vlin) == 0;
    r.scalar_matches_alpha = r.alpha.coefficient(vlin) == 1 / r.scalar;
    return r;
}

/// Variable name alpha_i_j for the coefficient at x^i y^j.
inline std::string alpha_name(unsigned i, unsigned j) { return "alpha_" + std::to_string(i) + "_" + std::to_string(j); }

/// v_n as a polynomial in the generators alpha_{k_m p^m, (p-k_m) p^m}, m = 0..n-1,
/// solving one graded linear system in the monomial basis of weight p^n - 1.
/// Result lives over the table alpha_{..} with weights p^{m+1} - 1.
inline Poly express_v_in_alphas(unsigned p, unsigned n, const std::vector<unsigned>& k_seq)
{
    require_prime(p);
    if (n == 0)
        throw DomainError("express_v_in_alphas needs n >= 1");
    if (k_seq.size() < n)
        throw DomainError("need one k per generator below v_" + std::to_string(n));
    for (unsigned m = 0; m < n; ++m)
        if (k_seq[m] == 0 || k_seq[m] >= p)
            throw DomainError("each k must satisfy 0 < k < p");

    const BPContext ctx(p, n);
    std::vector<Variable> avars;
    std::vector<Poly> images; // alpha generators expanded in v's
    for (unsigned m = 0; m < n; ++m) {
        const auto pm = static_cast<unsigned>(upow(p, m));
        const unsigned i = k_seq[m] * pm;
        const unsigned j = (p - k_seq[m]) * pm;
        avars.push_back({alpha_name(i, j), static_cast<unsigned>(upow(p, m + 1) - 1)});
        images.push_back(ctx.fgl_coeff(i, j));
    }
    const VarTablePtr atable = make_vars(avars);
    const auto weight = static_cast<unsigned>(upow(p, n) - 1);

    const auto amonos = monomials_of_weight(*atable, weight);
    const auto vmonos = monomials_of_weight(*ctx.vars(), weight);
    std::map<Monomial, std::size_t> vrow;
    for (std::size_t r = 0; r < vmonos.size(); ++r)
        vrow[vmonos[r]] = r;

    std::map<std::string, Poly> bind;
    for (unsigned m = 0; m < n; ++m)
        bind.emplace(avars[m].name, images[m]);

    RatMatrix a(vmonos.size(), amonos.size());
    for (std::size_t c = 0; c < amonos.size(); ++c) {
        Poly mono(atable);
        mono.add_term(amonos[c], 1);
        const Poly img = substitute(mono, bind);
        for (const auto& [vm, q] : img.terms()) {
            auto it = vrow.find(vm);
            if (it == vrow.end())
                throw InvariantError("alpha monomial image is not homogeneous of weight " + std::to_string(weight));
            a(it->second, c) = q;
        }
    }
    std::vector<Rational> b(vmonos.size(), Rational(0));
    b[vrow.at(ctx.v(n).terms().begin()->first)] = 1;

    const auto x = solve_unique(a, b);
    if (!x)
        throw InvariantError("v_" + std::to_string(n) + " is not a polynomial in the chosen alpha generators");
    Poly out(atable);
    for (std::size_t c = 0; c < amonos.size(); ++c) {
        if (!is_p_local((*x)[c], p))
            throw InvariantError("coefficient " + to_string((*x)[c]) + " is not p-local");
        out.add_term(amonos[c], (*x)[c]);
    }
    return out;
}

} // namespace fgl
