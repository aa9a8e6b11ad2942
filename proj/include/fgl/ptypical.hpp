#pragma once

// p-typical part of the Abel law: logarithm t + m_{p-1} t^p + m_{p^2-1} t^{p^2} + ...,
// the map BP_* -> Z_(p)[a1, a2] it classifies, the kernel of that map weight by
// weight, and the rank generating function for p = 2.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fgl/abel.hpp"
#include "fgl/bp.hpp"
#include "fgl/mpoly.hpp"
#include "fgl/parse.hpp"
#include "fgl/pseries.hpp"
#include "fgl/ratint.hpp"

namespace fgl {

/// Truncation at N; m_{p^k - 1} for p^k <= N.
inline Series1<Poly> ptypical_log(unsigned p, unsigned truncation)
{
    require_prime(p);
    unsigned top = 1;
    while (upow(p, top) <= truncation)
        ++top;
    const unsigned need = std::max(2u, static_cast<unsigned>(upow(p, top - 1)));
    const auto m = abel_log_integral(abel_coeffs_closed(need), need);
    Series1<Poly> l = Series1<Poly>::identity(truncation, Poly(abel_vars()));
    for (unsigned k = 1; upow(p, k) <= truncation; ++k) {
        const auto d = static_cast<unsigned>(upow(p, k));
        l[d] = m[d - 1];
    }
    return l;
}

struct ClassifyingMap {
    unsigned p = 2;
    unsigned depth = 0;
    VarTablePtr source;       // v_1..v_depth
    std::vector<Poly> images; // images[n-1] is the image of v_n, over Q[a1, a2]

    const Poly& image(unsigned n) const { return images.at(n - 1); }

    Poly apply(const Poly& f) const
    {
        std::map<std::string, Poly> bind;
        for (unsigned n = 1; n <= depth; ++n)
            bind.emplace("v" + std::to_string(n), images[n - 1]);
        return substitute(f, bind);
    }
};

/// v_n -> p l_n - sum_{i<n} v_{n-i}^{p^i} l_i with l_k = m_{p^k - 1}.
inline ClassifyingMap classify_v_images(unsigned p, unsigned n_max)
{
    require_prime(p);
    if (n_max == 0)
        throw DomainError("classify_v_images needs n_max >= 1");
    const auto top = static_cast<unsigned>(upow(p, n_max));
    const auto m = abel_log_integral(abel_coeffs_closed(std::max(2u, top)), top);
    ClassifyingMap cm;
    cm.p = p;
    cm.depth = n_max;
    cm.source = bp_vars(p, n_max);
    std::vector<Poly> l;
    for (unsigned k = 1; k <= n_max; ++k)
        l.push_back(m[upow(p, k) - 1]);
    for (unsigned n = 1; n <= n_max; ++n) {
        Poly v = l[n - 1] * Rational(p);
        for (unsigned i = 1; i < n; ++i)
            v -= cm.images[n - i - 1].pow(static_cast<unsigned>(upow(p, i))) * l[i - 1];
        const auto w = static_cast<unsigned>(upow(p, n) - 1);
        if (!v.is_homogeneous(w))
            throw InvariantError("image of v_" + std::to_string(n) + " is not homogeneous of weight " +
                                 std::to_string(w));
        for (const auto& [mono, c] : v.terms())
            if (!is_p_local(c, p))
                throw InvariantError("image of v_" + std::to_string(n) + " has non-" + std::to_string(p) +
                                     "-local coefficient " + to_string(c));
        cm.images.push_back(std::move(v));
    }
    return cm;
}

/// True when some v_1 v_i^2 v_j^2 with 1 <= i < j divides the monomial.
inline bool has_conjecture_shape(const Monomial& m)
{
    const auto& e = m.exps;
    if (e.empty() || e[0] == 0)
        return false;
    for (std::size_t i = 0; i < e.size(); ++i)
        for (std::size_t j = i + 1; j < e.size(); ++j) {
            const unsigned need_i = 2 + (i == 0 ? 1 : 0);
            if (e[i] >= need_i && e[j] >= 2)
                return true;
        }
    return false;
}

struct Relation {
    Poly poly;      // over Q with integer coefficients; maps to zero
    Poly reduction; // over F_p
    bool minimal = false;
};

struct WeightKernel {
    unsigned weight = 0;
    std::size_t monomial_count = 0;
    std::size_t rank = 0; // rank of the image, i.e. of Lambda at this weight
    std::vector<Relation> relations;

    std::size_t kernel_dimension() const { return relations.size(); }
    std::size_t minimal_count() const
    {
        return static_cast<std::size_t>(
            std::count_if(relations.begin(), relations.end(), [](const Relation& r) { return r.minimal; }));
    }
};

struct RelationSet {
    unsigned p = 2;
    unsigned depth = 0;
    unsigned max_weight = 0;
    VarTablePtr vars;
    std::vector<WeightKernel> weights; // weights[w] for w = 0..max_weight
    std::vector<std::string> warnings;

    std::vector<Relation> minimal() const
    {
        std::vector<Relation> out;
        for (const auto& wk : weights)
            for (const auto& r : wk.relations)
                if (r.minimal)
                    out.push_back(r);
        return out;
    }
};

/// Largest n with p^n - 1 <= weight.
inline unsigned depth_for_weight(unsigned p, unsigned weight)
{
    unsigned n = 0;
    while (upow(p, n + 1) - 1 <= weight)
        ++n;
    return n;
}

/// Kernel of the classifying map at each weight <= max_weight.
///
/// A Z_(p)-basis of the kernel lattice K_w is split into minimal and redundant
/// parts against D_w = sum_i v_i K_{w - w(v_i)}: the redundant relations are the
/// reduced echelon basis of D_w mod p, the minimal ones are the remaining rows of
/// the reduced echelon basis of K_w mod p, lifted back into K_w. Columns are
/// ordered with monomials divisible by some v_1 v_i^2 v_j^2 first.
/// n_max 0 means depth_for_weight(p, max_weight).
inline RelationSet kernel_relations(unsigned p, unsigned n_max, unsigned max_weight)
{
    require_prime(p);
    const unsigned full = depth_for_weight(p, max_weight);
    if (n_max == 0)
        n_max = std::max(1u, full);
    RelationSet rs;
    rs.p = p;
    rs.depth = n_max;
    rs.max_weight = max_weight;
    if (n_max < full)
        rs.warnings.push_back("n_max = " + std::to_string(n_max) + " omits v_" + std::to_string(n_max + 1) +
                              ".. of weight <= " + std::to_string(max_weight) + "; relations may be missed");

    const ClassifyingMap cm = classify_v_images(p, n_max);
    rs.vars = cm.source;
    const auto& vt = *rs.vars;
    const auto avars = abel_vars();

    std::map<std::string, Poly> bind;
    for (unsigned n = 1; n <= n_max; ++n)
        bind.emplace("v" + std::to_string(n), cm.images[n - 1]);

    // Z_(p)-bases of the kernel by weight
    std::vector<std::vector<Poly>> basis(max_weight + 1);

    for (unsigned w = 0; w <= max_weight; ++w) {
        WeightKernel wk;
        wk.weight = w;
        const auto vmonos = monomials_of_weight(vt, w);
        wk.monomial_count = vmonos.size();
        if (w == 0 || vmonos.empty()) {
            wk.rank = vmonos.size();
            rs.weights.push_back(std::move(wk));
            continue;
        }
        const auto amonos = monomials_of_weight(*avars, w);
        std::map<Monomial, std::size_t> arow;
        for (std::size_t r = 0; r < amonos.size(); ++r)
            arow[amonos[r]] = r;
        RatMatrix img(amonos.size(), vmonos.size());
        for (std::size_t c = 0; c < vmonos.size(); ++c) {
            Poly mono(rs.vars);
            mono.add_term(vmonos[c], 1);
            const Poly image = substitute(mono, bind);
            for (const auto& [am, q] : image.terms())
                img(arow.at(am), c) = q;
        }
        const auto kernel = zlocal_kernel(img, p);
        wk.rank = vmonos.size() - kernel.size();
        if (kernel.empty()) {
            rs.weights.push_back(std::move(wk));
            continue;
        }

        // column order: conjecture-shaped monomials first, canonical order otherwise
        std::vector<std::size_t> order(vmonos.size());
        for (std::size_t c = 0; c < order.size(); ++c)
            order[c] = c;
        std::stable_partition(order.begin(), order.end(),
                              [&](std::size_t c) { return has_conjecture_shape(vmonos[c]); });
        std::map<Monomial, std::size_t> col; // monomial -> permuted column
        for (std::size_t pos = 0; pos < order.size(); ++pos)
            col[vmonos[order[pos]]] = pos;

        auto to_vec = [&](const Poly& f) {
            std::vector<std::uint32_t> v(vmonos.size(), 0);
            for (const auto& [m, c] : f.terms())
                v[col.at(m)] = Fp::from_rational(c, p).value();
            return v;
        };
        auto from_vec = [&](const std::vector<std::uint32_t>& v, Ring ring) {
            Poly f(rs.vars, ring);
            for (std::size_t pos = 0; pos < v.size(); ++pos)
                if (v[pos])
                    f.add_term(vmonos[order[pos]], Rational(v[pos]));
            return f;
        };

        std::vector<Poly> kpolys;
        for (const auto& k : kernel) {
            Poly f(rs.vars);
            for (std::size_t c = 0; c < vmonos.size(); ++c)
                if (k[c] != 0)
                    f.add_term(vmonos[c], Rational(k[c]));
            kpolys.push_back(std::move(f));
        }

        FpEchelon dspan(vmonos.size(), p);
        for (unsigned i = 1; i <= n_max; ++i) {
            const auto wi = vt[i - 1].weight;
            if (wi > w)
                break;
            const Poly vi = Poly::variable(rs.vars, vt[i - 1].name);
            for (const auto& k : basis[w - wi])
                dspan.insert(to_vec(vi * k));
        }
        FpEchelon kspan = dspan;
        for (const auto& k : kpolys)
            kspan.insert(to_vec(k));
        if (kspan.rank() != kernel.size())
            throw InvariantError("lower-weight multiples escape the kernel at weight " + std::to_string(w));

        // write a mod-p vector of K_w as an integer combination of the kernel basis
        FpEchelon coords(vmonos.size() + kpolys.size(), p);
        for (std::size_t r = 0; r < kpolys.size(); ++r) {
            auto v = to_vec(kpolys[r]);
            v.resize(vmonos.size() + kpolys.size(), 0);
            v[vmonos.size() + r] = 1;
            coords.insert(std::move(v));
        }
        auto lift = [&](const std::vector<std::uint32_t>& target) {
            auto v = target;
            v.resize(vmonos.size() + kpolys.size(), 0);
            coords.reduce(v);
            for (std::size_t c = 0; c < vmonos.size(); ++c)
                if (v[c])
                    throw InvariantError("reduction does not lie in the kernel at weight " + std::to_string(w));
            Poly f(rs.vars);
            for (std::size_t r = 0; r < kpolys.size(); ++r)
                if (const auto c = v[vmonos.size() + r])
                    f += kpolys[r] * Rational((p - c) % p);
            return f;
        };

        std::vector<bool> dpivot(vmonos.size(), false);
        for (auto c : dspan.pivots())
            dpivot[c] = true;
        std::vector<std::size_t> rows(kspan.rank());
        for (std::size_t r = 0; r < rows.size(); ++r)
            rows[r] = r;
        std::sort(rows.begin(), rows.end(), [&](auto a, auto b) { return kspan.pivots()[a] < kspan.pivots()[b]; });
        for (auto r : rows) {
            const bool minimal = !dpivot[kspan.pivots()[r]];
            if (minimal) {
                const auto& v = kspan.rows()[r];
                wk.relations.push_back({lift(v), from_vec(v, Ring::modp(p)), true});
            }
        }
        std::vector<std::size_t> drows(dspan.rank());
        for (std::size_t r = 0; r < drows.size(); ++r)
            drows[r] = r;
        std::sort(drows.begin(), drows.end(), [&](auto a, auto b) { return dspan.pivots()[a] < dspan.pivots()[b]; });
        for (auto r : drows) {
            const auto& v = dspan.rows()[r];
            wk.relations.push_back({lift(v), from_vec(v, Ring::modp(p)), false});
        }

        for (const auto& rel : wk.relations) {
            if (!substitute(rel.poly, bind).is_zero())
                throw InvariantError("relation " + rel.poly.to_string() + " does not map to zero");
            basis[w].push_back(rel.poly);
        }
        rs.weights.push_back(std::move(wk));
    }
    return rs;
}

struct RegularityWitness {
    bool found = false;
    unsigned weight = 0;
    Poly target;    // v_2^7
    Poly cofactor;  // X with target = v_1 X + relation part
    Poly relation;  // the F_2 combination of kernel elements used
};

struct Mod2Presentation {
    std::vector<Poly> generators; // minimal generators over F_2, by weight
    std::vector<std::string> expected_missing;
    RegularityWitness witness;
    bool matches_expected = false;
};

/// Solve target = v_1 X + (kernel combination) over F_p at the target's weight.
inline RegularityWitness regularity_witness(const RelationSet& rs, const Poly& target)
{
    RegularityWitness wit;
    wit.target = target;
    const auto ws = target.weights();
    if (ws.size() != 1 || ws[0] > rs.max_weight)
        throw DomainError("witness target must be homogeneous of weight <= " + std::to_string(rs.max_weight));
    const unsigned w = ws[0];
    wit.weight = w;
    const auto& rels = rs.weights[w].relations;
    const auto vmonos = monomials_of_weight(*rs.vars, w);
    // only monomials free of v_1 matter modulo (v_1)
    std::vector<Monomial> free;
    for (const auto& m : vmonos)
        if (m.exps[0] == 0)
            free.push_back(m);
    std::map<Monomial, std::size_t> col;
    for (std::size_t c = 0; c < free.size(); ++c)
        col[free[c]] = c;
    const std::size_t dim = free.size() + rels.size();
    FpEchelon ech(dim, rs.p);
    for (std::size_t r = 0; r < rels.size(); ++r) {
        std::vector<std::uint32_t> v(dim, 0);
        for (const auto& [m, c] : rels[r].reduction.terms())
            if (auto it = col.find(m); it != col.end())
                v[it->second] = Fp::from_rational(c, rs.p).value();
        v[free.size() + r] = 1;
        ech.insert(std::move(v));
    }
    std::vector<std::uint32_t> t(dim, 0);
    const Poly tmod = reduce_mod_p(target, rs.p);
    for (const auto& [m, c] : tmod.terms())
        if (auto it = col.find(m); it != col.end())
            t[it->second] = Fp::from_rational(c, rs.p).value();
    ech.reduce(t);
    for (std::size_t c = 0; c < free.size(); ++c)
        if (t[c])
            return wit;
    Poly rel(rs.vars, Ring::modp(rs.p));
    for (std::size_t r = 0; r < rels.size(); ++r)
        if (const auto c = t[free.size() + r])
            rel += rels[r].reduction * Rational((rs.p - c) % rs.p);
    const Poly rest = tmod - rel;
    Poly cof(rs.vars, Ring::modp(rs.p));
    for (const auto& [m, c] : rest.terms()) {
        if (m.exps[0] == 0)
            throw InvariantError("witness remainder is not divisible by v1");
        auto e = m.exps;
        --e[0];
        cof.add_term(make_monomial(*rs.vars, e), c);
    }
    wit.found = true;
    wit.cofactor = cof;
    wit.relation = rel;
    return wit;
}

/// The four low mod 2 relations: v1^3 v2^2, v1^3 v3^2 + v1^2 v2^5,
/// v1 v2^2 v3^2 + v1^2 v2^4 v3 + v2^7, v1^3 v4^2 + v1^2 v2 v3^4.
inline std::vector<std::string> expected_mod2_relations()
{
    return {"v1^3*v2^2", "v1^3*v3^2 + v1^2*v2^5", "v1*v2^2*v3^2 + v1^2*v2^4*v3 + v2^7", "v1^3*v4^2 + v1^2*v2*v3^4"};
}

namespace detail {

inline bool all_vars_present(const std::string& text, const VarTable& vars)
{
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != 'v')
            continue;
        std::size_t j = i + 1;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])))
            ++j;
        if (!vars.find(text.substr(i, j - i)))
            return false;
        i = j - 1;
    }
    return true;
}

} // namespace detail

inline Mod2Presentation mod2_presentation(const RelationSet& rs)
{
    if (rs.p != 2)
        throw DomainError("mod2_presentation needs p = 2");
    Mod2Presentation out;
    for (const auto& r : rs.minimal())
        out.generators.push_back(r.reduction);
    for (const auto& want : expected_mod2_relations()) {
        // skip relations beyond the computed depth or weight
        if (!detail::all_vars_present(want, *rs.vars))
            continue;
        const Poly f = parse_poly(want, rs.vars, Ring::modp(2));
        if (f.weights().front() > rs.max_weight)
            continue;
        if (std::find(out.generators.begin(), out.generators.end(), f) == out.generators.end())
            out.expected_missing.push_back(want);
    }
    out.matches_expected = out.expected_missing.empty();
    if (rs.depth >= 2 && rs.max_weight >= 21)
        out.witness = regularity_witness(rs, Poly::variable(rs.vars, "v2").pow(7));
    return out;
}

/// Integer power series c_0 + c_1 t + ... + c_T t^T.
struct GenFun {
    unsigned truncation = 0;
    std::vector<Integer> coeffs;

    explicit GenFun(unsigned t = 0, long c0 = 0) : truncation(t), coeffs(t + 1, Integer(0)) { coeffs[0] = c0; }

    GenFun& operator+=(const GenFun& o)
    {
        for (unsigned k = 0; k <= truncation; ++k)
            coeffs[k] += o.coeffs[k];
        return *this;
    }
    friend GenFun operator+(GenFun a, const GenFun& b) { return a += b; }
    friend GenFun operator*(const GenFun& a, const GenFun& b)
    {
        GenFun out(a.truncation);
        for (unsigned i = 0; i <= a.truncation; ++i) {
            if (a.coeffs[i] == 0)
                continue;
            for (unsigned j = 0; i + j <= a.truncation; ++j)
                out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
        }
        return out;
    }
    friend bool operator==(const GenFun& a, const GenFun& b) { return a.coeffs == b.coeffs; }

    /// 1 / (1 - t^d)
    static GenFun geometric(unsigned t, unsigned d)
    {
        GenFun g(t);
        for (unsigned k = 0; k <= t; k += d)
            g.coeffs[k] = 1;
        return g;
    }
    /// c t^e (1 + ...) style monomial
    static GenFun monomial(unsigned t, unsigned e, long c = 1)
    {
        GenFun g(t);
        if (e <= t)
            g.coeffs[e] = c;
        return g;
    }
    bool nonnegative() const
    {
        return std::all_of(coeffs.begin(), coeffs.end(), [](const Integer& c) { return c >= 0; });
    }

    /// Exponents multiplied by `scale` (e.g. 2 for topological degree).
    std::string to_string(unsigned scale = 1) const
    {
        std::string out;
        for (unsigned k = 0; k <= truncation; ++k) {
            if (coeffs[k] == 0)
                continue;
            const std::string c = coeffs[k].get_str();
            const unsigned e = k * scale;
            std::string mono = e == 0 ? "" : (e == 1 ? "t" : "t^" + std::to_string(e));
            std::string term = mono.empty() ? c : (coeffs[k] == 1 ? mono : c + "*" + mono);
            out += out.empty() ? term : " + " + term;
        }
        return (out.empty() ? "0" : out) + " + O(t^" + std::to_string((truncation + 1) * scale) + ")";
    }
};

namespace detail {

// weights 2^n - 1, n >= 2, up to t
inline std::vector<unsigned> odd_weights(unsigned t)
{
    std::vector<unsigned> w;
    for (unsigned n = 2; (1u << n) - 1 <= t; ++n)
        w.push_back((1u << n) - 1);
    return w;
}

inline GenFun one_plus(unsigned t, unsigned d) { return GenFun(t, 1) + GenFun::monomial(t, d); }

} // namespace detail

struct GenFunParts {
    GenFun free_part;    // monomials without v_1
    GenFun power_part;   // v_1 or v_1^2 times distinct v's times v_j^n, n > 1
    GenFun v1_part;      // v_1^n times distinct v's
    GenFun sum() const { return free_part + power_part + v1_part; }
};

inline GenFunParts genfun_parts(unsigned t)
{
    const auto w = detail::odd_weights(t);
    GenFunParts out{GenFun(t, 1), GenFun(t), GenFun(t)};
    for (auto d : w)
        out.free_part = out.free_part * GenFun::geometric(t, d);

    const GenFun t_plus_t2 = GenFun::monomial(t, 1) + GenFun::monomial(t, 2);
    for (std::size_t n = 0; n < w.size(); ++n) {
        GenFun row = GenFun::monomial(t, 2 * w[n]) * GenFun::geometric(t, w[n]);
        for (std::size_t k = 0; k < w.size(); ++k)
            if (k != n)
                row = row * detail::one_plus(t, w[k]);
        out.power_part += row;
    }
    out.power_part = t_plus_t2 * out.power_part;

    out.v1_part = GenFun::monomial(t, 1) * GenFun::geometric(t, 1);
    for (auto d : w)
        out.v1_part = out.v1_part * detail::one_plus(t, d);
    return out;
}

/// prod (1 + t^{w_n}) * [prod 1/(1 - t^{2 w_n}) + (t + t^2)(1/(1 - t^2) + sum t^{2 w_n}/(1 - t^{2 w_n}))]
inline GenFun genfun_closed(unsigned t)
{
    const auto w = detail::odd_weights(t);
    GenFun common(t, 1);
    for (auto d : w)
        common = common * detail::one_plus(t, d);
    GenFun first(t, 1);
    for (auto d : w)
        first = first * GenFun::geometric(t, 2 * d);
    GenFun inner = GenFun::geometric(t, 2);
    for (auto d : w)
        inner += GenFun::monomial(t, 2 * d) * GenFun::geometric(t, 2 * d);
    const GenFun t_plus_t2 = GenFun::monomial(t, 1) + GenFun::monomial(t, 2);
    return common * (first + t_plus_t2 * inner);
}

struct ConjectureLine {
    unsigned weight = 0;
    std::size_t computed_rank = 0;
    Integer predicted_rank;
    bool rank_matches = true;
    std::vector<std::string> relations;       // minimal relations mod 2 at this weight
    std::vector<std::string> shape_failures;  // those without a v1 v_i^2 v_j^2 leading monomial
};

struct ConjectureReport {
    unsigned max_weight = 0;
    std::vector<ConjectureLine> lines;
    std::vector<std::string> warnings;
    bool all_consistent() const
    {
        return std::all_of(lines.begin(), lines.end(),
                           [](const ConjectureLine& l) { return l.rank_matches && l.shape_failures.empty(); });
    }
};

/// Leading monomial of a canonical F_p representative: first in the
/// conjecture-shaped-first order used by kernel_relations.
inline std::optional<Monomial> conjecture_leading(const Poly& f)
{
    for (const auto& [m, c] : f.terms())
        if (has_conjecture_shape(m))
            return m;
    return std::nullopt;
}

/// Rank and leading-shape comparison for p = 2, weights 0..max_weight.
inline ConjectureReport conjecture_check(unsigned max_weight, unsigned n_max = 0)
{
    const RelationSet rs = kernel_relations(2, n_max, max_weight);
    const GenFun g = genfun_closed(max_weight);
    ConjectureReport rep;
    rep.max_weight = max_weight;
    rep.warnings = rs.warnings;
    for (const auto& wk : rs.weights) {
        ConjectureLine line;
        line.weight = wk.weight;
        line.computed_rank = wk.rank;
        line.predicted_rank = g.coeffs[wk.weight];
        line.rank_matches = Integer(static_cast<unsigned long>(wk.rank)) == line.predicted_rank;
        for (const auto& r : wk.relations) {
            if (!r.minimal)
                continue;
            line.relations.push_back(r.reduction.to_string());
            if (!conjecture_leading(r.reduction))
                line.shape_failures.push_back(r.reduction.to_string());
        }
        rep.lines.push_back(std::move(line));
    }
    return rep;
}

} // namespace fgl
