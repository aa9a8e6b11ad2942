#pragma once

// Exact scalars: arbitrary-precision integers and rationals (GMP), small prime
// fields, p-adic valuations and the lattice linear algebra used for graded
// kernel computations.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace fgl {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when an input lies outside an operation's domain.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Raised when a mathematical invariant the library relies on fails.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

inline Rational make_rational(const Integer& num, const Integer& den)
{
    if (den == 0)
        throw DomainError("zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Integer& n) { return n.get_str(); }

/// "num/den", or just "num" for integers.
inline std::string to_string(const Rational& q)
{
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(const std::string& text)
{
    Rational q;
    if (q.set_str(text, 10) != 0)
        throw DomainError("not a rational number: " + text);
    if (q.get_den() == 0)
        throw DomainError("zero denominator: " + text);
    q.canonicalize();
    return q;
}

inline bool is_prime(unsigned long p)
{
    if (p < 2)
        return false;
    for (unsigned long d = 2; d * d <= p; ++d)
        if (p % d == 0)
            return false;
    return true;
}

inline void require_prime(unsigned long p)
{
    if (!is_prime(p))
        throw DomainError("not a prime: " + std::to_string(p));
}

inline Integer factorial(unsigned long n)
{
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k)
{
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Integer ipow(const Integer& base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rational qpow(const Rational& base, unsigned long e)
{
    return make_rational(ipow(base.get_num(), e), ipow(base.get_den(), e));
}

inline unsigned long upow(unsigned long base, unsigned long e)
{
    unsigned long r = 1;
    while (e--)
        r *= base;
    return r;
}

/// Largest e with p^e | n.
inline unsigned padic_valuation(const Integer& n, unsigned long p)
{
    require_prime(p);
    if (n == 0)
        throw DomainError("p-adic valuation of zero is infinite");
    Integer m = abs(n);
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++e;
    }
    return e;
}

/// Valuation of a nonzero rational, v(num) - v(den).
inline long padic_valuation(const Rational& q, unsigned long p)
{
    if (q == 0)
        throw DomainError("p-adic valuation of zero is infinite");
    return static_cast<long>(padic_valuation(q.get_num(), p)) -
           static_cast<long>(padic_valuation(q.get_den(), p));
}

/// Denominator prime to p.
inline bool is_p_local(const Rational& q, unsigned long p)
{
    return !mpz_divisible_ui_p(q.get_den().get_mpz_t(), p);
}

/// Legendre's sum floor(m/p) + floor(m/p^2) + ..., the valuation of m!.
inline unsigned long factorial_valuation(unsigned long m, unsigned long p)
{
    require_prime(p);
    unsigned long total = 0;
    while (m > 0) {
        m /= p;
        total += m;
    }
    return total;
}

/// Valuation of C(p^{n+1}, k p^n) for 0 < k < p; always 1.
inline unsigned long binom_valuation(unsigned long p, unsigned long n, unsigned long k)
{
    require_prime(p);
    if (k == 0 || k >= p)
        throw DomainError("binom_valuation requires 0 < k < p");
    const unsigned long top = upow(p, n + 1);
    const unsigned long part = k * upow(p, n);
    return factorial_valuation(top, p) - factorial_valuation(part, p) -
           factorial_valuation(top - part, p);
}

/// Element of the prime field F_p. The modulus travels with the value.
class Fp {
public:
    Fp() = default;
    Fp(long long value, std::uint32_t p) : p_(p)
    {
        long long r = value % static_cast<long long>(p);
        v_ = static_cast<std::uint32_t>(r < 0 ? r + p : r);
    }

    /// Image of a p-local rational.
    static Fp from_rational(const Rational& q, std::uint32_t p)
    {
        if (!is_p_local(q, p))
            throw DomainError("coefficient " + to_string(q) + " is not " + std::to_string(p) + "-local");
        Integer num = q.get_num() % p;
        Integer den = q.get_den() % p;
        Fp a(num.get_si(), p);
        Fp b(den.get_si(), p);
        return a / b;
    }

    std::uint32_t value() const { return v_; }
    std::uint32_t modulus() const { return p_; }
    bool is_zero() const { return v_ == 0; }

    /// Representative in (-p/2, p/2].
    long balanced() const
    {
        return v_ > p_ / 2 ? static_cast<long>(v_) - static_cast<long>(p_) : static_cast<long>(v_);
    }

    Fp inverse() const
    {
        if (v_ == 0)
            throw DomainError("inverse of zero in F_p");
        // Fermat
        std::uint64_t base = v_, r = 1, e = p_ - 2;
        while (e) {
            if (e & 1)
                r = r * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        Fp out;
        out.p_ = p_;
        out.v_ = static_cast<std::uint32_t>(r);
        return out;
    }

    Fp& operator+=(const Fp& o)
    {
        check(o);
        v_ = static_cast<std::uint32_t>((std::uint64_t(v_) + o.v_) % p_);
        return *this;
    }
    Fp& operator-=(const Fp& o)
    {
        check(o);
        v_ = static_cast<std::uint32_t>((std::uint64_t(v_) + p_ - o.v_) % p_);
        return *this;
    }
    Fp& operator*=(const Fp& o)
    {
        check(o);
        v_ = static_cast<std::uint32_t>(std::uint64_t(v_) * o.v_ % p_);
        return *this;
    }
    Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

    friend Fp operator+(Fp a, const Fp& b) { return a += b; }
    friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
    friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
    friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
    friend Fp operator-(const Fp& a) { return Fp(0, a.p_) - a; }
    friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

private:
    void check(const Fp& o)
    {
        if (p_ == 0)
            p_ = o.p_;
        if (o.p_ != p_ && o.p_ != 0)
            throw DomainError("mixing different prime fields");
    }

    std::uint32_t v_ = 0;
    std::uint32_t p_ = 0;
};

inline std::string to_string(const Fp& a) { return std::to_string(a.value()); }

// Coefficient-ring hooks used by the series templates.
inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_zero(const Rational& q) { return q == 0; }
inline Rational scalar_like(const Rational&, const Rational& q) { return q; }

inline Fp zero_like(const Fp& a) { return Fp(0, a.modulus()); }
inline Fp one_like(const Fp& a) { return Fp(1, a.modulus()); }
inline bool is_zero(const Fp& a) { return a.is_zero(); }
inline Fp scalar_like(const Fp& a, const Rational& q) { return Fp::from_rational(q, a.modulus()); }

/// Dense row-major matrix.
template <class T>
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<T> entries;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, T(0)) {}

    T& operator()(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const T& operator()(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

struct Rref {
    RatMatrix reduced;
    std::vector<std::size_t> pivot_cols;
};

/// Reduced row echelon form over Q.
inline Rref rref(RatMatrix m)
{
    Rref out;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
        std::size_t piv = row;
        while (piv < m.rows && m(piv, col) == 0)
            ++piv;
        if (piv == m.rows)
            continue;
        if (piv != row)
            for (std::size_t c = 0; c < m.cols; ++c)
                std::swap(m(piv, c), m(row, c));
        const Rational inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols; ++c)
            m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || m(r, col) == 0)
                continue;
            const Rational f = m(r, col);
            for (std::size_t c = col; c < m.cols; ++c)
                if (m(row, c) != 0)
                    m(r, c) -= f * m(row, c);
        }
        out.pivot_cols.push_back(col);
        ++row;
    }
    out.reduced = std::move(m);
    return out;
}

/// Basis of {v : M v = 0} over Q, one vector per free column.
inline std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m)
{
    const Rref r = rref(m);
    std::vector<bool> is_pivot(m.cols, false);
    for (auto c : r.pivot_cols)
        is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < m.cols; ++f) {
        if (is_pivot[f])
            continue;
        std::vector<Rational> v(m.cols, Rational(0));
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
            v[r.pivot_cols[i]] = -r.reduced(i, f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Unique solution of A x = b, or nullopt when the system is inconsistent.
/// Throws InvariantError when the solution is not unique.
inline std::optional<std::vector<Rational>> solve_unique(const RatMatrix& a, const std::vector<Rational>& b)
{
    RatMatrix aug(a.rows, a.cols + 1);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c)
            aug(r, c) = a(r, c);
        aug(r, a.cols) = b[r];
    }
    const Rref red = rref(aug);
    if (!red.pivot_cols.empty() && red.pivot_cols.back() == a.cols)
        return std::nullopt;
    if (red.pivot_cols.size() != a.cols)
        throw InvariantError("linear system has a non-unique solution");
    std::vector<Rational> x(a.cols);
    for (std::size_t i = 0; i < a.cols; ++i)
        x[i] = red.reduced(i, a.cols);
    return x;
}

/// Echelon basis of a subspace of F_p^n, built incrementally. Pivots are
/// taken at the lowest column index, so callers order columns by preference.
class FpEchelon {
public:
    FpEchelon(std::size_t dim, std::uint32_t p) : dim_(dim), p_(p) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }
    const std::vector<std::vector<std::uint32_t>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    /// Reduce v against the current basis (in place); returns whether it stays nonzero.
    bool reduce(std::vector<std::uint32_t>& v) const
    {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::size_t c = pivots_[i];
            if (v[c] == 0)
                continue;
            const std::uint64_t f = v[c];
            for (std::size_t k = 0; k < dim_; ++k)
                if (rows_[i][k])
                    v[k] = static_cast<std::uint32_t>((v[k] + (p_ - rows_[i][k]) * f) % p_);
        }
        for (auto x : v)
            if (x)
                return true;
        return false;
    }

    /// Adds v if independent; keeps the basis fully reduced. Returns true when rank grew.
    bool insert(std::vector<std::uint32_t> v)
    {
        if (!reduce(v))
            return false;
        std::size_t c = 0;
        while (v[c] == 0)
            ++c;
        const Fp inv = Fp(v[c], p_).inverse();
        for (auto& x : v)
            x = static_cast<std::uint32_t>(std::uint64_t(x) * inv.value() % p_);
        for (auto& row : rows_) {
            if (row[c] == 0)
                continue;
            const std::uint64_t f = row[c];
            for (std::size_t k = 0; k < dim_; ++k)
                if (v[k])
                    row[k] = static_cast<std::uint32_t>((row[k] + (p_ - v[k]) * f) % p_);
        }
        rows_.push_back(std::move(v));
        pivots_.push_back(c);
        return true;
    }

private:
    std::size_t dim_;
    std::uint32_t p_;
    std::vector<std::vector<std::uint32_t>> rows_;
    std::vector<std::size_t> pivots_;
};

inline std::vector<std::uint32_t> reduce_vector_mod_p(const std::vector<Integer>& v, std::uint32_t p)
{
    std::vector<std::uint32_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Integer r = v[i] % p;
        if (r < 0)
            r += p;
        out[i] = static_cast<std::uint32_t>(r.get_ui());
    }
    return out;
}

namespace detail {

inline void normalize_lattice_vector(std::vector<Integer>& v, unsigned long p)
{
    // Strip the p-unit part of the content, then make the first nonzero entry positive.
    Integer g = 0;
    for (const auto& x : v)
        g = gcd(g, x);
    if (g == 0)
        return;
    while (mpz_divisible_ui_p(g.get_mpz_t(), p))
        mpz_divexact_ui(g.get_mpz_t(), g.get_mpz_t(), p);
    for (auto& x : v)
        x /= g;
    for (const auto& x : v) {
        if (x == 0)
            continue;
        if (x < 0)
            for (auto& y : v)
                y = -y;
        break;
    }
}

} // namespace detail

/// Basis, as a Z_(p)-module, of the p-local integer points of ker M.
/// Entries of M must be p-local.
inline std::vector<std::vector<Integer>> zlocal_kernel(const RatMatrix& m, unsigned long p)
{
    require_prime(p);
    for (const auto& x : m.entries)
        if (!is_p_local(x, p))
            throw DomainError("matrix entry " + to_string(x) + " is not " + std::to_string(p) + "-local");

    // Clearing p-unit denominators row by row does not change the kernel.
    std::vector<std::vector<Integer>> basis;
    for (auto& q : kernel_basis(m)) {
        Integer l = 1;
        for (const auto& x : q)
            l = lcm(l, x.get_den());
        std::vector<Integer> v(q.size());
        for (std::size_t i = 0; i < q.size(); ++i)
            v[i] = q[i].get_num() * (l / q[i].get_den());
        basis.push_back(std::move(v));
    }

    // Saturate: while the basis is dependent mod p, some combination is p times
    // a lattice vector; replace one member by that quotient.
    const auto pu = static_cast<std::uint32_t>(p);
    for (;;) {
        bool changed = false;
        const std::size_t k = basis.size();
        // Track combinations alongside an echelon reduction of the residues.
        std::vector<std::vector<std::uint32_t>> residues;
        std::vector<std::vector<std::uint32_t>> combos;
        std::vector<std::size_t> pivots;
        for (std::size_t i = 0; i < k && !changed; ++i) {
            auto r = reduce_vector_mod_p(basis[i], pu);
            std::vector<std::uint32_t> c(k, 0);
            c[i] = 1;
            for (std::size_t t = 0; t < residues.size(); ++t) {
                const std::uint64_t f = r[pivots[t]];
                if (f == 0)
                    continue;
                for (std::size_t col = 0; col < r.size(); ++col)
                    r[col] = static_cast<std::uint32_t>((r[col] + (pu - residues[t][col]) * f) % pu);
                for (std::size_t col = 0; col < k; ++col)
                    c[col] = static_cast<std::uint32_t>((c[col] + (pu - combos[t][col]) * f) % pu);
            }
            std::size_t piv = 0;
            while (piv < r.size() && r[piv] == 0)
                ++piv;
            if (piv == r.size()) {
                // sum c_j b_j == 0 mod p with c_i == 1
                std::vector<Integer> w(basis[i].size(), Integer(0));
                for (std::size_t j = 0; j < k; ++j)
                    if (c[j])
                        for (std::size_t col = 0; col < w.size(); ++col)
                            w[col] += Integer(c[j]) * basis[j][col];
                for (auto& x : w) {
                    if (!mpz_divisible_ui_p(x.get_mpz_t(), p))
                        throw InvariantError("saturation step produced a non-divisible vector");
                    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
                }
                basis[i] = std::move(w);
                changed = true;
                break;
            }
            const Fp inv = Fp(r[piv], pu).inverse();
            for (auto& x : r)
                x = static_cast<std::uint32_t>(std::uint64_t(x) * inv.value() % pu);
            for (auto& x : c)
                x = static_cast<std::uint32_t>(std::uint64_t(x) * inv.value() % pu);
            residues.push_back(std::move(r));
            combos.push_back(std::move(c));
            pivots.push_back(piv);
        }
        if (!changed)
            break;
    }
    for (auto& v : basis)
        detail::normalize_lattice_vector(v, p);
    return basis;
}

} // namespace fgl
