#pragma once

// Sparse multivariate polynomials over exact rationals or doubles.
//
// Terms are keyed by exponent vectors and kept in graded-lex order: total
// degree ascending, then exponent vectors lexicographically descending
// (1, x, y, x^2, xy, y^2, ...). Coefficient vectors used elsewhere in the
// library follow the same order.

#include "simplexfold/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace simplexfold {

using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

struct GradedLexOrder {
    bool operator()(const Exponent& a, const Exponent& b) const {
        const int da = total_degree(a), db = total_degree(b);
        if (da != db)
            return da < db;
        return b < a;
    }
};

class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class DegreeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// All exponent vectors in `nvars` variables with total degree exactly `degree`,
/// in graded-lex order.
inline std::vector<Exponent> monomials_of_degree(std::size_t nvars, int degree) {
    std::vector<Exponent> out;
    if (nvars == 0) {
        if (degree == 0)
            out.emplace_back();
        return out;
    }
    Exponent cur(nvars, 0);
    // recursive fill, first variable gets the largest share first
    auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var + 1 == nvars) {
            cur[var] = remaining;
            out.push_back(cur);
            return;
        }
        for (int e = remaining; e >= 0; --e) {
            cur[var] = e;
            self(self, var + 1, remaining - e);
        }
    };
    rec(rec, 0, degree);
    return out;
}

/// All exponent vectors with total degree <= `degree`, graded-lex order.
inline std::vector<Exponent> monomials_up_to(std::size_t nvars, int degree) {
    std::vector<Exponent> out;
    for (int d = 0; d <= degree; ++d) {
        auto part = monomials_of_degree(nvars, d);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

template <Scalar S>
class MultiPoly {
public:
    using scalar_type = S;
    using TermMap = std::map<Exponent, S, GradedLexOrder>;

    MultiPoly() = default;
    explicit MultiPoly(std::size_t nvars) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const S& c) {
        MultiPoly p(nvars);
        p.add_term(Exponent(nvars, 0), c);
        return p;
    }

    static MultiPoly variable(std::size_t nvars, std::size_t var) {
        if (var >= nvars)
            throw DimensionError("variable index out of range");
        Exponent e(nvars, 0);
        e[var] = 1;
        MultiPoly p(nvars);
        p.add_term(e, S(1));
        return p;
    }

    static MultiPoly monomial(const Exponent& e, const S& c) {
        MultiPoly p(e.size());
        p.add_term(e, c);
        return p;
    }

    /// Builds from a coefficient vector indexed by `basis` (graded-lex basis).
    static MultiPoly from_coefficients(std::size_t nvars, std::span<const Exponent> basis,
                                       std::span<const S> coefs) {
        if (basis.size() != coefs.size())
            throw DimensionError("coefficient vector does not match basis");
        MultiPoly p(nvars);
        for (std::size_t i = 0; i < basis.size(); ++i)
            p.add_term(basis[i], coefs[i]);
        return p;
    }

    std::size_t num_vars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    int degree() const {
        return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first);
    }

    S coefficient(const Exponent& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? S(0) : it->second;
    }

    std::vector<S> coefficients(std::span<const Exponent> basis) const {
        std::vector<S> out;
        out.reserve(basis.size());
        for (const auto& e : basis)
            out.push_back(coefficient(e));
        std::size_t found = 0;
        for (const auto& e : basis)
            found += terms_.count(e);
        if (found != terms_.size())
            throw DegreeError("polynomial has terms outside the requested basis");
        return out;
    }

    void add_term(const Exponent& e, const S& c) {
        if (e.size() != nvars_)
            throw DimensionError("exponent length does not match num_vars");
        if (c == 0)
            return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0)
                terms_.erase(it);
        }
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_)
            add_term(e, -c);
        return *this;
    }

    MultiPoly& operator*=(const S& s) {
        if (s == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_)
            c *= s;
        if constexpr (!is_exact_v<S>)
            std::erase_if(terms_, [](const auto& kv) { return kv.second == 0; });
        return *this;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(MultiPoly a, const S& s) { return a *= s; }
    friend MultiPoly operator*(const S& s, MultiPoly a) { return a *= s; }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.check_same(b);
        MultiPoly out(a.nvars_);
        Exponent e(a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }

    MultiPoly operator-() const {
        MultiPoly out = *this;
        for (auto& [e, c] : out.terms_)
            c = -c;
        return out;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    MultiPoly pow(unsigned exponent) const {
        MultiPoly result = constant(nvars_, S(1));
        MultiPoly base = *this;
        while (exponent) {
            if (exponent & 1u)
                result = result * base;
            exponent >>= 1u;
            if (exponent)
                base = base * base;
        }
        return result;
    }

    MultiPoly derivative(std::size_t var) const {
        if (var >= nvars_)
            throw DimensionError("derivative variable out of range");
        MultiPoly out(nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[var] == 0)
                continue;
            Exponent d = e;
            d[var] -= 1;
            out.add_term(d, c * S(e[var]));
        }
        return out;
    }

    template <class T>
    T evaluate(std::span<const T> x) const {
        if (x.size() != nvars_)
            throw DimensionError("evaluation point has wrong dimension");
        T sum(0);
        for (const auto& [e, c] : terms_) {
            T term = convert<T>(c);
            for (std::size_t i = 0; i < nvars_; ++i)
                for (int k = 0; k < e[i]; ++k)
                    term *= x[i];
            sum += term;
        }
        return sum;
    }

    template <class T>
    T evaluate(const std::vector<T>& x) const {
        return evaluate(std::span<const T>(x));
    }

    template <Scalar T>
    MultiPoly<T> cast() const {
        MultiPoly<T> out(nvars_);
        for (const auto& [e, c] : terms_)
            out.add_term(e, convert<T>(c));
        return out;
    }

    /// Largest absolute coefficient (as double).
    double max_abs_coefficient() const {
        double m = 0;
        for (const auto& [e, c] : terms_)
            m = std::max(m, std::abs(to_double(c)));
        return m;
    }

private:
    template <class T>
    static T convert(const S& c) {
        if constexpr (std::is_same_v<T, S>)
            return c;
        else if constexpr (std::is_same_v<T, double>)
            return to_double(c);
        else
            return T(c);
    }

    void check_same(const MultiPoly& o) const {
        if (o.nvars_ != nvars_)
            throw DimensionError("polynomials have different num_vars");
    }

    std::size_t nvars_ = 0;
    TermMap terms_;
};

using ExactPoly = MultiPoly<Rational>;
using FloatPoly = MultiPoly<double>;

template <class S>
using DenseMatrix = std::vector<std::vector<S>>;

template <Scalar S>
S evaluate(const MultiPoly<S>& p, std::span<const S> x) {
    return p.template evaluate<S>(x);
}

/// x_1 + ... + x_m in m variables.
template <Scalar S>
MultiPoly<S> coordinate_sum(std::size_t nvars) {
    MultiPoly<S> l(nvars);
    for (std::size_t i = 0; i < nvars; ++i)
        l += MultiPoly<S>::variable(nvars, i);
    return l;
}

/// 1 - (x_1 + ... + x_n): the implicit last barycentric coordinate.
template <Scalar S>
MultiPoly<S> last_coordinate(std::size_t nvars) {
    return MultiPoly<S>::constant(nvars, S(1)) - coordinate_sum<S>(nvars);
}

/// Homogeneous polynomial; every stored term has total degree `degree()`.
template <Scalar S>
class HomogPoly {
public:
    HomogPoly(MultiPoly<S> p, int degree) : poly_(std::move(p)), degree_(degree) {
        for (const auto& [e, c] : poly_.terms())
            if (total_degree(e) != degree_)
                throw DegreeError("term degree differs from the homogeneous degree");
    }

    const MultiPoly<S>& poly() const { return poly_; }
    int degree() const { return degree_; }
    std::size_t num_vars() const { return poly_.num_vars(); }

    friend bool operator==(const HomogPoly&, const HomogPoly&) = default;

private:
    MultiPoly<S> poly_;
    int degree_ = 0;
};

/// Pads every term of degree < k with powers of (x_1 + ... + x_{n+1}); the result
/// lives in n+1 variables and agrees with p on x_{n+1} = 1 - sum x_i.
template <Scalar S>
HomogPoly<S> homogenize(const MultiPoly<S>& p, int k) {
    if (p.degree() > k)
        throw DegreeError("polynomial degree exceeds the homogenization degree");
    const std::size_t n = p.num_vars();
    const auto sum = coordinate_sum<S>(n + 1);
    std::vector<MultiPoly<S>> sum_powers{MultiPoly<S>::constant(n + 1, S(1))};
    for (int d = 1; d <= k; ++d)
        sum_powers.push_back(sum_powers.back() * sum);
    MultiPoly<S> out(n + 1);
    for (const auto& [e, c] : p.terms()) {
        Exponent lifted = e;
        lifted.push_back(0);
        out += MultiPoly<S>::monomial(lifted, c) * sum_powers[k - total_degree(e)];
    }
    return HomogPoly<S>(std::move(out), k);
}

/// Substitutes inner[j] for variable j of `outer`.
template <Scalar S>
MultiPoly<S> compose(const MultiPoly<S>& outer, std::span<const MultiPoly<S>> inner) {
    if (inner.size() != outer.num_vars())
        throw DimensionError("compose: outer arity does not match inner count");
    if (inner.empty())
        return outer;
    const std::size_t m = inner.front().num_vars();
    for (const auto& q : inner)
        if (q.num_vars() != m)
            throw DimensionError("compose: inner polynomials disagree on num_vars");
    std::vector<std::vector<MultiPoly<S>>> powers(inner.size());
    for (std::size_t j = 0; j < inner.size(); ++j)
        powers[j].push_back(MultiPoly<S>::constant(m, S(1)));
    auto power = [&](std::size_t j, int e) -> const MultiPoly<S>& {
        while (static_cast<int>(powers[j].size()) <= e)
            powers[j].push_back(powers[j].back() * inner[j]);
        return powers[j][e];
    };
    MultiPoly<S> out(m);
    for (const auto& [e, c] : outer.terms()) {
        MultiPoly<S> term = MultiPoly<S>::constant(m, c);
        for (std::size_t j = 0; j < e.size(); ++j)
            if (e[j] > 0)
                term = term * power(j, e[j]);
        out += term;
    }
    return out;
}

template <Scalar S>
MultiPoly<S> compose(const MultiPoly<S>& outer, const std::vector<MultiPoly<S>>& inner) {
    return compose(outer, std::span<const MultiPoly<S>>(inner));
}

/// Entry (i, j) is dP_i/dx_j at x.
template <Scalar S>
DenseMatrix<S> jacobian(std::span<const MultiPoly<S>> ps, std::span<const S> x) {
    const std::size_t n = ps.size();
    if (x.size() != n)
        throw DimensionError("jacobian: point dimension differs from map size");
    DenseMatrix<S> jac(n, std::vector<S>(n, S(0)));
    for (std::size_t i = 0; i < n; ++i) {
        if (ps[i].num_vars() != n)
            throw DimensionError("jacobian: polynomial num_vars differs from map size");
        for (std::size_t j = 0; j < n; ++j)
            jac[i][j] = ps[i].derivative(j).template evaluate<S>(x);
    }
    return jac;
}

template <Scalar S>
struct Division {
    MultiPoly<S> quotient;
    MultiPoly<S> remainder;
};

/// Divides p by (x_var - shift), where `shift` does not involve x_var.
/// The remainder is p with x_var replaced by `shift`, and never involves x_var.
template <Scalar S>
Division<S> divide_by_linear(const MultiPoly<S>& p, std::size_t var, const MultiPoly<S>& shift) {
    const std::size_t m = p.num_vars();
    if (var >= m || shift.num_vars() != m)
        throw DimensionError("divide_by_linear: bad variable or shift arity");
    for (const auto& [e, c] : shift.terms())
        if (e[var] != 0)
            throw std::invalid_argument("divide_by_linear: shift depends on the variable");
    int top = 0;
    for (const auto& [e, c] : p.terms())
        top = std::max(top, e[var]);
    // p = sum_j coef[j] * x_var^j
    std::vector<MultiPoly<S>> coef(top + 1, MultiPoly<S>(m));
    for (const auto& [e, c] : p.terms()) {
        Exponent stripped = e;
        stripped[var] = 0;
        coef[e[var]].add_term(stripped, c);
    }
    Division<S> out{MultiPoly<S>(m), MultiPoly<S>(m)};
    if (top == 0) {
        out.remainder = p;
        return out;
    }
    // synthetic division
    std::vector<MultiPoly<S>> q(top, MultiPoly<S>(m));
    q[top - 1] = coef[top];
    for (int j = top - 1; j >= 1; --j)
        q[j - 1] = coef[j] + shift * q[j];
    out.remainder = coef[0] + shift * q[0];
    const auto xv = MultiPoly<S>::variable(m, var);
    MultiPoly<S> xpow = MultiPoly<S>::constant(m, S(1));
    for (int j = 0; j < top; ++j) {
        out.quotient += q[j] * xpow;
        xpow = xpow * xv;
    }
    return out;
}

/// Divides out the largest power of (x_1 + ... + x_m) that divides p_H exactly.
inline HomogPoly<Rational> normalize_degree(const HomogPoly<Rational>& ph) {
    const std::size_t m = ph.num_vars();
    if (ph.poly().is_zero() || m == 0)
        return ph;
    const std::size_t last = m - 1;
    // x_last + (others) = x_last - shift with shift = -(others)
    ExactPoly shift(m);
    for (std::size_t i = 0; i < last; ++i)
        shift -= ExactPoly::variable(m, i);
    ExactPoly cur = ph.poly();
    int degree = ph.degree();
    while (degree > 0) {
        auto div = divide_by_linear(cur, last, shift);
        if (!div.remainder.is_zero())
            break;
        cur = std::move(div.quotient);
        --degree;
    }
    return HomogPoly<Rational>(std::move(cur), degree);
}

/// Drops the last variable by substituting x_{n+1} = 1 - sum_{i<=n} x_i.
template <Scalar S>
MultiPoly<S> dehomogenize(const MultiPoly<S>& ph) {
    const std::size_t m = ph.num_vars();
    if (m == 0)
        throw DimensionError("dehomogenize: no variables");
    const std::size_t n = m - 1;
    std::vector<MultiPoly<S>> inner;
    for (std::size_t i = 0; i < n; ++i)
        inner.push_back(MultiPoly<S>::variable(n, i));
    inner.push_back(last_coordinate<S>(n));
    return compose(ph, std::span<const MultiPoly<S>>(inner));
}

} // namespace simplexfold
