#pragma once

// Finitely generated inner approximations K_N of the cone of non-negative
// polynomials of degree <= k on the n-simplex.
//
// A coefficient vector c (graded-lex basis of polynomials of degree <= k in n
// variables) lies in K_N iff every coefficient of (x_1 + ... + x_{n+1})^N P_H
// is >= 0. Each such coefficient is a linear functional of c, one row of
// `ineq`. Extreme rays come from an exact double description run.

#include "simplexfold/polynomial.hpp"
#include "simplexfold/simplex.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace simplexfold {

class ConeNotPointedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using IntVector = std::vector<Integer>;
using IntMatrix = std::vector<IntVector>;

namespace detail {

/// Fixed-width bitset over constraint rows.
class RowSet {
public:
    RowSet() = default;
    explicit RowSet(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) { words_[i / 64] |= (std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool subset_of(const RowSet& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i])
                return false;
        return true;
    }

    friend RowSet operator&(const RowSet& a, const RowSet& b) {
        RowSet out = a;
        for (std::size_t i = 0; i < out.words_.size(); ++i)
            out.words_[i] &= b.words_[i];
        return out;
    }

private:
    std::vector<std::uint64_t> words_;
};

inline Integer dot(const IntVector& a, const IntVector& b) {
    Integer s(0);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0)
            s += a[i] * b[i];
    return s;
}

inline void make_primitive(IntVector& v) {
    Integer g(0);
    for (const auto& x : v)
        if (x != 0)
            g = (g == 0) ? Integer(abs(x)) : Integer(boost::multiprecision::gcd(g, abs(x)));
    if (g > 1)
        for (auto& x : v)
            x /= g;
}

/// Indices of a maximal set of linearly independent rows (greedy, in order).
inline std::vector<std::size_t> independent_rows(const IntMatrix& a, std::size_t cols) {
    std::vector<std::vector<Rational>> basis; // echelon rows
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> chosen;
    for (std::size_t r = 0; r < a.size() && chosen.size() < cols; ++r) {
        std::vector<Rational> row(a[r].begin(), a[r].end());
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const auto pc = pivots[b];
            if (row[pc] == 0)
                continue;
            const Rational f = row[pc] / basis[b][pc];
            for (std::size_t c = 0; c < cols; ++c)
                row[c] -= f * basis[b][c];
        }
        auto it = std::find_if(row.begin(), row.end(), [](const Rational& v) { return v != 0; });
        if (it == row.end())
            continue;
        pivots.push_back(static_cast<std::size_t>(it - row.begin()));
        basis.push_back(std::move(row));
        chosen.push_back(r);
    }
    return chosen;
}

} // namespace detail

/// Rank of an integer matrix (exact).
inline std::size_t matrix_rank(const IntMatrix& a, std::size_t cols) {
    return detail::independent_rows(a, cols).size();
}

/// Extreme rays of the pointed cone {c : A c >= 0}, as primitive integer
/// vectors in lexicographic order. Throws ConeNotPointedError when rank A < d.
inline IntMatrix extreme_rays(const IntMatrix& a, std::size_t d) {
    using detail::RowSet;
    const std::size_t m = a.size();
    for (const auto& row : a)
        if (row.size() != d)
            throw DimensionError("extreme_rays: ragged constraint matrix");
    const auto initial = detail::independent_rows(a, d);
    if (initial.size() < d)
        throw ConeNotPointedError("cone is not pointed: constraint rank " +
                                  std::to_string(initial.size()) + " < dimension " + std::to_string(d));

    struct Ray {
        IntVector v;
        RowSet zeros;
    };

    // Initial rays: columns of the inverse of the chosen d x d block.
    std::vector<std::vector<Rational>> aug(d, std::vector<Rational>(2 * d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            aug[i][j] = Rational(a[initial[i]][j]);
        aug[i][d + i] = 1;
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t piv = col;
        while (aug[piv][col] == 0)
            ++piv;
        std::swap(aug[piv], aug[col]);
        const Rational inv = 1 / aug[col][col];
        for (auto& v : aug[col])
            v *= inv;
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col || aug[r][col] == 0)
                continue;
            const Rational f = aug[r][col];
            for (std::size_t c = 0; c < 2 * d; ++c)
                aug[r][c] -= f * aug[col][c];
        }
    }
    std::vector<Ray> rays;
    std::vector<bool> processed(m, false);
    for (auto r : initial)
        processed[r] = true;
    for (std::size_t j = 0; j < d; ++j) {
        Integer den(1);
        for (std::size_t i = 0; i < d; ++i)
            den = lcm_integer(den, boost::multiprecision::denominator(aug[i][d + j]));
        IntVector v(d);
        for (std::size_t i = 0; i < d; ++i) {
            const Rational scaled = aug[i][d + j] * den;
            v[i] = boost::multiprecision::numerator(scaled);
        }
        detail::make_primitive(v);
        RowSet zeros(m);
        for (std::size_t r = 0; r < m; ++r)
            if (processed[r] && detail::dot(a[r], v) == 0)
                zeros.set(r);
        rays.push_back({std::move(v), std::move(zeros)});
    }

    std::vector<Integer> s;
    for (std::size_t step = d; step < m; ++step) {
        // next row: fewest (positive x negative) candidate pairs
        std::size_t best_row = m;
        std::size_t best_pairs = 0;
        for (std::size_t r = 0; r < m; ++r) {
            if (processed[r])
                continue;
            std::size_t pos = 0, neg = 0;
            for (const auto& ray : rays) {
                const int sg = detail::dot(a[r], ray.v).sign();
                pos += sg > 0;
                neg += sg < 0;
            }
            const std::size_t pairs = pos * neg;
            if (best_row == m || pairs < best_pairs) {
                best_row = r;
                best_pairs = pairs;
            }
        }
        const std::size_t row = best_row;
        processed[row] = true;
        s.assign(rays.size(), Integer(0));
        std::vector<std::size_t> pos, zero, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            s[i] = detail::dot(a[row], rays[i].v);
            const int sg = s[i].sign();
            (sg > 0 ? pos : sg < 0 ? neg : zero).push_back(i);
        }
        for (auto i : zero)
            rays[i].zeros.set(row);
        if (neg.empty())
            continue;
        std::vector<Ray> next;
        next.reserve(pos.size() + zero.size());
        for (auto i : pos)
            next.push_back(rays[i]);
        for (auto i : zero)
            next.push_back(rays[i]);
        for (auto p : pos) {
            for (auto q : neg) {
                RowSet common = rays[p].zeros & rays[q].zeros;
                if (common.count() + 2 < d)
                    continue;
                bool adjacent = true;
                for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
                    if (r == p || r == q)
                        continue;
                    if (common.subset_of(rays[r].zeros))
                        adjacent = false;
                }
                if (!adjacent)
                    continue;
                IntVector v(d);
                const Integer sp = s[p], sq = -s[q];
                for (std::size_t c = 0; c < d; ++c)
                    v[c] = sp * rays[q].v[c] + sq * rays[p].v[c];
                detail::make_primitive(v);
                common.set(row);
                next.push_back({std::move(v), std::move(common)});
            }
        }
        rays = std::move(next);
    }

    IntMatrix out;
    out.reserve(rays.size());
    for (auto& r : rays)
        out.push_back(std::move(r.v));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct ConeRep {
    std::size_t n = 0;
    int k = 0;
    int N = 0;
    std::vector<Exponent> basis;          ///< columns: graded-lex monomials of degree <= k
    std::vector<Exponent> row_monomials;  ///< rows: monomials of degree N + k in n + 1 vars
    IntMatrix ineq;
    IntMatrix rays;
    std::vector<FloatPoly> scaled_rays;
    std::vector<double> ray_maxima;

    std::size_t dim() const { return basis.size(); }

    ExactPoly ray_poly(std::size_t i) const {
        std::vector<Rational> c(rays.at(i).begin(), rays.at(i).end());
        return ExactPoly::from_coefficients(n, basis, c);
    }

    /// ineq . c (exact).
    std::vector<Rational> evaluate_rows(std::span<const Rational> c) const {
        std::vector<Rational> out;
        for (const auto& row : ineq) {
            Rational s(0);
            for (std::size_t j = 0; j < row.size(); ++j)
                s += Rational(row[j]) * c[j];
            out.push_back(s);
        }
        return out;
    }

    bool contains(std::span<const Rational> c) const {
        const auto vals = evaluate_rows(c);
        return std::all_of(vals.begin(), vals.end(), [](const Rational& v) { return v >= 0; });
    }
};

/// Row j maps the coefficient vector of P to the j-th coefficient of (sum x)^N P_H.
inline ConeRep build_inequalities(std::size_t n, int k, int N) {
    if (N < 0 || k < 0)
        throw std::invalid_argument("build_inequalities: negative N or k");
    ConeRep cone;
    cone.n = n;
    cone.k = k;
    cone.N = N;
    cone.basis = monomials_up_to(n, k);
    cone.row_monomials = monomials_of_degree(n + 1, N + k);
    cone.ineq.assign(cone.row_monomials.size(), IntVector(cone.basis.size(), Integer(0)));
    const auto multiplier = coordinate_sum<Rational>(n + 1).pow(static_cast<unsigned>(N));
    for (std::size_t col = 0; col < cone.basis.size(); ++col) {
        const auto expansion =
            homogenize(ExactPoly::monomial(cone.basis[col], Rational(1)), k).poly() * multiplier;
        for (std::size_t row = 0; row < cone.row_monomials.size(); ++row) {
            const Rational c = expansion.coefficient(cone.row_monomials[row]);
            cone.ineq[row][col] = boost::multiprecision::numerator(c);
        }
    }
    return cone;
}

inline ConeRep enumerate_rays(ConeRep cone) {
    cone.rays = extreme_rays(cone.ineq, cone.dim());
    return cone;
}

class GeneratorScalingError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Divides each generator by its maximum on the simplex.
inline ConeRep scale_generators(ConeRep cone, int grid_depth = 0, int refine_iters = 200) {
    cone.scaled_rays.clear();
    cone.ray_maxima.clear();
    for (std::size_t i = 0; i < cone.rays.size(); ++i) {
        const FloatPoly p = cone.ray_poly(i).cast<double>();
        const auto mx = max_on_simplex(p, grid_depth, refine_iters);
        if (!(mx.value > 0))
            throw GeneratorScalingError("generator " + std::to_string(i) + " has non-positive maximum");
        cone.scaled_rays.push_back(p * (1.0 / mx.value));
        cone.ray_maxima.push_back(mx.value);
    }
    return cone;
}

} // namespace simplexfold
