#pragma once

// Stochastic polynomial self-maps of the simplex, stored in projected form:
// n defining polynomials P_1..P_n with P_{n+1} = 1 - sum P_i implicit.

#include "simplexfold/compiled.hpp"
#include "simplexfold/polynomial.hpp"
#include "simplexfold/positivity.hpp"
#include "simplexfold/simplex.hpp"

#include <Eigen/Dense>

#include <cassert>
#include <cmath>
#include <string>
#include <vector>

namespace simplexfold {

template <Scalar S>
class SimplexMap {
public:
    SimplexMap() = default;

    /// Accepts n polynomials, or n+1 whose sum must be 1 (the last is dropped).
    SimplexMap(std::size_t n, int k, std::vector<MultiPoly<S>> polys, std::string label = {})
        : n_(n), k_(k), label_(std::move(label)) {
        if (polys.size() == n + 1) {
            MultiPoly<S> total(n);
            for (const auto& p : polys)
                total += p;
            const auto one = MultiPoly<S>::constant(n, S(1));
            bool sums_to_one;
            if constexpr (is_exact_v<S>) {
                sums_to_one = total == one;
            } else {
                sums_to_one = (total - one).max_abs_coefficient() <= 1e-12;
            }
            if (!sums_to_one)
                throw std::invalid_argument("defining polynomials do not sum to 1");
            polys.pop_back();
        }
        if (polys.size() != n)
            throw DimensionError("SimplexMap needs n (or n+1) polynomials");
        for (const auto& p : polys) {
            if (p.num_vars() != n)
                throw DimensionError("defining polynomial has wrong num_vars");
            if (p.degree() > k)
                throw DegreeError("defining polynomial exceeds the degree bound");
        }
        polys_ = std::move(polys);
    }

    std::size_t n() const { return n_; }
    int k() const { return k_; }
    const std::vector<MultiPoly<S>>& polys() const { return polys_; }
    const MultiPoly<S>& operator[](std::size_t i) const { return polys_[i]; }
    const std::string& label() const { return label_; }
    void set_label(std::string l) { label_ = std::move(l); }

    /// 1 - sum P_i.
    MultiPoly<S> last_poly() const {
        MultiPoly<S> out = MultiPoly<S>::constant(n_, S(1));
        for (const auto& p : polys_)
            out -= p;
        return out;
    }

    /// All n+1 defining polynomials.
    std::vector<MultiPoly<S>> all_polys() const {
        auto out = polys_;
        out.push_back(last_poly());
        return out;
    }

    /// Actual degree (max over all n+1 polynomials).
    int degree() const {
        int d = last_poly().degree();
        for (const auto& p : polys_)
            d = std::max(d, p.degree());
        return d;
    }

    template <Scalar T>
    SimplexMap<T> cast() const {
        std::vector<MultiPoly<T>> ps;
        for (const auto& p : polys_)
            ps.push_back(p.template cast<T>());
        return SimplexMap<T>(n_, k_, std::move(ps), label_);
    }

    friend bool operator==(const SimplexMap& a, const SimplexMap& b) {
        return a.n_ == b.n_ && a.k_ == b.k_ && a.polys_ == b.polys_;
    }

private:
    std::size_t n_ = 0;
    int k_ = 0;
    std::vector<MultiPoly<S>> polys_;
    std::string label_;
};

using ExactMap = SimplexMap<Rational>;
using FloatMap = SimplexMap<double>;

template <Scalar S>
double l2_distance(const SimplexMap<S>& f, const SimplexMap<S>& g) {
    if (f.n() != g.n())
        throw DimensionError("l2_distance: maps on different simplices");
    return l2_distance(std::span<const MultiPoly<S>>(f.polys()), std::span<const MultiPoly<S>>(g.polys()));
}

struct MembershipReport {
    bool member = false;
    std::vector<NonnegVerdict> per_poly; ///< P_1..P_n then 1 - sum P_i
};

template <Scalar S>
MembershipReport membership_check(const SimplexMap<S>& f, NonnegMode mode = NonnegMode::sampled,
                                  double tol = kMembershipTol) {
    MembershipReport report;
    report.member = true;
    for (const auto& p : f.all_polys()) {
        report.per_poly.push_back(nonneg_on_simplex(p, mode, tol));
        report.member = report.member && report.per_poly.back().nonneg;
    }
    return report;
}

/// t f + (1 - t) g.
template <Scalar S>
SimplexMap<S> convex_combine(const SimplexMap<S>& f, const SimplexMap<S>& g, const S& t) {
    if (t < 0 || t > 1)
        throw std::invalid_argument("convex_combine: t outside [0,1]");
    if (f.n() != g.n() || f.k() != g.k())
        throw DimensionError("convex_combine: maps have different (n, k)");
    std::vector<MultiPoly<S>> ps;
    for (std::size_t i = 0; i < f.n(); ++i)
        ps.push_back(f[i] * t + g[i] * (S(1) - t));
    SimplexMap<S> out(f.n(), f.k(), std::move(ps), "convex(" + f.label() + "," + g.label() + ")");
#ifndef NDEBUG
    assert(membership_check(out).member);
#endif
    return out;
}

class ImageOutsideSimplexError : public OutsideSimplexError {
public:
    using OutsideSimplexError::OutsideSimplexError;
};

/// Clamping policy for floating-point images: components in (-tol, 0) become
/// 0 and a sum in (1, 1 + tol] is renormalized. Returns true when anything
/// changed; throws when the point is farther than tol from the simplex.
inline bool clamp_into_simplex(std::span<double> x, double tol = kMembershipTol) {
    bool clamped = false;
    double sum = 0.0;
    for (auto& v : x) {
        if (!(v >= -tol))
            throw ImageOutsideSimplexError("image outside the simplex");
        if (v < 0) {
            v = 0;
            clamped = true;
        }
        sum += v;
    }
    if (sum > 1.0) {
        if (sum > 1.0 + tol)
            throw ImageOutsideSimplexError("image outside the simplex");
        for (auto& v : x)
            v /= sum;
        clamped = true;
    }
    return clamped;
}

/// Double-precision evaluator for a map: values and Jacobian.
class MapEvaluator {
public:
    MapEvaluator() = default;

    template <Scalar S>
    explicit MapEvaluator(const SimplexMap<S>& f) : n_(f.n()), system_(f.polys()) {}

    std::size_t n() const { return n_; }

    void eval(const double* x, double* out) const { system_.eval(x, out); }
    void jacobian(const double* x, double* out) const { system_.jacobian(x, out); }

    /// Image with the clamping policy applied; returns whether clamping occurred.
    bool step(const double* x, double* out, double tol = kMembershipTol) const {
        system_.eval(x, out);
        return clamp_into_simplex(std::span<double>(out, n_), tol);
    }

private:
    std::size_t n_ = 0;
    CompiledSystem system_;
};

struct ApplyResult {
    SimplexPoint point;
    bool clamped = false;
};

template <Scalar S>
ApplyResult apply(const SimplexMap<S>& f, const SimplexPoint& x, double tol = kMembershipTol) {
    if (x.dim() != f.n())
        throw DimensionError("apply: point dimension differs from the map");
    std::vector<double> y(f.n());
    for (std::size_t i = 0; i < f.n(); ++i)
        y[i] = f[i].template evaluate<double>(std::span<const double>(x.coords()));
    const bool clamped = clamp_into_simplex(y, tol);
    return {SimplexPoint(std::move(y), tol), clamped};
}

/// Column-stochastic (n+1) x (n+1) matrix: entry (i, j) is the weight of j -> i.
class MarkovMatrix {
public:
    explicit MarkovMatrix(Eigen::MatrixXd m, double tol = 1e-12) : m_(std::move(m)) {
        if (m_.rows() != m_.cols() || m_.rows() < 1)
            throw DimensionError("Markov matrix must be square and non-empty");
        for (Eigen::Index j = 0; j < m_.cols(); ++j) {
            if (std::abs(m_.col(j).sum() - 1.0) > tol)
                throw std::invalid_argument("Markov matrix column does not sum to 1");
            if ((m_.col(j).array() < 0).any())
                throw std::invalid_argument("Markov matrix has a negative entry");
        }
    }

    const Eigen::MatrixXd& matrix() const { return m_; }
    std::size_t n() const { return static_cast<std::size_t>(m_.rows()) - 1; }

    /// P_i(x) = M_{i,n+1} + sum_j (M_{ij} - M_{i,n+1}) x_j for i = 1..n.
    FloatMap to_map() const {
        const std::size_t n = this->n();
        std::vector<FloatPoly> ps;
        for (std::size_t i = 0; i < n; ++i) {
            FloatPoly p = FloatPoly::constant(n, m_(i, n));
            for (std::size_t j = 0; j < n; ++j)
                p += FloatPoly::variable(n, j) * (m_(i, j) - m_(i, n));
            ps.push_back(std::move(p));
        }
        return FloatMap(n, 1, std::move(ps), "markov");
    }

private:
    Eigen::MatrixXd m_;
};

enum class LinearBijectivity {
    bijective_permutation,
    bijective_nonpermutation, ///< onto and invertible but not a permutation: contradicts the lemma
    nonsingular_not_onto,
    singular,
};

inline const char* to_string(LinearBijectivity b) {
    switch (b) {
    case LinearBijectivity::bijective_permutation: return "bijective_permutation";
    case LinearBijectivity::bijective_nonpermutation: return "bijective_nonpermutation";
    case LinearBijectivity::nonsingular_not_onto: return "nonsingular_not_onto";
    case LinearBijectivity::singular: return "singular";
    }
    return "?";
}

/// Onto-ness is decided from the vertex images: the image simplex is the
/// convex hull of the columns, and it covers the simplex iff every vertex e_i
/// has non-negative barycentric coordinates M^{-1} e_i.
inline LinearBijectivity is_permutation_if_bijective(const MarkovMatrix& mm, double tol = 1e-9) {
    const auto& m = mm.matrix();
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (std::abs(lu.determinant()) <= tol)
        return LinearBijectivity::singular;
    const Eigen::MatrixXd inv = lu.inverse();
    const bool onto = (inv.array() >= -tol).all();
    if (!onto)
        return LinearBijectivity::nonsingular_not_onto;
    const bool zero_one = ((m.array().abs() <= tol) || ((m.array() - 1.0).abs() <= tol)).all();
    return zero_one ? LinearBijectivity::bijective_permutation
                    : LinearBijectivity::bijective_nonpermutation;
}

} // namespace simplexfold
