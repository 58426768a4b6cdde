#pragma once

// Geometry of the unit simplex in projected coordinates: x_1..x_n >= 0 and
// sum x_i <= 1, with x_{n+1} = 1 - sum x_i implicit.

#include "simplexfold/compiled.hpp"
#include "simplexfold/polynomial.hpp"
#include "simplexfold/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <stdexcept>
#include <vector>

namespace simplexfold {

inline constexpr double kMembershipTol = 1e-9;
inline constexpr double kFaceTol = 1e-9;

class OutsideSimplexError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline double simplex_violation(std::span<const double> x) {
    double worst = 0.0;
    double sum = 0.0;
    for (double v : x) {
        worst = std::max(worst, -v);
        sum += v;
    }
    return std::max(worst, sum - 1.0);
}

inline bool in_simplex(std::span<const double> x, double tol = kMembershipTol) {
    return simplex_violation(x) <= tol;
}

class SimplexPoint {
public:
    SimplexPoint() = default;
    explicit SimplexPoint(std::vector<double> coords, double tol = kMembershipTol)
        : coords_(std::move(coords)), tol_(tol) {
        if (tol_ < 0)
            throw std::invalid_argument("negative membership tolerance");
        if (!in_simplex(coords_, tol_))
            throw OutsideSimplexError("point lies outside the simplex");
    }

    std::size_t dim() const { return coords_.size(); }
    const std::vector<double>& coords() const { return coords_; }
    double operator[](std::size_t i) const { return coords_[i]; }
    double tol() const { return tol_; }
    double last() const { return 1.0 - std::accumulate(coords_.begin(), coords_.end(), 0.0); }

    friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;

private:
    std::vector<double> coords_;
    double tol_ = kMembershipTol;
};

/// Active facets, 1-based; index n+1 is the facet sum x = 1.
struct FaceId {
    std::vector<int> zero_set;

    bool is_interior() const { return zero_set.empty(); }
    friend bool operator==(const FaceId&, const FaceId&) = default;
};

inline FaceId face_of(std::span<const double> x, double tol = kFaceTol) {
    if (!in_simplex(x, tol))
        throw OutsideSimplexError("face_of: point outside the simplex");
    FaceId face;
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sum += x[i];
        if (x[i] <= tol)
            face.zero_set.push_back(static_cast<int>(i) + 1);
    }
    if (1.0 - sum <= tol)
        face.zero_set.push_back(static_cast<int>(x.size()) + 1);
    return face;
}

inline FaceId face_of(const SimplexPoint& x, double tol = kFaceTol) { return face_of(x.coords(), tol); }

inline Integer factorial(int v) {
    Integer r(1);
    for (int i = 2; i <= v; ++i)
        r *= i;
    return r;
}

/// Integral of x^alpha over the n-simplex: prod(alpha_i!) / (|alpha| + n)!.
inline Rational monomial_integral(const Exponent& alpha) {
    Integer num(1);
    int total = 0;
    for (int a : alpha) {
        if (a < 0)
            throw std::invalid_argument("negative exponent");
        num *= factorial(a);
        total += a;
    }
    return Rational(num, factorial(total + static_cast<int>(alpha.size())));
}

template <Scalar S>
S integrate(const MultiPoly<S>& p) {
    S total(0);
    for (const auto& [e, c] : p.terms())
        total += c * from_rational<S>(monomial_integral(e));
    return total;
}

/// sqrt(sum_i integral (P_i - Q_i)^2); exact up to the final square root in exact mode.
template <Scalar S>
double l2_distance(std::span<const MultiPoly<S>> f, std::span<const MultiPoly<S>> g) {
    if (f.size() != g.size())
        throw DimensionError("l2_distance: maps have different dimension");
    S total(0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        const auto diff = f[i] - g[i];
        total += integrate(diff * diff);
    }
    return std::sqrt(std::max(0.0, to_double(total)));
}

/// Uniform points on the n-simplex by normalized exponential spacings.
inline std::vector<SimplexPoint> sample_uniform(std::size_t n, std::size_t count, SplitMix64& rng) {
    std::vector<SimplexPoint> out;
    out.reserve(count);
    std::vector<double> e(n + 1);
    for (std::size_t s = 0; s < count; ++s) {
        double total = 0.0;
        for (auto& v : e) {
            v = rng.exponential();
            total += v;
        }
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = e[i] / total;
        out.emplace_back(std::move(x), 1e-12);
    }
    return out;
}

/// Raw coordinates variant used by hot loops.
inline void sample_uniform_into(std::size_t n, SplitMix64& rng, double* x) {
    double total = rng.exponential();
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = rng.exponential();
        total += x[i];
    }
    for (std::size_t i = 0; i < n; ++i)
        x[i] /= total;
}

/// Points {i/depth : i_1 + ... + i_n <= depth}.
inline std::vector<std::vector<double>> barycentric_lattice(std::size_t n, int depth) {
    std::vector<std::vector<double>> out;
    if (n == 0) {
        out.emplace_back();
        return out;
    }
    std::vector<int> idx(n, 0);
    auto rec = [&](auto&& self, std::size_t var, int remaining) -> void {
        if (var == n) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = static_cast<double>(idx[i]) / depth;
            out.push_back(std::move(x));
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            idx[var] = e;
            self(self, var + 1, remaining - e);
        }
    };
    rec(rec, 0, depth);
    return out;
}

/// Lattice depth giving ~1e3 points for n=1, ~1e4 for n=2.
inline int default_grid_depth(std::size_t n) {
    switch (n) {
    case 0: return 1;
    case 1: return 1000;
    case 2: return 140;
    case 3: return 38;
    default: return 12;
    }
}

/// Euclidean projection onto {x >= 0, sum x <= 1}.
inline void project_to_simplex(std::span<double> x) {
    double sum = 0.0;
    for (auto& v : x) {
        v = std::max(v, 0.0);
        sum += v;
    }
    if (sum <= 1.0)
        return;
    std::vector<double> sorted(x.begin(), x.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    double cumulative = 0.0, theta = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        cumulative += sorted[i];
        const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
        if (sorted[i] - t > 0)
            theta = t;
    }
    for (auto& v : x)
        v = std::max(v - theta, 0.0);
}

struct SimplexMax {
    double value = 0.0;
    std::vector<double> argmax;
};

namespace detail {

/// Nelder-Mead maximization of f over the simplex; iterates are projected back.
template <class F>
SimplexMax nelder_mead_max(const F& f, std::vector<double> start, double step, int iters) {
    const std::size_t n = start.size();
    auto eval = [&](std::vector<double>& x) {
        project_to_simplex(x);
        return f(x.data());
    };
    std::vector<std::vector<double>> pts(n + 1, start);
    std::vector<double> vals(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i + 1][i] += (start[i] + step <= 1.0 ? step : -step);
    }
    for (std::size_t i = 0; i <= n; ++i)
        vals[i] = eval(pts[i]);
    std::vector<std::size_t> order(n + 1);
    std::vector<double> centroid(n), trial(n), trial2(n);
    for (int it = 0; it < iters; ++it) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] > vals[b]; });
        const std::size_t best = order.front(), worst = order.back();
        const std::size_t second_worst = order[n > 0 ? n - 1 : 0];
        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                centroid[i] += pts[order[k]][i] / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i)
            trial[i] = centroid[i] + (centroid[i] - pts[worst][i]);
        const double fr = eval(trial);
        if (fr > vals[best]) {
            for (std::size_t i = 0; i < n; ++i)
                trial2[i] = centroid[i] + 2.0 * (centroid[i] - pts[worst][i]);
            const double fe = eval(trial2);
            if (fe > fr) {
                pts[worst] = trial2;
                vals[worst] = fe;
            } else {
                pts[worst] = trial;
                vals[worst] = fr;
            }
        } else if (fr > vals[second_worst]) {
            pts[worst] = trial;
            vals[worst] = fr;
        } else {
            for (std::size_t i = 0; i < n; ++i)
                trial2[i] = centroid[i] + 0.5 * (pts[worst][i] - centroid[i]);
            const double fc = eval(trial2);
            if (fc > vals[worst]) {
                pts[worst] = trial2;
                vals[worst] = fc;
            } else {
                for (std::size_t k = 0; k <= n; ++k) {
                    if (k == best)
                        continue;
                    for (std::size_t i = 0; i < n; ++i)
                        pts[k][i] = pts[best][i] + 0.5 * (pts[k][i] - pts[best][i]);
                    vals[k] = eval(pts[k]);
                }
            }
        }
    }
    const auto best = static_cast<std::size_t>(std::max_element(vals.begin(), vals.end()) - vals.begin());
    return {vals[best], pts[best]};
}

} // namespace detail

/// Global maximum of p on the simplex: barycentric lattice scan, then
/// Nelder-Mead refinement from the best lattice point and the best point of
/// each facet. The returned value is never below the lattice maximum.
template <Scalar S>
SimplexMax max_on_simplex(const MultiPoly<S>& p, int grid_depth = 0, int refine_iters = 200) {
    const std::size_t n = p.num_vars();
    const CompiledPoly f(p);
    if (n == 0)
        return {f(static_cast<const double*>(nullptr)), {}};
    if (grid_depth <= 0)
        grid_depth = default_grid_depth(n);
    const auto grid = barycentric_lattice(n, grid_depth);
    SimplexMax best{-std::numeric_limits<double>::infinity(), {}};
    std::vector<SimplexMax> facet_best(n + 1, best);
    for (const auto& x : grid) {
        const double v = f(x.data());
        if (v > best.value)
            best = {v, x};
        const auto face = face_of(x, 1e-14);
        for (int fct : face.zero_set)
            if (v > facet_best[fct - 1].value)
                facet_best[fct - 1] = {v, x};
    }
    const double step = 1.0 / grid_depth;
    std::vector<SimplexMax> seeds{best};
    for (const auto& fb : facet_best)
        if (!fb.argmax.empty())
            seeds.push_back(fb);
    for (const auto& seed : seeds) {
        auto refined = detail::nelder_mead_max(f, seed.argmax, step, refine_iters);
        if (refined.value > best.value)
            best = refined;
    }
    return best;
}

} // namespace simplexfold
