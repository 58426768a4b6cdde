#pragma once

// Strict-positivity certificates on the simplex by Polya's criterion, and
// sampling-based non-negativity checks.
//
// polya_certify homogenizes p to degree k in n+1 variables and multiplies by
// (x_1 + ... + x_{n+1}) one factor at a time. The first N at which every
// monomial of degree N + k carries a strictly positive coefficient is returned.

#include "simplexfold/polynomial.hpp"
#include "simplexfold/rng.hpp"
#include "simplexfold/simplex.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace simplexfold {

enum class PolyaVerdict { certified_positive, negative_witness, indeterminate };

inline const char* to_string(PolyaVerdict v) {
    switch (v) {
    case PolyaVerdict::certified_positive: return "certified_positive";
    case PolyaVerdict::negative_witness: return "negative_witness";
    case PolyaVerdict::indeterminate: return "indeterminate";
    }
    return "?";
}

struct PolyaCertificate {
    PolyaVerdict verdict = PolyaVerdict::indeterminate;
    int N = 0; ///< certified exponent, or the scan limit when indeterminate
    std::vector<Rational> witness_point;
    Rational witness_value;

    bool certified() const { return verdict == PolyaVerdict::certified_positive; }
};

/// Number of monomials of degree `degree` in `nvars` variables.
inline std::size_t monomial_count(std::size_t nvars, int degree) {
    if (nvars == 0)
        return degree == 0 ? 1 : 0;
    // C(degree + nvars - 1, nvars - 1)
    Integer c(1);
    for (std::size_t i = 1; i < nvars; ++i) {
        c *= Integer(degree + static_cast<long long>(i));
        c /= Integer(static_cast<long long>(i));
    }
    return c.convert_to<std::size_t>();
}

/// True when every monomial of degree `degree` appears with a coefficient > 0.
inline bool all_coefficients_positive(const ExactPoly& h, int degree) {
    if (h.size() != monomial_count(h.num_vars(), degree))
        return false;
    return std::all_of(h.terms().begin(), h.terms().end(),
                       [](const auto& kv) { return kv.second > 0; });
}

/// Screening points: barycentric lattice, vertices, and a Kronecker sequence
/// folded onto the simplex by sorting.
inline std::vector<std::vector<double>> screening_points(std::size_t n, std::size_t target) {
    std::vector<std::vector<double>> pts;
    if (n == 0) {
        pts.emplace_back();
        return pts;
    }
    int depth = 1;
    while (monomial_count(n + 1, depth + 1) <= target / 2)
        ++depth;
    pts = barycentric_lattice(n, depth);
    // generalized golden ratio sequence in [0,1]^n
    double phi = 2.0;
    for (int it = 0; it < 64; ++it)
        phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(n + 1));
    std::vector<double> alpha(n);
    for (std::size_t i = 0; i < n; ++i)
        alpha[i] = std::fmod(std::pow(1.0 / phi, static_cast<double>(i + 1)), 1.0);
    const std::size_t extra = target > pts.size() ? target - pts.size() : 0;
    std::vector<double> u(n);
    for (std::size_t s = 1; s <= extra; ++s) {
        for (std::size_t i = 0; i < n; ++i)
            u[i] = std::fmod(0.5 + alpha[i] * static_cast<double>(s), 1.0);
        std::sort(u.begin(), u.end());
        std::vector<double> x(n);
        double prev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = u[i] - prev;
            prev = u[i];
        }
        pts.push_back(std::move(x));
    }
    return pts;
}

namespace detail {

/// Looks for a point where p < 0, confirmed in exact arithmetic.
inline std::optional<std::pair<std::vector<Rational>, Rational>>
find_negative_point(const ExactPoly& p, std::size_t samples) {
    const CompiledPoly f(p);
    const auto pts = screening_points(p.num_vars(), samples);
    std::vector<std::pair<double, std::size_t>> candidates;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double v = f(pts[i].data());
        if (v < 0)
            candidates.emplace_back(v, i);
    }
    std::sort(candidates.begin(), candidates.end());
    if (candidates.size() > 16)
        candidates.resize(16);
    for (const auto& [v, i] : candidates) {
        std::vector<Rational> x;
        for (double c : pts[i])
            x.emplace_back(c);
        Rational value = p.evaluate(std::span<const Rational>(x));
        if (value < 0)
            return std::make_pair(std::move(x), std::move(value));
    }
    return std::nullopt;
}

} // namespace detail

inline PolyaCertificate polya_certify(const ExactPoly& p, int k, int n_max = 50,
                                      std::size_t prescan_samples = 10000) {
    if (p.degree() > k)
        throw DegreeError("polya_certify: degree exceeds the bound k");
    PolyaCertificate cert;
    if (auto neg = detail::find_negative_point(p, prescan_samples)) {
        cert.verdict = PolyaVerdict::negative_witness;
        cert.witness_point = std::move(neg->first);
        cert.witness_value = std::move(neg->second);
        return cert;
    }
    const std::size_t m = p.num_vars() + 1;
    const auto sum = coordinate_sum<Rational>(m);
    ExactPoly h = homogenize(p, k).poly();
    for (int N = 0; N <= n_max; ++N) {
        if (all_coefficients_positive(h, k + N)) {
            cert.verdict = PolyaVerdict::certified_positive;
            cert.N = N;
            return cert;
        }
        if (N < n_max)
            h = h * sum;
    }
    cert.verdict = PolyaVerdict::indeterminate;
    cert.N = n_max;
    return cert;
}

/// Expands (sum x)^N * p_H; used to re-check certificates.
inline ExactPoly polya_expansion(const ExactPoly& p, int k, int N) {
    const auto sum = coordinate_sum<Rational>(p.num_vars() + 1);
    return homogenize(p, k).poly() * sum.pow(static_cast<unsigned>(N));
}

enum class NonnegMode { certified, sampled };

struct NonnegVerdict {
    bool nonneg = false;
    double min_value = 0.0;           ///< smallest sampled value
    std::vector<double> witness;      ///< argmin (a negative witness when !nonneg)
    double certified_down_to = 0.0;   ///< smallest epsilon certified (certified mode)
    std::string evidence;
};

inline constexpr std::size_t kNonnegSamples = 100000;

template <Scalar S>
NonnegVerdict sampled_nonneg(const MultiPoly<S>& p, double tol, std::size_t samples = kNonnegSamples) {
    const CompiledPoly f(p);
    const std::size_t n = p.num_vars();
    NonnegVerdict out;
    out.min_value = std::numeric_limits<double>::infinity();
    auto consider = [&](const double* x) {
        const double v = f(x);
        if (v < out.min_value) {
            out.min_value = v;
            out.witness.assign(x, x + n);
        }
    };
    const auto pts = screening_points(n, samples / 2);
    for (const auto& x : pts)
        consider(x.data());
    SplitMix64 rng(0x5eed5eedULL + n);
    std::vector<double> x(n);
    for (std::size_t s = pts.size(); s < samples; ++s) {
        sample_uniform_into(n, rng, x.data());
        consider(x.data());
    }
    out.nonneg = out.min_value >= -tol;
    out.evidence = "sampled min " + std::to_string(out.min_value);
    return out;
}

/// certified: Polya certificates of p + eps for eps = 1e-1, 1e-2, ... down to tol
/// (a one-sided test; polynomials with interior zeros usually fail it).
/// sampled: min over ~1e5 points >= -tol.
template <Scalar S>
NonnegVerdict nonneg_on_simplex(const MultiPoly<S>& p, NonnegMode mode = NonnegMode::sampled,
                                double tol = kMembershipTol) {
    NonnegVerdict sampled = sampled_nonneg(p, tol);
    if (mode == NonnegMode::sampled || !sampled.nonneg)
        return sampled;
    if constexpr (!is_exact_v<S>) {
        throw std::invalid_argument("certified non-negativity requires exact coefficients");
    } else {
        const int k = std::max(p.degree(), 0);
        NonnegVerdict out = sampled;
        out.nonneg = true;
        out.certified_down_to = 1.0;
        for (Rational eps(1, 10); to_double(eps) >= tol; eps /= 10) {
            const auto cert = polya_certify(p + ExactPoly::constant(p.num_vars(), eps), k);
            if (!cert.certified()) {
                out.nonneg = false;
                out.evidence = std::string("not certified at eps=") + std::to_string(to_double(eps)) +
                               " (" + to_string(cert.verdict) + ")";
                return out;
            }
            out.certified_down_to = to_double(eps);
        }
        out.evidence = "certified down to eps=" + std::to_string(out.certified_down_to);
        return out;
    }
}

} // namespace simplexfold
