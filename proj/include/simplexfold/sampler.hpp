#pragma once

// Random maps from a scaled cone: Dirichlet-weighted combinations of the
// scaled generators, S_max truncation, and epsilon-ball deformations.

#include "simplexfold/cone.hpp"
#include "simplexfold/maps.hpp"
#include "simplexfold/parallel.hpp"
#include "simplexfold/rng.hpp"
#include "simplexfold/simplex.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexfold {

class SamplerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SamplerConfig {
    std::size_t n = 0;
    int k = 0;
    std::vector<FloatPoly> generators; ///< scaled rays: max 1 on the simplex
    double dirichlet_alpha = 1e-3;
    std::uint64_t master_seed = 0;
    double epsilon = 0.05;
    int max_retries = 32;

    static SamplerConfig from_cone(const ConeRep& cone) {
        if (cone.scaled_rays.empty())
            throw SamplerError("sampler needs a cone with scaled generators");
        SamplerConfig cfg;
        cfg.n = cone.n;
        cfg.k = cone.k;
        cfg.generators = cone.scaled_rays;
        return cfg;
    }

    void validate() const {
        if (!(dirichlet_alpha > 0))
            throw SamplerError("dirichlet_alpha must be positive");
        if (!(epsilon > 0))
            throw SamplerError("epsilon must be positive");
        if (generators.empty())
            throw SamplerError("no generators");
    }
};

/// sum_i w_i g_i with w ~ Dirichlet(alpha, R + 1) (the last weight belongs to
/// the zero polynomial), then scaled by a uniform radial factor.
inline FloatPoly random_positive_poly(const SamplerConfig& cfg, SplitMix64& rng) {
    cfg.validate();
    const auto w = rng.dirichlet(cfg.generators.size() + 1, cfg.dirichlet_alpha);
    FloatPoly p = FloatPoly::constant(cfg.n, 0.0);
    for (std::size_t i = 0; i < cfg.generators.size(); ++i)
        if (w[i] > 0)
            p += cfg.generators[i] * w[i];
    return p * rng.uniform();
}

/// t* R with t* ~ U[0, 1/S_max], S_max the maximum of sum_i R_i on the simplex.
/// Returns an empty optional when the sampled membership check rejects the result.
inline std::optional<FloatMap> interior_map_from(std::vector<FloatPoly> rs, int k, SplitMix64& rng) {
    if (rs.empty())
        throw DimensionError("interior_map_from: no polynomials");
    const std::size_t n = rs.front().num_vars();
    FloatPoly sum = FloatPoly::constant(n, 0.0);
    for (const auto& r : rs)
        sum += r;
    const double s_max = max_on_simplex(sum).value;
    if (!(s_max > 0))
        return std::nullopt;
    const double t = rng.uniform() / s_max;
    for (auto& r : rs)
        r = r * t;
    FloatMap map(n, k, std::move(rs), "interior");
    if (!membership_check(map).member)
        return std::nullopt;
    return map;
}

inline FloatMap random_interior_map(const SamplerConfig& cfg, SplitMix64& rng) {
    cfg.validate();
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        std::vector<FloatPoly> rs;
        for (std::size_t i = 0; i < cfg.n; ++i)
            rs.push_back(random_positive_poly(cfg, rng));
        if (auto map = interior_map_from(std::move(rs), cfg.k, rng))
            return std::move(*map);
    }
    throw SamplerError("random_interior_map: retry budget exhausted");
}

struct Deformation {
    FloatMap map;
    double t = 0.0;        ///< weight of the random interior map
    double distance = 0.0; ///< L2 distance to the reference map
};

/// g = t r + (1 - t) f_star with t ~ U(0, min(1, eps / ||f_star - r||)].
inline Deformation deform(const FloatMap& f_star, const SamplerConfig& cfg, SplitMix64& rng) {
    if (f_star.n() != cfg.n || f_star.k() != cfg.k)
        throw DimensionError("deform: reference map and cone differ in (n, k)");
    for (int attempt = 0; attempt <= cfg.max_retries; ++attempt) {
        const FloatMap r = random_interior_map(cfg, rng);
        const double dist = l2_distance(f_star, r);
        if (!(dist > 0))
            continue;
        const double cap = std::min(1.0, cfg.epsilon / dist);
        const double t = rng.uniform_open_low() * cap;
        FloatMap g = convex_combine(r, f_star, t);
        const double d = l2_distance(f_star, g);
        return {std::move(g), t, d};
    }
    throw SamplerError("deform: retry budget exhausted");
}

/// `count` deformations; draw i uses the stream for_task(master_seed, i).
inline std::vector<Deformation> deform_batch(const FloatMap& f_star, const SamplerConfig& cfg, std::size_t count,
                                             unsigned jobs = 0) {
    std::vector<Deformation> out(count);
    parallel_for(count, resolve_jobs(jobs), [&](std::size_t i) {
        auto rng = SplitMix64::for_task(cfg.master_seed, i);
        out[i] = deform(f_star, cfg, rng);
    });
    return out;
}

} // namespace simplexfold
