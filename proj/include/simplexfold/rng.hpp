#pragma once

// Reproducible random streams.
//
// The generator is SplitMix64: a 64-bit counter advanced by the golden-ratio
// increment and passed through a fixed mixing function. All variates below are
// derived from it by explicit formulas (no std:: distributions, whose output is
// implementation-defined), so a seed pins the exact sequence on every platform.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace simplexfold {

class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t seed = 0) : counter_(seed) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        counter_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = counter_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Stream for task `index` under `master_seed` (seed = master ^ index).
    static SplitMix64 for_task(std::uint64_t master_seed, std::uint64_t index) {
        return SplitMix64(master_seed ^ index);
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_low() { return 1.0 - uniform(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal by the Box-Muller transform (one variate per call).
    double normal() {
        const double u1 = uniform_open_low();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    double exponential() { return -std::log(uniform_open_low()); }

    /// log of a Gamma(shape, 1) variate. Marsaglia-Tsang for shape >= 1; for
    /// shape < 1 the boost G(a) = G(a + 1) U^(1/a) is applied in log space, so
    /// tiny shapes (1e-3) never underflow to zero.
    double log_gamma(double shape) {
        if (shape < 1.0) {
            const double base = log_gamma(shape + 1.0);
            return base + std::log(uniform_open_low()) / shape;
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_open_low();
            if (u < 1.0 - 0.0331 * x * x * x * x)
                return std::log(d * v);
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
                return std::log(d * v);
        }
    }

    double gamma(double shape) { return std::exp(log_gamma(shape)); }

    /// Symmetric Dirichlet weights of the given dimension.
    std::vector<double> dirichlet(std::size_t dim, double alpha) {
        std::vector<double> logs(dim);
        double top = -std::numeric_limits<double>::infinity();
        for (auto& l : logs) {
            l = log_gamma(alpha);
            top = std::max(top, l);
        }
        double total = 0;
        for (auto& l : logs) {
            l = std::exp(l - top);
            total += l;
        }
        for (auto& l : logs)
            l /= total;
        return logs;
    }

private:
    std::uint64_t counter_;
};

} // namespace simplexfold
