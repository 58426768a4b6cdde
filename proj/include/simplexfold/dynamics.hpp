#pragma once

// Orbits of simplex maps: fixed points and their spectra, orbit
// classification, deformation scans, fixation times, and the arcsine-measure
// test for Chebyshev folds.

#include "simplexfold/catalog.hpp"
#include "simplexfold/folding.hpp"
#include "simplexfold/maps.hpp"
#include "simplexfold/newton.hpp"
#include "simplexfold/parallel.hpp"
#include "simplexfold/rng.hpp"
#include "simplexfold/simplex.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

namespace simplexfold {

using Complex = std::complex<double>;

// ---------------------------------------------------------------- spectra

namespace detail {

inline Complex principal_cbrt(Complex z) {
    if (z == Complex(0.0))
        return 0.0;
    return std::polar(std::cbrt(std::abs(z)), std::arg(z) / 3.0);
}

/// Roots of l^3 + a l^2 + b l + c (Cardano, complex arithmetic, one Newton polish).
inline std::vector<Complex> cubic_roots(double a, double b, double c) {
    const double p = b - a * a / 3.0;
    const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    const Complex disc = std::sqrt(Complex(q * q / 4.0 + p * p * p / 27.0));
    Complex u = principal_cbrt(-q / 2.0 + disc);
    if (std::abs(u) < 1e-300)
        u = principal_cbrt(-q / 2.0 - disc);
    const Complex omega(-0.5, std::sqrt(3.0) / 2.0);
    std::vector<Complex> roots;
    for (int k = 0; k < 3; ++k) {
        Complex t;
        if (std::abs(u) < 1e-300) {
            t = 0.0;
        } else {
            const Complex uk = u * std::pow(omega, k);
            t = uk - p / (3.0 * uk);
        }
        Complex r = t - a / 3.0;
        const Complex f = ((r + a) * r + b) * r + c;
        const Complex df = (3.0 * r + 2.0 * a) * r + b;
        if (std::abs(df) > 1e-12)
            r -= f / df;
        roots.push_back(r);
    }
    return roots;
}

inline void sort_by_modulus(std::vector<Complex>& v) {
    std::sort(v.begin(), v.end(), [](const Complex& x, const Complex& y) {
        if (std::abs(x) != std::abs(y))
            return std::abs(x) < std::abs(y);
        if (x.real() != y.real())
            return x.real() < y.real();
        return x.imag() < y.imag();
    });
}

} // namespace detail

/// Eigenvalues from the characteristic polynomial in closed form (n <= 3).
inline std::vector<Complex> eigenvalues_charpoly(const Eigen::MatrixXd& m) {
    const auto n = m.rows();
    std::vector<Complex> out;
    if (n == 1) {
        out = {m(0, 0)};
    } else if (n == 2) {
        const double tr = m.trace(), det = m.determinant();
        const Complex s = std::sqrt(Complex(tr * tr / 4.0 - det));
        out = {tr / 2.0 + s, tr / 2.0 - s};
    } else if (n == 3) {
        // l^3 - tr l^2 + c2 l - det
        const double tr = m.trace();
        const double c2 = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0) + m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0) +
                          m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
        out = detail::cubic_roots(-tr, c2, -m.determinant());
    } else {
        throw DimensionError("closed-form eigenvalues need n <= 3");
    }
    detail::sort_by_modulus(out);
    return out;
}

/// Eigenvalues by Hessenberg QR iteration (any n).
inline std::vector<Complex> eigenvalues_qr(const Eigen::MatrixXd& m) {
    const Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    std::vector<Complex> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    detail::sort_by_modulus(out);
    return out;
}

inline std::vector<Complex> eigenvalues(const Eigen::MatrixXd& m) {
    return m.rows() <= 3 ? eigenvalues_charpoly(m) : eigenvalues_qr(m);
}

// ---------------------------------------------------------------- fixed points

enum class FixedPointKind { attracting, repelling, saddle, marginal };

inline const char* to_string(FixedPointKind k) {
    switch (k) {
    case FixedPointKind::attracting: return "attracting";
    case FixedPointKind::repelling: return "repelling";
    case FixedPointKind::saddle: return "saddle";
    case FixedPointKind::marginal: return "marginal";
    }
    return "?";
}

inline constexpr double kUnitCircleTol = 1e-9;

inline FixedPointKind classify_spectrum(const std::vector<Complex>& eig, double tol = kUnitCircleTol) {
    bool all_in = true, all_out = true;
    for (const auto& l : eig) {
        const double r = std::abs(l);
        if (std::abs(r - 1.0) <= tol)
            return FixedPointKind::marginal;
        all_in = all_in && r < 1.0 - tol;
        all_out = all_out && r > 1.0 + tol;
    }
    if (all_in)
        return FixedPointKind::attracting;
    if (all_out)
        return FixedPointKind::repelling;
    return FixedPointKind::saddle;
}

struct FixedPoint {
    std::vector<double> location;
    double residual = 0.0; ///< ||f(x) - x||_inf
    std::vector<Complex> eigenvalues;
    FixedPointKind kind = FixedPointKind::marginal;

    double min_abs_eigenvalue() const {
        double m = INFINITY;
        for (const auto& l : eigenvalues)
            m = std::min(m, std::abs(l));
        return m;
    }
};

struct FixedPointOptions {
    std::size_t lattice_points = 2000;
    std::size_t random_points = 1000;
    std::uint64_t seed = 0x13198a2e03707344ULL;
    double dedup_tol = 1e-8;
    double newton_tol = 1e-12;
    double outside_tol = 1e-10;
    unsigned jobs = 1;
};

struct FixedPointReport {
    std::vector<FixedPoint> points;
    std::size_t seeds = 0;
    bool degenerate_all_fixed = false; ///< every seed was already fixed (identity-like map)
};

inline Eigen::MatrixXd jacobian_at(const MapEvaluator& ev, const std::vector<double>& x) {
    const std::size_t n = ev.n();
    std::vector<double> buf(n * n);
    ev.jacobian(x.data(), buf.data());
    Eigen::MatrixXd j(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            j(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = buf[r * n + c];
    return j;
}

inline double fixed_point_residual(const MapEvaluator& ev, const std::vector<double>& x) {
    std::vector<double> fx(x.size());
    ev.eval(x.data(), fx.data());
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        r = std::max(r, std::abs(fx[i] - x[i]));
    return r;
}

/// Multistart Newton on f(x) - x: barycentric lattice, uniform samples and vertices.
template <Scalar S>
FixedPointReport find_fixed_points(const SimplexMap<S>& f, const FixedPointOptions& opts = {}) {
    const std::size_t n = f.n();
    const MapEvaluator ev(f);
    auto seeds = multistart_seeds(n, opts.lattice_points, opts.random_points, opts.seed);
    for (std::size_t v = 0; v <= n; ++v) {
        std::vector<double> vert(n, 0.0);
        if (v < n)
            vert[v] = 1.0;
        seeds.push_back(std::move(vert));
    }
    FixedPointReport report;
    report.seeds = seeds.size();

    std::size_t already_fixed = 0;
    for (const auto& s : seeds)
        already_fixed += fixed_point_residual(ev, s) < opts.newton_tol;
    if (already_fixed == seeds.size()) {
        report.degenerate_all_fixed = true;
        return report;
    }

    NewtonOptions nopt;
    nopt.tol = opts.newton_tol;
    nopt.max_iters = 100;
    std::vector<std::optional<std::vector<double>>> found(seeds.size());
    parallel_for(seeds.size(), opts.jobs, [&](std::size_t s) {
        auto res = damped_newton(
            [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
                ev.eval(x.data(), out.data());
                out -= x;
            },
            [&](const Eigen::VectorXd& x, Eigen::MatrixXd& jac) {
                jac = jacobian_at(ev, std::vector<double>(x.data(), x.data() + x.size()));
                jac -= Eigen::MatrixXd::Identity(jac.rows(), jac.cols());
            },
            n, seeds[s], nopt);
        if (res.converged && simplex_violation(res.x) <= opts.outside_tol)
            found[s] = std::move(res.x);
    });
    std::vector<std::vector<double>> pts;
    for (auto& p : found)
        if (p)
            pts.push_back(std::move(*p));
    for (auto& x : dedup_points(std::move(pts), opts.dedup_tol)) {
        FixedPoint fp;
        fp.residual = fixed_point_residual(ev, x);
        fp.eigenvalues = eigenvalues(jacobian_at(ev, x));
        fp.kind = classify_spectrum(fp.eigenvalues);
        fp.location = std::move(x);
        report.points.push_back(std::move(fp));
    }
    return report;
}

// ---------------------------------------------------------------- orbits

enum class OrbitKind { converged_fixed, periodic, nonperiodic_within_window };

inline const char* to_string(OrbitKind k) {
    switch (k) {
    case OrbitKind::converged_fixed: return "converged_fixed";
    case OrbitKind::periodic: return "periodic";
    case OrbitKind::nonperiodic_within_window: return "nonperiodic_within_window";
    }
    return "?";
}

struct OrbitVerdict {
    OrbitKind kind = OrbitKind::nonperiodic_within_window;
    std::size_t period = 0;          ///< for periodic
    std::size_t iterations_used = 0;
    std::vector<double> witness;     ///< fixed point or a point of the cycle; final state otherwise
};

struct OrbitOptions {
    std::size_t window = 10000;
    std::size_t burn_in = 1000;
    double tol = 1e-10;
};

inline double linf_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Burn-in, then Brent-style cycle search with power-of-two checkpoints.
/// Convergence to a fixed point needs two consecutive steps shorter than tol,
/// the second no longer than the first; a single short step is also seen when
/// an orbit passes close to a repelling fixed point.
/// Throws ImageOutsideSimplexError when the orbit leaves the simplex.
inline OrbitVerdict classify_orbit(const MapEvaluator& ev, std::vector<double> x0, const OrbitOptions& opts = {}) {
    if (!in_simplex(x0))
        throw OutsideSimplexError("classify_orbit: start point outside the simplex");
    const std::size_t n = ev.n();
    std::vector<double> x = std::move(x0), y(n);
    OrbitVerdict out;
    std::size_t t = 0;
    double prev_step = INFINITY;
    auto advance = [&]() -> bool {
        ev.step(x.data(), y.data());
        const double step = linf_distance(x, y);
        const bool fixed = step < opts.tol && prev_step < opts.tol && step <= prev_step;
        prev_step = step;
        std::swap(x, y);
        ++t;
        return fixed;
    };
    auto converged = [&] {
        out.kind = OrbitKind::converged_fixed;
        out.iterations_used = t - 2;
        out.witness = x;
        return out;
    };
    for (std::size_t i = 0; i < opts.burn_in; ++i)
        if (advance())
            return converged();

    std::vector<double> tortoise = x;
    std::size_t power = 1, lam = 0;
    for (std::size_t i = 0; i < opts.window; ++i) {
        if (advance())
            return converged();
        ++lam;
        if (linf_distance(tortoise, x) < opts.tol) {
            // minimal period: first return of the current state
            std::vector<double> z = x, w(n);
            std::size_t p = 1;
            for (; p <= lam; ++p) {
                ev.step(z.data(), w.data());
                std::swap(z, w);
                if (linf_distance(z, x) < opts.tol)
                    break;
            }
            out.kind = OrbitKind::periodic;
            out.period = std::min(p, lam);
            out.iterations_used = t;
            out.witness = x;
            return out;
        }
        if (lam == power) {
            tortoise = x;
            power *= 2;
            lam = 0;
        }
    }
    out.kind = OrbitKind::nonperiodic_within_window;
    out.iterations_used = t;
    out.witness = x;
    return out;
}

template <Scalar S>
OrbitVerdict classify_orbit(const SimplexMap<S>& f, const SimplexPoint& x0, const OrbitOptions& opts = {}) {
    return classify_orbit(MapEvaluator(f), x0.coords(), opts);
}

/// `steps` iterates of x0 (including x0).
template <Scalar S>
std::vector<std::vector<double>> orbit(const SimplexMap<S>& f, const SimplexPoint& x0, std::size_t steps) {
    const MapEvaluator ev(f);
    std::vector<std::vector<double>> out{x0.coords()};
    std::vector<double> y(f.n());
    for (std::size_t i = 0; i < steps; ++i) {
        ev.step(out.back().data(), y.data());
        out.push_back(y);
    }
    return out;
}

// ---------------------------------------------------------------- deformation scan

enum class ScanVerdict { green, red, failed };

inline const char* to_string(ScanVerdict v) {
    switch (v) {
    case ScanVerdict::green: return "green";
    case ScanVerdict::red: return "red";
    case ScanVerdict::failed: return "failed";
    }
    return "?";
}

struct ScanRow {
    std::size_t index = 0;
    double l2_distance = 0.0;
    double min_abs_eig = INFINITY;               ///< over all fixed points and eigenvalues
    std::vector<double> per_point_min_abs_eig;   ///< one entry per fixed point
    std::size_t n_fixed_points = 0;
    ScanVerdict verdict = ScanVerdict::failed;
    std::size_t periodic_trials = 0;
    std::size_t fixed_trials = 0;
    std::string error;
};

struct ScanOptions {
    std::size_t trials_per_map = 20;
    std::uint64_t seed = 1;
    OrbitOptions orbit;
    FixedPointOptions fixed_points;
    unsigned jobs = 1;
};

/// Green iff no trial orbit converges to a fixed point or to a cycle of
/// period <= window (a longer cycle cannot be seen, so it reads as green).
inline ScanRow scan_one(const FloatMap& f_star, const FloatMap& g, std::size_t index, const ScanOptions& opts) {
    ScanRow row;
    row.index = index;
    try {
        if (g.n() != f_star.n() || g.k() != f_star.k())
            throw DimensionError("deform_scan: maps do not share (n, k)");
        row.l2_distance = l2_distance(f_star, g);
        auto fpo = opts.fixed_points;
        fpo.jobs = 1;
        const auto fps = find_fixed_points(g, fpo);
        row.n_fixed_points = fps.points.size();
        for (const auto& p : fps.points) {
            row.per_point_min_abs_eig.push_back(p.min_abs_eigenvalue());
            row.min_abs_eig = std::min(row.min_abs_eig, p.min_abs_eigenvalue());
        }
        const MapEvaluator ev(g);
        auto rng = SplitMix64::for_task(opts.seed, index);
        std::vector<double> x0(g.n());
        for (std::size_t trial = 0; trial < opts.trials_per_map; ++trial) {
            sample_uniform_into(g.n(), rng, x0.data());
            const auto v = classify_orbit(ev, x0, opts.orbit);
            row.fixed_trials += v.kind == OrbitKind::converged_fixed;
            row.periodic_trials += v.kind == OrbitKind::periodic;
        }
        row.verdict = (row.fixed_trials + row.periodic_trials == 0) ? ScanVerdict::green : ScanVerdict::red;
    } catch (const std::exception& e) {
        row.verdict = ScanVerdict::failed;
        row.error = e.what();
    }
    return row;
}

inline std::vector<ScanRow> deform_scan(const FloatMap& f_star, const std::vector<FloatMap>& samples,
                                        const ScanOptions& opts = {}) {
    std::vector<ScanRow> rows(samples.size());
    parallel_for(samples.size(), resolve_jobs(opts.jobs),
                 [&](std::size_t i) { rows[i] = scan_one(f_star, samples[i], i, opts); });
    return rows;
}

// ---------------------------------------------------------------- fixation

struct FixationRecord {
    std::vector<double> initial;
    int vertex = -1;         ///< 1..n: e_j, n+1: origin; -1 when not absorbed
    std::size_t time = 0;    ///< iterations until absorption (max_iters when not absorbed)
    bool absorbed() const { return vertex > 0; }
};

struct LogNormalFit {
    double mu = 0.0;
    double sigma = 0.0;
    std::size_t samples = 0;
    bool low_sample = false;
};

struct FixationOptions {
    double region = 0.01;          ///< initial points uniform in (0, region)^n
    std::size_t count = 10000;
    double absorb_tol = 1e-9;      ///< l_inf distance to a vertex
    std::size_t max_iters = 100000;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

struct FixationResult {
    std::vector<FixationRecord> records;
    std::size_t unabsorbed = 0;
    std::optional<LogNormalFit> fit;
};

inline constexpr std::size_t kLowSampleThreshold = 100;

/// Maximum-likelihood log-normal fit: mean and population std of ln t.
inline std::optional<LogNormalFit> fit_lognormal(const std::vector<double>& times) {
    if (times.empty())
        return std::nullopt;
    LogNormalFit fit;
    fit.samples = times.size();
    double sum = 0.0;
    for (double t : times)
        sum += std::log(t);
    fit.mu = sum / static_cast<double>(times.size());
    double ss = 0.0;
    for (double t : times)
        ss += (std::log(t) - fit.mu) * (std::log(t) - fit.mu);
    fit.sigma = std::sqrt(ss / static_cast<double>(times.size()));
    fit.low_sample = times.size() < kLowSampleThreshold;
    return fit;
}

/// l_inf distance from x to vertex v (0..n-1 for e_j, n for the origin).
inline double vertex_distance(const std::vector<double>& x, std::size_t v) {
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        d = std::max(d, std::abs(x[i] - (i == v ? 1.0 : 0.0)));
    return d;
}

/// Vertex within tol of x (1..n for e_j, n+1 for the origin), or -1.
inline int nearby_vertex(const std::vector<double>& x, double tol) {
    for (std::size_t v = 0; v <= x.size(); ++v)
        if (vertex_distance(x, v) < tol)
            return static_cast<int>(v + 1);
    return -1;
}

/// Vertices that are fixed points with spectral radius below 1. Entry `v`
/// follows the nearby_vertex numbering minus one.
inline std::vector<bool> absorbing_vertices(const MapEvaluator& ev) {
    const std::size_t n = ev.n();
    std::vector<bool> out(n + 1, false);
    std::vector<double> v(n), img(n);
    for (std::size_t j = 0; j <= n; ++j) {
        std::fill(v.begin(), v.end(), 0.0);
        if (j < n)
            v[j] = 1.0;
        ev.eval(v.data(), img.data());
        if (linf_distance(v, img) > 1e-12)
            continue;
        double radius = 0.0;
        for (const auto& l : eigenvalues(jacobian_at(ev, v)))
            radius = std::max(radius, std::abs(l));
        out[j] = radius < 1.0;
    }
    return out;
}

/// First time the orbit is within tol of an absorbing vertex. Passing close
/// to a vertex that is repelling or not fixed does not count.
inline FixationRecord run_fixation(const MapEvaluator& ev, std::vector<double> x0, double absorb_tol,
                                   std::size_t max_iters, const std::vector<bool>& absorbing) {
    FixationRecord rec;
    rec.initial = x0;
    std::vector<double> x = std::move(x0), y(x.size());
    for (std::size_t t = 1; t <= max_iters; ++t) {
        ev.step(x.data(), y.data());
        std::swap(x, y);
        for (std::size_t v = 0; v < absorbing.size(); ++v)
            if (absorbing[v] && vertex_distance(x, v) < absorb_tol) {
                rec.vertex = static_cast<int>(v + 1);
                rec.time = t;
                return rec;
            }
    }
    rec.time = max_iters;
    return rec;
}

inline FixationRecord run_fixation(const MapEvaluator& ev, std::vector<double> x0, double absorb_tol,
                                   std::size_t max_iters) {
    return run_fixation(ev, std::move(x0), absorb_tol, max_iters, absorbing_vertices(ev));
}

template <Scalar S>
FixationResult fixation_experiment(const SimplexMap<S>& f, const FixationOptions& opts = {}) {
    const MapEvaluator ev(f);
    const std::size_t n = f.n();
    const auto absorbing = absorbing_vertices(ev);
    FixationResult out;
    out.records.resize(opts.count);
    parallel_for(opts.count, resolve_jobs(opts.jobs), [&](std::size_t i) {
        auto rng = SplitMix64::for_task(opts.seed, i);
        std::vector<double> x0(n);
        for (auto& v : x0) {
            do
                v = rng.uniform() * opts.region;
            while (v <= 0.0);
        }
        out.records[i] = run_fixation(ev, std::move(x0), opts.absorb_tol, opts.max_iters, absorbing);
    });
    std::vector<double> times;
    for (const auto& r : out.records) {
        if (r.absorbed())
            times.push_back(static_cast<double>(r.time));
        else
            ++out.unabsorbed;
    }
    out.fit = fit_lognormal(times);
    return out;
}

// ---------------------------------------------------------------- invariant measure

/// CDF of the arcsine measure dx / (pi sqrt(x(1-x))).
inline double arcsine_cdf(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
}

/// Kolmogorov-Smirnov distance between the sorted sample and `cdf`.
template <class Cdf>
double ks_statistic(std::vector<double> sample, Cdf&& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

/// Pushes arcsine-distributed points through cheb:d and returns the KS distance
/// of the image to the arcsine law.
inline double invariant_measure_test(int d, std::size_t sample_count, std::uint64_t seed = 1) {
    if (d < 1)
        throw std::invalid_argument("invariant_measure_test: d >= 1");
    const CompiledPoly f(chebyshev_fold_poly(d));
    SplitMix64 rng(seed);
    std::vector<double> image(sample_count);
    for (auto& y : image) {
        const double x = 0.5 * (1.0 - std::cos(std::numbers::pi * rng.uniform()));
        y = f(&x);
    }
    return ks_statistic(std::move(image), arcsine_cdf);
}

} // namespace simplexfold
