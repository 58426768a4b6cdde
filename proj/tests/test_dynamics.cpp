#include "simplexfold/catalog.hpp"
#include "simplexfold/dynamics.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace simplexfold;

namespace {

FloatMap logistic(double lambda) {
    return FloatMap(1, 2, {parse_polynomial("x - x^2", 1).cast<double>() * lambda}, "logistic");
}

double dist(const std::vector<double>& a, std::initializer_list<double> b) {
    double s = 0;
    std::size_t i = 0;
    for (double v : b) {
        s += (a[i] - v) * (a[i] - v);
        ++i;
    }
    return std::sqrt(s);
}

} // namespace

TEST(Spectrum, QuadraticCharPoly) {
    Eigen::MatrixXd m(2, 2);
    m << 2, -2, -2, -2;
    const auto e = eigenvalues_charpoly(m);
    EXPECT_NEAR(std::abs(e[0]), 2 * std::sqrt(2.0), 1e-14);
    EXPECT_NEAR(e[0].real() + e[1].real(), 0.0, 1e-14);
}

TEST(Spectrum, CubicComplexPair) {
    Eigen::MatrixXd m(3, 3);
    m << 0, -1, 0, 1, 0, 0, 0, 0, 2;
    const auto e = eigenvalues_charpoly(m);
    EXPECT_NEAR(std::abs(e[0]), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(e[0].imag()), 1.0, 1e-12);
    EXPECT_NEAR(e[2].real(), 2.0, 1e-12);
}

// The closed-form path against a finite-difference Jacobian + QR path.
TEST(Spectrum, TwoPathsAgree) {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 2);
        Eigen::MatrixXd m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m(i, j) = rng.uniform(-3, 3);
        // linear map x -> m x, Jacobian by central differences
        Eigen::MatrixXd fd(n, n);
        const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(n, 0.1);
        const double h = 1e-6;
        for (std::size_t j = 0; j < n; ++j) {
            Eigen::VectorXd xp = x0, xm = x0;
            xp(j) += h;
            xm(j) -= h;
            fd.col(j) = (m * xp - m * xm) / (2 * h);
        }
        const auto a = eigenvalues_charpoly(m);
        const auto b = eigenvalues_qr(fd);
        for (const auto& l : a) {
            double best = INFINITY;
            for (const auto& r : b)
                best = std::min(best, std::abs(l - r));
            EXPECT_LT(best, 1e-6);
        }
    }
}

TEST(Spectrum, Classification) {
    using C = Complex;
    EXPECT_EQ(classify_spectrum({C(0.5), C(0.1)}), FixedPointKind::attracting);
    EXPECT_EQ(classify_spectrum({C(1.5), C(-2)}), FixedPointKind::repelling);
    EXPECT_EQ(classify_spectrum({C(0.5), C(2)}), FixedPointKind::saddle);
    EXPECT_EQ(classify_spectrum({C(0.5), C(1.0 + 1e-10)}), FixedPointKind::marginal);
}

TEST(FixedPoints, TwoFoldVertexRepelling) {
    const auto rep = find_fixed_points(catalog("tri:f2"));
    bool found = false;
    for (const auto& p : rep.points) {
        EXPECT_LT(p.residual, 1e-11);
        if (dist(p.location, {1.0, 0.0}) < 1e-9) {
            found = true;
            EXPECT_EQ(p.kind, FixedPointKind::repelling);
            ASSERT_EQ(p.eigenvalues.size(), 2u);
            for (const auto& l : p.eigenvalues)
                EXPECT_NEAR(std::abs(l), 2 * std::sqrt(2.0), 1e-8);
        }
    }
    EXPECT_TRUE(found);
}

TEST(FixedPoints, ResidualsAndClassificationConsistent) {
    for (const char* name : {"tri:f2", "tri:f4", "tri:f9", "cheb:3"}) {
        const auto rep = find_fixed_points(catalog(name));
        for (const auto& p : rep.points) {
            EXPECT_LT(p.residual, 1e-11) << name;
            EXPECT_EQ(p.kind, classify_spectrum(p.eigenvalues)) << name;
        }
    }
}

TEST(FixedPoints, ChebyshevCountMatchesClosedForm) {
    // fixed points of (1 - cos(d t))/2 = (1 - cos t)/2: t = 2 pi j/(d-1), 2 pi j/(d+1)
    for (int d = 2; d <= 6; ++d) {
        std::vector<double> expect;
        for (int j = 0; 2 * j <= d - 1; ++j)
            expect.push_back((1 - std::cos(2 * std::numbers::pi * j / (d - 1))) / 2);
        for (int j = 1; 2 * j <= d + 1; ++j)
            expect.push_back((1 - std::cos(2 * std::numbers::pi * j / (d + 1))) / 2);
        std::sort(expect.begin(), expect.end());
        expect.erase(std::unique(expect.begin(), expect.end(),
                                 [](double a, double b) { return std::abs(a - b) < 1e-9; }),
                     expect.end());
        const auto rep = find_fixed_points(catalog("cheb:" + std::to_string(d)));
        ASSERT_EQ(rep.points.size(), expect.size()) << d;
        std::vector<double> got;
        for (const auto& p : rep.points)
            got.push_back(p.location[0]);
        std::sort(got.begin(), got.end());
        for (std::size_t i = 0; i < got.size(); ++i)
            EXPECT_NEAR(got[i], expect[i], 1e-9) << d;
    }
}

TEST(FixedPoints, IdentityFlaggedDegenerate) {
    const auto rep = find_fixed_points(identity_map(2));
    EXPECT_TRUE(rep.degenerate_all_fixed);
    EXPECT_TRUE(rep.points.empty());
}

TEST(FixedPoints, NineFoldNearVertexStructure) {
    const auto rep = find_fixed_points(catalog("tri:f9"));
    std::size_t attracting = 0;
    for (const auto& p : rep.points) {
        if (p.kind != FixedPointKind::attracting)
            continue;
        ++attracting;
        const bool at_vertex = dist(p.location, {1, 0}) < 1e-10 || dist(p.location, {0, 1}) < 1e-10;
        EXPECT_TRUE(at_vertex);
    }
    EXPECT_EQ(attracting, 2u);
}

TEST(Orbit, LogisticChaotic) {
    const auto v = classify_orbit(logistic(4.0), SimplexPoint({0.2}));
    EXPECT_EQ(v.kind, OrbitKind::nonperiodic_within_window);
}

TEST(Orbit, ConstantMapConvergesInOneStep) {
    const FloatMap f(1, 1, {FloatPoly::constant(1, 0.3)});
    const auto v = classify_orbit(f, SimplexPoint({0.8}));
    EXPECT_EQ(v.kind, OrbitKind::converged_fixed);
    EXPECT_EQ(v.iterations_used, 1u);
    EXPECT_NEAR(v.witness[0], 0.3, 1e-15);
}

TEST(Orbit, PeriodTwoWindow) {
    const auto v = classify_orbit(logistic(3.2), SimplexPoint({0.123}));
    ASSERT_EQ(v.kind, OrbitKind::periodic);
    EXPECT_EQ(v.period, 2u);
    // oracle: direct iteration returns to the witness after two steps
    double x = v.witness[0];
    for (int i = 0; i < 2; ++i)
        x = 3.2 * x * (1 - x);
    EXPECT_NEAR(x, v.witness[0], 1e-10);
}

TEST(Orbit, PeriodFour) {
    const auto v = classify_orbit(logistic(3.5), SimplexPoint({0.3}));
    ASSERT_EQ(v.kind, OrbitKind::periodic);
    EXPECT_EQ(v.period, 4u);
}

// 0.5 + 1e-6 -> 1 - 4e-12 -> 1.6e-11: two short steps near the repelling point 0
TEST(Orbit, PassingRepellingPointIsNotConvergence) {
    const auto v = classify_orbit(logistic(4.0), SimplexPoint({0.5 + 1e-6}));
    EXPECT_NE(v.kind, OrbitKind::converged_fixed);
}

TEST(Orbit, LogisticFoldMixing) {
    const auto f = catalog("cheb:2").cast<double>();
    SplitMix64 rng(99);
    for (const auto& x0 : sample_uniform(1, 100, rng)) {
        const auto v = classify_orbit(f, x0);
        EXPECT_EQ(v.kind, OrbitKind::nonperiodic_within_window) << x0[0];
    }
}

TEST(Orbit, EscapeThrows) {
    const FloatMap f(1, 1, {parse_polynomial("2x", 1).cast<double>()});
    EXPECT_THROW(classify_orbit(f, SimplexPoint({0.6})), ImageOutsideSimplexError);
}

TEST(Orbit, StartOutsideThrows) {
    const MapEvaluator ev(logistic(3.0));
    EXPECT_THROW(classify_orbit(ev, {1.5}), OutsideSimplexError);
}

TEST(DeformScan, ReferenceAndConstant) {
    const auto f2 = catalog("tri:f2").cast<double>();
    const FloatMap bary(2, 2, {FloatPoly::constant(2, 1.0 / 3), FloatPoly::constant(2, 1.0 / 3)});
    const FloatMap wrong_k(2, 3, {FloatPoly::constant(2, 0.1), FloatPoly::constant(2, 0.1)});
    const auto rows = deform_scan(f2, {f2, bary, wrong_k});
    ASSERT_EQ(rows.size(), 3u);
    EXPECT_EQ(rows[0].l2_distance, 0.0);
    EXPECT_EQ(rows[0].verdict, ScanVerdict::green);
    EXPECT_NEAR(rows[0].min_abs_eig, std::abs(Complex(-1.06807, 0.981925)), 1e-4);
    EXPECT_EQ(rows[1].verdict, ScanVerdict::red);
    EXPECT_EQ(rows[1].n_fixed_points, 1u);
    EXPECT_EQ(rows[2].verdict, ScanVerdict::failed);
    EXPECT_FALSE(rows[2].error.empty());
}

TEST(DeformScan, JobsDoNotChangeRows) {
    const auto f2 = catalog("tri:f2").cast<double>();
    const FloatMap bary(2, 2, {FloatPoly::constant(2, 0.25), FloatPoly::constant(2, 0.5)});
    ScanOptions one, four;
    four.jobs = 4;
    const auto a = deform_scan(f2, {f2, bary, f2}, one);
    const auto b = deform_scan(f2, {f2, bary, f2}, four);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].verdict, b[i].verdict);
        EXPECT_EQ(a[i].min_abs_eig, b[i].min_abs_eig);
        EXPECT_EQ(a[i].fixed_trials, b[i].fixed_trials);
    }
}

TEST(Fixation, NineFoldAbsorbsAtVertices) {
    FixationOptions o;
    o.count = 500;
    const auto r = fixation_experiment(catalog("tri:f9"), o);
    EXPECT_EQ(r.unabsorbed, 0u);
    for (const auto& rec : r.records) {
        EXPECT_TRUE(rec.vertex == 1 || rec.vertex == 2);
        EXPECT_GT(rec.time, 0u);
    }
    ASSERT_TRUE(r.fit.has_value());
    EXPECT_FALSE(r.fit->low_sample);
}

TEST(Fixation, RecordsReproduceAndAreFirstHits) {
    const auto f = catalog("tri:f9");
    FixationOptions o;
    o.count = 50;
    const auto r = fixation_experiment(f, o);
    const MapEvaluator ev(f);
    for (const auto& rec : r.records) {
        const auto again = run_fixation(ev, rec.initial, o.absorb_tol, o.max_iters);
        EXPECT_EQ(again.time, rec.time);
        EXPECT_EQ(again.vertex, rec.vertex);
        // oracle: plain iteration, checking the absorption rule at every step
        std::vector<double> x = rec.initial, y(2);
        for (std::size_t t = 1; t <= rec.time; ++t) {
            ev.step(x.data(), y.data());
            x = y;
            int v = nearby_vertex(x, o.absorb_tol);
            if (v == 3)
                v = -1; // the origin is not absorbing for this map
            if (t < rec.time)
                EXPECT_EQ(v, -1);
            else
                EXPECT_EQ(v, rec.vertex);
        }
    }
}

TEST(Fixation, TwoFoldNeverAbsorbs) {
    FixationOptions o;
    o.count = 20;
    o.max_iters = 2000;
    const auto r = fixation_experiment(catalog("tri:f2"), o);
    EXPECT_EQ(r.unabsorbed, 20u);
    EXPECT_FALSE(r.fit.has_value());
    for (const auto& rec : r.records)
        EXPECT_EQ(rec.time, 2000u);
}

TEST(Fixation, AbsorbingVertices) {
    EXPECT_EQ(absorbing_vertices(MapEvaluator(catalog("tri:f9"))), (std::vector<bool>{true, true, false}));
    EXPECT_EQ(absorbing_vertices(MapEvaluator(catalog("tri:f2"))), (std::vector<bool>{false, false, false}));
    const FloatMap shrink(1, 1, {parse_polynomial("x/2", 1).cast<double>()});
    EXPECT_EQ(absorbing_vertices(MapEvaluator(shrink)), (std::vector<bool>{false, true}));
}

// (1e-5, 1e-5) lands within 4e-10 of (0,1), then within 8e-10 of (1,0), then leaves.
TEST(Fixation, PassingVertexIsNotAbsorption) {
    const MapEvaluator ev(catalog("tri:f2"));
    std::vector<double> x{1e-5, 1e-5}, y(2);
    ev.step(x.data(), y.data());
    ASSERT_EQ(nearby_vertex(y, 1e-9), 2);
    const auto rec = run_fixation(ev, x, 1e-9, 50);
    EXPECT_FALSE(rec.absorbed());
    EXPECT_EQ(rec.time, 50u);
}

TEST(Fixation, EmptyRun) {
    FixationOptions o;
    o.count = 0;
    const auto r = fixation_experiment(catalog("tri:f9"), o);
    EXPECT_TRUE(r.records.empty());
    EXPECT_FALSE(r.fit.has_value());
}

TEST(Fixation, LowSampleFlag) {
    FixationOptions o;
    o.count = 10;
    const auto r = fixation_experiment(catalog("tri:f9"), o);
    ASSERT_TRUE(r.fit.has_value());
    EXPECT_TRUE(r.fit->low_sample);
}

TEST(Fixation, LogNormalFitFormulas) {
    const auto fit = fit_lognormal({1.0, std::exp(2.0)});
    ASSERT_TRUE(fit);
    EXPECT_DOUBLE_EQ(fit->mu, 1.0);
    EXPECT_DOUBLE_EQ(fit->sigma, 1.0);
}

TEST(Fixation, DeterministicAcrossJobs) {
    FixationOptions a, b;
    a.count = b.count = 200;
    b.jobs = 3;
    const auto f = catalog("tri:f9");
    const auto ra = fixation_experiment(f, a), rb = fixation_experiment(f, b);
    for (std::size_t i = 0; i < ra.records.size(); ++i)
        EXPECT_EQ(ra.records[i].time, rb.records[i].time);
}

TEST(Measure, ArcsineCdf) {
    EXPECT_DOUBLE_EQ(arcsine_cdf(0), 0);
    EXPECT_NEAR(arcsine_cdf(0.5), 0.5, 1e-15);
    EXPECT_DOUBLE_EQ(arcsine_cdf(1), 1);
}

TEST(Measure, IdentityLikeExactSample) {
    const double ks = invariant_measure_test(1, 20000, 3);
    EXPECT_LT(ks, 1.36 / std::sqrt(20000.0));
}

TEST(Measure, LogisticAndCubicPreserve) {
    EXPECT_LT(invariant_measure_test(2, 100000), 0.02);
    EXPECT_LT(invariant_measure_test(3, 100000), 0.02);
}

TEST(Measure, UniformIsNotInvariant) {
    SplitMix64 rng(4);
    std::vector<double> u(20000);
    for (auto& v : u)
        v = rng.uniform();
    EXPECT_GT(ks_statistic(u, arcsine_cdf), 0.05);
    EXPECT_THROW(invariant_measure_test(0, 10), std::invalid_argument);
}
