#include "simplexfold/catalog.hpp"
#include "simplexfold/folding.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace simplexfold;

namespace {

ExactPoly P1(const char* s) { return parse_polynomial(s, 1); }
ExactPoly P2(const char* s) { return parse_polynomial(s, 2); }

std::vector<Rational> R(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST(Catalog, PrintedEntries) {
    EXPECT_EQ(catalog("cheb:2")[0], P1("4x(1-x)"));
    EXPECT_EQ(catalog("cheb:5")[0], P1("x(5-20x+16x^2)^2"));
    const auto f2 = catalog("tri:f2");
    EXPECT_EQ(f2[0], P2("(x-y)^2"));
    EXPECT_EQ(f2[1], P2("(1-x-y)(1+x+y)"));
    EXPECT_EQ(f2.last_poly(), P2("4x y"));
}

TEST(Catalog, UnknownName) {
    EXPECT_THROW(catalog("cheb:0"), UnknownMapError);
    EXPECT_THROW(catalog("tri:f3"), UnknownMapError);
    EXPECT_THROW(catalog("cheb:2x"), UnknownMapError);
    EXPECT_THROW(catalog("logistic"), UnknownMapError);
}

// Oracle: the trigonometric closed form T_d(cos t) = cos(d t).
TEST(Catalog, ChebyshevMatchesTrigonometricForm) {
    for (int d = 1; d <= 12; ++d) {
        const FloatPoly p = catalog("cheb:" + std::to_string(d))[0].cast<double>();
        for (double x : {0.0, 0.013, 0.25, 0.4064, 0.5, 0.77, 1.0}) {
            // expanded-form evaluation loses accuracy in proportion to the coefficient mass
            double mass = 0;
            for (const auto& [e, c] : p.terms())
                mass += std::abs(c);
            const double expect = (1 - std::cos(d * std::acos(1 - 2 * x))) / 2;
            EXPECT_NEAR(p.evaluate(std::span<const double>(&x, 1)), expect, 1e-15 * mass) << d << " " << x;
        }
    }
}

TEST(Catalog, ChebyshevFactorFormulas) {
    for (int d = 1; d <= 12; ++d) {
        const auto e = chebyshev_entry(d);
        const auto rep = verify_factorization(e.map, e.factors);
        EXPECT_TRUE(rep.ok()) << d;
    }
}

TEST(Catalog, PrintedTableFactorsReassemble) {
    for (int d = 1; d <= 6; ++d) {
        const auto rep = verify_factorization(catalog("cheb:" + std::to_string(d)), chebyshev_table_factors(d));
        EXPECT_TRUE(rep.ok()) << d;
    }
}

TEST(Catalog, TriangleFactorsVerify) {
    for (const char* w : {"f1", "f2", "f4", "f8", "f9"}) {
        const auto e = triangle_entry(w);
        const auto rep = verify_factorization(e.map, e.factors);
        for (const auto& c : rep.checks)
            EXPECT_TRUE(c.passed) << w << ": " << c.name << " " << c.detail;
    }
}

TEST(Catalog, Compositions) {
    for (int d = 1; d <= 4; ++d)
        for (int e = 1; d * e <= 12; ++e)
            EXPECT_EQ(compose_maps(catalog("cheb:" + std::to_string(d)), catalog("cheb:" + std::to_string(e))).polys(),
                      catalog("cheb:" + std::to_string(d * e)).polys());
    const auto f2 = catalog("tri:f2");
    EXPECT_EQ(compose_maps(f2, f2).polys(), catalog("tri:f4").polys());
    EXPECT_EQ(compose_maps(f2, compose_maps(f2, f2)).polys(), catalog("tri:f8").polys());
}

TEST(Verify, NineFoldBoundaryProduct) {
    const auto rep = verify_factorization(catalog("tri:f9"), std::vector<std::vector<int>>{{1}, {2}, {3}});
    ASSERT_TRUE(rep.ok());
    ExactPoly lprod = P2("1");
    for (const auto& f : rep.factors)
        lprod = lprod * f.l();
    EXPECT_EQ(lprod, P2("x y (1-x-y)"));
}

TEST(Verify, FourFoldIntervalTable) {
    const auto table = chebyshev_table_factors(4);
    EXPECT_EQ(table[0].facets, (std::vector<int>{1, 2}));
    EXPECT_EQ(table[0].q, P1("1-2x"));
    EXPECT_EQ(table[0].m, P1("16"));
    EXPECT_EQ(table[0].product(), P1("16x(1-x)(1-2x)^2"));
}

TEST(Verify, IdentityInferred) {
    const auto rep = verify_factorization(identity_map(2));
    ASSERT_TRUE(rep.ok());
    EXPECT_EQ(rep.factors[0].facets, (std::vector<int>{1}));
    EXPECT_EQ(rep.factors[1].facets, (std::vector<int>{2}));
    EXPECT_EQ(rep.factors[2].facets, (std::vector<int>{3}));
    for (const auto& f : rep.factors)
        EXPECT_EQ(f.m, P2("1"));
}

TEST(Verify, FalseClaimThrows) {
    EXPECT_THROW(verify_factorization(catalog("tri:f2"), std::vector<std::vector<int>>{{1}, {3}, {1, 2}}),
                 FactorizationError);
}

TEST(Verify, WrongProductReported) {
    auto factors = triangle_factors("f2");
    factors[2].m = P2("5");
    EXPECT_FALSE(verify_factorization(catalog("tri:f2"), factors).ok());
}

TEST(Template, ValidationRejectsBadFacets) {
    auto t = triangle_two_template();
    t.factors[0].facets = {3};
    EXPECT_THROW(t.validate(), TemplateError);
    auto u = triangle_two_template();
    u.k = 1;
    EXPECT_THROW(u.validate(), TemplateError);
}

TEST(Residual, TwoFoldAtSolution) {
    const auto t = triangle_two_template();
    EXPECT_TRUE(residual(t, R({1, 1, 1, 1, 1, 4})).is_zero());
}

TEST(Residual, TwoFoldPerturbed) {
    const auto t = triangle_two_template();
    const auto r = residual(t, R({1, 1, 1, 1, 1, 5}));
    // 1 - sum P_i carries (E + D + 2AB - F) xy with the sign of the subtraction
    EXPECT_EQ(r.coefficient({1, 1}), Rational(-1));
    EXPECT_EQ(r, P2("-x y"));
}

TEST(Residual, IntervalQuadraticAtLogistic) {
    EXPECT_TRUE(residual(interval_template(2), R({4, 1, -2})).is_zero());
}

TEST(Residual, ShapeMismatch) { EXPECT_THROW(residual(interval_template(2), R({4, 1})), DimensionError); }

TEST(Residual, SymbolicSystemMatchesNumeric) {
    const auto t = triangle_two_template();
    const auto sys = residual_system(t);
    const auto params = R({2, 3, -1, 5, 7, 11});
    const auto r = residual(t, params);
    for (std::size_t i = 0; i < sys.x_monomials.size(); ++i)
        EXPECT_EQ(sys.equations[i].evaluate(std::span<const Rational>(params)), r.coefficient(sys.x_monomials[i]));
}

TEST(MatchParams, IntervalTemplatesReproduceChebyshev) {
    for (int d = 1; d <= 8; ++d) {
        const auto t = interval_template(d);
        const auto p = match_params(t, chebyshev_factors(d));
        ASSERT_TRUE(p.has_value()) << d;
        EXPECT_TRUE(residual(t, *p).is_zero()) << d;
        EXPECT_EQ(assemble_map(t, std::span<const Rational>(*p)).polys(), catalog("cheb:" + std::to_string(d)).polys());
    }
}

TEST(MatchParams, NineFoldInTemplate) {
    const auto t = triangle_nine_template();
    auto factors = triangle_factors("f9");
    // unit constant term on every crease: move the constant into the cofactor
    for (auto& f : factors) {
        const Rational c = f.q.coefficient({0, 0});
        f.q = f.q * (Rational(1) / c);
        f.m = f.m * (c * c);
    }
    const auto p = match_params(t, factors);
    ASSERT_TRUE(p.has_value());
    EXPECT_TRUE(residual(t, *p).is_zero());
    EXPECT_EQ(assemble_map(t, std::span<const Rational>(*p)).polys(), catalog("tri:f9").polys());
}

TEST(MatchParams, InconsistentClaim) {
    auto factors = triangle_factors("f2");
    factors[0].q = P2("x-y+x^2");
    EXPECT_FALSE(match_params(triangle_two_template(), factors).has_value());
}

TEST(SolveFold, IdentityClass) {
    const auto rep = solve_fold(interval_template(1));
    ASSERT_EQ(rep.solutions.size(), 1u);
    ASSERT_TRUE(rep.solutions[0].exact_map.has_value());
    EXPECT_EQ(rep.solutions[0].exact_map->polys(), identity_map(1).polys());
}

TEST(SolveFold, LogisticUnique) {
    const auto rep = solve_fold(interval_template(2));
    ASSERT_EQ(rep.solutions.size(), 1u);
    const auto& s = rep.solutions[0];
    ASSERT_TRUE(s.exact());
    EXPECT_EQ(*s.exact_params, R({4, 1, -2}));
    EXPECT_EQ(s.exact_map->polys(), catalog("cheb:2").polys());
}

TEST(SolveFold, TwoFoldOfTriangleUnique) {
    const auto rep = solve_fold(triangle_two_template());
    ASSERT_EQ(rep.solutions.size(), 1u);
    ASSERT_TRUE(rep.solutions[0].exact());
    EXPECT_EQ(*rep.solutions[0].exact_params, R({1, 1, 1, 1, 1, 4}));
    EXPECT_LT(rep.solutions[0].residual_norm, 1e-10);
}

TEST(SolveFold, UserSeedsAreUsed) {
    SolveOptions o;
    o.seeds = 0;
    o.user_seeds = {{1.1, 0.9, 1.0, 1.2, 0.8, 3.9}};
    const auto rep = solve_fold(triangle_two_template(), o);
    ASSERT_EQ(rep.solutions.size(), 1u);
    EXPECT_EQ(*rep.solutions[0].exact_params, R({1, 1, 1, 1, 1, 4}));
}

TEST(SolveFold, NoSolutionReported) {
    // P1 = x(1-x) with P2 = B^2 cannot sum to 1: the x term never cancels
    TemplateBuilder b("broken", 1, 2);
    const auto bb = b.add_param("B");
    const ParamPoly one = b.fixed(P1("1"));
    b.add_factor({1, 2}, one, one);
    b.add_factor({}, b.param_term({0}, bb), one);
    SolveOptions o;
    o.seeds = 20;
    EXPECT_THROW(solve_fold(b.build(), o), FoldSolveError);
}

// Oracle: sign changes of P(x) - y on a fine grid, refined by bisection.
TEST(Preimage, CubicAgainstBisection) {
    const auto f = catalog("cheb:3");
    const FloatPoly p = f[0].cast<double>();
    const double y = 0.37;
    int roots = 0;
    const int m = 100000;
    double prev = p.evaluate(std::vector<double>{0.0}) - y;
    for (int i = 1; i <= m; ++i) {
        const double x = static_cast<double>(i) / m;
        const double v = p.evaluate(std::vector<double>{x}) - y;
        roots += (prev < 0) != (v < 0);
        prev = v;
    }
    EXPECT_EQ(roots, 3);
    EXPECT_EQ(preimage_count(f, SimplexPoint({y})).count, 3u);
}

TEST(Preimage, TwoFoldRandomTargets) {
    const auto f = catalog("tri:f2");
    SplitMix64 rng(11);
    for (const auto& y : sample_uniform(2, 20, rng)) {
        const auto rep = preimage_count(f, y);
        EXPECT_EQ(rep.count, 2u);
        for (const auto& x : rep.points) {
            std::vector<Rational> xr{Rational(x[0]), Rational(x[1])};
            EXPECT_NEAR(to_double(f[0].evaluate(std::span<const Rational>(xr))), y[0], 1e-10);
        }
    }
}

TEST(Preimage, Identity) { EXPECT_EQ(preimage_count(identity_map(2), SimplexPoint({0.2, 0.3})).count, 1u); }

TEST(Preimage, DimensionMismatch) {
    EXPECT_THROW(preimage_count(identity_map(2), SimplexPoint({0.2})), DimensionError);
}
