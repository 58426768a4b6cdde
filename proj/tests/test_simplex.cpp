#include "simplexfold/catalog.hpp"
#include "simplexfold/simplex.hpp"

#include <gtest/gtest.h>

using namespace simplexfold;

TEST(SimplexPoint, MembershipEnforced) {
    EXPECT_NO_THROW(SimplexPoint({0.2, 0.8}));
    EXPECT_NO_THROW(SimplexPoint({-1e-12, 0.5}));
    EXPECT_THROW(SimplexPoint({0.6, 0.6}), OutsideSimplexError);
    EXPECT_THROW(SimplexPoint({-0.1}), OutsideSimplexError);
    EXPECT_DOUBLE_EQ(SimplexPoint({0.25, 0.5}).last(), 0.25);
}

TEST(FaceOf, Vertex) {
    EXPECT_EQ(face_of(SimplexPoint({0.0, 0.0}), 1e-12).zero_set, (std::vector<int>{1, 2}));
}

TEST(FaceOf, Interior) { EXPECT_TRUE(face_of(SimplexPoint({1.0 / 3, 1.0 / 3})).is_interior()); }

TEST(FaceOf, Hypotenuse) { EXPECT_EQ(face_of(SimplexPoint({0.5, 0.5})).zero_set, (std::vector<int>{3})); }

TEST(FaceOf, OutsideThrows) {
    std::vector<double> x{0.7, 0.7};
    EXPECT_THROW(face_of(x), OutsideSimplexError);
}

TEST(FaceOf, VerticesHaveNFacets) {
    EXPECT_EQ(face_of(SimplexPoint({1.0, 0.0, 0.0})).zero_set, (std::vector<int>{2, 3, 4}));
}

TEST(MonomialIntegral, Values) {
    EXPECT_EQ(monomial_integral({0}), Rational(1));
    EXPECT_EQ(monomial_integral({1, 1}), Rational(1, 24));
    EXPECT_EQ(monomial_integral({2, 0}), Rational(1, 12));
    EXPECT_EQ(monomial_integral({0, 0}), Rational(1, 2));
}

// Independent oracle: midpoint rule on a fine grid of the unit interval.
TEST(MonomialIntegral, MatchesQuadratureOnInterval) {
    for (int a = 0; a <= 6; ++a) {
        const int m = 200000;
        double s = 0;
        for (int i = 0; i < m; ++i)
            s += std::pow((i + 0.5) / m, a) / m;
        EXPECT_NEAR(to_double(monomial_integral({a})), s, 1e-9);
    }
}

TEST(L2Distance, SameMapIsZero) {
    const auto f = catalog("tri:f2");
    EXPECT_EQ(l2_distance(f, f), 0.0);
}

TEST(L2Distance, IdentityVersusZero) {
    const auto id = identity_map(2);
    const ExactMap zero(2, 1, {ExactPoly(2), ExactPoly(2)});
    EXPECT_NEAR(l2_distance(id, zero), std::sqrt(1.0 / 6), 1e-15);
}

TEST(L2Distance, LogisticVersusIdentity) {
    EXPECT_NEAR(l2_distance(catalog("cheb:2"), ExactMap(1, 2, {parse_polynomial("x", 1)})), std::sqrt(0.2), 1e-15);
}

TEST(L2Distance, DimensionMismatchThrows) {
    EXPECT_THROW(l2_distance(identity_map(1), identity_map(2)), DimensionError);
}

TEST(SampleUniform, EmptyCount) {
    SplitMix64 rng(1);
    EXPECT_TRUE(sample_uniform(2, 0, rng).empty());
}

TEST(SampleUniform, IntervalMean) {
    SplitMix64 rng(2);
    const std::size_t n = 100000;
    double s = 0;
    for (const auto& p : sample_uniform(1, n, rng))
        s += p[0];
    const double sigma = std::sqrt(1.0 / 12 / n);
    EXPECT_NEAR(s / n, 0.5, 3 * sigma);
}

TEST(SampleUniform, TriangleSupportAndMoments) {
    SplitMix64 rng(3);
    const std::size_t n = 100000;
    double sx = 0;
    for (const auto& p : sample_uniform(2, n, rng)) {
        ASSERT_GE(p[0], 0.0);
        ASSERT_GE(p[1], 0.0);
        ASSERT_LE(p[0] + p[1], 1.0);
        sx += p[0];
    }
    // E[x] = 1/3, Var[x] = 1/18 on the triangle
    EXPECT_NEAR(sx / n, 1.0 / 3, 3 * std::sqrt(1.0 / 18 / n));
}

TEST(SampleUniform, Deterministic) {
    SplitMix64 a(42), b(42);
    EXPECT_EQ(sample_uniform(3, 50, a), sample_uniform(3, 50, b));
}

TEST(MaxOnSimplex, Logistic) {
    const auto m = max_on_simplex(parse_polynomial("4x(1-x)", 1).cast<double>());
    EXPECT_NEAR(m.value, 1.0, 1e-12);
    EXPECT_NEAR(m.argmax[0], 0.5, 1e-6);
}

TEST(MaxOnSimplex, Constant) {
    EXPECT_DOUBLE_EQ(max_on_simplex(FloatPoly::constant(2, 2.5)).value, 2.5);
}

TEST(MaxOnSimplex, LinearOnHypotenuse) {
    const auto m = max_on_simplex(parse_polynomial("x+y", 2).cast<double>());
    EXPECT_NEAR(m.value, 1.0, 1e-12);
    EXPECT_NEAR(m.argmax[0] + m.argmax[1], 1.0, 1e-9);
}

TEST(MaxOnSimplex, NeverBelowLattice) {
    const auto p = parse_polynomial("x y (1-x-y) 27", 2).cast<double>();
    const auto m = max_on_simplex(p);
    EXPECT_NEAR(m.value, 1.0, 1e-9);
    EXPECT_NEAR(m.argmax[0], 1.0 / 3, 1e-5);
}

TEST(BarycentricLattice, CountAndMembership) {
    const auto pts = barycentric_lattice(2, 4);
    EXPECT_EQ(pts.size(), 15u);
    for (const auto& p : pts)
        EXPECT_TRUE(in_simplex(p));
}
