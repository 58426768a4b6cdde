#include "simplexfold/catalog.hpp"
#include "simplexfold/maps.hpp"

#include <gtest/gtest.h>

using namespace simplexfold;

namespace {

ExactPoly P1(const char* s) { return parse_polynomial(s, 1); }

} // namespace

TEST(SimplexMap, RejectsDegreeOverflow) {
    EXPECT_THROW(ExactMap(1, 1, {P1("x^2")}), DegreeError);
    EXPECT_THROW(ExactMap(1, 2, {P1("x"), P1("x")}), std::invalid_argument);
}

TEST(SimplexMap, AcceptsFullList) {
    const ExactMap f(1, 2, {P1("4x(1-x)"), P1("(1-2x)^2")});
    EXPECT_EQ(f.polys().size(), 1u);
    EXPECT_EQ(f.last_poly(), P1("(1-2x)^2"));
}

TEST(Membership, Logistic) { EXPECT_TRUE(membership_check(catalog("cheb:2")).member); }

TEST(Membership, DoublingFails) {
    const auto r = membership_check(ExactMap(1, 1, {P1("2x")}));
    EXPECT_FALSE(r.member);
    ASSERT_EQ(r.per_poly.size(), 2u);
    EXPECT_TRUE(r.per_poly[0].nonneg);
    EXPECT_FALSE(r.per_poly[1].nonneg);
    EXPECT_GT(r.per_poly[1].witness[0], 0.5);
}

TEST(Membership, Identity) { EXPECT_TRUE(membership_check(identity_map(3)).member); }

TEST(Membership, CatalogAllMembers) {
    for (const auto& name : catalog_names())
        EXPECT_TRUE(membership_check(catalog(name)).member) << name;
}

TEST(ConvexCombine, Endpoints) {
    const auto f = catalog("tri:f2");
    const auto g = identity_map(2);
    EXPECT_THROW(convex_combine(f, g, Rational(0)), DimensionError); // k differs
    const ExactMap g2(2, 2, g.polys());
    EXPECT_EQ(convex_combine(f, g2, Rational(1)).polys(), f.polys());
    EXPECT_EQ(convex_combine(f, g2, Rational(0)).polys(), g2.polys());
}

TEST(ConvexCombine, Halfway) {
    const ExactMap zero(1, 1, {ExactPoly(1)});
    EXPECT_EQ(convex_combine(identity_map(1), zero, Rational(1, 2))[0], P1("x/2"));
}

TEST(ConvexCombine, BadWeight) {
    EXPECT_THROW(convex_combine(identity_map(1), identity_map(1), Rational(3, 2)), std::invalid_argument);
}

TEST(ConvexCombine, MembershipPreserved) {
    const auto f = catalog("tri:f2");
    const ExactMap g(2, 2, {parse_polynomial("x y", 2), parse_polynomial("1/2 - x/2", 2)});
    ASSERT_TRUE(membership_check(g).member);
    EXPECT_TRUE(membership_check(convex_combine(f, g, Rational(3, 10))).member);
}

TEST(Apply, TwoFoldAtVertex) {
    const auto r = apply(catalog("tri:f2"), SimplexPoint({1.0, 0.0}));
    EXPECT_DOUBLE_EQ(r.point[0], 1.0);
    EXPECT_DOUBLE_EQ(r.point[1], 0.0);
}

TEST(Apply, Identity) {
    const SimplexPoint x({0.1, 0.2, 0.3});
    EXPECT_EQ(apply(identity_map(3), x).point.coords(), x.coords());
}

TEST(Apply, LogisticMidpoint) { EXPECT_DOUBLE_EQ(apply(catalog("cheb:2"), SimplexPoint({0.5})).point[0], 1.0); }

TEST(Apply, ClampsRoundoff) {
    const FloatMap f(1, 1, {FloatPoly::constant(1, -1e-12)});
    const auto r = apply(f, SimplexPoint({0.3}));
    EXPECT_TRUE(r.clamped);
    EXPECT_EQ(r.point[0], 0.0);
}

TEST(Apply, EscapeThrows) {
    const ExactMap f(1, 1, {P1("2x")});
    EXPECT_THROW(apply(f, SimplexPoint({0.9})), ImageOutsideSimplexError);
}

TEST(MapEvaluator, JacobianMatchesSymbolic) {
    const auto f = catalog("tri:f9");
    const MapEvaluator ev(f);
    const std::vector<double> x{0.21, 0.34};
    std::vector<double> jac(4);
    ev.jacobian(x.data(), jac.data());
    std::vector<Rational> xr{Rational(21, 100), Rational(34, 100)};
    const auto exact = jacobian(std::span<const ExactPoly>(f.polys()), std::span<const Rational>(xr));
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            EXPECT_NEAR(jac[i * 2 + j], to_double(exact[i][j]), 1e-11);
}

TEST(Markov, ColumnChecks) {
    Eigen::MatrixXd bad(2, 2);
    bad << 0.5, 0.5, 0.6, 0.5;
    EXPECT_THROW(MarkovMatrix{bad}, std::invalid_argument);
}

TEST(Markov, Identity) {
    EXPECT_EQ(is_permutation_if_bijective(MarkovMatrix(Eigen::MatrixXd::Identity(3, 3))),
              LinearBijectivity::bijective_permutation);
}

TEST(Markov, RankOne) {
    Eigen::MatrixXd m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    EXPECT_EQ(is_permutation_if_bijective(MarkovMatrix(m)), LinearBijectivity::singular);
}

TEST(Markov, DoublyStochasticNotOnto) {
    Eigen::MatrixXd m(3, 3);
    m << 0.5, 0.3, 0.2, 0.2, 0.5, 0.3, 0.3, 0.2, 0.5;
    ASSERT_GT(std::abs(m.determinant()), 1e-6);
    EXPECT_EQ(is_permutation_if_bijective(MarkovMatrix(m)), LinearBijectivity::nonsingular_not_onto);
}

TEST(Markov, ToMapAgreesWithMatrix) {
    Eigen::MatrixXd m(3, 3);
    m << 0.5, 0.3, 0.2, 0.2, 0.5, 0.3, 0.3, 0.2, 0.5;
    const auto f = MarkovMatrix(m).to_map();
    const Eigen::Vector3d x(0.2, 0.3, 0.5);
    const Eigen::Vector3d y = m * x;
    const std::vector<double> xs{0.2, 0.3};
    EXPECT_NEAR(f[0].evaluate(std::span<const double>(xs)), y(0), 1e-15);
    EXPECT_NEAR(f[1].evaluate(std::span<const double>(xs)), y(1), 1e-15);
}
