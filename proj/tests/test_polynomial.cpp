#include "simplexfold/catalog.hpp"
#include "simplexfold/poly_parse.hpp"
#include "simplexfold/polynomial.hpp"

#include <gtest/gtest.h>

using namespace simplexfold;

namespace {

ExactPoly P1(const char* s) { return parse_polynomial(s, 1); }
ExactPoly P2(const char* s) { return parse_polynomial(s, 2); }

Rational eval(const ExactPoly& p, std::vector<Rational> x) { return p.evaluate(std::span<const Rational>(x)); }

} // namespace

TEST(Polynomial, NoZeroTermsStored) {
    auto p = P2("x + y - x");
    EXPECT_EQ(p.size(), 1u);
    auto z = P2("x y - y x");
    EXPECT_TRUE(z.is_zero());
    EXPECT_EQ(z.degree(), 0);
}

TEST(Polynomial, DegreeIsMaxTotalDegree) {
    EXPECT_EQ(P2("1 + x^3 y + y^2").degree(), 4);
    EXPECT_EQ(P2("7").degree(), 0);
}

TEST(Polynomial, EvaluateLogisticAtMidpoint) {
    EXPECT_EQ(eval(P1("4x(1-x)"), {Rational(1, 2)}), Rational(1));
}

TEST(Polynomial, EvaluateZero) { EXPECT_EQ(eval(ExactPoly(2), {Rational(3), Rational(-5)}), Rational(0)); }

TEST(Polynomial, EvaluateHand) { EXPECT_EQ(eval(P2("x^2 - x y + y^2"), {Rational(1), Rational(1)}), Rational(1)); }

TEST(Polynomial, EvaluateDimensionMismatchThrows) {
    const auto p = P2("x + y");
    std::vector<Rational> x{Rational(1)};
    EXPECT_THROW(p.evaluate(std::span<const Rational>(x)), DimensionError);
}

TEST(Polynomial, HomogenizeConstant) {
    const auto h = homogenize(P2("1"), 1);
    EXPECT_EQ(h.degree(), 1);
    EXPECT_EQ(h.poly(), parse_polynomial("x+y+z", 3));
}

TEST(Polynomial, HomogenizeQuadratic) {
    const auto h = homogenize(P1("1 - 3x + 3x^2"), 2);
    EXPECT_EQ(h.poly(), P2("x^2 - x y + y^2"));
}

TEST(Polynomial, HomogenizeTopDegreeUnchanged) {
    const auto h = homogenize(P2("x y"), 2);
    EXPECT_EQ(h.poly(), parse_polynomial("x y", 3));
}

TEST(Polynomial, HomogenizeRejectsLowTarget) { EXPECT_THROW(homogenize(P2("x^3"), 2), DegreeError); }

TEST(Polynomial, DehomogenizeInvertsHomogenize) {
    const auto p = P2("3 - x + 2x y - 5y^2");
    EXPECT_EQ(dehomogenize(homogenize(p, 4).poly()), p);
}

TEST(Polynomial, ComposeLogisticWithItself) {
    const auto f = P1("4x(1-x)");
    EXPECT_EQ(compose(f, std::vector<ExactPoly>{f}), P1("16x(1-x)(1-2x)^2"));
}

TEST(Polynomial, ComposeIdentityOuter) {
    const auto q = P2("1 + x y^2");
    EXPECT_EQ(compose(P1("x"), std::vector<ExactPoly>{q}), q);
}

TEST(Polynomial, ComposeBinomial) {
    EXPECT_EQ(compose(P1("x^2"), std::vector<ExactPoly>{P1("x+1")}), P1("x^2+2x+1"));
}

TEST(Polynomial, ComposeArityMismatchThrows) {
    EXPECT_THROW(compose(P2("x y"), std::vector<ExactPoly>{P1("x")}), DimensionError);
}

TEST(Polynomial, JacobianOfTwoFoldAtVertex) {
    const auto f2 = triangle_entry("f2").map;
    std::vector<Rational> x{Rational(1), Rational(0)};
    const auto j = jacobian(std::span<const ExactPoly>(f2.polys()), std::span<const Rational>(x));
    EXPECT_EQ(j[0][0], Rational(2));
    EXPECT_EQ(j[0][1], Rational(-2));
    EXPECT_EQ(j[1][0], Rational(-2));
    EXPECT_EQ(j[1][1], Rational(-2));
}

TEST(Polynomial, JacobianOfLinearMap) {
    std::vector<ExactPoly> ps{P2("2x + 3y"), P2("-x + 5y")};
    std::vector<Rational> x{Rational(1, 7), Rational(2, 9)};
    const auto j = jacobian(std::span<const ExactPoly>(ps), std::span<const Rational>(x));
    EXPECT_EQ(j[0][0], Rational(2));
    EXPECT_EQ(j[0][1], Rational(3));
    EXPECT_EQ(j[1][0], Rational(-1));
    EXPECT_EQ(j[1][1], Rational(5));
}

TEST(Polynomial, JacobianOfLogisticAtMidpoint) {
    std::vector<ExactPoly> ps{P1("4x(1-x)")};
    std::vector<Rational> x{Rational(1, 2)};
    EXPECT_EQ(jacobian(std::span<const ExactPoly>(ps), std::span<const Rational>(x))[0][0], Rational(0));
}

TEST(Polynomial, NormalizeDegreeRemovesOneFactor) {
    const auto r = normalize_degree(HomogPoly<Rational>(P2("(x+y) x"), 2));
    EXPECT_EQ(r.degree(), 1);
    EXPECT_EQ(r.poly(), P2("x"));
}

TEST(Polynomial, NormalizeDegreeKeepsIrreducible) {
    const auto r = normalize_degree(HomogPoly<Rational>(P2("x^2 - x y + y^2"), 2));
    EXPECT_EQ(r.degree(), 2);
    EXPECT_EQ(r.poly(), P2("x^2 - x y + y^2"));
}

TEST(Polynomial, NormalizeDegreeFullPower) {
    const auto r = normalize_degree(HomogPoly<Rational>(P2("(x+y)^2"), 2));
    EXPECT_EQ(r.degree(), 0);
    EXPECT_EQ(r.poly(), P2("1"));
}

TEST(Polynomial, DivideByLinearRemainderIsSubstitution) {
    const auto p = P2("x^3 - 2x y + y^2 + 1");
    const auto shift = P2("1 - y");
    const auto d = divide_by_linear(p, 0, shift);
    EXPECT_EQ(d.quotient * (P2("x") - shift) + d.remainder, p);
    EXPECT_EQ(d.remainder, compose(p, std::vector<ExactPoly>{shift, P2("y")}));
}

TEST(Polynomial, FloatCastKeepsValues) {
    const auto p = P2("1/3 - 2x + x y");
    const FloatPoly f = p.cast<double>();
    std::vector<double> x{0.25, 0.5};
    EXPECT_NEAR(f.evaluate(std::span<const double>(x)), 1.0 / 3 - 0.5 + 0.125, 1e-15);
}

TEST(PolyParse, ImplicitProductsAndRationals) {
    EXPECT_EQ(P2("8(1-2x y)"), P2("8 - 16 x*y"));
    EXPECT_EQ(P1("16x^2"), P1("16*x^2"));
    EXPECT_EQ(P1("3/4 x"), P1("x*3/4"));
    EXPECT_EQ(P1("-(x-1)^2"), P1("-x^2 + 2x - 1"));
}

TEST(PolyParse, Errors) {
    EXPECT_THROW(P1("x +"), PolyParseError);
    EXPECT_THROW(P1("y"), PolyParseError);
    EXPECT_THROW(P1("(x"), PolyParseError);
    EXPECT_THROW(P1("x^-1"), PolyParseError);
}

TEST(PolyParse, NamedVariables) {
    const auto p = parse_polynomial("x1 + 2 x3^2", 3);
    EXPECT_EQ(p, ExactPoly::variable(3, 0) + ExactPoly::variable(3, 2) * ExactPoly::variable(3, 2) * Rational(2));
    EXPECT_EQ(default_var_names(4).back(), "x4");
}
