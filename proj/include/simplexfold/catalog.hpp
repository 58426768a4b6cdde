#pragma once

// Named folding maps with their factor data.
//   cheb:d  (1 - T_d(1 - 2x)) / 2 on the interval, T_d from the three-term recurrence
//   tri:f1, tri:f2, tri:f4, tri:f8, tri:f9  folds of the triangle

#include "simplexfold/folding.hpp"
#include "simplexfold/poly_parse.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace simplexfold {

class UnknownMapError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct CatalogEntry {
    std::string name;
    ExactMap map;
    std::vector<FoldFactor> factors; ///< P_i = l_i q_i^2 m_i, i = 1..n+1
    int fold_order = 1;
};

/// p_{d+1} = 2 z p_d - p_{d-1} in one variable z, from the given p_0 and p_1.
inline ExactPoly chebyshev_recurrence(int d, const ExactPoly& p0, const ExactPoly& p1) {
    if (d < 0)
        throw std::invalid_argument("negative Chebyshev index");
    if (d == 0)
        return p0;
    const auto two_z = ExactPoly::variable(1, 0) * Rational(2);
    ExactPoly prev = p0, cur = p1;
    for (int i = 1; i < d; ++i) {
        ExactPoly next = two_z * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

/// First kind: T_0 = 1, T_1 = z.
inline ExactPoly chebyshev_t(int d) {
    return chebyshev_recurrence(d, ExactPoly::constant(1, Rational(1)), ExactPoly::variable(1, 0));
}

/// Second kind: U_0 = 1, U_1 = 2z.
inline ExactPoly chebyshev_u(int d) {
    return chebyshev_recurrence(d, ExactPoly::constant(1, Rational(1)), ExactPoly::variable(1, 0) * Rational(2));
}

/// Third kind: V_0 = 1, V_1 = 2z - 1.
inline ExactPoly chebyshev_v(int d) {
    const auto z = ExactPoly::variable(1, 0);
    return chebyshev_recurrence(d, ExactPoly::constant(1, Rational(1)), z * Rational(2) - ExactPoly::constant(1, Rational(1)));
}

/// Fourth kind: W_0 = 1, W_1 = 2z + 1.
inline ExactPoly chebyshev_w(int d) {
    const auto z = ExactPoly::variable(1, 0);
    return chebyshev_recurrence(d, ExactPoly::constant(1, Rational(1)), z * Rational(2) + ExactPoly::constant(1, Rational(1)));
}

/// p(1 - 2x).
inline ExactPoly at_one_minus_two_x(const ExactPoly& p) {
    const std::vector<ExactPoly> inner{ExactPoly::constant(1, Rational(1)) - ExactPoly::variable(1, 0) * Rational(2)};
    return compose(p, inner);
}

/// (1 - T_d(1 - 2x)) / 2.
inline ExactPoly chebyshev_fold_poly(int d) {
    if (d < 1)
        throw UnknownMapError("cheb:d needs d >= 1");
    return (ExactPoly::constant(1, Rational(1)) - at_one_minus_two_x(chebyshev_t(d))) * Rational(1, 2);
}

/// With z = 1 - 2x:
/// d = 2m:   P_1 = x(1-x) U_{m-1}(z)^2 * 4,  P_2 = T_m(z)^2
/// d = 2m+1: P_1 = x W_m(z)^2,               P_2 = (1-x) V_m(z)^2
inline std::vector<FoldFactor> chebyshev_factors(int d) {
    if (d < 1)
        throw UnknownMapError("cheb:d needs d >= 1");
    const auto one = ExactPoly::constant(1, Rational(1));
    const int m = d / 2;
    if (d % 2 == 0)
        return {{{1, 2}, at_one_minus_two_x(chebyshev_u(m - 1)), one * Rational(4)},
                {{}, at_one_minus_two_x(chebyshev_t(m)), one}};
    return {{{1}, at_one_minus_two_x(chebyshev_w(m)), one}, {{2}, at_one_minus_two_x(chebyshev_v(m)), one}};
}

/// Factor data exactly as printed in the table of the first six Chebyshev folds.
inline std::vector<FoldFactor> chebyshev_table_factors(int d) {
    auto P = [](const char* s) { return parse_polynomial(s, 1); };
    switch (d) {
    case 1: return {{{1}, P("1"), P("1")}, {{2}, P("1"), P("1")}};
    case 2: return {{{1, 2}, P("1"), P("4")}, {{}, P("1-2x"), P("1")}};
    case 3: return {{{1}, P("3-4x"), P("1")}, {{2}, P("1-4x"), P("1")}};
    case 4: return {{{1, 2}, P("1-2x"), P("16")}, {{}, P("8x^2-8x+1"), P("1")}};
    case 5: return {{{1}, P("5-20x+16x^2"), P("1")}, {{2}, P("16x^2-12x+1"), P("1")}};
    case 6: return {{{1, 2}, P("(1-4x)(3-4x)"), P("4")}, {{}, P("(1-2x)(1-16x+16x^2)"), P("1")}};
    default: throw UnknownMapError("the printed table covers d = 1..6");
    }
}

inline ExactMap map_from_factors(std::size_t n, int k, const std::vector<FoldFactor>& factors, std::string label) {
    std::vector<ExactPoly> ps;
    for (const auto& f : factors)
        ps.push_back(f.product());
    return ExactMap(n, k, std::move(ps), std::move(label));
}

inline CatalogEntry chebyshev_entry(int d) {
    const std::string name = "cheb:" + std::to_string(d);
    ExactMap map(1, d, {chebyshev_fold_poly(d)}, name);
    return {name, std::move(map), chebyshev_factors(d), d};
}

/// Factor data of the triangle folds; facets 1: x = 0, 2: y = 0, 3: x + y = 1.
inline std::vector<FoldFactor> triangle_factors(const std::string& which) {
    auto P = [](const char* s) { return parse_polynomial(s, 2); };
    if (which == "f1")
        return {{{1}, P("1"), P("1")}, {{2}, P("1"), P("1")}, {{3}, P("1"), P("1")}};
    if (which == "f2")
        return {{{}, P("x-y"), P("1")}, {{3}, P("1"), P("1+x+y")}, {{1, 2}, P("1"), P("4")}};
    if (which == "f4")
        return {{{}, P("1-2x^2-2y^2"), P("1")},
                {{1, 2}, P("1"), P("8(1-2x y)")},
                {{3}, P("x-y"), P("4(1+x+y)")}};
    if (which == "f8")
        // first entry: the printed 4y^2 in the last place reads 4y^4 (required by f2 o f2 o f2)
        return {{{}, P("1-4x^2+4x^4-8x y-4y^2+24x^2 y^2+4y^4"), P("1")},
                {{3}, P("x-y"), P("8(1+x+y)(1-2x^2+2x^4+4x y-2y^2-4x^2 y^2+2y^4)")},
                {{1, 2}, P("1-2x^2-2y^2"), P("32(1-2x y)")}};
    if (which == "f9")
        return {{{1}, P("(3-4x)(1-4y)"), P("(1-y)(2-9x+24x^2-16x^3+9y-24y^2+16y^3)")},
                {{2}, P("(3-4y)(1-4x)"), P("(1-x)(2-9y+24y^2-16y^3+9x-24x^2+16x^3)")},
                {{3}, P("1-8x+16x^2-8y-16x y+16y^2"), P("1-x-y")}};
    throw UnknownMapError("unknown triangle fold '" + which + "'");
}

inline CatalogEntry triangle_entry(const std::string& which) {
    static const std::vector<std::pair<std::string, int>> orders{
        {"f1", 1}, {"f2", 2}, {"f4", 4}, {"f8", 8}, {"f9", 9}};
    int order = 0;
    for (const auto& [w, d] : orders)
        if (w == which)
            order = d;
    if (order == 0)
        throw UnknownMapError("unknown triangle fold '" + which + "'");
    auto factors = triangle_factors(which);
    const std::string name = "tri:" + which;
    int k = 0;
    for (const auto& f : factors)
        k = std::max(k, f.product().degree());
    auto map = map_from_factors(2, k, factors, name);
    return {name, std::move(map), std::move(factors), order};
}

inline CatalogEntry catalog_entry(const std::string& name) {
    if (name.rfind("cheb:", 0) == 0) {
        int d = 0;
        try {
            std::size_t used = 0;
            d = std::stoi(name.substr(5), &used);
            if (used != name.size() - 5)
                throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw UnknownMapError("unknown catalog map '" + name + "'");
        }
        if (d < 1)
            throw UnknownMapError("unknown catalog map '" + name + "'");
        return chebyshev_entry(d);
    }
    if (name.rfind("tri:", 0) == 0)
        return triangle_entry(name.substr(4));
    throw UnknownMapError("unknown catalog map '" + name + "'");
}

inline ExactMap catalog(const std::string& name) { return catalog_entry(name).map; }

/// The printed tables: cheb:1..6 and the five triangle folds.
inline std::vector<std::string> catalog_names() {
    return {"cheb:1", "cheb:2", "cheb:3", "cheb:4", "cheb:5", "cheb:6",
            "tri:f1", "tri:f2", "tri:f4", "tri:f8", "tri:f9"};
}

/// Identity map on the n-simplex.
inline ExactMap identity_map(std::size_t n) {
    std::vector<ExactPoly> ps;
    for (std::size_t i = 0; i < n; ++i)
        ps.push_back(ExactPoly::variable(n, i));
    return ExactMap(n, 1, std::move(ps), "identity");
}

/// f o g (apply g first).
template <Scalar S>
SimplexMap<S> compose_maps(const SimplexMap<S>& f, const SimplexMap<S>& g) {
    if (f.n() != g.n())
        throw DimensionError("compose_maps: maps on different simplices");
    std::vector<MultiPoly<S>> ps;
    for (const auto& p : f.polys())
        ps.push_back(compose(p, g.polys()));
    return SimplexMap<S>(f.n(), f.k() * g.k(), std::move(ps), f.label() + "o" + g.label());
}

} // namespace simplexfold
