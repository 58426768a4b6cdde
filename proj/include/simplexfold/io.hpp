#pragma once

// JSON forms of polynomials, maps, cones and fold templates.
//   poly:     {"num_vars": n, "terms": [{"exp": [...], "coef": "p/q" | number}]}
//   map:      {"n": n, "k": k, "P": [poly, ...], "label": "..."}
//   cone:     {"n","k","N","basis","ineq","rays","ray_maxima"}; integers as strings
//   template: {"name","n","k","fold_order","params","factors","sign_constraints"}
//             or {"builtin": "interval:4"}

#include "simplexfold/cone.hpp"
#include "simplexfold/folding.hpp"
#include "simplexfold/maps.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace simplexfold {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline json coef_to_json(const Rational& c) { return to_string(c); }
inline json coef_to_json(double c) { return c; }

template <Scalar S>
S coef_from_json(const json& j) {
    if (j.is_string()) {
        const Rational q = parse_rational(j.get<std::string>());
        if constexpr (is_exact_v<S>)
            return q;
        else
            return to_double(q);
    }
    if (j.is_number_integer()) {
        if constexpr (is_exact_v<S>)
            return Rational(j.get<std::int64_t>());
        else
            return static_cast<double>(j.get<std::int64_t>());
    }
    if (j.is_number()) {
        if constexpr (is_exact_v<S>)
            return Rational(j.get<double>()); // exact binary value
        else
            return j.get<double>();
    }
    throw FormatError("coefficient must be a string or a number");
}

inline const json& require(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw FormatError(std::string("missing field '") + key + "'");
    return j.at(key);
}

} // namespace detail

template <Scalar S>
json to_json(const MultiPoly<S>& p) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms())
        terms.push_back({{"exp", e}, {"coef", detail::coef_to_json(c)}});
    return {{"num_vars", p.num_vars()}, {"terms", terms}};
}

template <Scalar S>
MultiPoly<S> poly_from_json(const json& j) {
    try {
        const auto n = detail::require(j, "num_vars").get<std::size_t>();
        MultiPoly<S> p(n);
        for (const auto& t : detail::require(j, "terms")) {
            auto e = detail::require(t, "exp").get<Exponent>();
            if (e.size() != n)
                throw FormatError("exponent length differs from num_vars");
            for (int v : e)
                if (v < 0)
                    throw FormatError("negative exponent");
            p.add_term(e, detail::coef_from_json<S>(detail::require(t, "coef")));
        }
        return p;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed polynomial: ") + e.what());
    }
}

template <Scalar S>
json to_json(const SimplexMap<S>& f) {
    json ps = json::array();
    for (const auto& p : f.polys())
        ps.push_back(to_json(p));
    return {{"n", f.n()}, {"k", f.k()}, {"P", ps}, {"label", f.label()}};
}

template <Scalar S>
SimplexMap<S> map_from_json(const json& j) {
    try {
        std::vector<MultiPoly<S>> ps;
        for (const auto& p : detail::require(j, "P"))
            ps.push_back(poly_from_json<S>(p));
        const std::string label = j.contains("label") ? j.at("label").get<std::string>() : "";
        return SimplexMap<S>(detail::require(j, "n").get<std::size_t>(), detail::require(j, "k").get<int>(),
                             std::move(ps), label);
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed map: ") + e.what());
    }
}

inline json to_json(const ConeRep& c) {
    auto int_rows = [](const IntMatrix& m) {
        json rows = json::array();
        for (const auto& r : m) {
            json row = json::array();
            for (const auto& v : r)
                row.push_back(v.str());
            rows.push_back(row);
        }
        return rows;
    };
    return {{"n", c.n},     {"k", c.k},       {"N", c.N},
            {"basis", c.basis}, {"ineq", int_rows(c.ineq)}, {"rays", int_rows(c.rays)},
            {"ray_maxima", c.ray_maxima}};
}

/// Scaled generators are rebuilt from rays and stored maxima.
inline ConeRep cone_from_json(const json& j) {
    try {
        auto int_rows = [](const json& rows) {
            IntMatrix m;
            for (const auto& r : rows) {
                IntVector row;
                for (const auto& v : r)
                    row.emplace_back(v.is_string() ? Integer(v.get<std::string>()) : Integer(v.get<std::int64_t>()));
                m.push_back(std::move(row));
            }
            return m;
        };
        ConeRep c;
        c.n = detail::require(j, "n").get<std::size_t>();
        c.k = detail::require(j, "k").get<int>();
        c.N = detail::require(j, "N").get<int>();
        c.basis = detail::require(j, "basis").get<std::vector<Exponent>>();
        c.row_monomials = monomials_of_degree(c.n + 1, c.N + c.k);
        c.ineq = int_rows(detail::require(j, "ineq"));
        c.rays = int_rows(detail::require(j, "rays"));
        if (j.contains("ray_maxima"))
            c.ray_maxima = j.at("ray_maxima").get<std::vector<double>>();
        if (!c.ray_maxima.empty()) {
            if (c.ray_maxima.size() != c.rays.size())
                throw FormatError("ray_maxima length differs from rays");
            for (std::size_t i = 0; i < c.rays.size(); ++i)
                c.scaled_rays.push_back(c.ray_poly(i).cast<double>() * (1.0 / c.ray_maxima[i]));
        }
        return c;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed cone: ") + e.what());
    }
}

inline json to_json(const ParamPoly& p) {
    json terms = json::array();
    for (const auto& t : p.terms) {
        json jt{{"basis", to_json(t.basis)}, {"scale", to_string(t.coef.scale)}};
        if (t.coef.param >= 0)
            jt["param"] = t.coef.param;
        terms.push_back(jt);
    }
    return {{"num_vars", p.nvars}, {"terms", terms}};
}

inline ParamPoly param_poly_from_json(const json& j) {
    ParamPoly p;
    p.nvars = detail::require(j, "num_vars").get<std::size_t>();
    for (const auto& t : detail::require(j, "terms")) {
        ParamTerm term;
        term.basis = poly_from_json<Rational>(detail::require(t, "basis"));
        if (t.contains("scale"))
            term.coef.scale = detail::coef_from_json<Rational>(t.at("scale"));
        if (t.contains("param"))
            term.coef.param = t.at("param").get<int>();
        p.terms.push_back(std::move(term));
    }
    return p;
}

inline json to_json(const FoldTemplate& t) {
    json factors = json::array();
    for (const auto& f : t.factors)
        factors.push_back({{"facets", f.facets}, {"q", to_json(f.q)}, {"m", to_json(f.m)}});
    json signs = json::array();
    for (const auto& s : t.sign_constraints)
        signs.push_back({{"param", s.param}, {"sign", s.sign == ParamSign::positive ? ">0" : "<0"}});
    return {{"name", t.name},     {"n", t.n},           {"k", t.k},
            {"fold_order", t.fold_order}, {"params", t.params}, {"factors", factors},
            {"sign_constraints", signs}};
}

inline FoldTemplate template_from_json(const json& j) {
    try {
        if (j.contains("builtin"))
            return builtin_template(j.at("builtin").get<std::string>());
        FoldTemplate t;
        t.name = j.value("name", std::string("custom"));
        t.n = detail::require(j, "n").get<std::size_t>();
        t.k = detail::require(j, "k").get<int>();
        t.fold_order = j.value("fold_order", 0);
        t.params = detail::require(j, "params").get<std::vector<std::string>>();
        for (const auto& f : detail::require(j, "factors"))
            t.factors.push_back({detail::require(f, "facets").get<std::vector<int>>(),
                                 param_poly_from_json(detail::require(f, "q")),
                                 param_poly_from_json(detail::require(f, "m"))});
        if (j.contains("sign_constraints")) {
            for (const auto& s : j.at("sign_constraints")) {
                const auto sign = detail::require(s, "sign").get<std::string>();
                if (sign != ">0" && sign != "<0")
                    throw FormatError("sign must be \">0\" or \"<0\"");
                t.sign_constraints.push_back({detail::require(s, "param").get<std::size_t>(),
                                              sign == ">0" ? ParamSign::positive : ParamSign::negative});
            }
        }
        t.validate();
        return t;
    } catch (const json::exception& e) {
        throw FormatError(std::string("malformed template: ") + e.what());
    }
}

inline json to_json(const FoldFactor& f) {
    return {{"facets", f.facets}, {"q", to_json(f.q)}, {"m", to_json(f.m)}};
}

inline json to_json(const FactorizationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    json factors = json::array();
    for (const auto& f : r.factors)
        factors.push_back(to_json(f));
    return {{"ok", r.ok()}, {"checks", checks}, {"factors", factors}};
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw FormatError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw FormatError("cannot write " + path);
    out << text;
}

inline void write_json_file(const std::string& path, const json& j) { write_text_file(path, j.dump(2) + "\n"); }

} // namespace simplexfold
