#pragma once

// Folding maps: factor data P_i = l_i q_i^2 m_i, parametrized templates, the
// coefficient-matching solver, factorization checks and preimage counting.
//
// Facets are numbered 1..n+1: facet j <= n is {x_j = 0}, facet n+1 is
// {x_1 + ... + x_n = 1}. l_i is the product of the facet forms listed for P_i.

#include "simplexfold/maps.hpp"
#include "simplexfold/newton.hpp"
#include "simplexfold/parallel.hpp"
#include "simplexfold/polynomial.hpp"
#include "simplexfold/positivity.hpp"
#include "simplexfold/rng.hpp"
#include "simplexfold/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace simplexfold {

/// The linear form vanishing on facet j (1-based).
inline ExactPoly facet_poly(std::size_t n, int facet) {
    if (facet < 1 || static_cast<std::size_t>(facet) > n + 1)
        throw std::out_of_range("facet index out of range");
    if (static_cast<std::size_t>(facet) == n + 1)
        return last_coordinate<Rational>(n);
    return ExactPoly::variable(n, static_cast<std::size_t>(facet - 1));
}

inline ExactPoly facet_product(std::size_t n, const std::vector<int>& facets) {
    ExactPoly l = ExactPoly::constant(n, Rational(1));
    for (int j : facets)
        l = l * facet_poly(n, j);
    return l;
}

/// (1 - sum x) * x_1 * ... * x_n.
inline ExactPoly boundary_product(std::size_t n) {
    std::vector<int> all;
    for (std::size_t j = 1; j <= n + 1; ++j)
        all.push_back(static_cast<int>(j));
    return facet_product(n, all);
}

struct FoldFactor {
    std::vector<int> facets;
    ExactPoly q;
    ExactPoly m;

    ExactPoly l() const { return facet_product(q.num_vars(), facets); }
    ExactPoly product() const { return l() * q * q * m; }
};

// ---------------------------------------------------------------- templates

/// A coefficient that is either fixed (`param < 0`) or `scale * params[param]`.
struct ParamCoef {
    int param = -1;
    Rational scale{1};
};

/// coef * basis, with basis a fixed polynomial in x.
struct ParamTerm {
    ExactPoly basis;
    ParamCoef coef;
};

struct ParamPoly {
    std::size_t nvars = 0;
    std::vector<ParamTerm> terms;

    int degree() const {
        int d = 0;
        for (const auto& t : terms)
            d = std::max(d, t.basis.degree());
        return d;
    }

    template <Scalar S>
    MultiPoly<S> evaluate(std::span<const S> params) const {
        MultiPoly<S> out(nvars);
        for (const auto& t : terms) {
            S c = from_rational<S>(t.coef.scale);
            if (t.coef.param >= 0)
                c = c * params[static_cast<std::size_t>(t.coef.param)];
            out += t.basis.template cast<S>() * c;
        }
        return out;
    }

    /// As a polynomial in (x_1..x_n, p_1..p_P).
    ExactPoly lift(std::size_t num_params) const {
        ExactPoly out(nvars + num_params);
        for (const auto& t : terms) {
            for (const auto& [e, c] : t.basis.terms()) {
                Exponent big = e;
                big.resize(nvars + num_params, 0);
                if (t.coef.param >= 0)
                    big[nvars + static_cast<std::size_t>(t.coef.param)] = 1;
                out += ExactPoly::monomial(big, c * t.coef.scale);
            }
        }
        return out;
    }
};

struct TemplateFactor {
    std::vector<int> facets;
    ParamPoly q;
    ParamPoly m;
};

enum class ParamSign { positive, negative };

struct SignConstraint {
    std::size_t param = 0;
    ParamSign sign = ParamSign::positive;
};

class TemplateError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct FoldTemplate {
    std::string name;
    std::size_t n = 0;
    int k = 0;
    int fold_order = 0; ///< expected preimage count; 0 = not checked
    std::vector<std::string> params;
    std::vector<TemplateFactor> factors; ///< one per P_i, i = 1..n+1
    std::vector<SignConstraint> sign_constraints;

    std::size_t num_params() const { return params.size(); }

    /// facet j -> index i (1-based) of the P_i whose l_i contains it.
    std::vector<int> facet_assignment() const {
        std::vector<int> out(n + 1, 0);
        for (std::size_t i = 0; i < factors.size(); ++i)
            for (int j : factors[i].facets)
                out.at(static_cast<std::size_t>(j - 1)) = static_cast<int>(i + 1);
        return out;
    }

    /// (deg q_i, deg m_i) per factor.
    std::vector<std::pair<int, int>> partition() const {
        std::vector<std::pair<int, int>> out;
        for (const auto& f : factors)
            out.emplace_back(f.q.degree(), f.m.degree());
        return out;
    }

    void validate() const {
        if (factors.size() != n + 1)
            throw TemplateError("template needs n+1 factors");
        std::vector<int> seen(n + 1, 0);
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const auto& f = factors[i];
            for (int j : f.facets) {
                if (j < 1 || static_cast<std::size_t>(j) > n + 1)
                    throw TemplateError("facet index out of range");
                ++seen[static_cast<std::size_t>(j - 1)];
            }
            if (f.q.nvars != n || f.m.nvars != n)
                throw TemplateError("factor polynomial has wrong num_vars");
            const int budget = static_cast<int>(f.facets.size()) + 2 * f.q.degree() + f.m.degree();
            if (budget > k)
                throw TemplateError("degree budget exceeded in factor " + std::to_string(i + 1));
            for (const auto* pp : {&f.q, &f.m})
                for (const auto& term : pp->terms)
                    if (term.coef.param >= static_cast<int>(params.size()))
                        throw TemplateError("parameter index out of range");
        }
        for (int s : seen)
            if (s != 1)
                throw TemplateError("every facet must appear in exactly one l_i");
        for (const auto& sc : sign_constraints)
            if (sc.param >= params.size())
                throw TemplateError("sign constraint on unknown parameter");
    }
};

/// Incremental construction of templates.
class TemplateBuilder {
public:
    TemplateBuilder(std::string name, std::size_t n, int k) {
        t_.name = std::move(name);
        t_.n = n;
        t_.k = k;
    }

    std::size_t add_param(std::string name) {
        t_.params.push_back(std::move(name));
        return t_.params.size() - 1;
    }

    ParamPoly fixed(const ExactPoly& p) const { return ParamPoly{t_.n, {{p, ParamCoef{}}}}; }

    /// sum_e c_e * prod_j coords[j]^e_j over |e| <= degree, every c_e a fresh
    /// unknown except the constant term when `unit_constant` is set (fixed to 1).
    /// `coords` defaults to the plain variables.
    ParamPoly free_poly(int degree, const std::string& prefix, bool unit_constant = false,
                        std::vector<ExactPoly> coords = {}) {
        if (coords.empty())
            for (std::size_t j = 0; j < t_.n; ++j)
                coords.push_back(ExactPoly::variable(t_.n, j));
        ParamPoly out{t_.n, {}};
        int idx = 0;
        for (const auto& e : monomials_up_to(t_.n, degree)) {
            ExactPoly basis = ExactPoly::constant(t_.n, Rational(1));
            for (std::size_t j = 0; j < e.size(); ++j)
                basis = basis * coords[j].pow(static_cast<unsigned>(e[j]));
            if (unit_constant && total_degree(e) == 0) {
                out.terms.push_back({basis, ParamCoef{}});
                continue;
            }
            const auto p = add_param(prefix + std::to_string(idx++));
            out.terms.push_back({basis, ParamCoef{static_cast<int>(p), Rational(1)}});
        }
        return out;
    }

    ParamPoly param_term(const Exponent& e, std::size_t param, Rational scale = Rational(1)) const {
        return ParamPoly{t_.n, {{ExactPoly::monomial(e, Rational(1)), ParamCoef{static_cast<int>(param), std::move(scale)}}}};
    }

    void add_factor(std::vector<int> facets, ParamPoly q, ParamPoly m) {
        t_.factors.push_back({std::move(facets), std::move(q), std::move(m)});
    }

    void params_rename(const std::vector<std::pair<std::size_t, std::string>>& names) {
        for (const auto& [i, nm] : names)
            t_.params.at(i) = nm;
    }

    void require(std::size_t param, ParamSign sign) { t_.sign_constraints.push_back({param, sign}); }
    void set_fold_order(int d) { t_.fold_order = d; }

    FoldTemplate build() const {
        t_.validate();
        return t_;
    }

private:
    FoldTemplate t_;
};

inline ParamPoly operator+(ParamPoly a, const ParamPoly& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
}

/// 1-simplex template for d-folds, creases written in z = 1 - 2x.
/// d = 2:      A x(1-x) and (B + Cx)^2, A > 0.
/// even d > 2: 4 x(1-x) q1^2 and q2^2, deg q1 = d/2 - 1, deg q2 = d/2
///             (the constant cofactor is scaled into q1).
/// odd d:      x q1^2 and (1-x) q2^2, deg q1 = deg q2 = (d-1)/2.
inline FoldTemplate interval_template(int d) {
    if (d < 1)
        throw TemplateError("interval template needs d >= 1");
    TemplateBuilder b("interval:" + std::to_string(d), 1, d);
    const auto one_poly = ExactPoly::constant(1, Rational(1));
    const ParamPoly one = b.fixed(one_poly);
    const std::vector<ExactPoly> z{one_poly - ExactPoly::variable(1, 0) * Rational(2)};
    if (d == 2) {
        const auto a = b.add_param("A");
        auto q2 = b.free_poly(1, "v");
        b.params_rename({{1, "B"}, {2, "C"}});
        b.add_factor({1, 2}, one, b.param_term({0}, a));
        b.add_factor({}, q2, one);
        b.require(a, ParamSign::positive);
    } else if (d % 2 == 0) {
        auto q1 = b.free_poly(d / 2 - 1, "u", false, z);
        auto q2 = b.free_poly(d / 2, "v", false, z);
        b.add_factor({1, 2}, q1, b.fixed(one_poly * Rational(4)));
        b.add_factor({}, q2, one);
    } else {
        auto q1 = b.free_poly((d - 1) / 2, "u", false, z);
        auto q2 = b.free_poly((d - 1) / 2, "v", false, z);
        b.add_factor({1}, q1, one);
        b.add_factor({2}, q2, one);
    }
    b.set_fold_order(d);
    return b.build();
}

/// Degree-two two-fold of the triangle: A(y - Bx)^2, (1-x-y)(C + Dx + Ey), Fxy.
inline FoldTemplate triangle_two_template() {
    TemplateBuilder b("triangle:2", 2, 2);
    const auto A = b.add_param("A"), B = b.add_param("B"), C = b.add_param("C");
    const auto D = b.add_param("D"), E = b.add_param("E"), F = b.add_param("F");
    const ParamPoly one = b.fixed(ExactPoly::constant(2, Rational(1)));
    const ParamPoly q1 = b.fixed(ExactPoly::variable(2, 1)) + b.param_term({1, 0}, B, Rational(-1));
    b.add_factor({}, q1, b.param_term({0, 0}, A));
    b.add_factor({3}, one, b.param_term({0, 0}, C) + b.param_term({1, 0}, D) + b.param_term({0, 1}, E));
    b.add_factor({1, 2}, one, b.param_term({0, 0}, F));
    b.require(A, ParamSign::positive);
    b.require(B, ParamSign::positive);
    b.require(F, ParamSign::positive);
    b.set_fold_order(2);
    return b.build();
}

/// Nine-fold of the triangle, partition {(2,4),(2,4),(2,4)}: l_i = x, y, 1-x-y,
/// q_i quadratics with unit constant term, m_i general quartics.
inline FoldTemplate triangle_nine_template() {
    TemplateBuilder b("triangle:9", 2, 9);
    for (int i = 1; i <= 3; ++i) {
        auto q = b.free_poly(2, "q" + std::to_string(i) + "_", true);
        auto m = b.free_poly(4, "m" + std::to_string(i) + "_");
        b.add_factor({i}, q, m);
    }
    b.set_fold_order(9);
    return b.build();
}

/// "interval:d", "triangle:2", "triangle:9".
inline FoldTemplate builtin_template(const std::string& name) {
    if (name.rfind("interval:", 0) == 0) {
        int d = 0;
        try {
            d = std::stoi(name.substr(9));
        } catch (const std::exception&) {
            throw TemplateError("bad template name '" + name + "'");
        }
        return interval_template(d);
    }
    if (name == "triangle:2")
        return triangle_two_template();
    if (name == "triangle:9")
        return triangle_nine_template();
    throw TemplateError("unknown template '" + name + "'");
}

inline std::vector<FoldFactor> assemble_factors(const FoldTemplate& t, std::span<const Rational> params) {
    if (params.size() != t.num_params())
        throw DimensionError("parameter count does not match the template");
    std::vector<FoldFactor> out;
    for (const auto& f : t.factors)
        out.push_back({f.facets, f.q.evaluate(params), f.m.evaluate(params)});
    return out;
}

/// P_1..P_{n+1} at the given parameters.
template <Scalar S>
std::vector<MultiPoly<S>> assemble_polys(const FoldTemplate& t, std::span<const S> params) {
    if (params.size() != t.num_params())
        throw DimensionError("parameter count does not match the template");
    std::vector<MultiPoly<S>> out;
    for (const auto& f : t.factors) {
        const auto q = f.q.evaluate(params);
        out.push_back(facet_product(t.n, f.facets).template cast<S>() * q * q * f.m.evaluate(params));
    }
    return out;
}

/// The map built from P_1..P_n (P_{n+1} is implied by the defining equation).
template <Scalar S>
SimplexMap<S> assemble_map(const FoldTemplate& t, std::span<const S> params) {
    auto polys = assemble_polys(t, params);
    polys.pop_back();
    return SimplexMap<S>(t.n, t.k, std::move(polys), t.name);
}

/// 1 - sum_i l_i q_i^2 m_i at the given parameters.
template <Scalar S>
MultiPoly<S> residual(const FoldTemplate& t, std::span<const S> params) {
    MultiPoly<S> r = MultiPoly<S>::constant(t.n, S(1));
    for (const auto& p : assemble_polys(t, params))
        r -= p;
    return r;
}

template <Scalar S>
MultiPoly<S> residual(const FoldTemplate& t, const std::vector<S>& params) {
    return residual(t, std::span<const S>(params));
}

/// Coefficients of the residual, each a polynomial in the parameters.
struct ResidualSystem {
    std::vector<Exponent> x_monomials;
    std::vector<ExactPoly> equations;
};

inline ResidualSystem residual_system(const FoldTemplate& t) {
    t.validate();
    const std::size_t n = t.n, np = t.num_params();
    ExactPoly big = ExactPoly::constant(n + np, Rational(1));
    for (const auto& f : t.factors) {
        ExactPoly l = facet_product(n, f.facets);
        Exponent pad;
        ExactPoly l_big(n + np);
        for (const auto& [e, c] : l.terms()) {
            pad = e;
            pad.resize(n + np, 0);
            l_big.add_term(pad, c);
        }
        const ExactPoly q = f.q.lift(np);
        big -= l_big * q * q * f.m.lift(np);
    }
    std::map<Exponent, ExactPoly, GradedLexOrder> grouped;
    for (const auto& [e, c] : big.terms()) {
        Exponent xe(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
        Exponent pe(e.begin() + static_cast<std::ptrdiff_t>(n), e.end());
        auto it = grouped.try_emplace(xe, ExactPoly(np)).first;
        it->second.add_term(pe, c);
    }
    ResidualSystem sys;
    for (auto& [xe, eq] : grouped) {
        sys.x_monomials.push_back(xe);
        sys.equations.push_back(std::move(eq));
    }
    return sys;
}

/// Parameters reproducing the given factors, when the template admits them
/// (exact linear solve over the coefficients of every q_i and m_i).
inline std::optional<std::vector<Rational>> match_params(const FoldTemplate& t,
                                                         const std::vector<FoldFactor>& factors) {
    if (factors.size() != t.factors.size())
        return std::nullopt;
    const std::size_t np = t.num_params();
    // rows: [coefficients of params | rhs]
    std::vector<std::vector<Rational>> rows;
    auto add_rows = [&](const ParamPoly& pp, const ExactPoly& actual) {
        std::set<Exponent> monos;
        for (const auto& [e, c] : actual.terms())
            monos.insert(e);
        for (const auto& term : pp.terms)
            for (const auto& [e, c] : term.basis.terms())
                monos.insert(e);
        for (const auto& e : monos) {
            std::vector<Rational> row(np + 1, Rational(0));
            row[np] = actual.coefficient(e);
            for (const auto& term : pp.terms) {
                const Rational c = term.basis.coefficient(e) * term.coef.scale;
                if (term.coef.param < 0)
                    row[np] -= c;
                else
                    row[static_cast<std::size_t>(term.coef.param)] += c;
            }
            rows.push_back(std::move(row));
        }
    };
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::vector<int> a = t.factors[i].facets, b = factors[i].facets;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        if (a != b)
            return std::nullopt;
        add_rows(t.factors[i].q, factors[i].q);
        add_rows(t.factors[i].m, factors[i].m);
    }
    // Gauss-Jordan elimination
    std::vector<std::size_t> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < np && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[piv], rows[r]);
        const Rational inv = 1 / rows[r][c];
        for (auto& v : rows[r])
            v *= inv;
        for (std::size_t o = 0; o < rows.size(); ++o) {
            if (o == r || rows[o][c] == 0)
                continue;
            const Rational f = rows[o][c];
            for (std::size_t k = c; k <= np; ++k)
                rows[o][k] -= f * rows[r][k];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (std::size_t o = r; o < rows.size(); ++o)
        if (rows[o][np] != 0)
            return std::nullopt;
    std::vector<Rational> out(np, Rational(0));
    for (std::size_t i = 0; i < pivot_col.size(); ++i)
        out[pivot_col[i]] = rows[i][np];
    return out;
}

// ---------------------------------------------------------------- preimages

struct PreimageOptions {
    std::size_t seeds = 500;
    std::uint64_t seed = 0x243f6a8885a308d3ULL;
    double dedup_tol = 1e-8;
    double residual_tol = 1e-12;
    double outside_tol = 1e-10;
    unsigned jobs = 1;
};

struct PreimageReport {
    std::size_t count = 0;
    std::vector<std::vector<double>> points;
    bool suspicious = false; ///< no preimage found
};

/// Seeds for multistart solvers on the simplex: lattice points, then uniform samples.
inline std::vector<std::vector<double>> multistart_seeds(std::size_t n, std::size_t lattice_target,
                                                         std::size_t random_count, std::uint64_t seed) {
    int depth = 1;
    while (monomial_count(n + 1, depth + 1) <= lattice_target)
        ++depth;
    auto pts = barycentric_lattice(n, depth);
    SplitMix64 rng(seed);
    std::vector<double> x(n);
    for (std::size_t s = 0; s < random_count; ++s) {
        sample_uniform_into(n, rng, x.data());
        pts.push_back(x);
    }
    return pts;
}

/// Greedy l_inf clustering; keeps the first representative of each cluster.
inline std::vector<std::vector<double>> dedup_points(std::vector<std::vector<double>> pts, double tol) {
    std::sort(pts.begin(), pts.end());
    std::vector<std::vector<double>> out;
    for (auto& p : pts) {
        bool dup = false;
        for (const auto& q : out) {
            double d = 0;
            for (std::size_t i = 0; i < p.size(); ++i)
                d = std::max(d, std::abs(p[i] - q[i]));
            if (d < tol) {
                dup = true;
                break;
            }
        }
        if (!dup)
            out.push_back(std::move(p));
    }
    return out;
}

template <Scalar S>
PreimageReport preimage_count(const SimplexMap<S>& f, const SimplexPoint& y, const PreimageOptions& opts = {}) {
    if (y.dim() != f.n())
        throw DimensionError("preimage_count: target dimension differs from the map");
    const std::size_t n = f.n();
    const MapEvaluator ev(f);
    const auto seeds = multistart_seeds(n, opts.seeds / 2, opts.seeds - std::min(opts.seeds, opts.seeds / 2), opts.seed);
    std::vector<std::optional<std::vector<double>>> found(seeds.size());
    NewtonOptions nopt;
    nopt.tol = opts.residual_tol;
    nopt.max_iters = 60;
    parallel_for(seeds.size(), opts.jobs, [&](std::size_t s) {
        auto res = damped_newton(
            [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) {
                ev.eval(x.data(), out.data());
                for (std::size_t i = 0; i < n; ++i)
                    out[static_cast<Eigen::Index>(i)] -= y[i];
            },
            [&](const Eigen::VectorXd& x, Eigen::MatrixXd& jac) {
                std::vector<double> buf(n * n);
                ev.jacobian(x.data(), buf.data());
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = buf[i * n + j];
            },
            n, seeds[s], nopt);
        if (res.converged && simplex_violation(res.x) <= opts.outside_tol)
            found[s] = std::move(res.x);
    });
    std::vector<std::vector<double>> pts;
    for (auto& p : found)
        if (p)
            pts.push_back(std::move(*p));
    PreimageReport report;
    report.points = dedup_points(std::move(pts), opts.dedup_tol);
    report.count = report.points.size();
    report.suspicious = report.count == 0;
    return report;
}

// ---------------------------------------------------------------- solver

struct SolveOptions {
    std::size_t seeds = 200;     ///< quasi-random seeds in [-box, box]^P
    double box = 5.0;
    std::vector<std::vector<double>> user_seeds;
    int max_iters = 500;
    double tol = 1e-13;          ///< Newton stopping threshold on the coefficient residual
    double accept = 1e-10;       ///< a converged point must reach this coefficient norm
    double dedup_tol = 1e-8;
    std::int64_t max_den = 1000000;
    double crease_tol = 1e-8;    ///< leading coefficients of q_i must exceed this
    bool check_fold_order = true;
    unsigned jobs = 1;
};

struct FoldSolution {
    std::vector<double> params;
    std::optional<std::vector<Rational>> exact_params;
    double residual_norm = 0.0; ///< max |coefficient| of the float residual
    FloatMap map;
    std::optional<ExactMap> exact_map;

    bool exact() const { return exact_params.has_value(); }
};

struct SolveReport {
    std::vector<FoldSolution> solutions;
    std::size_t seeds_tried = 0;
    std::size_t converged = 0;
    std::size_t distinct = 0;
    std::size_t rejected_sign = 0;
    std::size_t rejected_degree = 0;
    std::size_t rejected_membership = 0;
    std::size_t rejected_fold_order = 0;
    std::size_t duplicate_maps = 0;
    double best_residual = INFINITY;
};

class FoldSolveError : public std::runtime_error {
public:
    FoldSolveError(const std::string& what, double best) : std::runtime_error(what), best_residual(best) {}
    double best_residual;
};

/// Kronecker sequence in [-box, box]^dim.
inline std::vector<std::vector<double>> quasi_random_box(std::size_t dim, std::size_t count, double box) {
    double phi = 2.0;
    for (int it = 0; it < 64; ++it)
        phi = std::pow(1.0 + phi, 1.0 / static_cast<double>(dim + 1));
    std::vector<double> alpha(dim);
    for (std::size_t i = 0; i < dim; ++i)
        alpha[i] = std::fmod(std::pow(1.0 / phi, static_cast<double>(i + 1)), 1.0);
    std::vector<std::vector<double>> out;
    for (std::size_t s = 1; s <= count; ++s) {
        std::vector<double> p(dim);
        for (std::size_t i = 0; i < dim; ++i)
            p[i] = box * (2.0 * std::fmod(0.5 + alpha[i] * static_cast<double>(s), 1.0) - 1.0);
        out.push_back(std::move(p));
    }
    return out;
}

namespace detail {

inline bool maps_close(const FloatMap& a, const FloatMap& b, double tol) {
    for (std::size_t i = 0; i < a.n(); ++i)
        if ((a[i] - b[i]).max_abs_coefficient() > tol)
            return false;
    return true;
}

inline bool has_full_crease_degree(const FoldTemplate& t, std::span<const double> params, double tol) {
    for (const auto& f : t.factors) {
        const int a = f.q.degree();
        if (a == 0)
            continue;
        const auto q = f.q.evaluate(params);
        double lead = 0.0;
        for (const auto& [e, c] : q.terms())
            if (total_degree(e) == a)
                lead = std::max(lead, std::abs(c));
        if (lead <= tol)
            return false;
    }
    return true;
}

/// Per crease factor with a_i >= 1 and no fixed top-degree term: the
/// (param, scale) pairs of its top-degree coefficients.
inline std::vector<std::vector<std::pair<std::size_t, Rational>>> crease_guards(const FoldTemplate& t) {
    std::vector<std::vector<std::pair<std::size_t, Rational>>> out;
    for (const auto& f : t.factors) {
        const int a = f.q.degree();
        if (a == 0)
            continue;
        std::vector<std::pair<std::size_t, Rational>> top;
        bool fixed_top = false;
        for (const auto& term : f.q.terms) {
            if (term.basis.degree() != a)
                continue;
            if (term.coef.param < 0)
                fixed_top = fixed_top || term.coef.scale != 0;
            else
                top.emplace_back(static_cast<std::size_t>(term.coef.param), term.coef.scale);
        }
        if (!fixed_top && !top.empty())
            out.push_back(std::move(top));
    }
    return out;
}

} // namespace detail

/// Solves the coefficient equations of the defining identity by damped
/// least squares (Levenberg-Marquardt, then Gauss-Newton polish) from
/// multistart seeds, then filters, rounds and deduplicates.
inline SolveReport solve_fold(const FoldTemplate& t, const SolveOptions& opts = {}) {
    const auto sys = residual_system(t);
    const std::size_t np = t.num_params();
    const auto guards = detail::crease_guards(t);
    const std::size_t nw = guards.size();
    const std::size_t nv = np + nw;

    // Guard equation w_g * sum (top coefficients of q_g)^2 = 1 keeps deg q_g = a_g
    // and removes the lower-degree solution families from the variety.
    std::vector<ExactPoly> equations;
    for (const auto& eq : sys.equations) {
        ExactPoly lifted(nv);
        for (const auto& [e, c] : eq.terms()) {
            Exponent big = e;
            big.resize(nv, 0);
            lifted.add_term(big, c);
        }
        equations.push_back(std::move(lifted));
    }
    for (std::size_t g = 0; g < nw; ++g) {
        ExactPoly top(nv);
        for (const auto& [param, scale] : guards[g])
            top += (ExactPoly::variable(nv, param) * scale).pow(2);
        equations.push_back(ExactPoly::variable(nv, np + g) * top - ExactPoly::constant(nv, Rational(1)));
    }
    const std::size_t neq = equations.size();
    const CompiledSystem compiled(equations);

    auto seeds = quasi_random_box(np, opts.seeds, opts.box);
    for (const auto& s : opts.user_seeds) {
        if (s.size() != np)
            throw DimensionError("user seed has wrong length");
        seeds.push_back(s);
    }
    for (auto& s : seeds) {
        for (const auto& guard : guards) {
            double top = 0.0;
            for (const auto& [param, scale] : guard)
                top += std::pow(to_double(scale) * s[param], 2);
            s.push_back(top > 0 ? 1.0 / top : 1.0);
        }
    }

    NewtonOptions nopt;
    nopt.max_iters = opts.max_iters;
    nopt.tol = opts.tol;
    std::vector<NewtonResult> runs(seeds.size());
    parallel_for(seeds.size(), opts.jobs, [&](std::size_t s) {
        runs[s] = levenberg_marquardt(
            [&](const Eigen::VectorXd& x, Eigen::VectorXd& out) { compiled.eval(x.data(), out.data()); },
            [&](const Eigen::VectorXd& x, Eigen::MatrixXd& jac) {
                std::vector<double> buf(neq * nv);
                compiled.jacobian(x.data(), buf.data());
                for (std::size_t i = 0; i < neq; ++i)
                    for (std::size_t j = 0; j < nv; ++j)
                        jac(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = buf[i * nv + j];
            },
            neq, seeds[s], nopt);
        runs[s].x.resize(np);
    });

    SolveReport report;
    report.seeds_tried = seeds.size();
    bool all_singular = true;
    std::vector<std::vector<double>> converged;
    for (const auto& r : runs) {
        report.best_residual = std::min(report.best_residual, r.residual);
        all_singular = all_singular && r.singular && !r.converged;
        if (r.residual < opts.accept)
            converged.push_back(r.x);
    }
    report.converged = converged.size();
    if (converged.empty()) {
        if (all_singular)
            throw FoldSolveError("Jacobian singular at all seeds", report.best_residual);
        throw FoldSolveError("no solutions found; best residual " + std::to_string(report.best_residual),
                             report.best_residual);
    }
    const auto distinct = dedup_points(std::move(converged), opts.dedup_tol);
    report.distinct = distinct.size();

    for (const auto& x : distinct) {
        const std::span<const double> xs(x);
        bool signs_ok = true;
        for (const auto& sc : t.sign_constraints) {
            const double v = x[sc.param];
            signs_ok = signs_ok && (sc.sign == ParamSign::positive ? v > opts.dedup_tol : v < -opts.dedup_tol);
        }
        if (!signs_ok) {
            ++report.rejected_sign;
            continue;
        }
        if (!detail::has_full_crease_degree(t, xs, opts.crease_tol)) {
            ++report.rejected_degree;
            continue;
        }
        FoldSolution sol;
        sol.params = x;
        sol.residual_norm = residual(t, xs).max_abs_coefficient();
        sol.map = assemble_map(t, xs);

        std::vector<Rational> rounded;
        for (double v : x)
            rounded.push_back(rationalize(v, opts.max_den));
        if (residual(t, std::span<const Rational>(rounded)).is_zero()) {
            sol.exact_map = assemble_map(t, std::span<const Rational>(rounded));
            sol.exact_params = std::move(rounded);
            sol.map = sol.exact_map->cast<double>();
            sol.residual_norm = 0.0;
        }
        const bool member = sol.exact_map ? membership_check(*sol.exact_map).member : membership_check(sol.map).member;
        if (!member) {
            ++report.rejected_membership;
            continue;
        }
        if (opts.check_fold_order && t.fold_order > 0) {
            std::vector<double> y(t.n, 1.0 / static_cast<double>(t.n + 2));
            y[0] += 0.0731;
            const auto pre = preimage_count(sol.map, SimplexPoint(y), PreimageOptions{});
            if (static_cast<int>(pre.count) != t.fold_order) {
                ++report.rejected_fold_order;
                continue;
            }
        }
        bool dup = false;
        for (const auto& prev : report.solutions)
            if (detail::maps_close(prev.map, sol.map, opts.dedup_tol))
                dup = true;
        if (dup) {
            ++report.duplicate_maps;
            continue;
        }
        report.solutions.push_back(std::move(sol));
    }
    return report;
}

// ---------------------------------------------------------------- verification

class FactorizationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// p / l_facets, exact; throws FactorizationError on a nonzero remainder.
inline ExactPoly divide_by_facets(const ExactPoly& p, const std::vector<int>& facets) {
    const std::size_t n = p.num_vars();
    ExactPoly cur = p;
    for (int j : facets) {
        if (j < 1 || static_cast<std::size_t>(j) > n + 1)
            throw std::out_of_range("facet index out of range");
        if (static_cast<std::size_t>(j) <= n) {
            auto div = divide_by_linear(cur, static_cast<std::size_t>(j - 1), ExactPoly(n));
            if (!div.remainder.is_zero())
                throw FactorizationError("facet " + std::to_string(j) + " does not divide the polynomial");
            cur = std::move(div.quotient);
        } else {
            // 1 - sum x = -(x_n - (1 - x_1 - ... - x_{n-1}))
            ExactPoly shift = ExactPoly::constant(n, Rational(1));
            for (std::size_t i = 0; i + 1 < n; ++i)
                shift -= ExactPoly::variable(n, i);
            auto div = divide_by_linear(cur, n - 1, shift);
            if (!div.remainder.is_zero())
                throw FactorizationError("facet " + std::to_string(j) + " does not divide the polynomial");
            cur = -div.quotient;
        }
    }
    return cur;
}

/// Facets on which p vanishes identically.
inline std::vector<int> vanishing_facets(const ExactPoly& p) {
    std::vector<int> out;
    for (std::size_t j = 1; j <= p.num_vars() + 1; ++j) {
        try {
            (void)divide_by_facets(p, {static_cast<int>(j)});
            out.push_back(static_cast<int>(j));
        } catch (const FactorizationError&) {
        }
    }
    return out;
}

/// l_i from the facets where P_i vanishes; q_i = 1 and m_i the exact quotient.
inline std::vector<FoldFactor> infer_factors(const ExactMap& f) {
    std::vector<FoldFactor> out;
    const std::size_t n = f.n();
    for (const auto& p : f.all_polys()) {
        auto facets = vanishing_facets(p);
        out.push_back({facets, ExactPoly::constant(n, Rational(1)), divide_by_facets(p, facets)});
    }
    return out;
}

struct FactorCheck {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct FactorizationReport {
    std::vector<FoldFactor> factors;
    std::vector<FactorCheck> checks;

    bool ok() const {
        return std::all_of(checks.begin(), checks.end(), [](const FactorCheck& c) { return c.passed; });
    }
};

/// Checks P_i = l_i q_i^2 m_i, prod l_i = boundary product, m_i >= 0 (sampled)
/// and deg l_i + 2 deg q_i + deg m_i <= k.
inline FactorizationReport verify_factorization(const ExactMap& f, const std::vector<FoldFactor>& claimed) {
    const std::size_t n = f.n();
    if (claimed.size() != n + 1)
        throw DimensionError("verify_factorization: need n+1 factors");
    FactorizationReport rep;
    rep.factors = claimed;
    const auto polys = f.all_polys();
    ExactPoly lprod = ExactPoly::constant(n, Rational(1));
    for (std::size_t i = 0; i < claimed.size(); ++i) {
        const auto& fac = claimed[i];
        const std::string tag = "P" + std::to_string(i + 1);
        const bool eq = fac.product() == polys[i];
        rep.checks.push_back({tag + " = l q^2 m", eq, eq ? "exact" : "product differs"});
        const auto mv = nonneg_on_simplex(fac.m, NonnegMode::sampled);
        rep.checks.push_back({tag + " m >= 0", mv.nonneg, mv.evidence});
        const int budget = static_cast<int>(fac.facets.size()) + 2 * fac.q.degree() + std::max(fac.m.degree(), 0);
        rep.checks.push_back({tag + " degree budget", budget <= f.k(),
                              std::to_string(budget) + " <= " + std::to_string(f.k())});
        lprod = lprod * fac.l();
    }
    const bool bp = lprod == boundary_product(n);
    rep.checks.push_back({"prod l = boundary", bp, bp ? "exact" : "product of l_i differs"});
    return rep;
}

/// Inference mode: divides the vanishing facets out of each P_i.
inline FactorizationReport verify_factorization(const ExactMap& f) {
    return verify_factorization(f, infer_factors(f));
}

/// Claim given as facet lists only; throws FactorizationError when a claimed
/// facet does not divide its P_i.
inline FactorizationReport verify_factorization(const ExactMap& f, const std::vector<std::vector<int>>& facets) {
    if (facets.size() != f.n() + 1)
        throw DimensionError("verify_factorization: need n+1 facet lists");
    const auto polys = f.all_polys();
    std::vector<FoldFactor> factors;
    for (std::size_t i = 0; i < polys.size(); ++i)
        factors.push_back({facets[i], ExactPoly::constant(f.n(), Rational(1)), divide_by_facets(polys[i], facets[i])});
    return verify_factorization(f, factors);
}

} // namespace simplexfold
