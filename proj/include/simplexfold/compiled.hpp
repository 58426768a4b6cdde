#pragma once

// Flat double-precision evaluators for hot loops (orbits, Newton iterations).

#include "simplexfold/polynomial.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace simplexfold {

class CompiledPoly {
public:
    CompiledPoly() = default;

    template <Scalar S>
    explicit CompiledPoly(const MultiPoly<S>& p) : nvars_(p.num_vars()) {
        for (const auto& [e, c] : p.terms()) {
            coefs_.push_back(to_double(c));
            offsets_.push_back(static_cast<std::uint32_t>(factors_.size()));
            for (std::size_t v = 0; v < e.size(); ++v)
                for (int k = 0; k < e[v]; ++k)
                    factors_.push_back(static_cast<std::uint16_t>(v));
        }
        offsets_.push_back(static_cast<std::uint32_t>(factors_.size()));
    }

    std::size_t num_vars() const { return nvars_; }

    double operator()(const double* x) const {
        double sum = 0.0;
        for (std::size_t t = 0; t < coefs_.size(); ++t) {
            double term = coefs_[t];
            for (std::uint32_t f = offsets_[t]; f < offsets_[t + 1]; ++f)
                term *= x[factors_[f]];
            sum += term;
        }
        return sum;
    }

    double operator()(std::span<const double> x) const { return (*this)(x.data()); }

private:
    std::size_t nvars_ = 0;
    std::vector<double> coefs_;
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint16_t> factors_;
};

/// Values and Jacobian of a square polynomial system x -> (P_1(x), ..., P_n(x)).
class CompiledSystem {
public:
    CompiledSystem() = default;

    template <Scalar S>
    explicit CompiledSystem(std::span<const MultiPoly<S>> ps) {
        if (ps.empty())
            return;
        nvars_ = ps.front().num_vars();
        for (const auto& p : ps) {
            if (p.num_vars() != nvars_)
                throw DimensionError("compiled system: mixed num_vars");
            values_.emplace_back(p);
            for (std::size_t j = 0; j < nvars_; ++j)
                derivs_.emplace_back(p.derivative(j));
        }
    }

    template <Scalar S>
    explicit CompiledSystem(const std::vector<MultiPoly<S>>& ps)
        : CompiledSystem(std::span<const MultiPoly<S>>(ps)) {}

    std::size_t num_equations() const { return values_.size(); }
    std::size_t num_vars() const { return nvars_; }

    void eval(const double* x, double* out) const {
        for (std::size_t i = 0; i < values_.size(); ++i)
            out[i] = values_[i](x);
    }

    /// Row-major num_equations x num_vars.
    void jacobian(const double* x, double* out) const {
        for (std::size_t k = 0; k < derivs_.size(); ++k)
            out[k] = derivs_[k](x);
    }

private:
    std::size_t nvars_ = 0;
    std::vector<CompiledPoly> values_;
    std::vector<CompiledPoly> derivs_;
};

} // namespace simplexfold
