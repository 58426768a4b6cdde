#pragma once

// Damped Gauss-Newton iteration for F(x) = 0 with F: R^p -> R^m, m >= p.
// Each step solves J dx = -F in the least-squares sense (complete orthogonal
// decomposition, so rank-deficient Jacobians still give a minimum-norm step)
// and halves the step up to `max_halvings` times until ||F||_inf decreases.

#include <Eigen/Dense>

#include <cmath>
#include <vector>

namespace simplexfold {

struct NewtonOptions {
    int max_iters = 100;
    double tol = 1e-12;       ///< stop when ||F||_inf < tol
    int max_halvings = 30;
    double divergence = 1e8;  ///< abandon when ||x||_inf exceeds this
};

struct NewtonResult {
    std::vector<double> x;
    double residual = INFINITY;
    bool converged = false;
    bool singular = false; ///< the Jacobian was rank deficient at the final iterate
    int iterations = 0;
};

/// `residual(x, F)` fills F (length m); `jacobian(x, J)` fills J (m x p).
template <class ResidualFn, class JacobianFn>
NewtonResult damped_newton(ResidualFn&& residual, JacobianFn&& jacobian, std::size_t m,
                           std::vector<double> x0, const NewtonOptions& opts = {}) {
    const auto p = static_cast<Eigen::Index>(x0.size());
    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(x0.data(), p);
    Eigen::VectorXd f(static_cast<Eigen::Index>(m)), f_trial(static_cast<Eigen::Index>(m));
    Eigen::MatrixXd jac(static_cast<Eigen::Index>(m), p);
    Eigen::VectorXd trial(p);

    NewtonResult out;
    residual(x, f);
    double norm = f.lpNorm<Eigen::Infinity>();
    for (int it = 0; it < opts.max_iters && std::isfinite(norm); ++it) {
        out.iterations = it;
        if (norm < opts.tol)
            break;
        jacobian(x, jac);
        const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(jac);
        out.singular = cod.rank() < p;
        const Eigen::VectorXd step = cod.solve(-f);
        if (!step.allFinite())
            break;
        double t = 1.0;
        bool improved = false;
        for (int h = 0; h <= opts.max_halvings; ++h, t *= 0.5) {
            trial = x + t * step;
            residual(trial, f_trial);
            const double trial_norm = f_trial.lpNorm<Eigen::Infinity>();
            if (trial_norm < norm) {
                x = trial;
                f = f_trial;
                norm = trial_norm;
                improved = true;
                break;
            }
        }
        if (!improved || x.lpNorm<Eigen::Infinity>() > opts.divergence)
            break;
    }
    out.x.assign(x.data(), x.data() + p);
    out.residual = norm;
    out.converged = norm < opts.tol;
    return out;
}

/// Levenberg-Marquardt with Nielsen's damping update; finishes with damped
/// Gauss-Newton steps once close. Larger basins than plain Gauss-Newton on
/// overdetermined coefficient systems.
template <class ResidualFn, class JacobianFn>
NewtonResult levenberg_marquardt(ResidualFn&& residual, JacobianFn&& jacobian, std::size_t m,
                                 std::vector<double> x0, const NewtonOptions& opts = {}) {
    const auto p = static_cast<Eigen::Index>(x0.size());
    const auto mi = static_cast<Eigen::Index>(m);
    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(x0.data(), p);
    Eigen::VectorXd f(mi), f_trial(mi), trial(p);
    Eigen::MatrixXd jac(mi, p);

    residual(x, f);
    double cost = 0.5 * f.squaredNorm();
    jacobian(x, jac);
    Eigen::MatrixXd a = jac.transpose() * jac;
    Eigen::VectorXd g = jac.transpose() * f;
    double mu = 1e-3 * a.diagonal().maxCoeff();
    double nu = 2.0;
    int it = 0;
    for (; it < opts.max_iters && std::isfinite(cost); ++it) {
        if (f.lpNorm<Eigen::Infinity>() < opts.tol)
            break;
        Eigen::MatrixXd damped = a;
        damped.diagonal().array() += mu;
        const Eigen::VectorXd h = damped.ldlt().solve(-g);
        if (!h.allFinite() || h.norm() <= 1e-15 * (x.norm() + 1e-15))
            break;
        trial = x + h;
        residual(trial, f_trial);
        const double trial_cost = 0.5 * f_trial.squaredNorm();
        const double predicted = 0.5 * h.dot(mu * h - g);
        const double rho = predicted > 0 ? (cost - trial_cost) / predicted : -1.0;
        if (rho > 0 && std::isfinite(trial_cost)) {
            x = trial;
            f = f_trial;
            cost = trial_cost;
            jacobian(x, jac);
            a = jac.transpose() * jac;
            g = jac.transpose() * f;
            mu *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
            nu = 2.0;
        } else {
            mu *= nu;
            nu *= 2.0;
        }
        if (x.lpNorm<Eigen::Infinity>() > opts.divergence || !std::isfinite(mu))
            break;
    }
    NewtonOptions polish = opts;
    polish.max_iters = 20;
    std::vector<double> xv(x.data(), x.data() + p);
    NewtonResult out = damped_newton(residual, jacobian, m, std::move(xv), polish);
    out.iterations += it;
    return out;
}

} // namespace simplexfold
