#include "followgraph/glm/optimize.hpp"

#include <cmath>
#include <limits>

namespace followgraph::glm {

OptimResult maximize_bfgs(const ObjectiveFn& objective, Eigen::VectorXd x0,
                          const OptimOptions& options) {
    const Eigen::Index p = x0.size();
    constexpr double armijo_c1 = 1e-4;

    ObjectiveEval eval = objective(x0);
    Eigen::MatrixXd h_inv = Eigen::MatrixXd::Identity(p, p);  // inverse Hessian of -f

    OptimResult result;
    result.x = std::move(x0);
    result.value = eval.value;
    result.gradient = eval.gradient;

    bool first_update = true;
    for (int iter = 1; iter <= options.max_iterations; ++iter) {
        result.iterations = iter;

        Eigen::VectorXd direction = h_inv * result.gradient;  // ascent direction
        double slope = direction.dot(result.gradient);
        if (!(slope > 0)) {
            // Not an ascent direction; reset the curvature model.
            h_inv.setIdentity();
            direction = result.gradient;
            slope = direction.squaredNorm();
            if (!(slope > 0)) break;
        }

        double step = 1.0;
        ObjectiveEval trial;
        Eigen::VectorXd x_new;
        bool accepted = false;
        for (int backtrack = 0; backtrack < 60; ++backtrack) {
            x_new = result.x + step * direction;
            trial = objective(x_new);
            if (std::isfinite(trial.value) &&
                trial.value >= result.value + armijo_c1 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) break;  // line search exhausted; report the best point

        const Eigen::VectorXd s = x_new - result.x;
        const Eigen::VectorXd y = result.gradient - trial.gradient;  // grad(-f) differences
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            if (first_update) {
                h_inv *= sy / y.squaredNorm();
                first_update = false;
            }
            const Eigen::VectorXd hy = h_inv * y;
            const double yhy = y.dot(hy);
            h_inv += ((sy + yhy) / (sy * sy)) * (s * s.transpose()) -
                     (hy * s.transpose() + s * hy.transpose()) / sy;
        }

        const double previous = result.value;
        result.x = std::move(x_new);
        result.value = trial.value;
        result.gradient = std::move(trial.gradient);

        const double rel_change =
            std::abs(result.value - previous) / (std::abs(result.value) + 1.0);
        if (rel_change < options.value_rel_tol &&
            result.gradient.lpNorm<Eigen::Infinity>() < options.grad_tol) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged &&
        result.gradient.lpNorm<Eigen::Infinity>() < options.grad_tol)
        result.converged = true;  // e.g. started at, or stalled on, the optimum
    return result;
}

Eigen::MatrixXd finite_difference_hessian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
    const Eigen::VectorXd& x) {
    const Eigen::Index p = x.size();
    const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    Eigen::MatrixXd h(p, p);
    Eigen::VectorXd point = x;
    for (Eigen::Index j = 0; j < p; ++j) {
        const double step = cbrt_eps * std::max(1.0, std::abs(x[j]));
        point[j] = x[j] + step;
        const Eigen::VectorXd g_plus = gradient(point);
        point[j] = x[j] - step;
        const Eigen::VectorXd g_minus = gradient(point);
        point[j] = x[j];
        h.col(j) = (g_plus - g_minus) / (2.0 * step);
    }
    return 0.5 * (h + h.transpose());
}

}  // namespace followgraph::glm
