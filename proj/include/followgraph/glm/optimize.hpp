#pragma once

#include <Eigen/Core>
#include <functional>

namespace followgraph::glm {

struct ObjectiveEval {
    double value = 0.0;
    Eigen::VectorXd gradient;
};

// Objective to MAXIMIZE. Must return -inf (not throw) at points where the
// value is undefined so the line search can back off.
using ObjectiveFn = std::function<ObjectiveEval(const Eigen::VectorXd&)>;

struct OptimOptions {
    int max_iterations = 500;
    double value_rel_tol = 1e-9;  // relative objective change
    double grad_tol = 1e-6;       // gradient infinity norm
};

struct OptimResult {
    Eigen::VectorXd x;
    double value = 0.0;
    Eigen::VectorXd gradient;
    int iterations = 0;
    bool converged = false;
};

// BFGS with Armijo backtracking line search. Convergence requires both the
// relative objective change and the gradient infinity norm to fall under
// their tolerances.
OptimResult maximize_bfgs(const ObjectiveFn& objective, Eigen::VectorXd x0,
                          const OptimOptions& options = {});

// Central-difference Hessian of an analytic gradient, symmetrized.
Eigen::MatrixXd finite_difference_hessian(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
    const Eigen::VectorXd& x);

}  // namespace followgraph::glm
