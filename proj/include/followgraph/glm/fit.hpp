#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <string>
#include <vector>

namespace followgraph::glm {

struct FitConfig {
    int max_iterations = 500;
    double value_rel_tol = 1e-9;
    double grad_tol = 1e-6;
    std::size_t threads = 0;  // 0 = thread_budget()
};

// Estimation result shared by all three models. Standard errors come from
// the inverse observed information (negative Hessian at the optimum, via
// central differences of the analytic gradient); entries where the
// information matrix is not positive definite are NaN.
struct ModelFit {
    std::string model;  // "nb" | "mnl" | "logit"
    std::vector<std::string> coefficient_names;
    Eigen::VectorXd estimates;
    Eigen::VectorXd standard_errors;
    double log_likelihood = 0.0;
    bool converged = false;
    int iterations = 0;
    double gradient_norm = 0.0;  // infinity norm at the solution
    bool separation_warning = false;
    std::size_t observations = 0;

    // Design metadata carried along for prediction and reporting.
    std::vector<std::string> design_columns;
    std::vector<double> design_scales;
    std::string year_column;  // empty when no year fixed effects
};

}  // namespace followgraph::glm
