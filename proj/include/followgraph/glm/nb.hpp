#pragma once

#include <Eigen/Core>
#include <cmath>

#include "followgraph/glm/design.hpp"
#include "followgraph/glm/fit.hpp"

namespace followgraph::glm {

// Negative binomial (NB2) parameters. The dispersion is carried as
// ln(alpha) so alpha stays positive by construction; the mean is
// mu = exp(x beta) and the variance mu + alpha mu^2.
struct NbParams {
    Eigen::VectorXd beta;
    double ln_alpha = 0.0;

    double alpha() const { return std::exp(ln_alpha); }
};

// Unconditional log-likelihood: with m = 1/alpha and p_j = 1/(1 + alpha mu_j),
//   sum_j [ lnG(m + y_j) - lnG(y_j + 1) - lnG(m) + m ln p_j + y_j ln(1 - p_j) ].
// Throws ModelError naming the first row whose term is non-finite.
double nb_loglik(const NbParams& params, const Eigen::VectorXd& y, const DesignMatrix& X,
                 std::size_t threads = 0);

// Analytic gradient in (beta, ln_alpha); the last entry is d/d ln_alpha.
Eigen::VectorXd nb_loglik_gradient(const NbParams& params, const Eigen::VectorXd& y,
                                   const DesignMatrix& X, std::size_t threads = 0);

// Maximum likelihood over (beta, ln_alpha), BFGS with backtracking.
// Start: beta = 0, ln_alpha = 0. Requires more rows than columns and a
// full-column-rank design (rank deficiency names the collinear columns).
ModelFit nb_fit(const Eigen::VectorXd& y, const DesignMatrix& X, const FitConfig& config = {});

NbParams nb_params_from_fit(const ModelFit& fit);

}  // namespace followgraph::glm
