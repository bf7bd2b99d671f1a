#pragma once

#include <Eigen/Core>
#include <span>

#include "followgraph/follow_matrix.hpp"
#include "followgraph/glm/design.hpp"
#include "followgraph/glm/fit.hpp"

namespace followgraph::glm {

// Three-class multinomial logit over the partisan classes. The Independent
// class is the identification baseline: its coefficients are fixed at zero,
// so with u1 = x b_democrat and u3 = x b_republican,
//   P(Democrat)    = e^u1 / (e^u1 + 1 + e^u3)
//   P(Independent) =   1  / (e^u1 + 1 + e^u3)
//   P(Republican)  = e^u3 / (e^u1 + 1 + e^u3).
struct MnlParams {
    Eigen::VectorXd beta_democrat;
    Eigen::VectorXd beta_republican;
};

// Log-sum-exp stabilized log-likelihood; finite for |x beta| up to ~700.
double mnl_loglik(const MnlParams& params, std::span<const PartisanClass> classes,
                  const DesignMatrix& X, std::size_t threads = 0);

// Gradient stacked as [d/d beta_democrat; d/d beta_republican].
Eigen::VectorXd mnl_loglik_gradient(const MnlParams& params,
                                    std::span<const PartisanClass> classes,
                                    const DesignMatrix& X, std::size_t threads = 0);

// Joint MLE over both blocks. Requires all three classes present and a
// full-rank design. Coefficients drifting past |b| > 30 raise the
// separation warning on the returned fit.
ModelFit mnl_fit(std::span<const PartisanClass> classes, const DesignMatrix& X,
                 const FitConfig& config = {});

MnlParams mnl_params_from_fit(const ModelFit& fit);

// (P_democrat, P_independent, P_republican) for one covariate vector.
Eigen::Vector3d predicted_probabilities(const MnlParams& params, const Eigen::VectorXd& x);

// Predicted-probability deltas when the named binary column flips 0 -> 1
// with every other covariate held at its sample mean.
Eigen::Vector3d marginal_effect(const MnlParams& params, const DesignMatrix& X,
                                std::string_view binary_column);

// Binary logit, a dedicated implementation of the two-class special case.
double logit_loglik(const Eigen::VectorXd& beta, const Eigen::VectorXd& y01,
                    const DesignMatrix& X, std::size_t threads = 0);
Eigen::VectorXd logit_loglik_gradient(const Eigen::VectorXd& beta, const Eigen::VectorXd& y01,
                                      const DesignMatrix& X, std::size_t threads = 0);
ModelFit logit_fit(const Eigen::VectorXd& y01, const DesignMatrix& X,
                   const FitConfig& config = {});

// Generic K-class softmax MLE used by mnl_fit (baseline class fixed at
// zero). Exposed so the binary logit can be cross-checked against its
// two-class restriction.
ModelFit softmax_fit(std::span<const int> klass, int n_classes, int baseline,
                     const DesignMatrix& X, const FitConfig& config = {});

}  // namespace followgraph::glm
