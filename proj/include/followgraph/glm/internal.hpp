#pragma once

#include <Eigen/Dense>
#include <functional>
#include <limits>
#include <string>

#include "followgraph/errors.hpp"
#include "followgraph/glm/design.hpp"
#include "followgraph/glm/optimize.hpp"

// Shared plumbing for the model fitters.

namespace followgraph::glm {

inline void check_dimensions(const std::string& who, Eigen::Index y_rows,
                             const DesignMatrix& X) {
    if (y_rows != X.rows())
        throw ModelError(who + ": outcome has " + std::to_string(y_rows) + " rows, design has " +
                         std::to_string(X.rows()));
    if (X.cols() == 0) throw ModelError(who + ": empty design matrix");
}

// Full-column-rank check; names the dependent columns on failure.
inline void check_full_rank(const std::string& who, const DesignMatrix& X) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X.X);
    qr.setThreshold(1e-10);
    const Eigen::Index rank = qr.rank();
    if (rank == X.cols()) return;
    // Pivot order puts the dependent columns last.
    const auto& perm = qr.colsPermutation().indices();
    std::string collinear;
    for (Eigen::Index i = rank; i < X.cols(); ++i) {
        if (!collinear.empty()) collinear += ", ";
        collinear += X.names[static_cast<std::size_t>(perm[i])];
    }
    throw ModelError(who + ": design matrix is rank deficient (collinear columns: " + collinear +
                     ")");
}

// Evaluates a log-likelihood, mapping ModelError (overflow at a trial point)
// to -inf so the line search can back off.
template <typename Fn>
double safe_loglik(Fn&& fn) {
    try {
        return fn();
    } catch (const ModelError&) {
        return -std::numeric_limits<double>::infinity();
    }
}

// Standard errors from the observed information (negative Hessian of the
// log-likelihood, via central differences of the analytic gradient).
// Non-positive-definite directions yield NaN entries.
inline Eigen::VectorXd observed_information_errors(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& gradient,
    const Eigen::VectorXd& x) {
    const Eigen::MatrixXd info = -finite_difference_hessian(gradient, x);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(info);
    Eigen::VectorXd se = Eigen::VectorXd::Constant(x.size(),
                                                   std::numeric_limits<double>::quiet_NaN());
    if (!lu.isInvertible()) return se;
    const Eigen::MatrixXd cov = lu.inverse();
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (cov(i, i) > 0) se[i] = std::sqrt(cov(i, i));
    return se;
}

}  // namespace followgraph::glm
