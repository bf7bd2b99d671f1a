#include "followgraph/glm/nb.hpp"

#include <cmath>
#include <limits>

#include "followgraph/errors.hpp"
#include "followgraph/glm/internal.hpp"
#include "followgraph/glm/optimize.hpp"
#include "followgraph/glm/special.hpp"
#include "followgraph/parallel.hpp"

namespace followgraph::glm {

namespace {

// Per-row log-likelihood term; NaN signals a non-finite evaluation.
inline double nb_term(double y, double eta, double alpha, double m, double log_gamma_m) {
    const double mu = std::exp(eta);
    const double log1p_alpha_mu = std::log1p(alpha * mu);
    // ln p = -ln(1 + alpha mu); ln(1 - p) = ln(alpha mu) - ln(1 + alpha mu).
    const double term = log_gamma(m + y) - log_gamma(y + 1.0) - log_gamma_m -
                        m * log1p_alpha_mu +
                        (y > 0 ? y * (std::log(alpha) + eta - log1p_alpha_mu) : 0.0);
    return term;
}

struct NbAccum {
    double value = 0.0;
    Eigen::VectorXd grad;  // beta block + ln_alpha slot
};

}  // namespace

double nb_loglik(const NbParams& params, const Eigen::VectorXd& y, const DesignMatrix& X,
                 std::size_t threads) {
    check_dimensions("nb_loglik", y.size(), X);
    if (params.beta.size() != X.cols())
        throw ModelError("nb_loglik: beta has " + std::to_string(params.beta.size()) +
                         " entries for " + std::to_string(X.cols()) + " design columns");
    const double alpha = params.alpha();
    const double m = 1.0 / alpha;
    const double log_gamma_m = log_gamma(m);
    const Eigen::VectorXd eta = X.X * params.beta;

    const double total = block_reduce<double>(
        static_cast<std::size_t>(y.size()), 0.0,
        [&](std::size_t b, std::size_t e) {
            double sum = 0.0;
            for (std::size_t j = b; j < e; ++j) {
                const auto i = static_cast<Eigen::Index>(j);
                sum += nb_term(y[i], eta[i], alpha, m, log_gamma_m);
            }
            return sum;
        },
        [](double a, double b) { return a + b; }, threads);

    if (!std::isfinite(total)) {
        for (Eigen::Index i = 0; i < y.size(); ++i)
            if (!std::isfinite(nb_term(y[i], eta[i], alpha, m, log_gamma_m)))
                throw ModelError("nb_loglik: non-finite term at row " + std::to_string(i) +
                                 " (linear predictor " + std::to_string(eta[i]) + ")");
        throw ModelError("nb_loglik: non-finite total");
    }
    return total;
}

Eigen::VectorXd nb_loglik_gradient(const NbParams& params, const Eigen::VectorXd& y,
                                   const DesignMatrix& X, std::size_t threads) {
    check_dimensions("nb_loglik_gradient", y.size(), X);
    const Eigen::Index p = X.cols();
    const double alpha = params.alpha();
    const double m = 1.0 / alpha;
    const double digamma_m = digamma(m);
    const Eigen::VectorXd eta = X.X * params.beta;

    NbAccum zero{0.0, Eigen::VectorXd::Zero(p + 1)};
    NbAccum total = block_reduce<NbAccum>(
        static_cast<std::size_t>(y.size()), zero,
        [&](std::size_t b, std::size_t e) {
            NbAccum acc{0.0, Eigen::VectorXd::Zero(p + 1)};
            for (std::size_t j = b; j < e; ++j) {
                const auto i = static_cast<Eigen::Index>(j);
                const double mu = std::exp(eta[i]);
                const double denom = 1.0 + alpha * mu;
                // d/d beta: (y - mu) / (1 + alpha mu) * x
                const double beta_weight = (y[i] - mu) / denom;
                acc.grad.head(p) += beta_weight * X.X.row(i).transpose();
                // d/d ln_alpha = alpha * d/d alpha:
                //   m [ln(1 + alpha mu) + psi(m) - psi(y + m)] + (y - mu)/(1 + alpha mu)
                acc.grad[p] += m * (std::log1p(alpha * mu) + digamma_m - digamma(y[i] + m)) +
                               beta_weight;
            }
            return acc;
        },
        [](NbAccum a, const NbAccum& b) {
            a.grad += b.grad;
            return a;
        },
        threads);
    return total.grad;
}

ModelFit nb_fit(const Eigen::VectorXd& y, const DesignMatrix& X, const FitConfig& config) {
    check_dimensions("nb_fit", y.size(), X);
    if (y.size() <= X.cols())
        throw ModelError("nb_fit: need more rows than design columns");
    for (Eigen::Index i = 0; i < y.size(); ++i)
        if (y[i] < 0 || y[i] != std::floor(y[i]))
            throw InputError("nb_fit: outcome must be a non-negative count (row " +
                             std::to_string(i) + ")");
    check_full_rank("nb_fit", X);

    const Eigen::Index p = X.cols();
    auto unpack = [p](const Eigen::VectorXd& theta) {
        return NbParams{theta.head(p), theta[p]};
    };

    ObjectiveFn objective = [&](const Eigen::VectorXd& theta) {
        const NbParams params = unpack(theta);
        ObjectiveEval eval;
        eval.value = safe_loglik([&] { return nb_loglik(params, y, X, config.threads); });
        eval.gradient = std::isfinite(eval.value)
                            ? nb_loglik_gradient(params, y, X, config.threads)
                            : Eigen::VectorXd::Zero(p + 1).eval();
        return eval;
    };

    OptimResult opt = maximize_bfgs(objective, Eigen::VectorXd::Zero(p + 1),
                                    {config.max_iterations, config.value_rel_tol,
                                     config.grad_tol});

    ModelFit fit;
    fit.model = "nb";
    fit.coefficient_names = X.names;
    fit.coefficient_names.emplace_back("lnalpha");
    fit.estimates = opt.x;
    fit.log_likelihood = opt.value;
    fit.converged = opt.converged;
    fit.iterations = opt.iterations;
    fit.gradient_norm = opt.gradient.lpNorm<Eigen::Infinity>();
    fit.observations = static_cast<std::size_t>(y.size());
    fit.design_columns = X.names;
    fit.design_scales = X.scales;
    fit.standard_errors = observed_information_errors(
        [&](const Eigen::VectorXd& theta) {
            return nb_loglik_gradient(unpack(theta), y, X, config.threads);
        },
        opt.x);
    return fit;
}

NbParams nb_params_from_fit(const ModelFit& fit) {
    if (fit.model != "nb") throw ModelError("fit is not a negative binomial fit");
    const Eigen::Index p = fit.estimates.size() - 1;
    return NbParams{fit.estimates.head(p), fit.estimates[p]};
}

}  // namespace followgraph::glm
