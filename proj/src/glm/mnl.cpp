#include "followgraph/glm/mnl.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "followgraph/errors.hpp"
#include "followgraph/glm/internal.hpp"
#include "followgraph/glm/optimize.hpp"
#include "followgraph/glm/special.hpp"
#include "followgraph/parallel.hpp"

namespace followgraph::glm {

namespace {

constexpr double kSeparationBound = 30.0;

struct Accum {
    double value = 0.0;
    Eigen::VectorXd grad;
};

// K-class softmax likelihood with the baseline class's utilities fixed at 0.
// Coefficient blocks are stacked in class order, baseline omitted. klass
// values are 0..K-1.
class SoftmaxObjective {
public:
    SoftmaxObjective(std::span<const int> klass, int n_classes, int baseline,
                     const DesignMatrix& X, std::size_t threads)
        : klass_(klass), n_classes_(n_classes), baseline_(baseline), X_(X), threads_(threads) {
        for (int c = 0; c < n_classes_; ++c)
            if (c != baseline_) blocks_.push_back(c);
    }

    Eigen::Index block_count() const { return static_cast<Eigen::Index>(blocks_.size()); }
    const std::vector<int>& blocks() const { return blocks_; }

    Accum evaluate(const Eigen::VectorXd& theta, bool with_gradient) const {
        const Eigen::Index p = X_.cols();
        const Eigen::Index nb = block_count();
        // Utilities per non-baseline block.
        Eigen::MatrixXd eta(X_.rows(), nb);
        for (Eigen::Index b = 0; b < nb; ++b) eta.col(b) = X_.X * theta.segment(b * p, p);

        Accum zero{0.0, Eigen::VectorXd::Zero(with_gradient ? nb * p : 0)};
        return block_reduce<Accum>(
            klass_.size(), zero,
            [&](std::size_t begin, std::size_t end) {
                Accum acc{0.0, Eigen::VectorXd::Zero(with_gradient ? nb * p : 0)};
                Eigen::VectorXd u(nb);
                for (std::size_t j = begin; j < end; ++j) {
                    const auto i = static_cast<Eigen::Index>(j);
                    u = eta.row(i).transpose();
                    double m = 0.0;  // baseline utility
                    for (Eigen::Index b = 0; b < nb; ++b) m = std::max(m, u[b]);
                    double z = std::exp(0.0 - m);
                    for (Eigen::Index b = 0; b < nb; ++b) z += std::exp(u[b] - m);
                    const double log_denom = m + std::log(z);

                    const int c = klass_[j];
                    acc.value += (c == baseline_ ? 0.0 : u[block_of(c)]) - log_denom;
                    if (with_gradient) {
                        for (Eigen::Index b = 0; b < nb; ++b) {
                            const double prob = std::exp(u[b] - log_denom);
                            const double indicator = (c == blocks_[static_cast<std::size_t>(b)])
                                                         ? 1.0 : 0.0;
                            acc.grad.segment(b * p, p) +=
                                (indicator - prob) * X_.X.row(i).transpose();
                        }
                    }
                }
                return acc;
            },
            [](Accum a, const Accum& b) {
                a.value += b.value;
                if (a.grad.size()) a.grad += b.grad;
                return a;
            },
            threads_);
    }

private:
    Eigen::Index block_of(int c) const {
        return static_cast<Eigen::Index>(
            std::find(blocks_.begin(), blocks_.end(), c) - blocks_.begin());
    }

    std::span<const int> klass_;
    int n_classes_;
    int baseline_;
    const DesignMatrix& X_;
    std::vector<int> blocks_;
    std::size_t threads_;
};

std::vector<int> partisan_to_class(std::span<const PartisanClass> classes) {
    std::vector<int> out(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) out[i] = static_cast<int>(classes[i]);
    return out;
}

void require_finite(double value, const std::string& who) {
    if (!std::isfinite(value)) throw ModelError(who + ": non-finite log-likelihood");
}

}  // namespace

double mnl_loglik(const MnlParams& params, std::span<const PartisanClass> classes,
                  const DesignMatrix& X, std::size_t threads) {
    check_dimensions("mnl_loglik", static_cast<Eigen::Index>(classes.size()), X);
    if (params.beta_democrat.size() != X.cols() || params.beta_republican.size() != X.cols())
        throw ModelError("mnl_loglik: coefficient block size mismatch");
    const auto klass = partisan_to_class(classes);
    // Blocks in PartisanClass order: Democrat (0), Republican (2); baseline
    // Independent (1).
    SoftmaxObjective obj(klass, 3, static_cast<int>(PartisanClass::IndependentFollower), X,
                         threads);
    Eigen::VectorXd theta(2 * X.cols());
    theta << params.beta_democrat, params.beta_republican;
    const double value = obj.evaluate(theta, false).value;
    if (!std::isfinite(value)) {
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const double u1 = X.X.row(static_cast<Eigen::Index>(i)).dot(params.beta_democrat);
            const double u3 = X.X.row(static_cast<Eigen::Index>(i)).dot(params.beta_republican);
            if (!std::isfinite(u1) || !std::isfinite(u3))
                throw ModelError("mnl_loglik: non-finite utility at row " + std::to_string(i));
        }
        throw ModelError("mnl_loglik: non-finite total");
    }
    return value;
}

Eigen::VectorXd mnl_loglik_gradient(const MnlParams& params,
                                    std::span<const PartisanClass> classes,
                                    const DesignMatrix& X, std::size_t threads) {
    check_dimensions("mnl_loglik_gradient", static_cast<Eigen::Index>(classes.size()), X);
    const auto klass = partisan_to_class(classes);
    SoftmaxObjective obj(klass, 3, static_cast<int>(PartisanClass::IndependentFollower), X,
                         threads);
    Eigen::VectorXd theta(2 * X.cols());
    theta << params.beta_democrat, params.beta_republican;
    return obj.evaluate(theta, true).grad;
}

ModelFit softmax_fit(std::span<const int> klass, int n_classes, int baseline,
                     const DesignMatrix& X, const FitConfig& config) {
    check_dimensions("softmax_fit", static_cast<Eigen::Index>(klass.size()), X);
    std::vector<std::size_t> class_counts(static_cast<std::size_t>(n_classes), 0);
    for (int c : klass) {
        if (c < 0 || c >= n_classes) throw ModelError("softmax_fit: class index out of range");
        ++class_counts[static_cast<std::size_t>(c)];
    }
    for (int c = 0; c < n_classes; ++c)
        if (class_counts[static_cast<std::size_t>(c)] == 0)
            throw ModelError("softmax_fit: class " + std::to_string(c) +
                             " has no observations");
    check_full_rank("softmax_fit", X);

    SoftmaxObjective obj(klass, n_classes, baseline, X, config.threads);
    const Eigen::Index dim = obj.block_count() * X.cols();

    ObjectiveFn objective = [&](const Eigen::VectorXd& theta) {
        Accum acc = obj.evaluate(theta, true);
        return ObjectiveEval{acc.value, std::move(acc.grad)};
    };
    OptimResult opt = maximize_bfgs(objective, Eigen::VectorXd::Zero(dim),
                                    {config.max_iterations, config.value_rel_tol,
                                     config.grad_tol});
    require_finite(opt.value, "softmax_fit");

    ModelFit fit;
    fit.model = "mnl";
    for (int c : obj.blocks())
        for (const auto& n : X.names)
            fit.coefficient_names.push_back("class" + std::to_string(c) + ":" + n);
    fit.estimates = opt.x;
    fit.log_likelihood = opt.value;
    fit.converged = opt.converged;
    fit.iterations = opt.iterations;
    fit.gradient_norm = opt.gradient.lpNorm<Eigen::Infinity>();
    fit.separation_warning = opt.x.lpNorm<Eigen::Infinity>() > kSeparationBound;
    fit.observations = klass.size();
    fit.design_columns = X.names;
    fit.design_scales = X.scales;
    fit.standard_errors = observed_information_errors(
        [&](const Eigen::VectorXd& theta) { return obj.evaluate(theta, true).grad; }, opt.x);
    return fit;
}

ModelFit mnl_fit(std::span<const PartisanClass> classes, const DesignMatrix& X,
                 const FitConfig& config) {
    const auto klass = partisan_to_class(classes);
    ModelFit fit;
    try {
        fit = softmax_fit(klass, 3, static_cast<int>(PartisanClass::IndependentFollower), X,
                          config);
    } catch (const ModelError& e) {
        // Re-map the generic class index in diagnostics to the domain name.
        throw ModelError(std::string("mnl_fit: ") + e.what());
    }
    fit.model = "mnl";
    fit.coefficient_names.clear();
    for (const auto& n : X.names) fit.coefficient_names.push_back("democrat:" + n);
    for (const auto& n : X.names) fit.coefficient_names.push_back("republican:" + n);
    return fit;
}

MnlParams mnl_params_from_fit(const ModelFit& fit) {
    if (fit.model != "mnl") throw ModelError("fit is not a multinomial fit");
    const Eigen::Index p = fit.estimates.size() / 2;
    return MnlParams{fit.estimates.head(p), fit.estimates.tail(p)};
}

Eigen::Vector3d predicted_probabilities(const MnlParams& params, const Eigen::VectorXd& x) {
    if (x.size() != params.beta_democrat.size() || x.size() != params.beta_republican.size())
        throw ModelError("predicted_probabilities: covariate dimension mismatch");
    const double u1 = x.dot(params.beta_democrat);
    const double u3 = x.dot(params.beta_republican);
    const double log_denom = log_sum_exp3(u1, 0.0, u3);
    return {std::exp(u1 - log_denom), std::exp(-log_denom), std::exp(u3 - log_denom)};
}

Eigen::Vector3d marginal_effect(const MnlParams& params, const DesignMatrix& X,
                                std::string_view binary_column) {
    const auto col = X.column(binary_column);
    if (!col) throw InputError("marginal_effect: unknown column '" + std::string(binary_column) +
                               "'");
    for (Eigen::Index i = 0; i < X.rows(); ++i) {
        const double v = X.X(i, *col);
        if (v != 0.0 && v != 1.0)
            throw InputError("marginal_effect: column '" + std::string(binary_column) +
                             "' is not binary (row " + std::to_string(i) + ")");
    }
    Eigen::VectorXd at_means = X.X.colwise().mean();
    at_means[*col] = 0.0;
    const Eigen::Vector3d base = predicted_probabilities(params, at_means);
    at_means[*col] = 1.0;
    const Eigen::Vector3d flipped = predicted_probabilities(params, at_means);
    return flipped - base;
}

double logit_loglik(const Eigen::VectorXd& beta, const Eigen::VectorXd& y01,
                    const DesignMatrix& X, std::size_t threads) {
    check_dimensions("logit_loglik", y01.size(), X);
    const Eigen::VectorXd eta = X.X * beta;
    const double total = block_reduce<double>(
        static_cast<std::size_t>(y01.size()), 0.0,
        [&](std::size_t b, std::size_t e) {
            double sum = 0.0;
            for (std::size_t j = b; j < e; ++j) {
                const auto i = static_cast<Eigen::Index>(j);
                // y ln s(eta) + (1-y) ln(1-s(eta)) = y eta - ln(1 + e^eta)
                sum += y01[i] * eta[i] - log1p_exp(eta[i]);
            }
            return sum;
        },
        [](double a, double b) { return a + b; }, threads);
    require_finite(total, "logit_loglik");
    return total;
}

Eigen::VectorXd logit_loglik_gradient(const Eigen::VectorXd& beta, const Eigen::VectorXd& y01,
                                      const DesignMatrix& X, std::size_t threads) {
    check_dimensions("logit_loglik_gradient", y01.size(), X);
    const Eigen::Index p = X.cols();
    const Eigen::VectorXd eta = X.X * beta;
    Accum zero{0.0, Eigen::VectorXd::Zero(p)};
    return block_reduce<Accum>(
               static_cast<std::size_t>(y01.size()), zero,
               [&](std::size_t b, std::size_t e) {
                   Accum acc{0.0, Eigen::VectorXd::Zero(p)};
                   for (std::size_t j = b; j < e; ++j) {
                       const auto i = static_cast<Eigen::Index>(j);
                       const double prob = 1.0 / (1.0 + std::exp(-eta[i]));
                       acc.grad += (y01[i] - prob) * X.X.row(i).transpose();
                   }
                   return acc;
               },
               [](Accum a, const Accum& b) {
                   a.grad += b.grad;
                   return a;
               },
               threads)
        .grad;
}

ModelFit logit_fit(const Eigen::VectorXd& y01, const DesignMatrix& X, const FitConfig& config) {
    check_dimensions("logit_fit", y01.size(), X);
    std::size_t ones = 0;
    for (Eigen::Index i = 0; i < y01.size(); ++i) {
        if (y01[i] != 0.0 && y01[i] != 1.0)
            throw InputError("logit_fit: outcome must be 0/1 (row " + std::to_string(i) + ")");
        if (y01[i] == 1.0) ++ones;
    }
    if (ones == 0 || ones == static_cast<std::size_t>(y01.size()))
        throw ModelError("logit_fit: both outcomes must be present");
    check_full_rank("logit_fit", X);

    ObjectiveFn objective = [&](const Eigen::VectorXd& beta) {
        return ObjectiveEval{logit_loglik(beta, y01, X, config.threads),
                             logit_loglik_gradient(beta, y01, X, config.threads)};
    };
    OptimResult opt = maximize_bfgs(objective, Eigen::VectorXd::Zero(X.cols()),
                                    {config.max_iterations, config.value_rel_tol,
                                     config.grad_tol});
    require_finite(opt.value, "logit_fit");

    ModelFit fit;
    fit.model = "logit";
    fit.coefficient_names = X.names;
    fit.estimates = opt.x;
    fit.log_likelihood = opt.value;
    fit.converged = opt.converged;
    fit.iterations = opt.iterations;
    fit.gradient_norm = opt.gradient.lpNorm<Eigen::Infinity>();
    fit.separation_warning = opt.x.lpNorm<Eigen::Infinity>() > kSeparationBound;
    fit.observations = static_cast<std::size_t>(y01.size());
    fit.design_columns = X.names;
    fit.design_scales = X.scales;
    fit.standard_errors = observed_information_errors(
        [&](const Eigen::VectorXd& beta) {
            return logit_loglik_gradient(beta, y01, X, config.threads);
        },
        opt.x);
    return fit;
}

}  // namespace followgraph::glm
