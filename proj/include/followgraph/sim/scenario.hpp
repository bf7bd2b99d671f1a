#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "followgraph/roster.hpp"

namespace followgraph::sim {

// Covariate generators for the regression simulations.
struct CovariateSpec {
    enum class Kind { Normal, Bernoulli, Lognormal };
    std::string name;
    Kind kind = Kind::Normal;
    double mean = 0.0;    // Normal
    double sd = 1.0;      // Normal
    double p = 0.5;       // Bernoulli
    double log_mean = 0.0;  // Lognormal
    double log_sd = 1.0;    // Lognormal
};

// Count regression: y ~ Poisson(v * exp(x beta)), v ~ Gamma(1/alpha, alpha).
// beta[0] pairs with the intercept, the rest with the covariates in order.
struct NbModelSpec {
    std::size_t n = 0;
    std::vector<CovariateSpec> covariates;
    Eigen::VectorXd beta;
    double alpha = 1.0;
};

// Class draw from the exact three-class probabilities; coefficient layout
// as in NbModelSpec.
struct MnlModelSpec {
    std::size_t n = 0;
    std::vector<CovariateSpec> covariates;
    Eigen::VectorXd beta_democrat;
    Eigen::VectorXd beta_republican;
};

// One exact follow-set group: fraction * population users follow exactly
// this candidate set. Fractions must sum to 1 and land on whole users, so
// every planted quantity is recoverable without sampling error.
struct PatternSpec {
    std::vector<std::string> follows;
    double fraction = 0.0;
};

// Planted gender-channel mix: the named fraction of users is labelable by
// exactly that channel (higher-priority channels forced to miss). The rest
// stay unlabeled.
struct GenderPlan {
    double first_name = 0.0;
    double profile_image = 0.0;
    double self_description = 0.0;
};

struct PopulationSpec {
    std::size_t n = 0;
    std::vector<Candidate> roster;
    std::vector<PatternSpec> patterns;
    std::optional<GenderPlan> gender_plan;
    std::filesystem::path name_list;  // lexicon for planting first names
    double journalist_fraction = 0.0;
    CovariateSpec tweets{ "tweets", CovariateSpec::Kind::Lognormal, 0, 1, 0.5, 6.0, 2.0};
    CovariateSpec social_capital{
        "social_capital", CovariateSpec::Kind::Lognormal, 0, 1, 0.5, 5.0, 2.5};
    int start_year_min = 2006;
    int start_year_max = 2016;
};

// A fully serializable simulation recipe: (scenario, seed) reproduces every
// generated byte.
struct Scenario {
    std::uint64_t seed = 0;
    std::optional<PopulationSpec> population;
    std::optional<NbModelSpec> nb_model;
    std::optional<MnlModelSpec> mnl_model;

    static Scenario from_file(const std::filesystem::path& path);
    static Scenario from_json_text(const std::string& text, const std::string& source);
    std::string to_json_text() const;

    // Ground truth implied by the pattern plants.
    double planted_single_party_fraction() const;
};

}  // namespace followgraph::sim
