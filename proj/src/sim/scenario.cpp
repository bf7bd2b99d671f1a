#include "followgraph/sim/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "followgraph/errors.hpp"

namespace followgraph::sim {

using nlohmann::json;

namespace {

CovariateSpec covariate_from_json(const json& j, const std::string& where) {
    CovariateSpec spec;
    spec.name = j.at("name").get<std::string>();
    const std::string kind = j.value("kind", "normal");
    if (kind == "normal") {
        spec.kind = CovariateSpec::Kind::Normal;
        spec.mean = j.value("mean", 0.0);
        spec.sd = j.value("sd", 1.0);
        if (!(spec.sd > 0)) throw InputError(where + ": covariate sd must be positive");
    } else if (kind == "bernoulli") {
        spec.kind = CovariateSpec::Kind::Bernoulli;
        spec.p = j.value("p", 0.5);
        if (!(spec.p >= 0 && spec.p <= 1))
            throw InputError(where + ": bernoulli p outside [0,1]");
    } else if (kind == "lognormal") {
        spec.kind = CovariateSpec::Kind::Lognormal;
        spec.log_mean = j.value("log_mean", 0.0);
        spec.log_sd = j.value("log_sd", 1.0);
        if (!(spec.log_sd > 0)) throw InputError(where + ": covariate log_sd must be positive");
    } else {
        throw InputError(where + ": unknown covariate kind '" + kind + "'");
    }
    return spec;
}

json covariate_to_json(const CovariateSpec& spec) {
    json j{{"name", spec.name}};
    switch (spec.kind) {
        case CovariateSpec::Kind::Normal:
            j["kind"] = "normal";
            j["mean"] = spec.mean;
            j["sd"] = spec.sd;
            break;
        case CovariateSpec::Kind::Bernoulli:
            j["kind"] = "bernoulli";
            j["p"] = spec.p;
            break;
        case CovariateSpec::Kind::Lognormal:
            j["kind"] = "lognormal";
            j["log_mean"] = spec.log_mean;
            j["log_sd"] = spec.log_sd;
            break;
    }
    return j;
}

Eigen::VectorXd beta_from_json(const json& j, std::size_t n_covariates,
                               const std::string& where) {
    if (!j.is_array())
        throw InputError(where + ": expected an array (intercept first, then covariates)");
    if (j.size() != n_covariates + 1)
        throw InputError(where + ": expected " + std::to_string(n_covariates + 1) +
                         " coefficients, got " + std::to_string(j.size()));
    Eigen::VectorXd beta(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i)
        beta[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    return beta;
}

std::vector<CovariateSpec> covariates_from_json(const json& j, const std::string& where) {
    std::vector<CovariateSpec> out;
    std::set<std::string> names;
    for (const auto& c : j.at("covariates")) {
        out.push_back(covariate_from_json(c, where));
        if (!names.insert(out.back().name).second)
            throw InputError(where + ": duplicate covariate name '" + out.back().name + "'");
    }
    return out;
}

void require_whole_users(double fraction, std::size_t n, const std::string& where) {
    const double count = fraction * static_cast<double>(n);
    if (std::abs(count - std::round(count)) > 1e-9)
        throw InputError(where + ": fraction " + std::to_string(fraction) + " of " +
                         std::to_string(n) + " users is not a whole number");
}

}  // namespace

Scenario Scenario::from_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    Scenario scenario = from_json_text(buffer.str(), path.string());
    // The lexicon path is resolved relative to the scenario file.
    if (scenario.population && !scenario.population->name_list.empty() &&
        scenario.population->name_list.is_relative())
        scenario.population->name_list = path.parent_path() / scenario.population->name_list;
    return scenario;
}

Scenario Scenario::from_json_text(const std::string& text, const std::string& source) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError(source + ": invalid JSON");

    Scenario scenario;
    try {
        scenario.seed = j.at("seed").get<std::uint64_t>();

        if (j.contains("population")) {
            const json& pj = j["population"];
            PopulationSpec pop;
            pop.n = pj.at("n").get<std::size_t>();
            if (pop.n < 1) throw InputError(source + ": population n must be >= 1");
            for (const auto& cj : pj.at("roster")) {
                auto party = parse_party(cj.at("party").get<std::string>());
                if (!party) throw InputError(source + ": unknown party in roster");
                pop.roster.push_back({cj.at("id").get<std::string>(),
                                      cj.value("display_name", cj.at("id").get<std::string>()),
                                      *party});
            }
            CandidateRoster roster(pop.roster);  // validates uniqueness

            double total = 0.0;
            for (const auto& gj : pj.at("patterns")) {
                PatternSpec pattern;
                pattern.fraction = gj.at("fraction").get<double>();
                if (!(pattern.fraction > 0))
                    throw InputError(source + ": pattern fraction must be positive");
                for (const auto& f : gj.at("follows")) {
                    const std::string id = f.get<std::string>();
                    if (!roster.column_of(id))
                        throw InputError(source + ": pattern follows unknown candidate '" + id +
                                         "'");
                    pattern.follows.push_back(id);
                }
                if (pattern.follows.empty())
                    throw InputError(source + ": pattern with empty follow set");
                require_whole_users(pattern.fraction, pop.n, source);
                total += pattern.fraction;
                pop.patterns.push_back(std::move(pattern));
            }
            if (std::abs(total - 1.0) > 1e-12)
                throw InputError(source + ": pattern fractions sum to " + std::to_string(total) +
                                 ", expected 1");

            if (pj.contains("gender_plan")) {
                const json& gj = pj["gender_plan"];
                GenderPlan plan;
                plan.first_name = gj.value("first_name", 0.0);
                plan.profile_image = gj.value("profile_image", 0.0);
                plan.self_description = gj.value("self_description", 0.0);
                for (double f : {plan.first_name, plan.profile_image, plan.self_description}) {
                    if (f < 0) throw InputError(source + ": negative gender-plan fraction");
                    require_whole_users(f, pop.n, source);
                }
                if (plan.first_name + plan.profile_image + plan.self_description > 1.0 + 1e-12)
                    throw InputError(source + ": gender-plan fractions exceed 1");
                pop.gender_plan = plan;
                pop.name_list = pj.at("name_list").get<std::string>();
            }
            pop.journalist_fraction = pj.value("journalist_fraction", 0.0);
            if (pop.journalist_fraction < 0 || pop.journalist_fraction > 1)
                throw InputError(source + ": journalist_fraction outside [0,1]");
            if (pj.contains("tweets"))
                pop.tweets = covariate_from_json(pj["tweets"], source);
            if (pj.contains("social_capital"))
                pop.social_capital = covariate_from_json(pj["social_capital"], source);
            pop.start_year_min = pj.value("start_year_min", 2006);
            pop.start_year_max = pj.value("start_year_max", 2016);
            if (pop.start_year_min < 2006 || pop.start_year_max < pop.start_year_min)
                throw InputError(source + ": invalid start-year range");
            scenario.population = std::move(pop);
        }

        if (j.contains("nb_model")) {
            const json& nj = j["nb_model"];
            NbModelSpec nb;
            nb.n = nj.at("n").get<std::size_t>();
            if (nb.n < 1) throw InputError(source + ": nb_model n must be >= 1");
            nb.covariates = covariates_from_json(nj, source);
            nb.beta = beta_from_json(nj.at("beta"), nb.covariates.size(), source + ": nb beta");
            nb.alpha = nj.at("alpha").get<double>();
            if (!(nb.alpha > 0)) throw InputError(source + ": nb alpha must be positive");
            scenario.nb_model = std::move(nb);
        }

        if (j.contains("mnl_model")) {
            const json& mj = j["mnl_model"];
            MnlModelSpec mnl;
            mnl.n = mj.at("n").get<std::size_t>();
            if (mnl.n < 1) throw InputError(source + ": mnl_model n must be >= 1");
            mnl.covariates = covariates_from_json(mj, source);
            mnl.beta_democrat = beta_from_json(mj.at("beta_democrat"), mnl.covariates.size(),
                                               source + ": beta_democrat");
            mnl.beta_republican = beta_from_json(mj.at("beta_republican"), mnl.covariates.size(),
                                                 source + ": beta_republican");
            scenario.mnl_model = std::move(mnl);
        }
    } catch (const json::exception& e) {
        throw InputError(source + ": " + e.what());
    }
    if (!scenario.population && !scenario.nb_model && !scenario.mnl_model)
        throw InputError(source + ": scenario has no population, nb_model or mnl_model section");
    return scenario;
}

std::string Scenario::to_json_text() const {
    json j{{"seed", seed}};
    if (population) {
        const auto& pop = *population;
        json roster = json::array();
        for (const auto& c : pop.roster)
            roster.push_back({{"id", c.id},
                              {"display_name", c.display_name},
                              {"party", std::string(party_code(c.party))}});
        json patterns = json::array();
        for (const auto& pattern : pop.patterns)
            patterns.push_back({{"follows", pattern.follows}, {"fraction", pattern.fraction}});
        json pj{{"n", pop.n},
                {"roster", roster},
                {"patterns", patterns},
                {"journalist_fraction", pop.journalist_fraction},
                {"tweets", covariate_to_json(pop.tweets)},
                {"social_capital", covariate_to_json(pop.social_capital)},
                {"start_year_min", pop.start_year_min},
                {"start_year_max", pop.start_year_max}};
        if (pop.gender_plan) {
            pj["gender_plan"] = {{"first_name", pop.gender_plan->first_name},
                                 {"profile_image", pop.gender_plan->profile_image},
                                 {"self_description", pop.gender_plan->self_description}};
            pj["name_list"] = pop.name_list.string();
        }
        j["population"] = std::move(pj);
    }
    auto covariates_json = [](const std::vector<CovariateSpec>& specs) {
        json arr = json::array();
        for (const auto& s : specs) arr.push_back(covariate_to_json(s));
        return arr;
    };
    auto beta_json = [](const Eigen::VectorXd& beta) {
        json arr = json::array();
        for (Eigen::Index i = 0; i < beta.size(); ++i) arr.push_back(beta[i]);
        return arr;
    };
    if (nb_model)
        j["nb_model"] = {{"n", nb_model->n},
                         {"covariates", covariates_json(nb_model->covariates)},
                         {"beta", beta_json(nb_model->beta)},
                         {"alpha", nb_model->alpha}};
    if (mnl_model)
        j["mnl_model"] = {{"n", mnl_model->n},
                          {"covariates", covariates_json(mnl_model->covariates)},
                          {"beta_democrat", beta_json(mnl_model->beta_democrat)},
                          {"beta_republican", beta_json(mnl_model->beta_republican)}};
    return j.dump(2) + "\n";
}

double Scenario::planted_single_party_fraction() const {
    if (!population) throw ModelError("scenario has no population section");
    CandidateRoster roster(population->roster);
    double single = 0.0;
    for (const auto& pattern : population->patterns) {
        bool has_democrat = false;
        bool has_republican = false;
        for (const auto& id : pattern.follows) {
            const auto col = roster.column_of(id);
            if (roster[*col].party == Party::Democrat) has_democrat = true;
            else has_republican = true;
        }
        if (has_democrat != has_republican) single += pattern.fraction;
    }
    return single;
}

}  // namespace followgraph::sim
