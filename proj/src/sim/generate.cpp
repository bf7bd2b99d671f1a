#include "followgraph/sim/generate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>

#include "followgraph/csv.hpp"
#include "followgraph/errors.hpp"
#include "followgraph/labeling.hpp"
#include "followgraph/sim/rng.hpp"
#include "followgraph/sim/samplers.hpp"
#include "followgraph/text.hpp"

namespace followgraph::sim {

namespace {

// Substream tags; changing one generator must not shift the others.
constexpr std::uint64_t kPopulationStream = 1;
constexpr std::uint64_t kNbStream = 2;
constexpr std::uint64_t kMnlStream = 3;

glm::DesignMatrix draw_design(Rng& rng, std::size_t n,
                              const std::vector<CovariateSpec>& specs) {
    glm::DesignMatrix design;
    const auto rows = static_cast<Eigen::Index>(n);
    design.X.resize(rows, static_cast<Eigen::Index>(specs.size() + 1));
    design.X.col(0).setOnes();
    design.names = {"intercept"};
    design.scales = {1.0};
    for (const auto& spec : specs) {
        design.names.push_back(spec.name);
        design.scales.push_back(1.0);
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (std::size_t c = 0; c < specs.size(); ++c) {
            const auto& spec = specs[c];
            double v = 0.0;
            switch (spec.kind) {
                case CovariateSpec::Kind::Normal:
                    v = spec.mean + spec.sd * rng.normal();
                    break;
                case CovariateSpec::Kind::Bernoulli:
                    v = rng.bernoulli(spec.p) ? 1.0 : 0.0;
                    break;
                case CovariateSpec::Kind::Lognormal:
                    v = std::exp(spec.log_mean + spec.log_sd * rng.normal());
                    break;
            }
            design.X(i, static_cast<Eigen::Index>(c) + 1) = v;
        }
    }
    return design;
}

std::string full_precision(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

template <typename T>
void shuffle(Rng& rng, std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
        std::swap(v[i - 1], v[rng.below(i)]);
}

std::int64_t lognormal_count(Rng& rng, const CovariateSpec& spec) {
    return static_cast<std::int64_t>(
        std::llround(std::exp(spec.log_mean + spec.log_sd * rng.normal())));
}

}  // namespace

NbData simulate_nb(const Scenario& scenario) {
    if (!scenario.nb_model) throw InputError("scenario has no nb_model section");
    const auto& spec = *scenario.nb_model;
    Rng rng = Rng(scenario.seed).stream(kNbStream);

    NbData data;
    data.X = draw_design(rng, spec.n, spec.covariates);
    const Eigen::VectorXd eta = data.X.X * spec.beta;
    const double shape = 1.0 / spec.alpha;
    data.y.resize(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) {
        const double v = gamma_sample(rng, shape, spec.alpha);
        data.y[i] = static_cast<double>(poisson_sample(rng, v * std::exp(eta[i])));
    }
    return data;
}

MnlData simulate_mnl(const Scenario& scenario) {
    if (!scenario.mnl_model) throw InputError("scenario has no mnl_model section");
    const auto& spec = *scenario.mnl_model;
    Rng rng = Rng(scenario.seed).stream(kMnlStream);

    MnlData data;
    data.X = draw_design(rng, spec.n, spec.covariates);
    const Eigen::VectorXd u1 = data.X.X * spec.beta_democrat;
    const Eigen::VectorXd u3 = data.X.X * spec.beta_republican;
    data.classes.reserve(spec.n);
    for (Eigen::Index i = 0; i < u1.size(); ++i) {
        const double m = std::max({u1[i], 0.0, u3[i]});
        const double e1 = std::exp(u1[i] - m);
        const double e2 = std::exp(0.0 - m);
        const double e3 = std::exp(u3[i] - m);
        const double z = e1 + e2 + e3;
        const double draw = rng.uniform() * z;
        if (draw < e1) data.classes.push_back(PartisanClass::DemocratFollower);
        else if (draw < e1 + e2) data.classes.push_back(PartisanClass::IndependentFollower);
        else data.classes.push_back(PartisanClass::RepublicanFollower);
    }
    return data;
}

std::string nb_data_to_csv(const NbData& data) {
    std::string out = "y";
    for (std::size_t c = 1; c < data.X.names.size(); ++c) out += "," + data.X.names[c];
    out += "\n";
    for (Eigen::Index i = 0; i < data.y.size(); ++i) {
        out += std::to_string(static_cast<long long>(data.y[i]));
        for (Eigen::Index c = 1; c < data.X.cols(); ++c)
            out += "," + full_precision(data.X.X(i, c));
        out += "\n";
    }
    return out;
}

std::string mnl_data_to_csv(const MnlData& data) {
    std::string out = "class";
    for (std::size_t c = 1; c < data.X.names.size(); ++c) out += "," + data.X.names[c];
    out += "\n";
    for (std::size_t i = 0; i < data.classes.size(); ++i) {
        out += partisan_class_name(data.classes[i]);
        for (Eigen::Index c = 1; c < data.X.cols(); ++c)
            out += "," + full_precision(data.X.X(static_cast<Eigen::Index>(i), c));
        out += "\n";
    }
    return out;
}

namespace {

enum class Channel { Name, Image, Description, None };

struct Lexicon {
    std::vector<std::string> female;
    std::vector<std::string> male;
};

Lexicon load_lexicon(const std::filesystem::path& path) {
    CsvReader reader(path);
    const std::size_t name_col = reader.require_column("name");
    const std::size_t gender_col = reader.require_column("gender");
    Lexicon lex;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields[gender_col] == "F") lex.female.push_back(fields[name_col]);
        else lex.male.push_back(fields[name_col]);
    }
    if (lex.female.empty() || lex.male.empty())
        throw InputError(path.string() + ": lexicon needs names of both genders");
    return lex;
}

const char* kSurnames[] = {"Smith", "Johnson", "Garcia", "Chen", "Okafor", "Kim", "Novak"};

// A display name whose first token cannot resolve in the lexicon. The name
// channel must miss for users planted on lower-priority channels.
std::string neutral_display(const NameList& names, std::size_t index) {
    std::string token = "zx" + std::to_string(index);
    while (names.lookup(text::strip_nonalpha_edges(text::first_token(token))))
        token = "q" + token;
    return token;
}

}  // namespace

std::vector<GeneratedFile> simulate_population_files(const Scenario& scenario) {
    if (!scenario.population) throw InputError("scenario has no population section");
    const auto& pop = *scenario.population;
    const CandidateRoster roster(pop.roster);
    Rng rng = Rng(scenario.seed).stream(kPopulationStream);

    // Exact pattern assignment: counts are whole by validation, shuffled so
    // row order carries no pattern structure.
    std::vector<std::vector<std::uint32_t>> pattern_columns;
    for (const auto& pattern : pop.patterns) {
        std::vector<std::uint32_t> cols;
        for (const auto& id : pattern.follows)
            cols.push_back(static_cast<std::uint32_t>(*roster.column_of(id)));
        std::sort(cols.begin(), cols.end());
        pattern_columns.push_back(std::move(cols));
    }
    std::vector<std::uint32_t> assignment;
    assignment.reserve(pop.n);
    for (std::size_t p = 0; p < pop.patterns.size(); ++p) {
        const auto count = static_cast<std::size_t>(
            std::llround(pop.patterns[p].fraction * static_cast<double>(pop.n)));
        assignment.insert(assignment.end(), count, static_cast<std::uint32_t>(p));
    }
    if (assignment.size() != pop.n)
        throw ModelError("pattern counts do not add up to the population size");
    shuffle(rng, assignment);

    // Exact channel plan, independently shuffled.
    std::vector<Channel> channels(pop.n, Channel::None);
    Lexicon lexicon;
    NameList name_list;
    if (pop.gender_plan) {
        const auto n_name = static_cast<std::size_t>(
            std::llround(pop.gender_plan->first_name * static_cast<double>(pop.n)));
        const auto n_image = static_cast<std::size_t>(
            std::llround(pop.gender_plan->profile_image * static_cast<double>(pop.n)));
        const auto n_desc = static_cast<std::size_t>(
            std::llround(pop.gender_plan->self_description * static_cast<double>(pop.n)));
        std::size_t at = 0;
        for (std::size_t i = 0; i < n_name; ++i) channels[at++] = Channel::Name;
        for (std::size_t i = 0; i < n_image; ++i) channels[at++] = Channel::Image;
        for (std::size_t i = 0; i < n_desc; ++i) channels[at++] = Channel::Description;
        shuffle(rng, channels);
        lexicon = load_lexicon(pop.name_list);
        name_list = NameList::load(pop.name_list);
    }

    std::string edges = "user_id,candidate_id\n";
    std::vector<UserProfile> profiles;
    profiles.reserve(pop.n);
    std::string image_stub = "image_ref,gender,confidence\n";

    std::size_t female_cursor = 0;
    std::size_t male_cursor = 0;
    bool next_female = true;
    const int year_span = pop.start_year_max - pop.start_year_min + 1;

    for (std::size_t i = 0; i < pop.n; ++i) {
        char idbuf[16];
        std::snprintf(idbuf, sizeof(idbuf), "u%07zu", i + 1);
        const std::string user_id = idbuf;

        for (auto col : pattern_columns[assignment[i]]) {
            edges += user_id;
            edges += ",";
            edges += roster[col].id;
            edges += "\n";
        }

        UserProfile profile;
        profile.user_id = user_id;
        const bool female = next_female;
        next_female = !next_female;
        switch (channels[i]) {
            case Channel::Name: {
                const auto& pool = female ? lexicon.female : lexicon.male;
                auto& cursor = female ? female_cursor : male_cursor;
                profile.display_name = pool[cursor % pool.size()] + " " +
                                       kSurnames[i % std::size(kSurnames)];
                ++cursor;
                break;
            }
            case Channel::Image: {
                profile.display_name = neutral_display(name_list, i + 1);
                profile.profile_image_ref = "img-" + user_id;
                std::vector<std::string> row{*profile.profile_image_ref,
                                             female ? "F" : "M", "0.9"};
                image_stub += csv_row(row);
                break;
            }
            case Channel::Description:
                profile.display_name = neutral_display(name_list, i + 1);
                profile.description = female ? "proud mom of two" : "husband and weekend hiker";
                break;
            case Channel::None:
                profile.display_name = neutral_display(name_list, i + 1);
                break;
        }
        if (rng.bernoulli(pop.journalist_fraction)) {
            if (!profile.description.empty()) profile.description += "; ";
            profile.description += "reporter at the daily gazette";
        }
        profile.tweets_posted = lognormal_count(rng, pop.tweets);
        profile.followers_count = lognormal_count(rng, pop.social_capital);
        profile.start_year =
            pop.start_year_min + static_cast<int>(rng.below(static_cast<std::uint64_t>(year_span)));
        profiles.push_back(std::move(profile));
    }

    std::vector<GeneratedFile> files;
    files.push_back({"roster.csv", roster_to_csv(roster)});
    files.push_back({"edges.csv", std::move(edges)});
    files.push_back({"profiles.jsonl", profiles_to_jsonl(profiles)});
    if (pop.gender_plan) files.push_back({"image_stub.csv", std::move(image_stub)});
    return files;
}

std::vector<std::filesystem::path> simulate_population(const Scenario& scenario,
                                                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    for (const auto& file : simulate_population_files(scenario)) {
        const auto path = out_dir / file.name;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError(path.string() + ": cannot write file");
        out << file.content;
        written.push_back(path);
    }
    return written;
}

}  // namespace followgraph::sim
