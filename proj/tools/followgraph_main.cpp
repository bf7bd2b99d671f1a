// followgraph: follow-graph analytics and regression models over
// candidate-follower data, with deterministic synthetic populations.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "followgraph/csv.hpp"
#include "followgraph/errors.hpp"
#include "followgraph/follow_matrix.hpp"
#include "followgraph/glm/design.hpp"
#include "followgraph/glm/mnl.hpp"
#include "followgraph/glm/nb.hpp"
#include "followgraph/glm/report.hpp"
#include "followgraph/labeling.hpp"
#include "followgraph/manifest.hpp"
#include "followgraph/patterns.hpp"
#include "followgraph/roster.hpp"
#include "followgraph/shares.hpp"
#include "followgraph/sim/generate.hpp"
#include "followgraph/sim/scenario.hpp"

namespace fs = std::filesystem;
using namespace followgraph;

namespace {

// Collects outputs and writes them (plus the manifest) in one pass, so a
// failed command leaves no partial artifact set behind.
struct CommandOutput {
    fs::path dir;
    RunManifest manifest;
    std::vector<std::pair<std::string, std::string>> files;

    CommandOutput(std::string command, fs::path output_dir) : dir(std::move(output_dir)) {
        manifest.command = std::move(command);
    }

    void add(const std::string& name, std::string content) {
        manifest.add_output(name, content);
        files.emplace_back(name, std::move(content));
    }

    void write(const std::string& manifest_name) {
        fs::create_directories(dir);
        files.emplace_back(manifest_name, manifest.to_json_text());
        for (const auto& [name, content] : files) {
            const fs::path path = dir / name;
            std::ofstream out(path, std::ios::binary);
            if (!out) throw InputError(path.string() + ": cannot write file");
            out << content;
            std::cout << "wrote " << path.string() << "\n";
        }
    }
};

std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::string item;
    for (char c : csv) {
        if (c == ',') {
            if (!item.empty()) out.push_back(item);
            item.clear();
        } else {
            item.push_back(c);
        }
    }
    if (!item.empty()) out.push_back(item);
    return out;
}

std::map<std::string, double> parse_scales(const std::vector<std::string>& entries) {
    std::map<std::string, double> scales;
    for (const auto& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos)
            throw InputError("--scale expects column=factor, got '" + entry + "'");
        try {
            scales[entry.substr(0, eq)] = std::stod(entry.substr(eq + 1));
        } catch (const std::exception&) {
            throw InputError("--scale factor is not a number in '" + entry + "'");
        }
    }
    return scales;
}

FollowMatrix load_matrix(const fs::path& edges, const fs::path& roster_path,
                         RunManifest& manifest) {
    manifest.add_input(roster_path);
    manifest.add_input(edges);
    const CandidateRoster roster = load_roster(roster_path);
    return load_edges(edges, roster);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::string scenario;
    std::string output_dir = ".";
    std::optional<std::uint64_t> seed;
};

void run_simulate(const SimulateArgs& args) {
    CommandOutput out("simulate", args.output_dir);
    out.manifest.add_input(args.scenario);
    sim::Scenario scenario = sim::Scenario::from_file(args.scenario);
    if (args.seed) scenario.seed = *args.seed;
    out.manifest.seed = scenario.seed;
    out.manifest.add_config("scenario", fs::path(args.scenario).filename().string());

    if (scenario.population)
        for (auto& file : sim::simulate_population_files(scenario))
            out.add(file.name, std::move(file.content));
    if (scenario.nb_model) out.add("nb_data.csv", sim::nb_data_to_csv(sim::simulate_nb(scenario)));
    if (scenario.mnl_model)
        out.add("mnl_data.csv", sim::mnl_data_to_csv(sim::simulate_mnl(scenario)));
    out.write("simulate_manifest.json");
}

// ---------------------------------------------------------------- summarize

struct MatrixArgs {
    std::string edges;
    std::string roster;
    std::string output_dir = ".";
    bool emit_user_index = false;
};

void run_summarize(const MatrixArgs& args) {
    CommandOutput out("summarize", args.output_dir);
    const FollowMatrix m = load_matrix(args.edges, args.roster, out.manifest);
    if (m.user_count() == 0) throw InputError("no followers");

    const auto counts = follower_counts(m);
    std::string counts_csv = "candidate_id,party,followers\n";
    for (std::size_t c = 0; c < m.candidate_count(); ++c) {
        counts_csv += m.roster()[c].id;
        counts_csv += ",";
        counts_csv += party_code(m.roster()[c].party);
        counts_csv += "," + std::to_string(counts[static_cast<Eigen::Index>(c)]) + "\n";
    }
    out.add("follower_counts.csv", std::move(counts_csv));

    const auto engagement = engagement_distribution(m);
    std::string engagement_csv =
        "candidate_id,followers,bucket_1,bucket_2,bucket_3,bucket_4,bucket_5plus\n";
    for (std::size_t c = 0; c < m.candidate_count(); ++c) {
        engagement_csv += m.roster()[c].id + "," + std::to_string(engagement[c].followers);
        for (double f : engagement[c].fraction)
            engagement_csv += engagement[c].has_followers() ? "," + format_fixed(f) : ",";
        engagement_csv += "\n";
    }
    out.add("engagement.csv", std::move(engagement_csv));

    const auto histogram = follow_count_histogram(m);
    std::string hist_csv = "candidates_followed,users\n";
    for (Eigen::Index k = 0; k < histogram.size(); ++k)
        hist_csv += std::to_string(k + 1) + "," + std::to_string(histogram[k]) + "\n";
    out.add("follow_histogram.csv", std::move(hist_csv));

    const auto partisan = partisan_counts(m);
    const double n = static_cast<double>(m.user_count());
    std::string partisan_csv = "class,count,fraction\n";
    auto partisan_row = [&](PartisanClass c, std::int64_t count) {
        partisan_csv += std::string(partisan_class_name(c)) + "," + std::to_string(count) + "," +
                        format_fixed(static_cast<double>(count) / n) + "\n";
    };
    partisan_row(PartisanClass::DemocratFollower, partisan.democrat);
    partisan_row(PartisanClass::IndependentFollower, partisan.independent);
    partisan_row(PartisanClass::RepublicanFollower, partisan.republican);
    out.add("partisan_counts.csv", std::move(partisan_csv));

    if (args.emit_user_index) {
        std::string users_csv = "row,user_id\n";
        for (std::size_t i = 0; i < m.user_count(); ++i) {
            std::vector<std::string> row{std::to_string(i), m.user_id(i)};
            users_csv += csv_row(row);
        }
        out.add("users.csv", std::move(users_csv));
    }
    out.write("summarize_manifest.json");
}

// ---------------------------------------------------------------- shares

struct SharesArgs {
    std::string edges;
    std::string roster;
    std::string output_dir = ".";
    std::string top;  // comma-separated candidate ids
};

void run_shares(const SharesArgs& args) {
    CommandOutput out("shares", args.output_dir);
    const FollowMatrix m = load_matrix(args.edges, args.roster, out.manifest);
    const auto top_ids = split_list(args.top);
    if (!args.top.empty()) out.manifest.add_config("top", args.top);

    const ShareReport report = weighted_shares(m, top_ids);
    std::string csv = "candidate_id,raw_share,weighted_share\n";
    for (std::size_t c = 0; c < m.candidate_count(); ++c)
        csv += m.roster()[c].id + "," + format_fixed(report.raw_share[c]) + "," +
               format_fixed(report.weighted_share[c]) + "\n";
    if (!top_ids.empty())
        csv += "__top_k__," + format_fixed(report.top_raw_exact.to_double()) + "," +
               format_fixed(report.top_weighted_exact.to_double()) + "\n";
    out.add("shares.csv", std::move(csv));
    out.write("shares_manifest.json");
}

// ---------------------------------------------------------------- patterns

struct PatternsArgs {
    std::string edges;
    std::string roster;
    std::string output_dir = ".";
    double min_support = 0.01;
    std::size_t max_size = 3;
    std::size_t top_exclusive = 15;
};

std::string join_ids(const std::vector<std::string>& ids) {
    std::string out;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += "+";
        out += ids[i];
    }
    return out;
}

void run_patterns(const PatternsArgs& args) {
    CommandOutput out("patterns", args.output_dir);
    const FollowMatrix m = load_matrix(args.edges, args.roster, out.manifest);
    out.manifest.add_config("min_support", format_fixed(args.min_support));
    out.manifest.add_config("max_size", std::to_string(args.max_size));
    out.manifest.add_config("top_exclusive", std::to_string(args.top_exclusive));

    std::string itemsets_csv = "rank,itemset,support\n";
    for (const auto& item : frequent_itemsets(m, args.min_support, args.max_size))
        itemsets_csv += std::to_string(item.rank) + "," + csv_field(join_ids(item.ids)) + "," +
                        format_fixed(item.support) + "\n";
    out.add("itemsets.csv", std::move(itemsets_csv));

    std::string exclusive_csv = "rank,itemset,fraction\n";
    for (const auto& pattern : exclusive_pattern_shares(m, args.top_exclusive))
        exclusive_csv += std::to_string(pattern.rank) + "," + csv_field(join_ids(pattern.ids)) +
                         "," + format_fixed(pattern.fraction) + "\n";
    out.add("exclusive_patterns.csv", std::move(exclusive_csv));
    out.write("patterns_manifest.json");
}

// ---------------------------------------------------------------- correlations

void run_correlations(const MatrixArgs& args) {
    CommandOutput out("correlations", args.output_dir);
    const FollowMatrix m = load_matrix(args.edges, args.roster, out.manifest);
    const PhiMatrix phi = pairwise_phi(m);

    std::string csv = "candidate_id";
    for (std::size_t c = 0; c < m.candidate_count(); ++c) csv += "," + m.roster()[c].id;
    csv += "\n";
    for (std::size_t a = 0; a < m.candidate_count(); ++a) {
        csv += m.roster()[a].id;
        for (std::size_t b = 0; b < m.candidate_count(); ++b)
            csv += phi.defined(a, b) ? "," + format_fixed(phi.value(a, b)) : ",";
        csv += "\n";
    }
    out.add("phi.csv", std::move(csv));
    out.write("correlations_manifest.json");
}

// ---------------------------------------------------------------- label

struct LabelArgs {
    std::string profiles;
    std::string name_list;
    std::string image_stub;
    std::string output_dir = ".";
};

void run_label(const LabelArgs& args) {
    CommandOutput out("label", args.output_dir);
    out.manifest.add_input(args.profiles);
    out.manifest.add_input(args.name_list);
    const auto profiles = load_profiles(args.profiles);
    const NameList names = NameList::load(args.name_list);
    std::optional<TableImagePredictor> stub;
    if (!args.image_stub.empty()) {
        out.manifest.add_input(args.image_stub);
        stub = TableImagePredictor::load(args.image_stub);
    }

    const LabelingResult result =
        label_profiles(profiles, names, stub ? &*stub : nullptr, /*account_gross=*/true);

    std::string labeled_csv = "user_id,gender,channel\n";
    for (std::size_t i = 0; i < profiles.size(); ++i) {
        labeled_csv += profiles[i].user_id;
        if (result.labels[i])
            labeled_csv += "," + std::string(gender_name(result.labels[i]->gender)) + "," +
                           std::string(channel_name(result.labels[i]->channel));
        else
            labeled_csv += ",,";
        labeled_csv += "\n";
    }
    out.add("labeled_profiles.csv", std::move(labeled_csv));

    std::string coverage_csv = "channel,identified,net_contribution_fraction\n";
    for (auto channel : {GenderChannel::FirstName, GenderChannel::ProfileImage,
                         GenderChannel::SelfDescription}) {
        const auto idx = static_cast<std::size_t>(channel);
        coverage_csv += std::string(channel_name(channel)) + "," +
                        std::to_string(result.gross_count[idx]) + "," +
                        format_fixed(result.coverage.net_fraction(channel)) + "\n";
    }
    coverage_csv += "total," + std::to_string(result.coverage.labeled) + "," +
                    format_fixed(result.coverage.total_fraction()) + "\n";
    out.add("coverage.csv", std::move(coverage_csv));
    out.write("label_manifest.json");
}

// ---------------------------------------------------------------- fit

struct FitArgs {
    std::string model;
    std::string data;
    std::string outcome;
    std::string covariates;  // comma list; empty = all other columns
    std::string year_col;
    std::vector<std::string> scales;
    std::string output_dir = ".";
    int max_iterations = 500;
};

std::vector<PartisanClass> parse_classes(const CsvTable& table, const std::string& column) {
    const std::size_t col = table.require_column(column);
    std::vector<PartisanClass> classes;
    classes.reserve(table.rows.size());
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const std::string& v = table.rows[r][col];
        if (v == "democrat_follower" || v == "democrat")
            classes.push_back(PartisanClass::DemocratFollower);
        else if (v == "independent_follower" || v == "independent")
            classes.push_back(PartisanClass::IndependentFollower);
        else if (v == "republican_follower" || v == "republican")
            classes.push_back(PartisanClass::RepublicanFollower);
        else
            throw InputError(table.source + ": row " + std::to_string(r + 1) +
                             ": unknown class '" + v + "'");
    }
    return classes;
}

void run_fit(const FitArgs& args) {
    CommandOutput out("fit", args.output_dir);
    out.manifest.add_input(args.data);
    out.manifest.add_config("model", args.model);
    out.manifest.add_config("outcome", args.outcome);

    const CsvTable table = read_csv(args.data);
    std::vector<std::string> covariates = split_list(args.covariates);
    if (covariates.empty()) {
        for (const auto& name : table.header)
            if (name != args.outcome && name != args.year_col) covariates.push_back(name);
    }
    out.manifest.add_config("covariates", join_ids(covariates));
    const auto scales = parse_scales(args.scales);
    const std::optional<std::string> year_col =
        args.year_col.empty() ? std::nullopt : std::optional(args.year_col);

    const glm::DesignMatrix design = glm::make_design(table, covariates, year_col, scales);
    glm::FitConfig config;
    config.max_iterations = args.max_iterations;

    glm::ModelFit fit;
    if (args.model == "nb") {
        fit = glm::nb_fit(glm::numeric_column(table, args.outcome), design, config);
    } else if (args.model == "logit") {
        fit = glm::logit_fit(glm::numeric_column(table, args.outcome), design, config);
    } else if (args.model == "mnl") {
        const auto classes = parse_classes(table, args.outcome);
        fit = glm::mnl_fit(classes, design, config);
    } else {
        throw InputError("unknown model '" + args.model + "' (expected nb, mnl or logit)");
    }
    fit.year_column = args.year_col;

    out.add("fit_" + args.model + ".json", glm::fit_to_json(fit));
    out.add("fit_" + args.model + "_table.txt", glm::render_fit_table(fit));
    out.write("fit_" + args.model + "_manifest.json");
}

// ---------------------------------------------------------------- effects

struct EffectsArgs {
    std::string fit;
    std::string data;
    std::string column;
    std::string output_dir = ".";
};

void run_effects(const EffectsArgs& args) {
    CommandOutput out("effects", args.output_dir);
    out.manifest.add_input(args.fit);
    out.manifest.add_input(args.data);
    out.manifest.add_config("column", args.column);

    const glm::ModelFit fit = glm::load_fit_json(args.fit);
    if (fit.model != "mnl")
        throw InputError("effects requires a multinomial fit, got model '" + fit.model + "'");

    // Rebuild the design the fit was estimated on.
    std::vector<std::string> covariates;
    for (const auto& name : fit.design_columns) {
        if (name == "intercept") continue;
        if (!fit.year_column.empty() && name.starts_with("year_")) continue;
        covariates.push_back(name);
    }
    std::map<std::string, double> scales;
    for (std::size_t i = 0; i < fit.design_columns.size(); ++i)
        if (fit.design_scales[i] != 1.0) scales[fit.design_columns[i]] = fit.design_scales[i];

    const CsvTable table = read_csv(args.data);
    const glm::DesignMatrix design = glm::make_design(
        table, covariates,
        fit.year_column.empty() ? std::nullopt : std::optional(fit.year_column), scales);
    if (design.names != fit.design_columns)
        throw InputError("data columns do not match the fit design");

    const Eigen::Vector3d deltas =
        glm::marginal_effect(glm::mnl_params_from_fit(fit), design, args.column);

    std::string csv = "class,delta\n";
    csv += std::string(partisan_class_name(PartisanClass::DemocratFollower)) + "," +
           format_fixed(deltas[0]) + "\n";
    csv += std::string(partisan_class_name(PartisanClass::IndependentFollower)) + "," +
           format_fixed(deltas[1]) + "\n";
    csv += std::string(partisan_class_name(PartisanClass::RepublicanFollower)) + "," +
           format_fixed(deltas[2]) + "\n";
    out.add("effects_" + args.column + ".csv", std::move(csv));
    out.write("effects_" + args.column + "_manifest.json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Follow-graph analytics: candidate-follower statistics, weighted shares,\n"
                 "follow patterns, gender labeling and count/choice regression models."};
    app.require_subcommand(1);

    SimulateArgs simulate_args;
    auto* sim_cmd = app.add_subcommand("simulate", "Generate a synthetic population/dataset");
    sim_cmd->add_option("--scenario", simulate_args.scenario, "Scenario JSON file")->required();
    sim_cmd->add_option("--seed", simulate_args.seed, "Override the scenario seed");
    sim_cmd->add_option("--output-dir", simulate_args.output_dir, "Output directory");

    MatrixArgs summarize_args;
    auto* sum_cmd = app.add_subcommand("summarize", "Follower counts, engagement, histogram");
    sum_cmd->add_option("--edges", summarize_args.edges, "Edge CSV")->required();
    sum_cmd->add_option("--roster", summarize_args.roster, "Roster CSV")->required();
    sum_cmd->add_option("--output-dir", summarize_args.output_dir, "Output directory");
    sum_cmd->add_flag("--emit-user-index", summarize_args.emit_user_index,
                      "Also write the row -> user_id mapping");

    SharesArgs shares_args;
    auto* shares_cmd = app.add_subcommand("shares", "Raw and reciprocal-weighted shares");
    shares_cmd->add_option("--edges", shares_args.edges, "Edge CSV")->required();
    shares_cmd->add_option("--roster", shares_args.roster, "Roster CSV")->required();
    shares_cmd->add_option("--top", shares_args.top, "Comma-separated candidate ids to aggregate");
    shares_cmd->add_option("--output-dir", shares_args.output_dir, "Output directory");

    PatternsArgs patterns_args;
    auto* patterns_cmd = app.add_subcommand("patterns", "Frequent itemsets and exact-set shares");
    patterns_cmd->add_option("--edges", patterns_args.edges, "Edge CSV")->required();
    patterns_cmd->add_option("--roster", patterns_args.roster, "Roster CSV")->required();
    patterns_cmd->add_option("--min-support", patterns_args.min_support, "Minimum support");
    patterns_cmd->add_option("--max-size", patterns_args.max_size, "Maximum itemset size");
    patterns_cmd->add_option("--top-exclusive", patterns_args.top_exclusive,
                             "Exact-set patterns to keep");
    patterns_cmd->add_option("--output-dir", patterns_args.output_dir, "Output directory");

    MatrixArgs correlations_args;
    auto* corr_cmd = app.add_subcommand("correlations", "Pairwise phi correlation matrix");
    corr_cmd->add_option("--edges", correlations_args.edges, "Edge CSV")->required();
    corr_cmd->add_option("--roster", correlations_args.roster, "Roster CSV")->required();
    corr_cmd->add_option("--output-dir", correlations_args.output_dir, "Output directory");

    LabelArgs label_args;
    auto* label_cmd = app.add_subcommand("label", "3-channel gender labeling + coverage");
    label_cmd->add_option("--profiles", label_args.profiles, "Profiles JSONL")->required();
    label_cmd->add_option("--name-list", label_args.name_list, "Name lexicon CSV")->required();
    label_cmd->add_option("--image-stub", label_args.image_stub,
                          "Table-backed image predictor CSV");
    label_cmd->add_option("--output-dir", label_args.output_dir, "Output directory");

    FitArgs fit_args;
    auto* fit_cmd = app.add_subcommand("fit", "Fit nb / mnl / logit by maximum likelihood");
    fit_cmd->add_option("--model", fit_args.model, "nb, mnl or logit")->required();
    fit_cmd->add_option("--data", fit_args.data, "Data CSV")->required();
    fit_cmd->add_option("--outcome", fit_args.outcome, "Outcome column")->required();
    fit_cmd->add_option("--covariates", fit_args.covariates,
                        "Comma-separated covariate columns (default: all others)");
    fit_cmd->add_option("--year-col", fit_args.year_col, "Year fixed-effects column");
    fit_cmd->add_option("--scale", fit_args.scales,
                        "column=factor divisor applied before fitting (repeatable)");
    fit_cmd->add_option("--max-iterations", fit_args.max_iterations, "Optimizer iteration cap");
    fit_cmd->add_option("--output-dir", fit_args.output_dir, "Output directory");

    EffectsArgs effects_args;
    auto* effects_cmd =
        app.add_subcommand("effects", "Predicted-probability deltas for a binary covariate");
    effects_cmd->add_option("--fit", effects_args.fit, "Fit JSON from `fit --model mnl`")
        ->required();
    effects_cmd->add_option("--data", effects_args.data, "Data CSV the fit was estimated on")
        ->required();
    effects_cmd->add_option("--column", effects_args.column, "Binary covariate to flip")
        ->required();
    effects_cmd->add_option("--output-dir", effects_args.output_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sim_cmd->parsed()) run_simulate(simulate_args);
        else if (sum_cmd->parsed()) run_summarize(summarize_args);
        else if (shares_cmd->parsed()) run_shares(shares_args);
        else if (patterns_cmd->parsed()) run_patterns(patterns_args);
        else if (corr_cmd->parsed()) run_correlations(correlations_args);
        else if (label_cmd->parsed()) run_label(label_args);
        else if (fit_cmd->parsed()) run_fit(fit_args);
        else if (effects_cmd->parsed()) run_effects(effects_args);
        return 0;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ModelError& e) {
        std::cerr << "model error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
