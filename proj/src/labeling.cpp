#include "followgraph/labeling.hpp"

#include <chrono>
#include <fstream>
#include <iostream>

#include "json.hpp"

#include "followgraph/csv.hpp"
#include "followgraph/errors.hpp"
#include "followgraph/text.hpp"

namespace followgraph {

using nlohmann::json;

std::string_view gender_name(Gender g) {
    return g == Gender::Female ? "female" : "male";
}

std::optional<Gender> parse_gender(std::string_view code) {
    if (code == "F") return Gender::Female;
    if (code == "M") return Gender::Male;
    return std::nullopt;
}

std::string_view channel_name(GenderChannel c) {
    switch (c) {
        case GenderChannel::FirstName: return "first_name";
        case GenderChannel::ProfileImage: return "profile_image";
        case GenderChannel::SelfDescription: return "self_description";
    }
    return "";
}

NameList NameList::load(const std::filesystem::path& path) {
    CsvReader reader(path);
    const std::size_t name_col = reader.require_column("name");
    const std::size_t gender_col = reader.require_column("gender");

    NameList list;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        auto g = parse_gender(fields[gender_col]);
        if (!g)
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": unknown gender '" + fields[gender_col] + "' (expected F or M)");
        std::string key = text::fold(fields[name_col]);
        if (key.empty())
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": empty name");
        auto [it, inserted] = list.names_.emplace(key, *g);
        if (!inserted && it->second != *g)
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": name '" + fields[name_col] + "' mapped to both genders");
    }
    return list;
}

NameList NameList::from_pairs(std::span<const std::pair<std::string, Gender>> pairs) {
    NameList list;
    for (const auto& [name, g] : pairs) {
        auto [it, inserted] = list.names_.emplace(text::fold(name), g);
        if (!inserted && it->second != g)
            throw InputError("name '" + name + "' mapped to both genders");
    }
    return list;
}

std::optional<Gender> NameList::lookup(std::string_view name) const {
    auto it = names_.find(text::fold(name));
    return it == names_.end() ? std::nullopt : std::optional<Gender>(it->second);
}

TableImagePredictor TableImagePredictor::load(const std::filesystem::path& path) {
    CsvReader reader(path);
    const std::size_t ref_col = reader.require_column("image_ref");
    const std::size_t gender_col = reader.require_column("gender");
    const auto conf_col = reader.column("confidence");

    TableImagePredictor predictor;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        auto g = parse_gender(fields[gender_col]);
        if (!g)
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": unknown gender '" + fields[gender_col] + "'");
        double conf = 1.0;
        if (conf_col && !fields[*conf_col].empty()) {
            conf = std::stod(fields[*conf_col]);
            if (!(conf >= 0.0 && conf <= 1.0))
                throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                                 ": confidence outside [0,1]");
        }
        predictor.add(fields[ref_col], *g, conf);
    }
    return predictor;
}

void TableImagePredictor::add(std::string image_ref, Gender g, double confidence) {
    table_[std::move(image_ref)] = ImagePrediction{g, confidence};
}

std::optional<ImagePrediction> TableImagePredictor::predict(const std::string& image_ref) const {
    auto it = table_.find(image_ref);
    return it == table_.end() ? std::nullopt : std::optional<ImagePrediction>(it->second);
}

std::optional<Gender> label_by_name(std::string_view display_name, const NameList& names) {
    auto token = text::strip_nonalpha_edges(text::first_token(display_name));
    if (token.empty()) return std::nullopt;
    return names.lookup(token);
}

namespace {

bool word_in(const std::vector<std::string>& words, std::initializer_list<std::string_view> set) {
    for (const auto& w : words)
        for (auto s : set)
            if (w == s) return true;
    return false;
}

}  // namespace

std::optional<Gender> label_by_description(std::string_view description) {
    const auto words = text::alpha_words(description);
    const bool male = word_in(words, {"papa", "father", "husband"});
    const bool female = word_in(words, {"mama", "mom", "mother", "wife"});
    if (male == female) return std::nullopt;  // no hit, or conflicting hits
    return male ? Gender::Male : Gender::Female;
}

std::optional<GenderLabel> classify_gender(const UserProfile& profile, const NameList& names,
                                           const ImagePredictor* image_predictor) {
    if (auto g = label_by_name(profile.display_name, names))
        return GenderLabel{*g, GenderChannel::FirstName};

    if (image_predictor && profile.profile_image_ref) {
        try {
            if (auto p = image_predictor->predict(*profile.profile_image_ref))
                return GenderLabel{p->gender, GenderChannel::ProfileImage};
        } catch (const std::exception& e) {
            std::clog << "image predictor failed for user " << profile.user_id << ": "
                      << e.what() << "\n";
        }
    }

    if (auto g = label_by_description(profile.description))
        return GenderLabel{*g, GenderChannel::SelfDescription};
    return std::nullopt;
}

bool detect_journalist(std::string_view description) {
    return word_in(text::alpha_words(description),
                   {"journalist", "reporter", "correspondent", "editor", "anchor", "columnist"});
}

CoverageReport channel_coverage(std::span<const std::optional<GenderLabel>> labels) {
    CoverageReport report;
    report.total = labels.size();
    for (const auto& label : labels) {
        if (!label) continue;
        ++report.labeled;
        ++report.net_count[static_cast<std::size_t>(label->channel)];
    }
    return report;
}

LabelingResult label_profiles(std::span<const UserProfile> profiles, const NameList& names,
                              const ImagePredictor* image_predictor, bool account_gross) {
    LabelingResult result;
    result.labels.reserve(profiles.size());
    for (const auto& p : profiles) {
        result.labels.push_back(classify_gender(p, names, image_predictor));
        if (account_gross) {
            if (label_by_name(p.display_name, names))
                ++result.gross_count[static_cast<std::size_t>(GenderChannel::FirstName)];
            if (image_predictor && p.profile_image_ref) {
                try {
                    if (image_predictor->predict(*p.profile_image_ref))
                        ++result.gross_count[static_cast<std::size_t>(GenderChannel::ProfileImage)];
                } catch (const std::exception&) {
                }
            }
            if (label_by_description(p.description))
                ++result.gross_count[static_cast<std::size_t>(GenderChannel::SelfDescription)];
        }
    }
    result.coverage = channel_coverage(result.labels);
    return result;
}

namespace {

int current_year() {
    const auto now = std::chrono::system_clock::now();
    const auto days = std::chrono::floor<std::chrono::days>(now);
    return static_cast<int>(std::chrono::year_month_day(days).year());
}

UserProfile profile_from_json(const json& j, const std::string& where) {
    UserProfile p;
    try {
        p.user_id = j.at("user_id").get<std::string>();
        p.display_name = j.value("display_name", std::string());
        p.description = j.value("description", std::string());
        if (j.contains("profile_image_ref") && !j["profile_image_ref"].is_null())
            p.profile_image_ref = j["profile_image_ref"].get<std::string>();
        p.tweets_posted = j.value("tweets_posted", std::int64_t(0));
        p.followers_count = j.value("followers_count", std::int64_t(0));
        p.start_year = j.value("start_year", 2006);
    } catch (const json::exception& e) {
        throw InputError(where + ": " + e.what());
    }
    if (p.tweets_posted < 0 || p.followers_count < 0)
        throw InputError(where + ": negative count");
    if (p.start_year < 2006 || p.start_year > current_year())
        throw InputError(where + ": start_year " + std::to_string(p.start_year) +
                         " outside [2006, current year]");
    return p;
}

}  // namespace

std::vector<UserProfile> load_profiles(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open file");
    std::vector<UserProfile> profiles;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (text::trim(line).empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw InputError(path.string() + ":" + std::to_string(line_no) + ": invalid JSON");
        profiles.push_back(profile_from_json(j, path.string() + ":" + std::to_string(line_no)));
    }
    return profiles;
}

std::string profiles_to_jsonl(std::span<const UserProfile> profiles) {
    std::string out;
    for (const auto& p : profiles) {
        json j{{"user_id", p.user_id},
               {"display_name", p.display_name},
               {"description", p.description},
               {"tweets_posted", p.tweets_posted},
               {"followers_count", p.followers_count},
               {"start_year", p.start_year}};
        if (p.profile_image_ref) j["profile_image_ref"] = *p.profile_image_ref;
        out += j.dump();
        out += "\n";
    }
    return out;
}

}  // namespace followgraph
