#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace followgraph {

enum class Gender { Female, Male };
enum class GenderChannel { FirstName = 0, ProfileImage = 1, SelfDescription = 2 };

std::string_view gender_name(Gender g);                      // "female" / "male"
std::optional<Gender> parse_gender(std::string_view code);   // "F" / "M"
std::string_view channel_name(GenderChannel c);

struct GenderLabel {
    Gender gender;
    GenderChannel channel;  // the single highest-priority channel that fired
};

struct UserProfile {
    std::string user_id;
    std::string display_name;
    std::string description;
    std::optional<std::string> profile_image_ref;
    std::int64_t tweets_posted = 0;
    std::int64_t followers_count = 0;  // social capital
    int start_year = 2006;
};

// First-name lexicon, case-insensitive, no name may map to both genders.
class NameList {
public:
    NameList() = default;
    static NameList load(const std::filesystem::path& path);  // CSV `name,gender`
    static NameList from_pairs(std::span<const std::pair<std::string, Gender>> pairs);

    std::optional<Gender> lookup(std::string_view name) const;
    std::size_t size() const { return names_.size(); }

private:
    std::unordered_map<std::string, Gender> names_;  // keys case-folded
};

// Gender-from-image channel. Implementations must be pure per input and
// safe for concurrent calls; a missing image yields no prediction.
struct ImagePrediction {
    Gender gender;
    double confidence = 1.0;  // in [0,1]
};

class ImagePredictor {
public:
    virtual ~ImagePredictor() = default;
    virtual std::optional<ImagePrediction> predict(const std::string& image_ref) const = 0;
};

// Deterministic lookup-table predictor. CSV `image_ref,gender[,confidence]`.
class TableImagePredictor : public ImagePredictor {
public:
    static TableImagePredictor load(const std::filesystem::path& path);
    void add(std::string image_ref, Gender g, double confidence = 1.0);
    std::optional<ImagePrediction> predict(const std::string& image_ref) const override;

private:
    std::unordered_map<std::string, ImagePrediction> table_;
};

// First whitespace-delimited token, non-alphabetic edges stripped,
// case-insensitive lexicon lookup.
std::optional<Gender> label_by_name(std::string_view display_name, const NameList& names);

// Whole-word family-role keywords; papa/father/husband male, mama/mom/
// mother/wife female. Hits on both sides abstain.
std::optional<Gender> label_by_description(std::string_view description);

// Channel priority: first name, then profile image, then self description.
// A predictor exception counts as a channel miss (logged to std::clog).
std::optional<GenderLabel> classify_gender(const UserProfile& profile, const NameList& names,
                                           const ImagePredictor* image_predictor);

// Whole-word occupation keywords: journalist, reporter, correspondent,
// editor, anchor, columnist.
bool detect_journalist(std::string_view description);

// Net channel accounting over final labels: each labeled user counts toward
// exactly one channel, so the per-channel fractions sum to the labeled total.
struct CoverageReport {
    std::size_t total = 0;
    std::array<std::size_t, 3> net_count{};  // indexed by GenderChannel
    std::size_t labeled = 0;

    double net_fraction(GenderChannel c) const {
        return total == 0 ? 0.0
                          : static_cast<double>(net_count[static_cast<std::size_t>(c)]) /
                                static_cast<double>(total);
    }
    double total_fraction() const {
        return total == 0 ? 0.0 : static_cast<double>(labeled) / static_cast<double>(total);
    }
};

CoverageReport channel_coverage(std::span<const std::optional<GenderLabel>> labels);

// Batch labeling. With account_gross set, every channel is also evaluated
// independently of priority, giving the gross identification counts
// (how many users each channel could label on its own).
struct LabelingResult {
    std::vector<std::optional<GenderLabel>> labels;
    std::array<std::size_t, 3> gross_count{};
    CoverageReport coverage;
};

LabelingResult label_profiles(std::span<const UserProfile> profiles, const NameList& names,
                              const ImagePredictor* image_predictor, bool account_gross = false);

// JSON-lines profiles file, one object per user.
std::vector<UserProfile> load_profiles(const std::filesystem::path& path);
std::string profiles_to_jsonl(std::span<const UserProfile> profiles);

}  // namespace followgraph
