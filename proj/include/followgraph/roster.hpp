#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace followgraph {

enum class Party { Democrat, Republican };

std::string_view party_code(Party p);          // "D" / "R"
std::optional<Party> parse_party(std::string_view code);

struct Candidate {
    std::string id;
    std::string display_name;
    Party party = Party::Democrat;
};

// Ordered candidate list. The load order is frozen and defines the column
// indices of every follow matrix built against this roster.
class CandidateRoster {
public:
    CandidateRoster() = default;
    explicit CandidateRoster(std::vector<Candidate> candidates);

    std::size_t size() const { return candidates_.size(); }
    const Candidate& operator[](std::size_t col) const { return candidates_[col]; }
    const std::vector<Candidate>& candidates() const { return candidates_; }
    std::optional<std::size_t> column_of(std::string_view id) const;

    std::size_t count(Party p) const;

private:
    std::vector<Candidate> candidates_;
    std::unordered_map<std::string, std::size_t> index_;
};

// CSV with header `candidate_id,display_name,party`, party in {D,R}.
CandidateRoster load_roster(const std::filesystem::path& path);

std::string roster_to_csv(const CandidateRoster& roster);

}  // namespace followgraph
