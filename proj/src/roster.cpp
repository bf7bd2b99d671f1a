#include "followgraph/roster.hpp"

#include "followgraph/csv.hpp"
#include "followgraph/errors.hpp"

namespace followgraph {

std::string_view party_code(Party p) {
    return p == Party::Democrat ? "D" : "R";
}

std::optional<Party> parse_party(std::string_view code) {
    if (code == "D") return Party::Democrat;
    if (code == "R") return Party::Republican;
    return std::nullopt;
}

CandidateRoster::CandidateRoster(std::vector<Candidate> candidates)
    : candidates_(std::move(candidates)) {
    if (candidates_.empty()) throw InputError("roster is empty");
    for (std::size_t i = 0; i < candidates_.size(); ++i) {
        auto [it, inserted] = index_.emplace(candidates_[i].id, i);
        if (!inserted) throw InputError("duplicate candidate id '" + candidates_[i].id + "'");
    }
}

std::optional<std::size_t> CandidateRoster::column_of(std::string_view id) const {
    auto it = index_.find(std::string(id));
    return it == index_.end() ? std::nullopt : std::optional<std::size_t>(it->second);
}

std::size_t CandidateRoster::count(Party p) const {
    std::size_t n = 0;
    for (const auto& c : candidates_)
        if (c.party == p) ++n;
    return n;
}

CandidateRoster load_roster(const std::filesystem::path& path) {
    CsvReader reader(path);
    reader.require_column("candidate_id");
    reader.require_column("display_name");
    reader.require_column("party");
    const std::size_t id_col = *reader.column("candidate_id");
    const std::size_t name_col = *reader.column("display_name");
    const std::size_t party_col = *reader.column("party");

    std::vector<Candidate> candidates;
    std::unordered_map<std::string, std::size_t> seen;  // id -> line
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        const std::string& id = fields[id_col];
        if (id.empty())
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": empty candidate_id");
        auto [it, inserted] = seen.emplace(id, reader.record_line());
        if (!inserted)
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": duplicate candidate id '" + id + "' (first seen on line " +
                             std::to_string(it->second) + ")");
        auto party = parse_party(fields[party_col]);
        if (!party)
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": unknown party '" + fields[party_col] + "' (expected D or R)");
        candidates.push_back({id, fields[name_col], *party});
    }
    if (candidates.empty())
        throw InputError(path.string() + ": no candidates (file has a header but no rows)");
    return CandidateRoster(std::move(candidates));
}

std::string roster_to_csv(const CandidateRoster& roster) {
    std::string out = "candidate_id,display_name,party\n";
    for (const auto& c : roster.candidates()) {
        std::vector<std::string> row{c.id, c.display_name, std::string(party_code(c.party))};
        out += csv_row(row);
    }
    return out;
}

}  // namespace followgraph
