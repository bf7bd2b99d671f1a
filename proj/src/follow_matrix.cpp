#include "followgraph/follow_matrix.hpp"

#include <algorithm>
#include <unordered_map>

#include "followgraph/csv.hpp"
#include "followgraph/errors.hpp"

namespace followgraph {

std::string_view partisan_class_name(PartisanClass c) {
    switch (c) {
        case PartisanClass::DemocratFollower: return "democrat_follower";
        case PartisanClass::IndependentFollower: return "independent_follower";
        case PartisanClass::RepublicanFollower: return "republican_follower";
    }
    return "";
}

FollowMatrix::FollowMatrix(CandidateRoster roster, std::vector<std::string> user_ids,
                           std::vector<std::vector<std::uint32_t>> rows)
    : roster_(std::move(roster)), user_ids_(std::move(user_ids)) {
    if (rows.size() != user_ids_.size())
        throw ModelError("follow matrix: row/user-id count mismatch");
    offsets_.reserve(rows.size() + 1);
    offsets_.push_back(0);
    for (auto& r : rows) {
        std::sort(r.begin(), r.end());
        r.erase(std::unique(r.begin(), r.end()), r.end());
        if (r.empty()) throw ModelError("follow matrix: empty row");
        for (auto c : r)
            if (c >= roster_.size()) throw ModelError("follow matrix: column index out of range");
        columns_.insert(columns_.end(), r.begin(), r.end());
        offsets_.push_back(columns_.size());
    }
}

std::uint64_t FollowMatrix::row_mask(std::size_t user) const {
    std::uint64_t mask = 0;
    for (auto c : row(user)) mask |= std::uint64_t(1) << c;
    return mask;
}

namespace {

class MatrixBuilder {
public:
    explicit MatrixBuilder(const CandidateRoster& roster) : roster_(roster) {}

    void add(const std::string& user_id, const std::string& candidate_id,
             const std::string& where) {
        auto col = roster_.column_of(candidate_id);
        if (!col)
            throw InputError(where + "unknown candidate id '" + candidate_id + "'");
        auto [it, inserted] = user_index_.emplace(user_id, rows_.size());
        if (inserted) {
            user_ids_.push_back(user_id);
            rows_.emplace_back();
        }
        rows_[it->second].push_back(static_cast<std::uint32_t>(*col));
    }

    FollowMatrix build() {
        return FollowMatrix(roster_, std::move(user_ids_), std::move(rows_));
    }

private:
    CandidateRoster roster_;
    std::unordered_map<std::string, std::size_t> user_index_;
    std::vector<std::string> user_ids_;
    std::vector<std::vector<std::uint32_t>> rows_;
};

}  // namespace

FollowMatrix ingest_edges(std::span<const Edge> edges, const CandidateRoster& roster) {
    MatrixBuilder builder(roster);
    for (const auto& e : edges) builder.add(e.user_id, e.candidate_id, "");
    return builder.build();
}

FollowMatrix load_edges(const std::filesystem::path& path, const CandidateRoster& roster) {
    CsvReader reader(path);
    const std::size_t user_col = reader.require_column("user_id");
    const std::size_t cand_col = reader.require_column("candidate_id");

    MatrixBuilder builder(roster);
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        if (fields[user_col].empty())
            throw InputError(path.string() + ":" + std::to_string(reader.record_line()) +
                             ": empty user_id");
        builder.add(fields[user_col], fields[cand_col],
                    path.string() + ":" + std::to_string(reader.record_line()) + ": ");
    }
    return builder.build();
}

Eigen::VectorX<std::int64_t> follower_counts(const FollowMatrix& m) {
    Eigen::VectorX<std::int64_t> counts = Eigen::VectorX<std::int64_t>::Zero(m.candidate_count());
    for (std::size_t i = 0; i < m.user_count(); ++i)
        for (auto c : m.row(i)) ++counts[c];
    return counts;
}

std::vector<EngagementRow> engagement_distribution(const FollowMatrix& m) {
    const std::size_t k = m.candidate_count();
    std::vector<std::array<std::int64_t, 5>> buckets(k, {0, 0, 0, 0, 0});
    for (std::size_t i = 0; i < m.user_count(); ++i) {
        auto row = m.row(i);
        std::size_t b = std::min<std::size_t>(row.size(), 5) - 1;
        for (auto c : row) ++buckets[c][b];
    }
    std::vector<EngagementRow> out(k);
    for (std::size_t c = 0; c < k; ++c) {
        std::int64_t total = 0;
        for (auto n : buckets[c]) total += n;
        out[c].followers = total;
        if (total > 0)
            for (int b = 0; b < 5; ++b)
                out[c].fraction[b] = static_cast<double>(buckets[c][b]) / static_cast<double>(total);
    }
    return out;
}

PartisanClass partisan_class(std::span<const std::uint32_t> row, const CandidateRoster& roster) {
    if (row.empty()) throw InputError("partisan_class: empty follow set");
    bool any_democrat = false;
    bool any_republican = false;
    for (auto c : row) {
        if (roster[c].party == Party::Democrat) any_democrat = true;
        else any_republican = true;
    }
    if (any_democrat && any_republican) return PartisanClass::IndependentFollower;
    return any_democrat ? PartisanClass::DemocratFollower : PartisanClass::RepublicanFollower;
}

std::vector<PartisanClass> classify_partisans(const FollowMatrix& m) {
    std::vector<PartisanClass> out;
    out.reserve(m.user_count());
    for (std::size_t i = 0; i < m.user_count(); ++i)
        out.push_back(partisan_class(m.row(i), m.roster()));
    return out;
}

PartisanCounts partisan_counts(const FollowMatrix& m) {
    PartisanCounts counts;
    for (std::size_t i = 0; i < m.user_count(); ++i) {
        switch (partisan_class(m.row(i), m.roster())) {
            case PartisanClass::DemocratFollower: ++counts.democrat; break;
            case PartisanClass::IndependentFollower: ++counts.independent; break;
            case PartisanClass::RepublicanFollower: ++counts.republican; break;
        }
    }
    return counts;
}

Eigen::VectorX<std::int64_t> follow_count_histogram(const FollowMatrix& m) {
    Eigen::VectorX<std::int64_t> hist = Eigen::VectorX<std::int64_t>::Zero(m.candidate_count());
    for (std::size_t i = 0; i < m.user_count(); ++i) ++hist[m.row(i).size() - 1];
    return hist;
}

}  // namespace followgraph
