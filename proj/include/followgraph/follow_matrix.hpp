#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "followgraph/roster.hpp"

namespace followgraph {

// Twitter-behavioral class: exclusively-Democratic follow set, exclusively
// Republican, or mixed.
enum class PartisanClass { DemocratFollower, IndependentFollower, RepublicanFollower };

std::string_view partisan_class_name(PartisanClass c);

// Sparse boolean user-by-candidate incidence matrix. Rows are stored CSR
// style as sorted, deduplicated column indices; every stored row is
// non-empty (a user enters the dataset only by following someone). User ids
// are kept in first-appearance order, which fixes the row indices.
// Immutable after construction; all statistics below are pure reads.
class FollowMatrix {
public:
    FollowMatrix(CandidateRoster roster, std::vector<std::string> user_ids,
                 std::vector<std::vector<std::uint32_t>> rows);

    std::size_t user_count() const { return user_ids_.size(); }
    std::size_t candidate_count() const { return roster_.size(); }
    const CandidateRoster& roster() const { return roster_; }

    std::span<const std::uint32_t> row(std::size_t user) const {
        return {columns_.data() + offsets_[user], offsets_[user + 1] - offsets_[user]};
    }
    const std::string& user_id(std::size_t user) const { return user_ids_[user]; }
    const std::vector<std::string>& user_ids() const { return user_ids_; }

    // Row as a bitmask; requires candidate_count() <= 64.
    std::uint64_t row_mask(std::size_t user) const;

private:
    CandidateRoster roster_;
    std::vector<std::string> user_ids_;
    std::vector<std::size_t> offsets_;
    std::vector<std::uint32_t> columns_;
};

struct Edge {
    std::string user_id;
    std::string candidate_id;
};

// Collapses duplicate edges, resolves candidate ids against the roster and
// assigns row indices in first-appearance order of user_id. An empty stream
// yields a valid zero-user matrix.
FollowMatrix ingest_edges(std::span<const Edge> edges, const CandidateRoster& roster);

// CSV with header `user_id,candidate_id`.
FollowMatrix load_edges(const std::filesystem::path& path, const CandidateRoster& roster);

// count_k = number of users with bit k set.
Eigen::VectorX<std::int64_t> follower_counts(const FollowMatrix& m);

// Per-candidate distribution of its followers over total-candidates-followed
// buckets {1,2,3,4,5+}. Candidates with no followers carry followers == 0
// and zeroed fractions; has_followers() is the explicit marker.
struct EngagementRow {
    std::int64_t followers = 0;
    std::array<double, 5> fraction{};
    bool has_followers() const { return followers > 0; }
};
std::vector<EngagementRow> engagement_distribution(const FollowMatrix& m);

PartisanClass partisan_class(std::span<const std::uint32_t> row, const CandidateRoster& roster);

std::vector<PartisanClass> classify_partisans(const FollowMatrix& m);

struct PartisanCounts {
    std::int64_t democrat = 0;
    std::int64_t independent = 0;
    std::int64_t republican = 0;
    std::int64_t total() const { return democrat + independent + republican; }
};
PartisanCounts partisan_counts(const FollowMatrix& m);

// Histogram of candidates-followed per user; entry k-1 counts users
// following exactly k candidates. Total mass equals user_count().
Eigen::VectorX<std::int64_t> follow_count_histogram(const FollowMatrix& m);

}  // namespace followgraph
