#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>
#include <random>

#include "followgraph/errors.hpp"
#include "followgraph/shares.hpp"

using namespace followgraph;

namespace {

CandidateRoster make_roster(std::size_t k) {
    std::vector<Candidate> candidates;
    for (std::size_t c = 0; c < k; ++c) {
        const std::string id = "c" + std::to_string(c);
        candidates.push_back({id, id, c % 2 ? Party::Republican : Party::Democrat});
    }
    return CandidateRoster(std::move(candidates));
}

FollowMatrix matrix_from_columns(const CandidateRoster& roster,
                                 const std::vector<std::vector<std::uint32_t>>& rows) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < rows.size(); ++u)
        for (auto c : rows[u]) edges.push_back({"u" + std::to_string(u), roster[c].id});
    return ingest_edges(edges, roster);
}

// Independent oracle: integer accumulation over the fixed common denominator
// L = lcm(1..k), reduced at the very end. No Rational arithmetic involved
// until the final normalization.
std::vector<Rational> oracle_weighted_shares(const std::vector<std::vector<std::uint32_t>>& rows,
                                             std::size_t k) {
    std::int64_t l = 1;
    for (std::int64_t d = 2; d <= static_cast<std::int64_t>(k); ++d) l = std::lcm(l, d);
    std::vector<std::int64_t> numerators(k, 0);
    for (const auto& row : rows)
        for (auto c : row) numerators[c] += l / static_cast<std::int64_t>(row.size());
    const std::int64_t denominator = l * static_cast<std::int64_t>(rows.size());
    std::vector<Rational> shares;
    for (std::size_t c = 0; c < k; ++c) shares.emplace_back(numerators[c], denominator);
    return shares;
}

}  // namespace

TEST_CASE("follower weight is the exact reciprocal of the set size") {
    const auto roster = make_roster(5);
    const FollowMatrix m =
        matrix_from_columns(roster, {{0, 1, 2}, {0}, {0, 1, 2, 3, 4}});
    CHECK(follower_weight(m.row(0)) == Rational(1, 3));
    CHECK(follower_weight(m.row(1)) == Rational(1, 1));
    CHECK(follower_weight(m.row(2)) == Rational(1, 5));
    CHECK_THROWS_AS(follower_weight({}), InputError);
}

TEST_CASE("weight property: 1/|row| over random rows") {
    std::mt19937 gen(12);
    const auto roster = make_roster(16);
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> size_dist(1, 16);
        const std::size_t size = size_dist(gen);
        std::vector<std::uint32_t> row(16);
        std::iota(row.begin(), row.end(), 0);
        std::shuffle(row.begin(), row.end(), gen);
        row.resize(size);
        std::sort(row.begin(), row.end());
        CHECK(follower_weight(row) == Rational(1, static_cast<std::int64_t>(size)));
    }
}

TEST_CASE("weighted shares hand example") {
    // rows {A},{A,B}: A gets 1 + 1/2 of the 2 units of weight.
    const auto roster = make_roster(2);
    const FollowMatrix m = matrix_from_columns(roster, {{0}, {0, 1}});
    const ShareReport report = weighted_shares(m);
    CHECK(report.weighted_exact[0] == Rational(3, 4));
    CHECK(report.weighted_exact[1] == Rational(1, 4));
    CHECK(report.raw_exact[0] == Rational(2, 3));
    CHECK(report.raw_exact[1] == Rational(1, 3));
}

TEST_CASE("all-singleton rows make weighted equal raw exactly") {
    const auto roster = make_roster(3);
    const FollowMatrix m = matrix_from_columns(roster, {{0}, {1}, {0}, {2}, {0}});
    const ShareReport report = weighted_shares(m);
    for (std::size_t c = 0; c < 3; ++c) CHECK(report.weighted_exact[c] == report.raw_exact[c]);
}

TEST_CASE("raw shares hand examples") {
    const auto roster = make_roster(2);
    const FollowMatrix m = matrix_from_columns(roster, {{0}, {0, 1}});
    const Eigen::VectorXd shares = raw_shares(m);
    CHECK(shares[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(shares[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto solo = make_roster(1);
    CHECK(raw_shares(matrix_from_columns(solo, {{0}, {0}}))[0] == 1.0);
}

TEST_CASE("empty matrix raises the no-followers error") {
    const auto roster = make_roster(2);
    const FollowMatrix m = ingest_edges({}, roster);
    CHECK_THROWS_AS(raw_shares(m), InputError);
    CHECK_THROWS_AS(weighted_shares(m), InputError);
}

TEST_CASE("weighted shares match the rational oracle bit-exactly on random matrices") {
    std::mt19937 gen(2024);
    for (int trial = 0; trial < 300; ++trial) {
        std::uniform_int_distribution<std::size_t> k_dist(1, 8);
        std::uniform_int_distribution<std::size_t> n_dist(1, 50);
        const std::size_t k = k_dist(gen);
        const std::size_t n = n_dist(gen);
        std::uniform_int_distribution<int> coin(0, 1);
        std::uniform_int_distribution<std::uint32_t> col(0, static_cast<std::uint32_t>(k - 1));
        std::vector<std::vector<std::uint32_t>> rows;
        for (std::size_t u = 0; u < n; ++u) {
            std::vector<std::uint32_t> row;
            for (std::uint32_t c = 0; c < k; ++c)
                if (coin(gen)) row.push_back(c);
            if (row.empty()) row.push_back(col(gen));
            std::sort(row.begin(), row.end());
            row.erase(std::unique(row.begin(), row.end()), row.end());
            rows.push_back(row);
        }
        const auto roster = make_roster(k);
        const ShareReport report = weighted_shares(matrix_from_columns(roster, rows));
        const auto oracle = oracle_weighted_shares(rows, k);
        for (std::size_t c = 0; c < k; ++c) {
            CHECK(report.weighted_exact[c].num() == oracle[c].num());
            CHECK(report.weighted_exact[c].den() == oracle[c].den());
        }
        // Exact sum to one.
        Rational total;
        for (const auto& share : report.weighted_exact) total += share;
        CHECK(total == Rational(1, 1));
    }
}

TEST_CASE("shares are invariant under user-row permutation") {
    std::mt19937 gen(5);
    const auto roster = make_roster(6);
    std::vector<std::vector<std::uint32_t>> rows{{0, 1}, {2}, {3, 4, 5}, {0}, {5}};
    const ShareReport base = weighted_shares(matrix_from_columns(roster, rows));
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(rows.begin(), rows.end(), gen);
        const ShareReport shuffled = weighted_shares(matrix_from_columns(roster, rows));
        for (std::size_t c = 0; c < 6; ++c)
            CHECK(shuffled.weighted_exact[c] == base.weighted_exact[c]);
    }
}

TEST_CASE("top-k aggregate sums the named candidates") {
    const auto roster = make_roster(4);
    const FollowMatrix m = matrix_from_columns(roster, {{0}, {1}, {2, 3}, {0, 1}});
    const std::vector<std::string> top{"c0", "c1"};
    const ShareReport report = weighted_shares(m, top);
    CHECK(report.top_weighted_exact == report.weighted_exact[0] + report.weighted_exact[1]);
    CHECK(report.top_raw_exact == report.raw_exact[0] + report.raw_exact[1]);

    const std::vector<std::string> unknown{"nope"};
    CHECK_THROWS_AS(weighted_shares(m, unknown), InputError);
}
