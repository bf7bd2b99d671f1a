#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>

#include "followgraph/errors.hpp"
#include "followgraph/patterns.hpp"

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

std::vector<std::vector<std::uint32_t>> random_rows(std::mt19937& gen, std::size_t n,
                                                    std::size_t k, double density) {
    std::bernoulli_distribution bit(density);
    std::uniform_int_distribution<std::uint32_t> col(0, static_cast<std::uint32_t>(k - 1));
    std::vector<std::vector<std::uint32_t>> rows;
    for (std::size_t u = 0; u < n; ++u) {
        std::vector<std::uint32_t> row;
        for (std::uint32_t c = 0; c < k; ++c)
            if (bit(gen)) row.push_back(c);
        if (row.empty()) row.push_back(col(gen));
        rows.push_back(row);
    }
    return rows;
}

// Exhaustive subset enumeration oracle over all 2^k itemsets.
std::map<std::uint64_t, std::int64_t> oracle_frequent(
    const std::vector<std::vector<std::uint32_t>>& rows, std::size_t k, double min_support,
    std::size_t max_size) {
    std::vector<std::uint64_t> masks;
    for (const auto& row : rows) {
        std::uint64_t m = 0;
        for (auto c : row) m |= std::uint64_t(1) << c;
        masks.push_back(m);
    }
    std::map<std::uint64_t, std::int64_t> out;
    const double n = static_cast<double>(rows.size());
    for (std::uint64_t itemset = 1; itemset < (std::uint64_t(1) << k); ++itemset) {
        if (static_cast<std::size_t>(std::popcount(itemset)) > max_size) continue;
        std::int64_t count = 0;
        for (auto m : masks)
            if ((m & itemset) == itemset) ++count;
        if (static_cast<double>(count) / n >= min_support) out[itemset] = count;
    }
    return out;
}

}  // namespace

TEST_CASE("frequent itemsets hand example") {
    const auto roster = make_roster(2);
    // rows {T},{T},{C} with min_support 0.3
    const FollowMatrix m = matrix_from_columns(roster, {{0}, {0}, {1}});
    const auto result = frequent_itemsets(m, 0.3, 2);
    REQUIRE(result.size() == 2);
    CHECK(result[0].support == doctest::Approx(2.0 / 3.0));
    CHECK(result[0].ids == std::vector<std::string>{"c0"});
    CHECK(result[1].support == doctest::Approx(1.0 / 3.0));
    CHECK(result[0].rank == 1);
    CHECK(result[1].rank == 2);
}

TEST_CASE("containment support counts supersets") {
    const auto roster = make_roster(2);
    const FollowMatrix m = matrix_from_columns(roster, {{0, 1}, {0, 1}});
    const auto result = frequent_itemsets(m, 0.5, 2);
    REQUIRE(result.size() == 3);
    for (const auto& item : result) CHECK(item.support == doctest::Approx(1.0));
}

TEST_CASE("frequent itemsets of an empty matrix are empty") {
    const auto roster = make_roster(3);
    CHECK(frequent_itemsets(ingest_edges({}, roster), 0.1, 2).empty());
    CHECK(exclusive_pattern_shares(ingest_edges({}, roster), 5).empty());
}

TEST_CASE("invalid mining parameters are input errors") {
    const auto roster = make_roster(2);
    const FollowMatrix m = matrix_from_columns(roster, {{0}});
    CHECK_THROWS_AS(frequent_itemsets(m, 0.0, 2), InputError);
    CHECK_THROWS_AS(frequent_itemsets(m, 1.5, 2), InputError);
    CHECK_THROWS_AS(frequent_itemsets(m, 0.5, 0), InputError);
    CHECK_THROWS_AS(exclusive_pattern_shares(m, 0), InputError);
}

TEST_CASE("apriori equals exhaustive enumeration on random matrices") {
    std::mt19937 gen(77);
    for (double min_support : {0.05, 0.15}) {
        const auto rows = random_rows(gen, 150, 10, 0.25);
        const auto roster = make_roster(10);
        const FollowMatrix m = matrix_from_columns(roster, rows);
        const auto mined = frequent_itemsets(m, min_support, 4);
        const auto oracle = oracle_frequent(rows, 10, min_support, 4);
        REQUIRE(mined.size() == oracle.size());
        for (const auto& item : mined) {
            auto it = oracle.find(item.mask);
            REQUIRE(it != oracle.end());
            CHECK(item.count == it->second);
        }
    }
}

TEST_CASE("anti-monotonicity holds for every reported itemset") {
    std::mt19937 gen(31);
    const auto rows = random_rows(gen, 120, 8, 0.3);
    const auto roster = make_roster(8);
    const auto mined = frequent_itemsets(matrix_from_columns(roster, rows), 0.05, 8);
    std::map<std::uint64_t, double> support;
    for (const auto& item : mined) support[item.mask] = item.support;
    for (const auto& item : mined) {
        for (std::uint64_t bits = item.mask; bits; bits &= bits - 1) {
            const std::uint64_t subset = item.mask & ~(bits & -bits);
            if (subset == 0) continue;
            REQUIRE(support.contains(subset));  // subsets of frequent sets are frequent
            CHECK(support[subset] >= item.support);
        }
    }
}

TEST_CASE("results sort by support with lexicographic tie-break") {
    const auto roster = make_roster(3);
    const FollowMatrix m = matrix_from_columns(roster, {{0}, {1}, {2}, {1, 2}});
    const auto mined = frequent_itemsets(m, 0.2, 2);
    for (std::size_t i = 1; i < mined.size(); ++i) {
        const bool ordered = mined[i - 1].count > mined[i].count ||
                             (mined[i - 1].count == mined[i].count &&
                              mined[i - 1].ids < mined[i].ids);
        CHECK(ordered);
    }
}

TEST_CASE("exclusive pattern shares tally exact sets") {
    const auto roster = make_roster(2);
    const FollowMatrix m =
        matrix_from_columns(roster, {{0}, {0}, {0, 1}, {0}, {1}, {0, 1}});
    const auto patterns = exclusive_pattern_shares(m, 10);
    REQUIRE(patterns.size() == 3);
    CHECK(patterns[0].ids == std::vector<std::string>{"c0"});
    CHECK(patterns[0].fraction == doctest::Approx(0.5));
    CHECK(patterns[1].fraction == doctest::Approx(2.0 / 6.0));
    CHECK(patterns[2].fraction == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("identical rows collapse to a single pattern of fraction 1") {
    const auto roster = make_roster(3);
    const FollowMatrix m = matrix_from_columns(roster, {{0, 2}, {0, 2}, {0, 2}});
    const auto patterns = exclusive_pattern_shares(m, 3);
    REQUIRE(patterns.size() == 1);
    CHECK(patterns[0].fraction == doctest::Approx(1.0));
}

TEST_CASE("exclusive patterns match a hash tally oracle and sum to one") {
    std::mt19937 gen(8);
    const auto rows = random_rows(gen, 200, 6, 0.4);
    const auto roster = make_roster(6);
    const FollowMatrix m = matrix_from_columns(roster, rows);
    const auto patterns = exclusive_pattern_shares(m, 1000);

    std::map<std::uint64_t, std::int64_t> oracle;
    for (const auto& row : rows) {
        std::uint64_t mask = 0;
        for (auto c : row) mask |= std::uint64_t(1) << c;
        ++oracle[mask];
    }
    REQUIRE(patterns.size() == oracle.size());
    double total = 0.0;
    for (const auto& p : patterns) {
        CHECK(oracle.at(p.mask) == p.count);
        total += p.fraction;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("phi of identical and complementary columns") {
    const auto roster = make_roster(2);
    {
        const FollowMatrix m = matrix_from_columns(roster, {{0, 1}, {0, 1}, {0}, {0}});
        // c1 equals "followed along with c0" in half the rows; compare c1 against itself.
        const PhiMatrix phi = pairwise_phi(m);
        CHECK(phi.defined(1, 1));
        CHECK(phi.value(1, 1) == doctest::Approx(1.0));
    }
    {
        // (1,1,0,0) vs (0,0,1,1): perfect anticorrelation.
        const FollowMatrix m = matrix_from_columns(roster, {{0}, {0}, {1}, {1}});
        const PhiMatrix phi = pairwise_phi(m);
        REQUIRE(phi.defined(0, 1));
        CHECK(phi.value(0, 1) == doctest::Approx(-1.0));
    }
    {
        // Identical columns: r = 1 off the diagonal too.
        const auto roster3 = make_roster(3);
        const FollowMatrix m = matrix_from_columns(roster3, {{0, 1}, {0, 1}, {2}, {2}});
        const PhiMatrix phi = pairwise_phi(m);
        REQUIRE(phi.defined(0, 1));
        CHECK(phi.value(0, 1) == doctest::Approx(1.0));
    }
}

TEST_CASE("constant columns are undefined, never NaN") {
    const auto roster = make_roster(2);
    const FollowMatrix m = matrix_from_columns(roster, {{0}, {0}, {0, 1}});
    const PhiMatrix phi = pairwise_phi(m);  // c0 followed by everyone
    CHECK_FALSE(phi.defined(0, 0));
    CHECK_FALSE(phi.defined(0, 1));
    CHECK(phi.defined(1, 1));
    for (Eigen::Index a = 0; a < 2; ++a)
        for (Eigen::Index b = 0; b < 2; ++b) CHECK_FALSE(std::isnan(phi.value(a, b)));
}

TEST_CASE("phi requires two users") {
    const auto roster = make_roster(2);
    CHECK_THROWS_AS(pairwise_phi(matrix_from_columns(roster, {{0}})), InputError);
}

TEST_CASE("phi matches the two-pass pearson oracle within 1e-12") {
    std::mt19937 gen(4);
    const auto rows = random_rows(gen, 100, 4, 0.5);
    const auto roster = make_roster(4);
    const FollowMatrix m = matrix_from_columns(roster, rows);
    const PhiMatrix phi = pairwise_phi(m);

    // Textbook two-pass Pearson over the expanded 0/1 columns.
    const std::size_t n = rows.size();
    std::vector<std::vector<double>> cols(4, std::vector<double>(n, 0.0));
    for (std::size_t u = 0; u < n; ++u)
        for (auto c : rows[u]) cols[c][u] = 1.0;
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            double mean_a = 0, mean_b = 0;
            for (std::size_t u = 0; u < n; ++u) {
                mean_a += cols[a][u];
                mean_b += cols[b][u];
            }
            mean_a /= static_cast<double>(n);
            mean_b /= static_cast<double>(n);
            double cov = 0, var_a = 0, var_b = 0;
            for (std::size_t u = 0; u < n; ++u) {
                cov += (cols[a][u] - mean_a) * (cols[b][u] - mean_b);
                var_a += (cols[a][u] - mean_a) * (cols[a][u] - mean_a);
                var_b += (cols[b][u] - mean_b) * (cols[b][u] - mean_b);
            }
            if (var_a == 0 || var_b == 0) {
                CHECK_FALSE(phi.defined(a, b));
                continue;
            }
            REQUIRE(phi.defined(a, b));
            CHECK(phi.value(a, b) ==
                  doctest::Approx(cov / std::sqrt(var_a * var_b)).epsilon(1e-12));
        }
    }
    // Symmetry and unit diagonal.
    for (std::size_t a = 0; a < 4; ++a) {
        if (phi.defined(a, a)) CHECK(phi.value(a, a) == 1.0);
        for (std::size_t b = 0; b < 4; ++b) CHECK(phi.value(a, b) == phi.value(b, a));
    }
}

TEST_CASE("phi is invariant under row permutation") {
    std::mt19937 gen(21);
    auto rows = random_rows(gen, 60, 5, 0.4);
    const auto roster = make_roster(5);
    const PhiMatrix base = pairwise_phi(matrix_from_columns(roster, rows));
    std::shuffle(rows.begin(), rows.end(), gen);
    const PhiMatrix shuffled = pairwise_phi(matrix_from_columns(roster, rows));
    CHECK((base.value - shuffled.value).cwiseAbs().maxCoeff() == 0.0);
}
