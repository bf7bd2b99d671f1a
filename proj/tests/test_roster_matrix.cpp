#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "followgraph/errors.hpp"
#include "followgraph/follow_matrix.hpp"
#include "followgraph/roster.hpp"

using namespace followgraph;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / ("followgraph_" + name);
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

// The 16-candidate 2016 roster layout: 5 Democrats, 11 Republicans.
const char* kElectionRoster =
    "candidate_id,display_name,party\n"
    "Chafee,Lincoln Chafee,D\n"
    "Clinton,Hillary Clinton,D\n"
    "OMalley,Martin O'Malley,D\n"
    "Sanders,Bernie Sanders,D\n"
    "Webb,Jim Webb,D\n"
    "Bush,Jeb Bush,R\n"
    "Carson,Ben Carson,R\n"
    "Christie,Chris Christie,R\n"
    "Cruz,Ted Cruz,R\n"
    "Fiorina,Carly Fiorina,R\n"
    "Huckabee,Mike Huckabee,R\n"
    "Kasich,John Kasich,R\n"
    "Paul,Rand Paul,R\n"
    "Rubio,Marco Rubio,R\n"
    "Trump,Donald Trump,R\n"
    "Walker,Scott Walker,R\n";

CandidateRoster small_roster(std::initializer_list<std::pair<const char*, Party>> entries) {
    std::vector<Candidate> candidates;
    for (const auto& [id, party] : entries) candidates.push_back({id, id, party});
    return CandidateRoster(std::move(candidates));
}

FollowMatrix matrix_from_rows(const CandidateRoster& roster,
                              const std::vector<std::vector<std::string>>& rows) {
    std::vector<Edge> edges;
    for (std::size_t u = 0; u < rows.size(); ++u)
        for (const auto& cand : rows[u]) edges.push_back({"u" + std::to_string(u), cand});
    return ingest_edges(edges, roster);
}

}  // namespace

TEST_CASE("load_roster reads the 16-candidate file") {
    const auto path = write_temp("roster16.csv", kElectionRoster);
    const CandidateRoster roster = load_roster(path);
    CHECK(roster.size() == 16);
    CHECK(roster.count(Party::Democrat) == 5);
    CHECK(roster.count(Party::Republican) == 11);
    CHECK(*roster.column_of("Chafee") == 0);
    CHECK(*roster.column_of("Walker") == 15);
    CHECK_FALSE(roster.column_of("Obama").has_value());
    CHECK(roster[1].display_name == "Hillary Clinton");
}

TEST_CASE("load_roster minimal file") {
    const auto path = write_temp("roster1.csv",
                                 "candidate_id,display_name,party\nClinton,Hillary Clinton,D\n");
    CHECK(load_roster(path).size() == 1);
}

TEST_CASE("load_roster rejects duplicates naming the line") {
    const auto path = write_temp("roster_dup.csv",
                                 "candidate_id,display_name,party\n"
                                 "Clinton,Hillary Clinton,D\n"
                                 "Trump,Donald Trump,R\n"
                                 "Clinton,Another Clinton,D\n");
    try {
        load_roster(path);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":4") != std::string::npos);
        CHECK(msg.find("Clinton") != std::string::npos);
    }
}

TEST_CASE("load_roster rejects unknown party naming the line") {
    const auto path = write_temp("roster_party.csv",
                                 "candidate_id,display_name,party\nNader,Ralph Nader,G\n");
    try {
        load_roster(path);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":2") != std::string::npos);
        CHECK(msg.find("'G'") != std::string::npos);
    }
}

TEST_CASE("load_roster rejects empty files") {
    CHECK_THROWS_AS(load_roster(write_temp("roster_empty.csv", "")), InputError);
    CHECK_THROWS_AS(
        load_roster(write_temp("roster_headeronly.csv", "candidate_id,display_name,party\n")),
        InputError);
}

TEST_CASE("ingest deduplicates edges") {
    const auto roster = small_roster({{"Trump", Party::Republican},
                                      {"Cruz", Party::Republican}});
    std::vector<Edge> edges{{"u1", "Trump"}, {"u1", "Trump"}, {"u1", "Cruz"}};
    const FollowMatrix m = ingest_edges(edges, roster);
    CHECK(m.user_count() == 1);
    CHECK(m.row(0).size() == 2);
}

TEST_CASE("ingest keeps users disjoint and in first-appearance order") {
    const auto roster = small_roster({{"Clinton", Party::Democrat},
                                      {"Trump", Party::Republican}});
    std::vector<Edge> edges{{"u1", "Clinton"}, {"u2", "Trump"}};
    const FollowMatrix m = ingest_edges(edges, roster);
    CHECK(m.user_count() == 2);
    CHECK(m.user_id(0) == "u1");
    CHECK(m.user_id(1) == "u2");
    CHECK(m.row(0).size() == 1);
    CHECK(m.row(1).size() == 1);
}

TEST_CASE("ingest rejects unknown candidates by name") {
    const auto roster = small_roster({{"Clinton", Party::Democrat}});
    std::vector<Edge> edges{{"u1", "Nixon"}};
    try {
        ingest_edges(edges, roster);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        CHECK(std::string(e.what()).find("Nixon") != std::string::npos);
    }
}

TEST_CASE("ingest accepts an empty stream") {
    const auto roster = small_roster({{"Clinton", Party::Democrat}});
    const FollowMatrix m = ingest_edges({}, roster);
    CHECK(m.user_count() == 0);
    CHECK(follower_counts(m).sum() == 0);
}

TEST_CASE("ingest is idempotent under edge duplication") {
    const auto roster = small_roster({{"A", Party::Democrat},
                                      {"B", Party::Republican},
                                      {"C", Party::Republican}});
    std::vector<Edge> edges{{"u1", "A"}, {"u2", "B"}, {"u1", "C"}, {"u2", "B"}};
    std::vector<Edge> doubled = edges;
    doubled.insert(doubled.end(), edges.begin(), edges.end());
    const FollowMatrix once = ingest_edges(edges, roster);
    const FollowMatrix twice = ingest_edges(doubled, roster);
    REQUIRE(once.user_count() == twice.user_count());
    for (std::size_t u = 0; u < once.user_count(); ++u)
        CHECK(std::equal(once.row(u).begin(), once.row(u).end(), twice.row(u).begin(),
                         twice.row(u).end()));
}

TEST_CASE("follower_counts hand examples and permutation invariance") {
    const auto roster = small_roster({{"Clinton", Party::Democrat},
                                      {"Trump", Party::Republican}});
    const FollowMatrix m =
        matrix_from_rows(roster, {{"Clinton"}, {"Clinton", "Trump"}});
    const auto counts = follower_counts(m);
    CHECK(counts[0] == 2);
    CHECK(counts[1] == 1);
    CHECK(counts.sum() >= static_cast<std::int64_t>(m.user_count()));

    std::vector<Edge> edges{{"u1", "Clinton"}, {"u2", "Clinton"}, {"u2", "Trump"}};
    std::sort(edges.begin(), edges.end(),
              [](const Edge& a, const Edge& b) { return a.candidate_id < b.candidate_id; });
    std::mt19937 gen(7);
    for (int trial = 0; trial < 5; ++trial) {
        std::shuffle(edges.begin(), edges.end(), gen);
        const auto shuffled_counts = follower_counts(ingest_edges(edges, roster));
        CHECK((shuffled_counts.array() == counts.array()).all());
    }
}

TEST_CASE("follower_counts matches a brute-force column oracle on random matrices") {
    std::mt19937 gen(42);
    const auto roster = small_roster({{"A", Party::Democrat},
                                      {"B", Party::Democrat},
                                      {"C", Party::Republican},
                                      {"D", Party::Republican},
                                      {"E", Party::Republican}});
    std::vector<std::vector<std::string>> rows;
    std::uniform_int_distribution<int> coin(0, 1);
    for (int u = 0; u < 50; ++u) {
        std::vector<std::string> row;
        for (const auto& cand : roster.candidates())
            if (coin(gen)) row.push_back(cand.id);
        if (row.empty()) row.push_back("A");
        rows.push_back(row);
    }
    const FollowMatrix m = matrix_from_rows(roster, rows);
    const auto counts = follower_counts(m);

    // Independent per-column loop.
    for (std::size_t c = 0; c < roster.size(); ++c) {
        std::int64_t expected = 0;
        for (const auto& row : rows)
            expected += std::count(row.begin(), row.end(), roster[c].id);
        CHECK(counts[static_cast<Eigen::Index>(c)] == expected);
    }
}

TEST_CASE("engagement hand examples") {
    const auto roster = small_roster({{"A", Party::Democrat}, {"B", Party::Republican}});
    const FollowMatrix m = matrix_from_rows(roster, {{"A"}, {"A"}, {"A", "B"}});
    const auto rows = engagement_distribution(m);
    CHECK(rows[0].followers == 3);
    CHECK(rows[0].fraction[0] == doctest::Approx(2.0 / 3.0));
    CHECK(rows[0].fraction[1] == doctest::Approx(1.0 / 3.0));
    CHECK(rows[1].followers == 1);
    CHECK(rows[1].fraction[1] == doctest::Approx(1.0));
}

TEST_CASE("engagement saturates the 5+ bucket") {
    const auto roster = small_roster({{"A", Party::Democrat},
                                      {"B", Party::Democrat},
                                      {"C", Party::Republican},
                                      {"D", Party::Republican},
                                      {"E", Party::Republican}});
    std::vector<std::vector<std::string>> rows(4, {"A", "B", "C", "D", "E"});
    const auto engagement = engagement_distribution(matrix_from_rows(roster, rows));
    for (const auto& row : engagement) {
        CHECK(row.fraction[4] == doctest::Approx(1.0));
        CHECK(row.followers == 4);
    }
}

TEST_CASE("engagement flags zero-follower candidates instead of NaN") {
    const auto roster = small_roster({{"A", Party::Democrat}, {"Ghost", Party::Republican}});
    const auto engagement = engagement_distribution(matrix_from_rows(roster, {{"A"}}));
    CHECK_FALSE(engagement[1].has_followers());
    for (double f : engagement[1].fraction) CHECK(f == 0.0);
}

TEST_CASE("engagement matches an exhaustive per-user tally on a random matrix") {
    std::mt19937 gen(99);
    const std::size_t n_cands = 6;
    const auto roster = small_roster({{"c0", Party::Democrat},
                                      {"c1", Party::Democrat},
                                      {"c2", Party::Republican},
                                      {"c3", Party::Republican},
                                      {"c4", Party::Republican},
                                      {"c5", Party::Republican}});
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<std::vector<std::string>> rows;
    for (int u = 0; u < 100; ++u) {
        std::vector<std::string> row;
        for (std::size_t c = 0; c < n_cands; ++c)
            if (coin(gen)) row.push_back(roster[c].id);
        if (row.empty()) row.push_back("c0");
        rows.push_back(row);
    }
    const auto engagement = engagement_distribution(matrix_from_rows(roster, rows));

    for (std::size_t c = 0; c < n_cands; ++c) {
        std::array<std::int64_t, 5> tally{};
        std::int64_t followers = 0;
        for (const auto& row : rows) {
            if (std::find(row.begin(), row.end(), roster[c].id) == row.end()) continue;
            ++followers;
            ++tally[std::min<std::size_t>(row.size(), 5) - 1];
        }
        REQUIRE(engagement[c].followers == followers);
        double sum = 0.0;
        for (int b = 0; b < 5; ++b) {
            if (followers > 0)
                CHECK(engagement[c].fraction[b] ==
                      doctest::Approx(static_cast<double>(tally[b]) / followers).epsilon(1e-14));
            sum += engagement[c].fraction[b];
        }
        if (followers > 0) CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("partisan_class hand examples") {
    const auto roster = small_roster({{"Clinton", Party::Democrat},
                                      {"Sanders", Party::Democrat},
                                      {"Trump", Party::Republican}});
    const FollowMatrix m = matrix_from_rows(
        roster, {{"Clinton", "Sanders"}, {"Clinton", "Trump"}, {"Trump"}});
    CHECK(partisan_class(m.row(0), roster) == PartisanClass::DemocratFollower);
    CHECK(partisan_class(m.row(1), roster) == PartisanClass::IndependentFollower);
    CHECK(partisan_class(m.row(2), roster) == PartisanClass::RepublicanFollower);
    CHECK_THROWS_AS(partisan_class({}, roster), InputError);
}

TEST_CASE("partisan classes partition the population") {
    std::mt19937 gen(3);
    const auto roster = small_roster({{"A", Party::Democrat},
                                      {"B", Party::Democrat},
                                      {"C", Party::Republican},
                                      {"D", Party::Republican}});
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<std::vector<std::string>> rows;
    for (int u = 0; u < 200; ++u) {
        std::vector<std::string> row;
        for (const auto& cand : roster.candidates())
            if (coin(gen)) row.push_back(cand.id);
        if (row.empty()) row.push_back("D");
        rows.push_back(row);
    }
    const FollowMatrix m = matrix_from_rows(roster, rows);
    const auto counts = partisan_counts(m);
    CHECK(counts.total() == static_cast<std::int64_t>(m.user_count()));
}

TEST_CASE("follow_count_histogram hand examples and popcount oracle") {
    const auto roster = small_roster({{"A", Party::Democrat},
                                      {"B", Party::Republican},
                                      {"C", Party::Republican}});
    const FollowMatrix m = matrix_from_rows(roster, {{"A"}, {"A", "B"}, {"A", "B", "C"}});
    const auto hist = follow_count_histogram(m);
    CHECK(hist[0] == 1);
    CHECK(hist[1] == 1);
    CHECK(hist[2] == 1);
    CHECK(hist.sum() == 3);

    const FollowMatrix singles = matrix_from_rows(roster, {{"A"}, {"B"}, {"C"}, {"A"}});
    const auto hist2 = follow_count_histogram(singles);
    CHECK(hist2[0] == 4);
    CHECK(hist2[1] == 0);

    std::mt19937 gen(11);
    std::uniform_int_distribution<int> coin(0, 1);
    std::vector<std::vector<std::string>> rows;
    for (int u = 0; u < 80; ++u) {
        std::vector<std::string> row;
        for (const auto& cand : roster.candidates())
            if (coin(gen)) row.push_back(cand.id);
        if (row.empty()) row.push_back("B");
        rows.push_back(row);
    }
    const FollowMatrix random_m = matrix_from_rows(roster, rows);
    const auto hist3 = follow_count_histogram(random_m);
    Eigen::VectorX<std::int64_t> oracle = Eigen::VectorX<std::int64_t>::Zero(roster.size());
    for (std::size_t u = 0; u < random_m.user_count(); ++u) {
        int pop = 0;
        for (std::uint64_t mask = random_m.row_mask(u); mask; mask &= mask - 1) ++pop;
        ++oracle[pop - 1];
    }
    CHECK((hist3.array() == oracle.array()).all());
}

TEST_CASE("load_edges reports unknown candidates with line numbers") {
    const auto roster_path = write_temp(
        "edges_roster.csv", "candidate_id,display_name,party\nClinton,Hillary Clinton,D\n");
    const auto edges_path = write_temp("edges_bad.csv",
                                       "user_id,candidate_id\nu1,Clinton\nu2,Perot\n");
    const CandidateRoster roster = load_roster(roster_path);
    try {
        load_edges(edges_path, roster);
        FAIL("expected InputError");
    } catch (const InputError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":3") != std::string::npos);
        CHECK(msg.find("Perot") != std::string::npos);
    }
}
