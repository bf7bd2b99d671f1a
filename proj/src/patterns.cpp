#include "followgraph/patterns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "followgraph/errors.hpp"

namespace followgraph {

namespace {

std::vector<std::uint64_t> row_masks(const FollowMatrix& m) {
    if (m.candidate_count() > 64)
        throw InputError("pattern mining supports at most 64 candidates");
    std::vector<std::uint64_t> masks(m.user_count());
    for (std::size_t i = 0; i < m.user_count(); ++i) masks[i] = m.row_mask(i);
    return masks;
}

std::vector<std::string> mask_ids(std::uint64_t mask, const CandidateRoster& roster) {
    std::vector<std::string> ids;
    for (std::size_t c = 0; c < roster.size(); ++c)
        if (mask & (std::uint64_t(1) << c)) ids.push_back(roster[c].id);
    return ids;
}

// support desc, then id sequence lexicographic.
template <typename T>
void sort_by_support(std::vector<T>& items) {
    std::sort(items.begin(), items.end(), [](const T& a, const T& b) {
        if (a.count != b.count) return a.count > b.count;
        return a.ids < b.ids;
    });
    for (std::size_t i = 0; i < items.size(); ++i) items[i].rank = i + 1;
}

}  // namespace

std::vector<ItemsetResult> frequent_itemsets(const FollowMatrix& m, double min_support,
                                             std::size_t max_size) {
    if (!(min_support > 0.0 && min_support <= 1.0))
        throw InputError("min_support must be in (0, 1]");
    if (max_size < 1) throw InputError("max_size must be >= 1");
    if (m.user_count() == 0) return {};

    const auto masks = row_masks(m);
    const double n = static_cast<double>(masks.size());
    const std::size_t k = m.candidate_count();

    auto count_support = [&](std::uint64_t itemset) {
        std::int64_t count = 0;
        for (auto row : masks)
            if ((row & itemset) == itemset) ++count;
        return count;
    };
    auto frequent = [&](std::int64_t count) {
        return static_cast<double>(count) / n >= min_support;
    };

    std::vector<ItemsetResult> results;
    std::vector<std::uint64_t> level;  // frequent itemsets of the current size
    for (std::size_t c = 0; c < k; ++c) {
        std::uint64_t item = std::uint64_t(1) << c;
        std::int64_t count = count_support(item);
        if (frequent(count)) {
            level.push_back(item);
            results.push_back({item, mask_ids(item, m.roster()), count,
                               static_cast<double>(count) / n, 0});
        }
    }

    std::size_t size = 1;
    while (size < max_size && !level.empty()) {
        std::unordered_set<std::uint64_t> frequent_prev(level.begin(), level.end());
        std::vector<std::uint64_t> next;
        for (auto base : level) {
            // Extend past the highest set bit so each candidate is generated once.
            const int top = 63 - std::countl_zero(base);
            for (std::size_t c = static_cast<std::size_t>(top) + 1; c < k; ++c) {
                std::uint64_t cand = base | (std::uint64_t(1) << c);
                // Apriori pruning: all (size)-subsets must be frequent.
                bool prune = false;
                for (std::uint64_t bits = cand; bits != 0; bits &= bits - 1) {
                    std::uint64_t sub = cand & ~(bits & -bits);
                    if (!frequent_prev.contains(sub)) {
                        prune = true;
                        break;
                    }
                }
                if (prune) continue;
                std::int64_t count = count_support(cand);
                if (frequent(count)) {
                    next.push_back(cand);
                    results.push_back({cand, mask_ids(cand, m.roster()), count,
                                       static_cast<double>(count) / n, 0});
                }
            }
        }
        level = std::move(next);
        ++size;
    }

    sort_by_support(results);
    return results;
}

std::vector<ExclusivePattern> exclusive_pattern_shares(const FollowMatrix& m, std::size_t top_n) {
    if (top_n < 1) throw InputError("top_n must be >= 1");
    if (m.user_count() == 0) return {};

    const auto masks = row_masks(m);
    std::unordered_map<std::uint64_t, std::int64_t> tally;
    for (auto mask : masks) ++tally[mask];

    const double n = static_cast<double>(masks.size());
    std::vector<ExclusivePattern> patterns;
    patterns.reserve(tally.size());
    for (const auto& [mask, count] : tally)
        patterns.push_back({mask, mask_ids(mask, m.roster()), count,
                            static_cast<double>(count) / n, 0});
    sort_by_support(patterns);
    if (patterns.size() > top_n) patterns.resize(top_n);
    return patterns;
}

PhiMatrix pairwise_phi(const FollowMatrix& m) {
    const std::size_t n = m.user_count();
    if (n < 2) throw InputError("pairwise_phi requires at least 2 users");
    const std::size_t k = m.candidate_count();

    std::vector<std::int64_t> ones(k, 0);
    std::vector<std::vector<std::int64_t>> both(k, std::vector<std::int64_t>(k, 0));
    for (std::size_t i = 0; i < n; ++i) {
        auto row = m.row(i);
        for (std::size_t a = 0; a < row.size(); ++a) {
            ++ones[row[a]];
            for (std::size_t b = a + 1; b < row.size(); ++b) ++both[row[a]][row[b]];
        }
    }

    PhiMatrix phi;
    phi.value = Eigen::MatrixXd::Zero(k, k);
    phi.defined.setConstant(k, k, false);
    const double dn = static_cast<double>(n);
    for (std::size_t a = 0; a < k; ++a) {
        const bool a_varies = ones[a] > 0 && ones[a] < static_cast<std::int64_t>(n);
        if (a_varies) {
            phi.value(a, a) = 1.0;
            phi.defined(a, a) = true;
        }
        for (std::size_t b = a + 1; b < k; ++b) {
            const bool b_varies = ones[b] > 0 && ones[b] < static_cast<std::int64_t>(n);
            if (!a_varies || !b_varies) continue;
            const double ca = static_cast<double>(ones[a]);
            const double cb = static_cast<double>(ones[b]);
            const double cab = static_cast<double>(both[a][b]);
            const double r = (dn * cab - ca * cb) /
                             std::sqrt(ca * (dn - ca) * cb * (dn - cb));
            phi.value(a, b) = phi.value(b, a) = r;
            phi.defined(a, b) = phi.defined(b, a) = true;
        }
    }
    return phi;
}

}  // namespace followgraph
