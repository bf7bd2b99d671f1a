#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "followgraph/follow_matrix.hpp"

namespace followgraph {

// Itemset over roster columns, as a bitmask plus the candidate ids in column
// order. `support` uses containment semantics: the fraction of users whose
// follow set is a superset of the itemset.
struct ItemsetResult {
    std::uint64_t mask = 0;
    std::vector<std::string> ids;
    std::int64_t count = 0;
    double support = 0.0;
    std::size_t rank = 0;
};

// Levelwise Apriori. Returns every itemset of size <= max_size with
// support >= min_support, sorted by support descending, ties broken
// lexicographically on the id sequence. Requires at most 64 candidates.
std::vector<ItemsetResult> frequent_itemsets(const FollowMatrix& m, double min_support,
                                             std::size_t max_size);

// Exact-set semantics: frequency table of whole follow sets, descending,
// truncated to the top_n most frequent.
struct ExclusivePattern {
    std::uint64_t mask = 0;
    std::vector<std::string> ids;
    std::int64_t count = 0;
    double fraction = 0.0;
    std::size_t rank = 0;
};

std::vector<ExclusivePattern> exclusive_pattern_shares(const FollowMatrix& m, std::size_t top_n);

// Pearson correlations between the binary follow columns (the phi
// coefficient). Constant columns give undefined entries, flagged rather
// than NaN.
struct PhiMatrix {
    Eigen::MatrixXd value;
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> defined;
};

PhiMatrix pairwise_phi(const FollowMatrix& m);

}  // namespace followgraph
