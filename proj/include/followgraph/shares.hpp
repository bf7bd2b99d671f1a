#pragma once

#include <Eigen/Core>
#include <span>
#include <string>
#include <vector>

#include "followgraph/follow_matrix.hpp"
#include "followgraph/rational.hpp"

namespace followgraph {

// weight = 1 / (number of candidates followed), exact.
Rational follower_weight(std::span<const std::uint32_t> row);

// Raw and reciprocal-weighted candidate shares. Accumulation is exact
// rational; the decimal vectors are conversions of the exact values. When a
// top-candidate subset is supplied, its aggregate share is carried along.
struct ShareReport {
    std::vector<Rational> raw_exact;
    std::vector<Rational> weighted_exact;
    Eigen::VectorXd raw_share;
    Eigen::VectorXd weighted_share;

    std::vector<std::string> top_ids;
    Rational top_raw_exact;
    Rational top_weighted_exact;
};

Eigen::VectorXd raw_shares(const FollowMatrix& m);

ShareReport weighted_shares(const FollowMatrix& m,
                            std::span<const std::string> top_candidate_ids = {});

}  // namespace followgraph
