#include "followgraph/shares.hpp"

#include "followgraph/errors.hpp"

namespace followgraph {

Rational follower_weight(std::span<const std::uint32_t> row) {
    if (row.empty()) throw InputError("follower_weight: empty follow set");
    return Rational(1, static_cast<std::int64_t>(row.size()));
}

Eigen::VectorXd raw_shares(const FollowMatrix& m) {
    if (m.user_count() == 0) throw InputError("no followers");
    Eigen::VectorX<std::int64_t> counts = follower_counts(m);
    const double total = static_cast<double>(counts.sum());
    Eigen::VectorXd shares(counts.size());
    for (Eigen::Index j = 0; j < counts.size(); ++j)
        shares[j] = static_cast<double>(counts[j]) / total;
    return shares;
}

ShareReport weighted_shares(const FollowMatrix& m,
                            std::span<const std::string> top_candidate_ids) {
    if (m.user_count() == 0) throw InputError("no followers");
    const std::size_t k = m.candidate_count();

    std::vector<Rational> weighted_sum(k);
    for (std::size_t i = 0; i < m.user_count(); ++i) {
        auto row = m.row(i);
        const Rational w = follower_weight(row);
        for (auto c : row) weighted_sum[c] += w;
    }

    Rational denom;
    for (const auto& w : weighted_sum) denom += w;
    // Each user contributes |row| * (1/|row|) = 1, so the total weight is
    // exactly the user count.
    const Rational n_users = Rational::from_int(static_cast<std::int64_t>(m.user_count()));
    if (denom != n_users)
        throw ModelError("weighted share denominator " + denom.str() +
                         " != user count " + n_users.str());

    Eigen::VectorX<std::int64_t> counts = follower_counts(m);
    const Rational count_total = Rational::from_int(counts.sum());

    ShareReport report;
    report.raw_exact.reserve(k);
    report.weighted_exact.reserve(k);
    report.raw_share.resize(static_cast<Eigen::Index>(k));
    report.weighted_share.resize(static_cast<Eigen::Index>(k));
    for (std::size_t j = 0; j < k; ++j) {
        report.raw_exact.push_back(Rational::from_int(counts[static_cast<Eigen::Index>(j)]) /
                                   count_total);
        report.weighted_exact.push_back(weighted_sum[j] / denom);
        report.raw_share[static_cast<Eigen::Index>(j)] = report.raw_exact.back().to_double();
        report.weighted_share[static_cast<Eigen::Index>(j)] =
            report.weighted_exact.back().to_double();
    }

    for (const auto& id : top_candidate_ids) {
        auto col = m.roster().column_of(id);
        if (!col) throw InputError("unknown top candidate id '" + id + "'");
        report.top_ids.push_back(id);
        report.top_raw_exact += report.raw_exact[*col];
        report.top_weighted_exact += report.weighted_exact[*col];
    }
    return report;
}

}  // namespace followgraph
