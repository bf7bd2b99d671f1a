#pragma once

#include <Eigen/Core>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "followgraph/csv.hpp"

namespace followgraph::glm {

// Dense covariate matrix with named columns. Column 0 is the all-ones
// intercept when built through make_design. `scales` records the divisor
// applied to each column (1 when untouched) so predictions can map back to
// original units.
struct DesignMatrix {
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    std::vector<double> scales;

    Eigen::Index rows() const { return X.rows(); }
    Eigen::Index cols() const { return X.cols(); }
    std::optional<Eigen::Index> column(std::string_view name) const;
};

// Builds intercept + covariates (+ one-hot year dummies with the earliest
// year as reference) from a CSV table. Scale factors divide the named
// columns before fitting.
DesignMatrix make_design(const CsvTable& table, const std::vector<std::string>& covariates,
                         const std::optional<std::string>& year_column = std::nullopt,
                         const std::map<std::string, double>& scale = {});

// Numeric column extraction with row-level diagnostics.
Eigen::VectorXd numeric_column(const CsvTable& table, const std::string& name);

}  // namespace followgraph::glm
