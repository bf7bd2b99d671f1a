#include "followgraph/glm/design.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "followgraph/errors.hpp"

namespace followgraph::glm {

std::optional<Eigen::Index> DesignMatrix::column(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<Eigen::Index>(i);
    return std::nullopt;
}

namespace {

double parse_number(const std::string& cell, const std::string& where) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw InputError(where + ": not a number: '" + cell + "'");
    return v;
}

}  // namespace

Eigen::VectorXd numeric_column(const CsvTable& table, const std::string& name) {
    const std::size_t col = table.require_column(name);
    Eigen::VectorXd out(static_cast<Eigen::Index>(table.rows.size()));
    for (std::size_t r = 0; r < table.rows.size(); ++r)
        out[static_cast<Eigen::Index>(r)] =
            parse_number(table.rows[r][col],
                         table.source + ": row " + std::to_string(r + 1) + ", column " + name);
    return out;
}

DesignMatrix make_design(const CsvTable& table, const std::vector<std::string>& covariates,
                         const std::optional<std::string>& year_column,
                         const std::map<std::string, double>& scale) {
    const Eigen::Index n = static_cast<Eigen::Index>(table.rows.size());
    if (n == 0) throw InputError(table.source + ": no data rows");

    for (const auto& [name, factor] : scale) {
        if (std::find(covariates.begin(), covariates.end(), name) == covariates.end())
            throw InputError("scale column '" + name + "' is not among the covariates");
        if (!(factor > 0)) throw InputError("scale factor for '" + name + "' must be positive");
    }

    std::vector<Eigen::VectorXd> columns;
    std::vector<std::string> names;
    std::vector<double> scales;

    columns.push_back(Eigen::VectorXd::Ones(n));
    names.emplace_back("intercept");
    scales.push_back(1.0);

    for (const auto& cov : covariates) {
        Eigen::VectorXd col = numeric_column(table, cov);
        double factor = 1.0;
        if (auto it = scale.find(cov); it != scale.end()) factor = it->second;
        if (factor != 1.0) col /= factor;
        columns.push_back(std::move(col));
        names.push_back(cov);
        scales.push_back(factor);
    }

    if (year_column) {
        Eigen::VectorXd years = numeric_column(table, *year_column);
        std::set<long> distinct;
        for (Eigen::Index i = 0; i < n; ++i) {
            double y = years[i];
            if (y != std::floor(y))
                throw InputError(table.source + ": non-integer year in column " + *year_column);
            distinct.insert(static_cast<long>(y));
        }
        // One-hot dummies, earliest year as the reference category.
        bool first = true;
        for (long y : distinct) {
            if (first) {
                first = false;
                continue;
            }
            Eigen::VectorXd dummy(n);
            for (Eigen::Index i = 0; i < n; ++i)
                dummy[i] = static_cast<long>(years[i]) == y ? 1.0 : 0.0;
            columns.push_back(std::move(dummy));
            names.push_back("year_" + std::to_string(y));
            scales.push_back(1.0);
        }
    }

    DesignMatrix design;
    design.X.resize(n, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c)
        design.X.col(static_cast<Eigen::Index>(c)) = columns[c];
    design.names = std::move(names);
    design.scales = std::move(scales);
    return design;
}

}  // namespace followgraph::glm
