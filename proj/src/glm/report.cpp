#include "followgraph/glm/report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "followgraph/errors.hpp"
#include "followgraph/glm/special.hpp"

namespace followgraph::glm {

using nlohmann::json;

std::string significance_stars(double estimate, double std_error) {
    if (!(std_error > 0) || !std::isfinite(std_error)) return "";
    const double p = two_sided_p(estimate / std_error);
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "";
}

std::string fit_to_json(const ModelFit& fit) {
    json coefficients = json::array();
    for (Eigen::Index i = 0; i < fit.estimates.size(); ++i) {
        const double se = fit.standard_errors[i];
        json c{{"name", fit.coefficient_names[static_cast<std::size_t>(i)]},
               {"estimate", fit.estimates[i]}};
        if (std::isfinite(se)) {
            c["std_error"] = se;
            c["z"] = fit.estimates[i] / se;
            c["p"] = two_sided_p(fit.estimates[i] / se);
            c["stars"] = significance_stars(fit.estimates[i], se);
        } else {
            c["std_error"] = nullptr;
        }
        coefficients.push_back(std::move(c));
    }
    json j{{"model", fit.model},
           {"coefficients", coefficients},
           {"log_likelihood", fit.log_likelihood},
           {"observations", fit.observations},
           {"converged", fit.converged},
           {"iterations", fit.iterations},
           {"gradient_norm", fit.gradient_norm},
           {"separation_warning", fit.separation_warning},
           {"design_columns", fit.design_columns},
           {"design_scales", fit.design_scales},
           {"year_column", fit.year_column.empty() ? json() : json(fit.year_column)}};
    return j.dump(2) + "\n";
}

ModelFit fit_from_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw InputError("fit JSON: invalid JSON");
    ModelFit fit;
    try {
        fit.model = j.at("model").get<std::string>();
        const auto& coefficients = j.at("coefficients");
        fit.estimates.resize(static_cast<Eigen::Index>(coefficients.size()));
        fit.standard_errors.resize(static_cast<Eigen::Index>(coefficients.size()));
        Eigen::Index i = 0;
        for (const auto& c : coefficients) {
            fit.coefficient_names.push_back(c.at("name").get<std::string>());
            fit.estimates[i] = c.at("estimate").get<double>();
            fit.standard_errors[i] = c.contains("std_error") && !c["std_error"].is_null()
                                         ? c["std_error"].get<double>()
                                         : std::numeric_limits<double>::quiet_NaN();
            ++i;
        }
        fit.log_likelihood = j.at("log_likelihood").get<double>();
        fit.observations = j.at("observations").get<std::size_t>();
        fit.converged = j.at("converged").get<bool>();
        fit.iterations = j.at("iterations").get<int>();
        fit.gradient_norm = j.at("gradient_norm").get<double>();
        fit.separation_warning = j.at("separation_warning").get<bool>();
        fit.design_columns = j.at("design_columns").get<std::vector<std::string>>();
        fit.design_scales = j.at("design_scales").get<std::vector<double>>();
        if (j.contains("year_column") && !j["year_column"].is_null())
            fit.year_column = j["year_column"].get<std::string>();
    } catch (const json::exception& e) {
        throw InputError(std::string("fit JSON: ") + e.what());
    }
    return fit;
}

ModelFit load_fit_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return fit_from_json_text(buffer.str());
}

namespace {

std::string fmt(double v, int precision = 4) {
    std::ostringstream os;
    os << std::setprecision(precision) << std::fixed << v;
    return os.str();
}

}  // namespace

std::string render_fit_table(const ModelFit& fit) {
    std::ostringstream os;
    os << "model: " << fit.model << "\n";

    std::string block;
    for (Eigen::Index i = 0; i < fit.estimates.size(); ++i) {
        std::string name = fit.coefficient_names[static_cast<std::size_t>(i)];
        // Multinomial names are "block:column"; print a heading per block.
        if (auto pos = name.find(':'); pos != std::string::npos) {
            const std::string prefix = name.substr(0, pos);
            if (prefix != block) {
                block = prefix;
                os << block << "\n";
            }
            name = name.substr(pos + 1);
            os << "  ";
        }
        const double se = fit.standard_errors[i];
        os << std::left << std::setw(24) << name << std::right << std::setw(12)
           << fmt(fit.estimates[i]) << significance_stars(fit.estimates[i], se) << "\n";
        if (auto pos = fit.coefficient_names[static_cast<std::size_t>(i)].find(':');
            pos != std::string::npos)
            os << "  ";
        os << std::left << std::setw(24) << "" << std::right << std::setw(12)
           << (std::isfinite(se) ? "(" + fmt(se) + ")" : "(n/a)") << "\n";
    }
    os << "\nObservations" << std::setw(24) << fit.observations << "\n";
    os << "Log-likelihood" << std::setw(22) << fmt(fit.log_likelihood, 2) << "\n";
    os << "Converged" << std::setw(27) << (fit.converged ? "yes" : "no") << "\n";
    if (fit.separation_warning)
        os << "Warning: possible quasi-separation (diverging coefficients)\n";
    os << "\nStandard errors in parentheses\n";
    os << "* p<0.05, ** p<0.01, *** p<0.001\n";
    return os.str();
}

}  // namespace followgraph::glm
