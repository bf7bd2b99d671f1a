#pragma once

#include <string>

#include "followgraph/glm/fit.hpp"

namespace followgraph::glm {

// Significance stars from the normal approximation:
// * p<0.05, ** p<0.01, *** p<0.001.
std::string significance_stars(double estimate, double std_error);

std::string fit_to_json(const ModelFit& fit);
ModelFit fit_from_json_text(const std::string& text);
ModelFit load_fit_json(const std::string& path);

// Plain-text coefficient table: estimate with stars, standard error in
// parentheses underneath, one block per class for multinomial fits.
std::string render_fit_table(const ModelFit& fit);

}  // namespace followgraph::glm
