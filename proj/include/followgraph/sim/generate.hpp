#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "followgraph/follow_matrix.hpp"
#include "followgraph/glm/design.hpp"
#include "followgraph/sim/scenario.hpp"

namespace followgraph::sim {

// Count-regression draw: v ~ Gamma(1/alpha, alpha), y ~ Poisson(v * mu),
// mu = exp(x beta). Reproducible from the scenario seed.
struct NbData {
    Eigen::VectorXd y;
    glm::DesignMatrix X;
};
NbData simulate_nb(const Scenario& scenario);

// Class draw from the exact three-class probabilities.
struct MnlData {
    std::vector<PartisanClass> classes;
    glm::DesignMatrix X;
};
MnlData simulate_mnl(const Scenario& scenario);

// Data files for the fit commands. Covariates are written with full
// precision so a fit on the file reproduces a fit on the in-memory data.
std::string nb_data_to_csv(const NbData& data);
std::string mnl_data_to_csv(const MnlData& data);

// Population emission: roster.csv, edges.csv, profiles.jsonl and (when a
// gender plan is present) image_stub.csv, all in the formats the analysis
// commands ingest. Planted pattern fractions, partisan mix and channel
// coverage are exact, not sampled.
struct GeneratedFile {
    std::string name;
    std::string content;
};
std::vector<GeneratedFile> simulate_population_files(const Scenario& scenario);

// Convenience wrapper writing the files into a directory.
std::vector<std::filesystem::path> simulate_population(const Scenario& scenario,
                                                       const std::filesystem::path& out_dir);

}  // namespace followgraph::sim
