#include "followgraph/manifest.hpp"

#include "json.hpp"

#include "followgraph/digest.hpp"

namespace followgraph {

using nlohmann::json;

void RunManifest::add_input(const std::filesystem::path& path) {
    inputs.push_back({path.filename().string(), sha256_file_hex(path)});
}

void RunManifest::add_output(const std::string& name, std::string_view content) {
    outputs.push_back({name, sha256_hex(content)});
}

void RunManifest::add_config(std::string key, std::string value) {
    config.emplace_back(std::move(key), std::move(value));
}

std::string RunManifest::to_json_text() const {
    json files_in = json::array();
    for (const auto& f : inputs) files_in.push_back({{"name", f.name}, {"sha256", f.sha256}});
    json files_out = json::array();
    for (const auto& f : outputs) files_out.push_back({{"name", f.name}, {"sha256", f.sha256}});
    json cfg = json::object();
    for (const auto& [k, v] : config) cfg[k] = v;

    json j{{"command", command},
           {"tool_version", tool_version},
           {"config", cfg},
           {"inputs", files_in},
           {"outputs", files_out}};
    if (seed) j["seed"] = *seed;
    return j.dump(2) + "\n";
}

}  // namespace followgraph
