#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace followgraph {

inline constexpr const char* kToolVersion = "0.1.0";

// Per-command provenance record written next to every output. Paths are
// reduced to basenames and there are no timestamps, so a rerun on identical
// inputs produces an identical manifest.
struct RunManifest {
    std::string command;
    std::string tool_version = kToolVersion;
    std::optional<std::uint64_t> seed;
    std::vector<std::pair<std::string, std::string>> config;  // flag -> value

    struct FileDigest {
        std::string name;    // basename
        std::string sha256;
    };
    std::vector<FileDigest> inputs;
    std::vector<FileDigest> outputs;

    void add_input(const std::filesystem::path& path);
    void add_output(const std::string& name, std::string_view content);
    void add_config(std::string key, std::string value);

    std::string to_json_text() const;
};

}  // namespace followgraph
