#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace followgraph {

// SHA-256 hex digest. Used by run manifests to pin inputs and outputs.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file_hex(const std::filesystem::path& path);

}  // namespace followgraph
