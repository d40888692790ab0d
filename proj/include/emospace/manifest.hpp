#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace emospace {

// Provenance record written alongside every command's outputs: enough to
// trace any figure back to the exact inputs, seed, and checkpoint that
// produced it.
struct RunManifest {
    std::string command;
    nlohmann::json config = nlohmann::json::object();
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, digest
    std::vector<std::string> outputs;
    double duration_ms = 0.0;
};

// FNV-1a 64 of the file bytes, as 16 hex digits.
std::string file_digest_hex(const std::filesystem::path& path);

void add_input(RunManifest& manifest, const std::filesystem::path& path);
void add_output(RunManifest& manifest, const std::filesystem::path& path);

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path);

}  // namespace emospace
