#include "emospace/manifest.hpp"

#include <cstdio>

#include "emospace/errors.hpp"
#include "emospace/rng.hpp"
#include "emospace/text_io.hpp"

namespace emospace {

std::string file_digest_hex(const std::filesystem::path& path) {
    std::string bytes = read_file(path);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf);
}

void add_input(RunManifest& manifest, const std::filesystem::path& path) {
    manifest.inputs.emplace_back(path.string(), file_digest_hex(path));
}

void add_output(RunManifest& manifest, const std::filesystem::path& path) {
    manifest.outputs.push_back(path.string());
}

void write_manifest(const RunManifest& manifest,
                    const std::filesystem::path& path) {
    for (const std::string& out : manifest.outputs) {
        if (!std::filesystem::exists(out)) {
            throw IoError("manifest names missing output file: " + out);
        }
    }
    nlohmann::json doc;
    doc["command"] = manifest.command;
    doc["config"] = manifest.config;
    doc["seed"] = manifest.seed;
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& [file, digest] : manifest.inputs) {
        inputs.push_back({{"path", file}, {"fnv1a64", digest}});
    }
    doc["inputs"] = std::move(inputs);
    doc["outputs"] = manifest.outputs;
    doc["duration_ms"] = manifest.duration_ms;
    write_file(path, doc.dump(2) + "\n");
}

}  // namespace emospace
