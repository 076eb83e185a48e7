#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace randgroup::cli {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a over raw bytes; the manifests use it as a cheap content digest.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

inline std::string digest_text(std::string_view bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return std::move(out).str();
}

inline void write_file_bytes(const std::string& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path);
}

/// Accumulates everything needed to reproduce a run: the command, its full
/// parameter set, the seed, and digests of every file read or written.
/// Saved next to the primary output as <output>.manifest.json.
class ManifestBuilder {
  public:
    ManifestBuilder(std::string command, nlohmann::json parameters)
        : command_(std::move(command)), parameters_(std::move(parameters)) {}

    void set_seed(std::uint64_t seed) { seed_ = nlohmann::json(seed); }

    void record_input(const std::string& path) {
        inputs_[path] = digest_text(read_file_bytes(path));
    }

    /// Writes the bytes to `path` and records their digest as an output.
    void write_output(const std::string& path, std::string_view bytes) {
        write_file_bytes(path, bytes);
        outputs_[path] = digest_text(bytes);
        if (primary_output_.empty()) primary_output_ = path;
    }

    void save() const {
        if (primary_output_.empty())
            throw std::logic_error("manifest: no output was written");
        nlohmann::json m;
        m["command"] = command_;
        m["parameters"] = parameters_;
        m["seed"] = seed_;
        m["tool_version"] = kToolVersion;
        m["inputs"] = inputs_;
        m["outputs"] = outputs_;
        write_file_bytes(primary_output_ + ".manifest.json", m.dump(2) + "\n");
    }

  private:
    std::string command_;
    nlohmann::json parameters_;
    nlohmann::json seed_;
    nlohmann::json inputs_ = nlohmann::json::object();
    nlohmann::json outputs_ = nlohmann::json::object();
    std::string primary_output_;
};

}  // namespace randgroup::cli
