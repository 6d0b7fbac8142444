#pragma once

#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sha1.hpp"
#include "vortex/csv.hpp"

namespace vortexctl {

// Run metadata, written as "key = value" lines. config_hash covers the
// configuration entries only (add), never measured results or output paths
// (note), so reruns of the same setup hash identically wherever they land.
class Sidecar {
  public:
    void add(std::string key, std::string value) {
        config_.emplace_back(std::move(key), std::move(value));
    }
    void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }
    void add(std::string key, double value) {
        add(std::move(key), vortex::csv::format(value));
    }
    void add(std::string key, long value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, int value) { add(std::move(key), std::to_string(value)); }
    void add(std::string key, bool value) {
        add(std::move(key), std::string(value ? "true" : "false"));
    }

    void note(std::string key, std::string value) {
        results_.emplace_back(std::move(key), std::move(value));
    }
    void note(std::string key, const char* value) { note(std::move(key), std::string(value)); }
    void note(std::string key, double value) {
        note(std::move(key), vortex::csv::format(value));
    }
    void note(std::string key, long value) { note(std::move(key), std::to_string(value)); }

    void write(const std::filesystem::path& path) const {
        std::string block;
        for (const auto& [k, v] : config_) block += k + " = " + v + "\n";
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
        os << block << "config_hash = " << sha1_hex(block) << "\n";
        for (const auto& [k, v] : results_) os << k << " = " << v << "\n";
        if (!os.flush()) throw std::runtime_error("failed writing " + path.string());
    }

  private:
    std::vector<std::pair<std::string, std::string>> config_;
    std::vector<std::pair<std::string, std::string>> results_;
};

}  // namespace vortexctl
