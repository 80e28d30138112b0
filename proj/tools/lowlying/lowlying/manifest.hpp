#pragma once

#include <chrono>
#include <filesystem>
#include <string>

#include "json.hpp"
#include "lowlying/options.hpp"

namespace lowlying::cli {

// Record of one run: enough to repeat it with the same binary.
class RunManifest {
 public:
  RunManifest(std::string command, const Options& o);

  nlohmann::json& extra() { return doc_["results"]; }
  void add_output(const std::filesystem::path& p);

  /// Writes to o.manifest, or next to the primary output as <out>.manifest.json.
  std::filesystem::path write(const std::filesystem::path& primary_output);

 private:
  nlohmann::json doc_;
  std::string manifest_path_;
  std::chrono::steady_clock::time_point start_;
};

}  // namespace lowlying::cli
