#include "lowlying/manifest.hpp"

#include <fstream>

namespace lowlying::cli {

RunManifest::RunManifest(std::string command, const Options& o)
    : manifest_path_(o.manifest), start_(std::chrono::steady_clock::now()) {
  doc_["command"] = std::move(command);
  doc_["seed"] = o.seed;
  doc_["label"] = o.label;
  doc_["x_max"] = o.x_max;
  doc_["jobs"] = o.jobs;
  doc_["matrices"] = o.matrices;
  doc_["tolerances"] = {{"afe", 1e-12}, {"zero", o.tolerance}, {"z_imag", 1e-6}};
  doc_["flags"] = {{"mode", o.mode},
                   {"grid", o.grid},
                   {"method", o.method},
                   {"group", o.group},
                   {"n", o.n},
                   {"count", o.count},
                   {"zeros", o.zeros},
                   {"t_max", o.t_max},
                   {"include_central_zeros", o.include_central_zeros},
                   {"lowest", o.lowest},
                   {"heart", o.heart},
                   {"diamond", o.diamond},
                   {"coeff_file", o.coeff_file},
                   {"cache_dir", o.cache_dir}};
  doc_["rng"] = "mt19937_64 per (seed, draw), keyed by SplitMix64; normals by Box-Muller";
  doc_["outputs"] = nlohmann::json::array();
  doc_["results"] = nlohmann::json::object();
}

void RunManifest::add_output(const std::filesystem::path& p) { doc_["outputs"].push_back(p.string()); }

std::filesystem::path RunManifest::write(const std::filesystem::path& primary_output) {
  doc_["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  std::filesystem::path path = manifest_path_.empty()
                                   ? std::filesystem::path(primary_output.string() + ".manifest.json")
                                   : std::filesystem::path(manifest_path_);
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  out << doc_.dump(2) << '\n';
  return path;
}

}  // namespace lowlying::cli
