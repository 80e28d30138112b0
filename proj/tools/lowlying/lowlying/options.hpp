#pragma once

#include <cstdint>
#include <string>

namespace lowlying::cli {

// Flags shared by every subcommand plus the per-command ones. Values come
// from the defaults below, then the --config file, then the command line.
struct Options {
  // shared
  std::uint64_t seed = 1;
  std::int64_t x_max = 1000;
  std::string grid;
  std::string mode = "zeros_vs_excised";
  int jobs = 1;
  std::string cache_dir = ".lowlying-cache";
  double tolerance = 1e-8;  // zero tolerance; also keys the caches
  std::string coeff_file;
  std::string out;
  std::string manifest;

  // family selection
  std::string label;
  int heart = 1;
  std::int64_t diamond = 1;

  // sample-ensemble
  std::string group = "U";
  int n = 50;
  std::size_t count = 100;
  std::string lowest = "positive";
  std::string histogram;
  std::size_t bins = 100;

  // compute-zeros / compare / estimate-cutoff
  std::size_t zeros = 1;
  double t_max = 12.0;
  bool include_central_zeros = false;

  // central-values
  std::string method = "direct";

  // estimate-cutoff / compare
  std::size_t matrices = 5000;
  std::string out_dir = "compare-out";
};

int cmd_sample_ensemble(const Options& o);
int cmd_compute_zeros(const Options& o);
int cmd_central_values(const Options& o);
int cmd_estimate_cutoff(const Options& o);
int cmd_compare(const Options& o);

}  // namespace lowlying::cli
