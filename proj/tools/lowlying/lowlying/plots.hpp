#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lowlying::cli {

struct Series {
  std::filesystem::path csv;  // two columns after the header: x, y
  std::string title;
};

/// gnuplot script drawing `series` as steps/lines into <script>.png. The
/// script only reads the CSV files.
void write_gnuplot_script(const std::filesystem::path& script, const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<Series>& series);

}  // namespace lowlying::cli
