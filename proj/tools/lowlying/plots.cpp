#include "lowlying/plots.hpp"

#include <fstream>

namespace lowlying::cli {

void write_gnuplot_script(const std::filesystem::path& script, const std::string& title, const std::string& xlabel,
                          const std::string& ylabel, const std::vector<Series>& series) {
  std::ofstream out(script);
  out << "set datafile separator ','\n"
      << "set key autotitle columnhead\n"
      << "set terminal pngcairo size 900,600\n"
      << "set output '" << script.stem().string() << ".png'\n"
      << "set title '" << title << "'\n"
      << "set xlabel '" << xlabel << "'\n"
      << "set ylabel '" << ylabel << "'\n"
      << "plot ";
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (i) out << ", \\\n     ";
    out << "'" << series[i].csv.filename().string() << "' using 1:2 with lines title '" << series[i].title << "'";
  }
  out << "\n";
}

}  // namespace lowlying::cli
