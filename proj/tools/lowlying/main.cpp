#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "lowlying/errors.hpp"
#include "lowlying/options.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kConvergence = 3;
constexpr int kMissingData = 4;

}  // namespace

int main(int argc, char** argv) {
  using lowlying::cli::Options;
  Options o;

  CLI::App app{"Low-lying zeros of quadratic twists against random matrix models"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "flat `key = value` file; command-line flags take precedence");

  auto* shared = app.add_option_group("Shared");
  shared->add_option("--seed", o.seed, "master RNG seed")->capture_default_str();
  shared->add_option("--x-max", o.x_max, "discriminant bound X")->capture_default_str();
  shared->add_option("--grid", o.grid, "cutoff grid: `a,b,c` or `geom:start:ratio:count`");
  shared->add_option("--mode", o.mode, "zeros_vs_excised or values_vs_charpoly")->capture_default_str();
  shared->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  shared->add_option("--cache-dir", o.cache_dir, "zero and central-value caches (empty disables)")
      ->capture_default_str();
  shared->add_option("--tolerance", o.tolerance, "zero-finder tolerance on |Z|")->capture_default_str();
  shared->add_option("--coeff-file", o.coeff_file, "coefficient CSV for file-backed forms");
  shared->add_option("--out", o.out, "output file (directory for compare)");
  shared->add_option("--manifest", o.manifest, "manifest path (default <out>.manifest.json)");

  auto* fam = app.add_option_group("Family");
  fam->add_option("--label", o.label, "11.2.a.a, 7.3.b.a, 13.2.e.a, 7.4.a.a, 3.6.a.a or 3.8.a.a");
  fam->add_option("--heart", o.heart, "self-CM families: +1 or -1")->capture_default_str();
  fam->add_option("--diamond", o.diamond, "non-self-dual families: residue class of D")->capture_default_str();
  fam->add_option("--zeros", o.zeros, "zeros per twist")->capture_default_str();
  fam->add_option("--t-max", o.t_max, "height searched for zeros")->capture_default_str();
  fam->add_flag("--include-central-zeros", o.include_central_zeros,
                "keep twists with L(1/2) = 0 in zero statistics");
  fam->add_option("--method", o.method, "central values: direct, kz or both")->capture_default_str();

  auto* ens = app.add_option_group("Ensemble");
  ens->add_option("--group", o.group, "U, SO or USp")->capture_default_str();
  ens->add_option("--n", o.n, "matrix size")->capture_default_str();
  ens->add_option("--count", o.count, "number of draws")->capture_default_str();
  ens->add_option("--lowest", o.lowest, "lowest phase: positive or absolute")->capture_default_str();
  ens->add_option("--histogram", o.histogram, "also write the folded eigenphase density here");
  ens->add_option("--bins", o.bins, "histogram bins")->capture_default_str();
  ens->add_option("--matrices", o.matrices, "matrices per cutoff candidate or comparison")->capture_default_str();
  ens->add_option("--out-dir", o.out_dir, "compare output directory")->capture_default_str();

  int (*command)(const Options&) = nullptr;
  const auto verb = [&](const char* name, const char* help, int (*f)(const Options&)) {
    app.add_subcommand(name, help)->callback([&command, f] { command = f; });
  };
  verb("sample-ensemble", "Haar draws: lowest phase and |det(I - A)| per draw",
       lowlying::cli::cmd_sample_ensemble);
  verb("compute-zeros", "lowest zeros of every admissible twist", lowlying::cli::cmd_compute_zeros);
  verb("central-values", "central values by direct evaluation and/or Kohnen-Zagier",
       lowlying::cli::cmd_central_values);
  verb("estimate-cutoff", "CDF discrepancy over a grid of c_std candidates", lowlying::cli::cmd_estimate_cutoff);
  verb("compare", "normalized zeros vs eigenphases, small vs large conductor", lowlying::cli::cmd_compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return command(o);
  } catch (const lowlying::ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what() << '\n';
    return kConvergence;
  } catch (const lowlying::MissingDataError& e) {
    std::cerr << "missing data: " << e.what() << '\n';
    return kMissingData;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
