// Command-line front end: `peres test`, `peres simulate`, `peres table`.

#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "peres/commands.hpp"

namespace {

void emit(const peres::ReportDocument& doc, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << doc.dump();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report '" + path + "'");
  out << doc.dump();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-path and multi-particle Peres dimensionality tests"};
  app.require_subcommand(1);

  std::string output;
  std::vector<std::size_t> dims{2, 4};

  // test
  peres::TestOptions test_opts;
  std::size_t test_paths = 0;
  auto* test = app.add_subcommand("test", "Reconstruct F_n from a probability table and give a verdict");
  test->add_option("input", test_opts.input, "CSV table (setting,probability[,count,exposure])")
      ->required();
  test->add_option("--dims", dims, "Lower and higher number-system dimension")->expected(2);
  test->add_option("--paths", test_paths, "Number of paths (default: from the table)");
  test->add_option("--epsilon", test_opts.epsilon, "Tolerance for F = 1");
  test->add_option("--k-sigma", test_opts.k_sigma, "Standard errors required for F < 1 on noisy data");
  test->add_option("--resamples", test_opts.resamples, "Bootstrap resamples when counts are present");
  test->add_option("--seed", test_opts.seed, "Bootstrap seed");
  test->add_option("--output,-o", output, "Report path (default stdout)");

  // simulate
  peres::SimulateOptions sim_opts;
  std::string table_output;
  std::int64_t events = 0;
  bool noise_free = false;
  auto* sim = app.add_subcommand("simulate", "Simulate interferometer probabilities and evaluate F");
  sim->add_option("-d,--dim", sim_opts.dim, "Phase dimension d");
  sim->add_option("-n,--paths", sim_opts.paths, "Number of paths n");
  sim->add_option("-m,--particles", sim_opts.particles, "Number of particles m");
  auto* polar = sim->add_option("--polar", sim_opts.polar, "Per-path phase ANGLE:axis (e.g. pi/4:1,0,0)");
  auto* vec = sim->add_option("--vector", sim_opts.vectors, "Per-path unit vector c1,c2,...");
  polar->excludes(vec);
  auto* rnd = sim->add_flag("--random", "Random phases (default when no phases are given)");
  rnd->excludes(polar)->excludes(vec);
  sim->add_option("--amplitudes", sim_opts.amplitudes, "Per-path amplitudes")->delimiter(',');
  auto* ev = sim->add_option("--events", events, "Events per setting (Poisson shot noise)")
                 ->check(CLI::PositiveNumber);
  sim->add_flag("--noise-free", noise_free, "No shot noise (default)")->excludes(ev);
  sim->add_flag("--triples", sim_opts.include_triples, "Also simulate three-path settings");
  sim->add_option("--dims", dims, "Lower and higher number-system dimension")->expected(2);
  sim->add_option("--epsilon", sim_opts.epsilon, "Tolerance for F = 1");
  sim->add_option("--resamples", sim_opts.resamples, "Bootstrap resamples under noise");
  sim->add_option("--cap", sim_opts.cap, "Largest materialized Kronecker side length");
  sim->add_option("--seed", sim_opts.seed, "Seed for phases, noise and bootstrap");
  sim->add_option("--table-output", table_output, "Write the probability table CSV here");
  sim->add_option("--output,-o", output, "Report path (default stdout)");

  // table
  peres::TableOptions table_opts;
  std::vector<std::size_t> dim_range{2, 5};
  std::vector<std::size_t> path_range{3, 6};
  auto* table = app.add_subcommand("table", "Monte Carlo reproduction of the F_n admissibility table");
  table->add_option("--dim-range", dim_range, "First and last d")->expected(2);
  table->add_option("--path-range", path_range, "First and last n")->expected(2);
  table->add_option("--samples", table_opts.samples, "Samples per cell")->check(CLI::PositiveNumber);
  table->add_option("--epsilon", table_opts.epsilon, "A sample counts as F < 1 below 1 - epsilon");
  table->add_option("--seed", table_opts.seed, "Master seed");
  table->add_option("--workers", table_opts.workers, "Threads per cell");
  table->add_flag("--include-samples", table_opts.include_samples, "Put every F value in the report");
  table->add_option("--output,-o", output, "Report path (default stdout; table goes to stderr)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*test) {
      test_opts.dims = {dims[0], dims[1]};
      if (test_paths) test_opts.paths = test_paths;
      emit(peres::cmd_test(test_opts), output);
    } else if (*sim) {
      sim_opts.dims = {dims[0], dims[1]};
      if (*ev) sim_opts.events = events;
      auto result = peres::cmd_simulate(sim_opts);
      if (!table_output.empty()) peres::write_table_csv_file(table_output, result.table);
      emit(result.report, output);
    } else if (*table) {
      table_opts.dim_min = dim_range[0];
      table_opts.dim_max = dim_range[1];
      table_opts.paths_min = path_range[0];
      table_opts.paths_max = path_range[1];
      auto result = peres::cmd_table(table_opts);
      (output.empty() || output == "-" ? std::cerr : std::cout) << result.rendered;
      emit(result.report, output);
    }
  } catch (const peres::ParseError& e) {
    std::cerr << "peres: parse error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "peres: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
