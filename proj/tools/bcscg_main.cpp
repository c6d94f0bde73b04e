#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bcscg/bench.hpp"

namespace {

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bcscg: box-constrained derivative-free solver and benchmark harness"};
  app.require_subcommand(1);

  // run: one solver run on one problem instance
  std::string run_problem, run_variant = "smooth", run_out;
  int run_dim = 0;
  double run_eps_f = 1e-3;
  long run_seed = 0;
  int run_budget_mult = 40;
  CLI::App* run = app.add_subcommand("run", "solve a single problem instance");
  run->add_option("--problem", run_problem, "catalog problem name")->required();
  run->add_option("--dim", run_dim, "problem dimension")->required();
  run->add_option("--variant", run_variant, "smooth|piecewise");
  run->add_option("--eps-f", run_eps_f, "relative noise level");
  run->add_option("--seed", run_seed, "starting-point seed");
  run->add_option("--budget-mult", run_budget_mult, "budget = mult * (n+1) evaluations");
  run->add_option("--out", run_out, "output directory for the run record")->required();

  // bench: full grid from a JSON config
  std::string bench_config, bench_out;
  int bench_jobs = 1;
  CLI::App* bench = app.add_subcommand("bench", "run a problem/dimension/variant/seed grid");
  bench->add_option("--config", bench_config, "JSON config file")->required();
  bench->add_option("--out", bench_out, "output directory for run records")->required();
  bench->add_option("--jobs", bench_jobs, "number of grid cells to run concurrently");

  // profile: performance profile CSV from a records directory
  std::string profile_in, profile_out, profile_aggregate = "seed";
  double profile_tau = 1e-2;
  CLI::App* profile = app.add_subcommand("profile", "compute performance profiles");
  profile->add_option("--in", profile_in, "records directory")->required();
  profile->add_option("--tau", profile_tau, "convergence tolerance in (0,1]");
  profile->add_option("--out", profile_out, "output CSV file")->required();
  profile->add_option("--aggregate", profile_aggregate,
                      "instance aggregation: seed (per-seed) or median (over seeds)");

  // curve: progress curve CSV for one problem instance family
  std::string curve_in, curve_problem, curve_variant, curve_out;
  int curve_dim = 0;
  CLI::App* curve = app.add_subcommand("curve", "compute median progress curves");
  curve->add_option("--in", curve_in, "records directory")->required();
  curve->add_option("--problem", curve_problem, "catalog problem name")->required();
  curve->add_option("--dim", curve_dim, "problem dimension")->required();
  curve->add_option("--variant", curve_variant, "smooth|piecewise")->required();
  curve->add_option("--out", curve_out, "output CSV file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      bcscg::SolverParams params;
      params.budget_multiplier = run_budget_mult;
      bcscg::RunRecord record =
          bcscg::run_single(run_problem, run_dim, run_variant, run_eps_f, run_seed, params);
      std::filesystem::create_directories(run_out);
      std::filesystem::path file =
          std::filesystem::path(run_out) / bcscg::record_filename(record);
      bcscg::save_record(record, file);
      std::cout << file.string() << "\n";
    } else if (bench->parsed()) {
      bcscg::BenchConfig config = bcscg::config_from_json(read_file(bench_config));
      auto written = bcscg::run_experiment(config, bench_out, bench_jobs);
      std::cout << written.size() << " records written to " << bench_out << "\n";
    } else if (profile->parsed()) {
      auto records = bcscg::load_records(profile_in);
      bcscg::ProfileAggregation aggregation = profile_aggregate == "median"
                                                  ? bcscg::ProfileAggregation::MedianOverSeeds
                                                  : bcscg::ProfileAggregation::PerSeed;
      bcscg::ProfileTable table = bcscg::performance_profile(records, profile_tau, aggregation);
      bcscg::write_profile_csv(table, profile_out);
      std::cout << profile_out << "\n";
    } else if (curve->parsed()) {
      auto records = bcscg::load_records(curve_in);
      bcscg::write_curve_csv(records, curve_problem, curve_dim, curve_variant, curve_out);
      std::cout << curve_out << "\n";
    }
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
