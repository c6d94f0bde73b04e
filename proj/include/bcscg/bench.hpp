#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bcscg/params.hpp"
#include "bcscg/problems.hpp"
#include "bcscg/solver.hpp"

namespace bcscg {

struct MissingCell : std::runtime_error {
  explicit MissingCell(const std::string& what) : std::runtime_error(what) {}
};

// One solver run on one problem instance. best_history pairs are raw
// (evaluation count, best value so far), strictly increasing in count and
// nonincreasing in value; initial_value equals the first history value.
struct RunRecord {
  std::string problem;
  int dimension = 0;
  std::string variant;
  double eps_f = 0.0;
  long seed = 0;
  std::string solver;
  double initial_value = 0.0;
  std::vector<std::pair<long, double>> best_history;
  long budget = 0;
};

std::string to_json(const RunRecord& record);
RunRecord record_from_json(const std::string& text);
void save_record(const RunRecord& record, const std::filesystem::path& file);
RunRecord load_record(const std::filesystem::path& file);
std::vector<RunRecord> load_records(const std::filesystem::path& dir);
std::string record_filename(const RunRecord& record);

// f0 - fs >= (1 - tau) (f0 - fL), evaluated literally.
bool convergence_test(double f0, double fs, double fL, double tau);

// cost / best_cost for converged solvers, +infinity otherwise.
double performance_ratio(double cost, double best_cost, bool converged);

enum class ProfileAggregation { PerSeed, MedianOverSeeds };

struct ProfileTable {
  double tau = 0.0;
  // (solver, instance id) -> performance ratio; infinity marks non-convergence.
  std::map<std::pair<std::string, std::string>, double> ratios;
  std::vector<double> alpha_grid;
  std::map<std::string, std::vector<double>> curves;  // solver -> rho_s per grid point
};

// Performance profiles over complete (solver x instance) grids. With PerSeed
// aggregation every (problem, dimension, variant, seed) cell is an instance;
// with MedianOverSeeds the seedwise median trajectory represents each
// (problem, dimension, variant). Throws MissingCell on incomplete grids.
ProfileTable performance_profile(const std::vector<RunRecord>& records, double tau,
                                 ProfileAggregation aggregation = ProfileAggregation::PerSeed);

// Median best value across records at each normalized checkpoint c, read off
// each record's history at the largest count <= c * (n + 1). A checkpoint
// before any evaluation yields the initial value. Records must share
// (problem, dimension, variant, solver).
std::vector<std::pair<double, double>> progress_curve(const std::vector<RunRecord>& records,
                                                      const std::vector<double>& checkpoints);

struct BenchConfig {
  std::vector<std::string> problems;
  std::vector<int> dims;
  std::vector<std::string> variants;
  std::vector<long> seeds;
  SolverParams params;
  double eps_f = 1e-3;
};

BenchConfig config_from_json(const std::string& text);
SolverParams params_from_json(const std::string& text);

// Solves one grid cell: seeded uniform start, catalog problem, solver run.
RunRecord run_single(const std::string& problem, int dim, const std::string& variant,
                     double eps_f, long seed, const SolverParams& params);

// Runs the full grid and persists one JSON record per cell; cells are
// independent, so up to `jobs` of them run concurrently. A failing cell is
// reported on stderr with its coordinates and skipped.
std::vector<std::filesystem::path> run_experiment(const BenchConfig& config,
                                                  const std::filesystem::path& out_dir,
                                                  int jobs = 1);

void write_profile_csv(const ProfileTable& table, const std::filesystem::path& file);

// CSV columns: solver,normalized_evals,median_best for every solver present.
void write_curve_csv(const std::vector<RunRecord>& records, const std::string& problem, int dim,
                     const std::string& variant, const std::filesystem::path& file);

}  // namespace bcscg
