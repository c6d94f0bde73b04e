#include "bcscg/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace bcscg {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

}  // namespace

std::string to_json(const RunRecord& record) {
  ordered_json j;
  j["problem"] = record.problem;
  j["dimension"] = record.dimension;
  j["variant"] = record.variant;
  j["eps_f"] = record.eps_f;
  j["seed"] = record.seed;
  j["solver"] = record.solver;
  j["initial_value"] = record.initial_value;
  ordered_json history = ordered_json::array();
  for (const auto& [count, value] : record.best_history)
    history.push_back(ordered_json::array({count, value}));
  j["best_history"] = std::move(history);
  j["budget"] = record.budget;
  return j.dump(2) + "\n";
}

RunRecord record_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  RunRecord record;
  record.problem = j.at("problem").get<std::string>();
  record.dimension = j.at("dimension").get<int>();
  record.variant = j.at("variant").get<std::string>();
  record.eps_f = j.at("eps_f").get<double>();
  record.seed = j.at("seed").get<long>();
  record.solver = j.at("solver").get<std::string>();
  record.initial_value = j.at("initial_value").get<double>();
  for (const auto& entry : j.at("best_history"))
    record.best_history.emplace_back(entry.at(0).get<long>(), entry.at(1).get<double>());
  record.budget = j.at("budget").get<long>();
  return record;
}

void save_record(const RunRecord& record, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << to_json(record);
}

RunRecord load_record(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot read " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return record_from_json(buffer.str());
}

std::vector<RunRecord> load_records(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::vector<RunRecord> records;
  records.reserve(files.size());
  for (const auto& file : files) records.push_back(load_record(file));
  return records;
}

std::string record_filename(const RunRecord& record) {
  std::ostringstream name;
  name << record.problem << "_n" << record.dimension << "_" << record.variant << "_seed"
       << record.seed << "_" << record.solver << ".json";
  return name.str();
}

bool convergence_test(double f0, double fs, double fL, double tau) {
  return f0 - fs >= (1.0 - tau) * (f0 - fL);
}

double performance_ratio(double cost, double best_cost, bool converged) {
  if (!converged) return std::numeric_limits<double>::infinity();
  return cost / best_cost;
}

namespace {

// Per-instance view of one solver's run used by the profile computation.
struct Trajectory {
  double initial = 0.0;
  double final_value = 0.0;
  std::vector<std::pair<long, double>> history;  // best-so-far per count
};

std::optional<long> first_convergence_count(double f0, double fL, double tau,
                                            const Trajectory& t) {
  for (const auto& [count, value] : t.history)
    if (convergence_test(f0, value, fL, tau)) return count;
  return std::nullopt;
}

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  std::size_t m = values.size() / 2;
  if (values.size() % 2 == 1) return values[m];
  return 0.5 * (values[m - 1] + values[m]);
}

double best_value_at(const RunRecord& record, double target_count) {
  double value = record.initial_value;
  for (const auto& [count, best] : record.best_history) {
    if (static_cast<double>(count) > target_count) break;
    value = best;
  }
  return value;
}

Trajectory from_record(const RunRecord& record) {
  Trajectory t;
  t.initial = record.initial_value;
  t.final_value =
      record.best_history.empty() ? record.initial_value : record.best_history.back().second;
  t.history = record.best_history;
  return t;
}

Trajectory median_trajectory(const std::vector<const RunRecord*>& group) {
  long max_count = 0;
  std::vector<double> initials;
  for (const RunRecord* record : group) {
    initials.push_back(record->initial_value);
    if (!record->best_history.empty())
      max_count = std::max(max_count, record->best_history.back().first);
  }
  Trajectory t;
  t.initial = median_of(initials);
  t.history.reserve(max_count);
  for (long count = 1; count <= max_count; ++count) {
    std::vector<double> slice;
    slice.reserve(group.size());
    for (const RunRecord* record : group)
      slice.push_back(best_value_at(*record, static_cast<double>(count)));
    t.history.emplace_back(count, median_of(slice));
  }
  t.final_value = t.history.empty() ? t.initial : t.history.back().second;
  return t;
}

}  // namespace

ProfileTable performance_profile(const std::vector<RunRecord>& records, double tau,
                                 ProfileAggregation aggregation) {
  // instance id -> solver -> trajectory
  std::map<std::string, std::map<std::string, Trajectory>> instances;
  std::set<std::string> solvers;

  if (aggregation == ProfileAggregation::PerSeed) {
    for (const RunRecord& record : records) {
      std::ostringstream id;
      id << record.problem << "|n" << record.dimension << "|" << record.variant << "|seed"
         << record.seed;
      auto [it, inserted] = instances[id.str()].emplace(record.solver, from_record(record));
      if (!inserted)
        throw MissingCell("duplicate cell: solver " + record.solver + " on " + id.str());
      solvers.insert(record.solver);
    }
  } else {
    std::map<std::string, std::map<std::string, std::vector<const RunRecord*>>> groups;
    for (const RunRecord& record : records) {
      std::ostringstream id;
      id << record.problem << "|n" << record.dimension << "|" << record.variant;
      groups[id.str()][record.solver].push_back(&record);
      solvers.insert(record.solver);
    }
    for (const auto& [id, by_solver] : groups)
      for (const auto& [solver, group] : by_solver)
        instances[id].emplace(solver, median_trajectory(group));
  }

  if (instances.empty()) throw MissingCell("no records");
  for (const auto& [id, by_solver] : instances)
    for (const std::string& solver : solvers)
      if (!by_solver.count(solver))
        throw MissingCell("missing cell: solver " + solver + " on " + id);

  ProfileTable table;
  table.tau = tau;

  for (const auto& [id, by_solver] : instances) {
    double f0 = by_solver.begin()->second.initial;
    double f_best = std::numeric_limits<double>::infinity();
    for (const auto& [solver, trajectory] : by_solver)
      f_best = std::min(f_best, trajectory.final_value);

    std::map<std::string, std::optional<long>> cost;
    std::optional<long> best_cost;
    for (const auto& [solver, trajectory] : by_solver) {
      cost[solver] = first_convergence_count(f0, f_best, tau, trajectory);
      if (cost[solver] && (!best_cost || *cost[solver] < *best_cost)) best_cost = cost[solver];
    }
    for (const auto& [solver, w] : cost) {
      double ratio = w && best_cost
                         ? performance_ratio(static_cast<double>(*w),
                                             static_cast<double>(*best_cost), true)
                         : performance_ratio(0.0, 1.0, false);
      table.ratios[{solver, id}] = ratio;
    }
  }

  double max_finite = 1.0;
  for (const auto& [key, ratio] : table.ratios)
    if (std::isfinite(ratio)) max_finite = std::max(max_finite, ratio);

  const int grid_size = 256;
  table.alpha_grid.resize(grid_size);
  for (int i = 0; i < grid_size; ++i)
    table.alpha_grid[i] = std::exp(std::log(max_finite) * i / (grid_size - 1));
  table.alpha_grid.front() = 1.0;
  table.alpha_grid.back() = max_finite;

  const double instance_count = static_cast<double>(instances.size());
  for (const std::string& solver : solvers) {
    std::vector<double>& curve = table.curves[solver];
    curve.resize(grid_size, 0.0);
    for (int i = 0; i < grid_size; ++i) {
      long solved = 0;
      for (const auto& [key, ratio] : table.ratios)
        if (key.first == solver && ratio <= table.alpha_grid[i]) ++solved;
      curve[i] = static_cast<double>(solved) / instance_count;
    }
  }
  return table;
}

std::vector<std::pair<double, double>> progress_curve(const std::vector<RunRecord>& records,
                                                      const std::vector<double>& checkpoints) {
  if (records.empty()) throw std::invalid_argument("progress_curve: no records");
  const int n = records.front().dimension;

  std::vector<std::pair<double, double>> curve;
  curve.reserve(checkpoints.size());
  for (double checkpoint : checkpoints) {
    double target = checkpoint * (n + 1);
    std::vector<double> values;
    values.reserve(records.size());
    for (const RunRecord& record : records) values.push_back(best_value_at(record, target));
    curve.emplace_back(checkpoint, median_of(values));
  }
  return curve;
}

SolverParams params_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SolverParams params;
  if (j.contains("rho")) params.rho = j["rho"].get<double>();
  if (j.contains("tau_l")) params.tau_l = j["tau_l"].get<double>();
  if (j.contains("tau_u")) params.tau_u = j["tau_u"].get<double>();
  if (j.contains("eps")) params.eps = j["eps"].get<double>();
  if (j.contains("eps2")) params.eps2 = j["eps2"].get<double>();
  if (j.contains("vicinity_count_fraction"))
    params.vicinity_count_fraction = j["vicinity_count_fraction"].get<double>();
  if (j.contains("initial_radius_fraction"))
    params.initial_radius_fraction = j["initial_radius_fraction"].get<double>();
  if (j.contains("budget_multiplier")) params.budget_multiplier = j["budget_multiplier"].get<int>();
  if (j.contains("brent_max_iter")) params.brent_max_iter = j["brent_max_iter"].get<int>();
  if (j.contains("brent_tol")) params.brent_tol = j["brent_tol"].get<double>();
  return params;
}

BenchConfig config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  BenchConfig config;
  config.problems = j.at("problems").get<std::vector<std::string>>();
  config.dims = j.at("dims").get<std::vector<int>>();
  config.variants = j.at("variants").get<std::vector<std::string>>();
  config.seeds = j.at("seeds").get<std::vector<long>>();
  if (j.contains("eps_f")) config.eps_f = j["eps_f"].get<double>();
  if (j.contains("params")) config.params = params_from_json(j["params"].dump());
  return config;
}

RunRecord run_single(const std::string& problem, int dim, const std::string& variant,
                     double eps_f, long seed, const SolverParams& params) {
  NoisyVariant noisy{make_problem(problem, dim), variant_from_string(variant), eps_f};
  Eigen::VectorXd x0 = random_start(noisy.base.box, static_cast<unsigned long>(seed));
  RunTrace trace = solve(noisy.objective(), noisy.base.box, x0, params);

  RunRecord record;
  record.problem = problem;
  record.dimension = dim;
  record.variant = variant;
  record.eps_f = eps_f;
  record.seed = seed;
  record.solver = "bcscg-ds";
  record.initial_value = trace.best_history.front().second;
  record.best_history = trace.best_history;
  record.budget = static_cast<long>(params.budget_multiplier) * (dim + 1);
  return record;
}

std::vector<std::filesystem::path> run_experiment(const BenchConfig& config,
                                                  const std::filesystem::path& out_dir,
                                                  int jobs) {
  std::filesystem::create_directories(out_dir);

  struct Cell {
    std::string problem;
    int dim;
    std::string variant;
    long seed;
  };
  std::vector<Cell> cells;
  for (const std::string& problem : config.problems)
    for (int dim : config.dims)
      for (const std::string& variant : config.variants)
        for (long seed : config.seeds) cells.push_back({problem, dim, variant, seed});

  std::vector<std::optional<std::filesystem::path>> results(cells.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= cells.size()) return;
      const Cell& cell = cells[i];
      try {
        RunRecord record =
            run_single(cell.problem, cell.dim, cell.variant, config.eps_f, cell.seed,
                       config.params);
        std::filesystem::path file = out_dir / record_filename(record);
        save_record(record, file);
        results[i] = file;
      } catch (const std::exception& error) {
        std::cerr << "cell failed (" << cell.problem << ", n=" << cell.dim << ", "
                  << cell.variant << ", seed=" << cell.seed << "): " << error.what() << "\n";
      }
    }
  };

  const int thread_count = std::max(1, std::min<int>(jobs, static_cast<int>(cells.size())));
  if (thread_count == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(thread_count);
    for (int t = 0; t < thread_count; ++t) pool.emplace_back(worker);
    for (std::thread& thread : pool) thread.join();
  }

  std::vector<std::filesystem::path> written;
  for (const auto& file : results)
    if (file) written.push_back(*file);
  return written;
}

void write_profile_csv(const ProfileTable& table, const std::filesystem::path& file) {
  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "solver,alpha,rho\n";
  for (const auto& [solver, curve] : table.curves)
    for (std::size_t i = 0; i < curve.size(); ++i)
      out << solver << "," << format_double(table.alpha_grid[i]) << ","
          << format_double(curve[i]) << "\n";
}

void write_curve_csv(const std::vector<RunRecord>& records, const std::string& problem, int dim,
                     const std::string& variant, const std::filesystem::path& file) {
  std::map<std::string, std::vector<RunRecord>> by_solver;
  long max_budget = 0;
  for (const RunRecord& record : records) {
    if (record.problem != problem || record.dimension != dim || record.variant != variant)
      continue;
    by_solver[record.solver].push_back(record);
    max_budget = std::max(max_budget, record.budget);
  }
  if (by_solver.empty())
    throw std::invalid_argument("no records match the requested problem/dim/variant");

  std::vector<double> checkpoints;
  for (long c = 0; c <= max_budget / (dim + 1); ++c)
    checkpoints.push_back(static_cast<double>(c));

  std::ofstream out(file);
  if (!out) throw std::runtime_error("cannot write " + file.string());
  out << "solver,normalized_evals,median_best\n";
  for (const auto& [solver, group] : by_solver)
    for (const auto& [checkpoint, median] : progress_curve(group, checkpoints))
      out << solver << "," << format_double(checkpoint) << "," << format_double(median) << "\n";
}

}  // namespace bcscg
