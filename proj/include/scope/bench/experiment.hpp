#pragma once

#include "scope/datagen.hpp"
#include "scope/splicing.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace scope::bench {

/// Malformed or unsupported experiment configuration (CLI exit code 1).
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Model { linear, logistic, ising };
enum class Method { scope, iht, grahtp1, grahtp2, grasp };

std::string to_string(Model m);
std::string to_string(Method m);
Model parse_model(const std::string& name);
/// Rejects the reserved "gurobi" and "lasso" slots with an explanatory message.
Method parse_method(const std::string& name);

/// One experiment table of a config file. Grid axes are n, p, s and k_max;
/// for the Ising model p counts spins and s counts edges.
struct ExperimentConfig {
  std::string name = "experiment";
  Model model = Model::linear;
  std::vector<Index> n;
  std::vector<Index> p;
  std::vector<Index> s;
  std::vector<Index> k_max;  // empty: k_max = s
  double snr = 1.0;
  SnrConvention snr_convention = SnrConvention::per_sample;
  double rho = 0.6;
  std::optional<double> signal_magnitude;  // default 100 (linear, logistic) or 0.5 (ising)
  bool standardize_response = true;
  bool orthonormal_design = false;
  int replications = 1;
  std::vector<Method> methods;
  std::uint64_t base_seed = 0;
  std::string output;  // optional default output path

  double iht_step = 1.0;
  std::optional<double> grahtp1_step;  // overrides the 1/(2M) estimate
  int max_iter = 500;                  // baselines
  int max_outer_iter = 100;            // SCOPE

  double magnitude() const;
  void validate() const;
};

/// One point of an experiment grid.
struct GridPoint {
  Index n = 0;
  Index p = 0;
  Index s = 0;
  Index k_max = 0;
};

struct TrialRecord {
  std::string experiment;
  Model model = Model::linear;
  GridPoint point;
  std::uint64_t seed = 0;
  Method method = Method::scope;
  double accuracy = 0.0;
  double runtime_ms = 0.0;
  double objective = 0.0;
  int outer_iterations = 0;
  bool converged = false;
  SupportSet support;
  std::string error;  // non-empty when the solver threw
};

/// |recovered ∩ truth| / |truth|; throws std::invalid_argument on an empty truth.
double accuracy(const SupportSet& recovered, const SupportSet& truth);

std::vector<ExperimentConfig> parse_config(const nlohmann::json& doc);
std::vector<ExperimentConfig> load_config(const std::filesystem::path& path);

/// Grid points in row order: n slowest, then p, s, k_max.
std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg);

/// Instance seed for (grid point, replication). Independent of method and
/// k_max, so all methods and splice limits see the same instances.
std::uint64_t trial_seed(const ExperimentConfig& cfg, const GridPoint& point, int replication);

/// Generated problem with a type-erased objective.
struct Instance {
  std::shared_ptr<const Objective> objective;
  TruthSpec truth;
};
Instance make_instance(const ExperimentConfig& cfg, const GridPoint& point, std::uint64_t seed);

/// Runs `method` on a prepared instance (throws whatever the solver throws).
SolveResult run_method(const ExperimentConfig& cfg, const GridPoint& point, Method method, const Objective& obj);

/// Generates the instance, times the solve alone and scores the support.
/// Solver exceptions become a record with converged = false, an empty
/// support and accuracy 0.
TrialRecord run_trial(const ExperimentConfig& cfg, const GridPoint& point, Method method, int replication);

struct RunOptions {
  unsigned threads = 1;
  std::vector<Method> only_methods;  // empty: all configured methods
};

/// Every (grid point, method, replication) row of one experiment, sorted in
/// that order with methods in enum order.
std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts = {});

inline constexpr const char* kCsvHeader =
    "experiment,model,n,p,s,k_max,seed,method,accuracy,runtime_ms,objective,outer_iterations,converged,support";

void write_csv_row(std::ostream& out, const TrialRecord& rec);
void write_csv(std::ostream& out, const std::vector<TrialRecord>& records);

/// Runs every experiment and writes one CSV. Writes to a sibling temporary
/// file and renames on success; a failure leaves no partial output behind.
std::size_t run_grid(const std::vector<ExperimentConfig>& configs, const std::filesystem::path& out,
                     const RunOptions& opts = {});

}  // namespace scope::bench
