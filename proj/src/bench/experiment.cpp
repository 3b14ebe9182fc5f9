#include "scope/bench/experiment.hpp"

#include "scope/baselines.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <ostream>
#include <set>
#include <thread>

namespace scope::bench {

std::string to_string(Model m) {
  switch (m) {
    case Model::linear: return "linear";
    case Model::logistic: return "logistic";
    case Model::ising: return "ising";
  }
  return "?";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::scope: return "scope";
    case Method::iht: return "iht";
    case Method::grahtp1: return "grahtp1";
    case Method::grahtp2: return "grahtp2";
    case Method::grasp: return "grasp";
  }
  return "?";
}

Model parse_model(const std::string& name) {
  if (name == "linear") return Model::linear;
  if (name == "logistic") return Model::logistic;
  if (name == "ising") return Model::ising;
  throw ConfigError("unknown model '" + name + "' (expected linear, logistic or ising)");
}

Method parse_method(const std::string& name) {
  if (name == "scope") return Method::scope;
  if (name == "iht") return Method::iht;
  if (name == "grahtp1") return Method::grahtp1;
  if (name == "grahtp2") return Method::grahtp2;
  if (name == "grasp") return Method::grasp;
  if (name == "gurobi" || name == "lasso") {
    throw ConfigError("method '" + name + "' is reserved but not available in this build");
  }
  throw ConfigError("unknown method '" + name + "' (expected scope, iht, grahtp1, grahtp2 or grasp)");
}

double ExperimentConfig::magnitude() const {
  return signal_magnitude.value_or(model == Model::ising ? 0.5 : 100.0);
}

void ExperimentConfig::validate() const {
  const auto positive = [&](const std::vector<Index>& axis, const char* key, bool required) {
    if (required && axis.empty()) throw ConfigError(name + ": '" + key + "' grid is empty");
    for (Index v : axis) {
      if (v < 1) throw ConfigError(name + ": '" + key + "' values must be positive");
    }
  };
  positive(n, "n", true);
  positive(p, "p", true);
  positive(s, "s", true);
  positive(k_max, "k_max", false);
  if (replications < 1) throw ConfigError(name + ": replications must be >= 1");
  if (methods.empty()) throw ConfigError(name + ": method list is empty");
  if (!(snr > 0.0)) throw ConfigError(name + ": snr must be > 0");
  if (!(rho >= 0.0 && rho < 1.0)) throw ConfigError(name + ": rho must be in [0, 1)");
  if (!(magnitude() > 0.0)) throw ConfigError(name + ": signal_magnitude must be > 0");
  if (!(iht_step > 0.0)) throw ConfigError(name + ": iht_step must be > 0");
  if (grahtp1_step && !(*grahtp1_step > 0.0)) throw ConfigError(name + ": grahtp1_step must be > 0");
  if (max_iter < 1 || max_outer_iter < 1) throw ConfigError(name + ": iteration caps must be >= 1");
  for (const auto& pt : expand_grid(*this)) {
    const Index dim = model == Model::ising ? ising_dimension(pt.p) : pt.p;
    if (model == Model::ising && pt.p > IsingGenConfig::kMaxExactSpins) {
      throw ConfigError(name + ": ising p=" + std::to_string(pt.p) + " exceeds the exact-sampler limit");
    }
    if (pt.s > dim) throw ConfigError(name + ": s=" + std::to_string(pt.s) + " exceeds the parameter dimension");
    if (pt.k_max > pt.s) throw ConfigError(name + ": k_max must not exceed s");
    if (orthonormal_design && pt.n < pt.p) throw ConfigError(name + ": orthonormal_design needs n >= p");
    if (std::find(methods.begin(), methods.end(), Method::grasp) != methods.end() && 2 * pt.s > dim) {
      throw ConfigError(name + ": grasp needs 2s <= p");
    }
  }
}

namespace {

using nlohmann::json;

std::vector<Index> read_axis(const json& table, const char* key) {
  if (!table.contains(key)) return {};
  const json& v = table.at(key);
  std::vector<Index> out;
  if (v.is_number_integer()) {
    out.push_back(v.get<Index>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_number_integer()) throw ConfigError(std::string("'") + key + "' entries must be integers");
      out.push_back(e.get<Index>());
    }
  } else {
    throw ConfigError(std::string("'") + key + "' must be an integer or a list of integers");
  }
  return out;
}

ExperimentConfig parse_table(const json& table, std::size_t position) {
  static const std::set<std::string> known = {
      "name", "model", "n", "p", "s", "k_max", "snr", "snr_convention", "rho", "signal_magnitude",
      "standardize_response", "orthonormal_design", "replications", "methods", "base_seed", "output",
      "iht_step", "grahtp1_step", "max_iter", "max_outer_iter"};
  if (!table.is_object()) throw ConfigError("experiment #" + std::to_string(position) + " is not a table");
  for (const auto& [key, _] : table.items()) {
    if (!known.count(key)) throw ConfigError("experiment #" + std::to_string(position) + ": unknown key '" + key + "'");
  }
  ExperimentConfig cfg;
  cfg.name = table.value("name", "experiment" + std::to_string(position));
  if (cfg.name.find_first_of(",\n\"") != std::string::npos) throw ConfigError("experiment names may not contain , \" or newlines");
  if (!table.contains("model")) throw ConfigError(cfg.name + ": missing 'model'");
  cfg.model = parse_model(table.at("model").get<std::string>());
  cfg.n = read_axis(table, "n");
  cfg.p = read_axis(table, "p");
  cfg.s = read_axis(table, "s");
  cfg.k_max = read_axis(table, "k_max");
  cfg.snr = table.value("snr", cfg.snr);
  const std::string conv = table.value("snr_convention", std::string("per_sample"));
  if (conv == "per_sample") {
    cfg.snr_convention = SnrConvention::per_sample;
  } else if (conv == "total") {
    cfg.snr_convention = SnrConvention::total;
  } else {
    throw ConfigError(cfg.name + ": snr_convention must be per_sample or total");
  }
  cfg.rho = table.value("rho", cfg.rho);
  if (table.contains("signal_magnitude")) cfg.signal_magnitude = table.at("signal_magnitude").get<double>();
  cfg.standardize_response = table.value("standardize_response", cfg.standardize_response);
  cfg.orthonormal_design = table.value("orthonormal_design", cfg.orthonormal_design);
  cfg.replications = table.value("replications", cfg.replications);
  if (!table.contains("methods") || !table.at("methods").is_array()) throw ConfigError(cfg.name + ": 'methods' must be a list");
  for (const auto& m : table.at("methods")) {
    const Method method = parse_method(m.get<std::string>());
    if (std::find(cfg.methods.begin(), cfg.methods.end(), method) == cfg.methods.end()) cfg.methods.push_back(method);
  }
  std::sort(cfg.methods.begin(), cfg.methods.end());
  cfg.base_seed = table.value("base_seed", cfg.base_seed);
  cfg.output = table.value("output", cfg.output);
  cfg.iht_step = table.value("iht_step", cfg.iht_step);
  if (table.contains("grahtp1_step")) cfg.grahtp1_step = table.at("grahtp1_step").get<double>();
  cfg.max_iter = table.value("max_iter", cfg.max_iter);
  cfg.max_outer_iter = table.value("max_outer_iter", cfg.max_outer_iter);
  cfg.validate();
  return cfg;
}

// FNV-1a over the words, then a splitmix64 finalizer.
class SeedHasher {
 public:
  void mix(std::uint64_t word) {
    for (int b = 0; b < 8; ++b) {
      state_ ^= (word >> (8 * b)) & 0xffu;
      state_ *= 0x100000001b3ULL;
    }
  }
  std::uint64_t finish() const {
    std::uint64_t z = state_ + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_ = 0xcbf29ce484222325ULL;
};

std::string format_double(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, fmt, v);
  return buf;
}

}  // namespace

std::vector<ExperimentConfig> parse_config(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("experiments") || !doc.at("experiments").is_array()) {
    throw ConfigError("config must be an object with an 'experiments' list");
  }
  std::vector<ExperimentConfig> out;
  std::set<std::string> names;
  try {
    for (const auto& table : doc.at("experiments")) {
      out.push_back(parse_table(table, out.size()));
      if (!names.insert(out.back().name).second) throw ConfigError("duplicate experiment name '" + out.back().name + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }
  if (out.empty()) throw ConfigError("config has no experiments");
  return out;
}

std::vector<ExperimentConfig> load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_config(doc);
}

std::vector<GridPoint> expand_grid(const ExperimentConfig& cfg) {
  std::vector<GridPoint> out;
  for (Index n : cfg.n) {
    for (Index p : cfg.p) {
      for (Index s : cfg.s) {
        if (cfg.k_max.empty()) {
          out.push_back({n, p, s, s});
        } else {
          for (Index k : cfg.k_max) out.push_back({n, p, s, k});
        }
      }
    }
  }
  return out;
}

std::uint64_t trial_seed(const ExperimentConfig& cfg, const GridPoint& point, int replication) {
  SeedHasher h;
  h.mix(static_cast<std::uint64_t>(cfg.model));
  h.mix(static_cast<std::uint64_t>(point.n));
  h.mix(static_cast<std::uint64_t>(point.p));
  h.mix(static_cast<std::uint64_t>(point.s));
  h.mix(static_cast<std::uint64_t>(replication));
  return cfg.base_seed + h.finish();
}

double accuracy(const SupportSet& recovered, const SupportSet& truth) {
  if (truth.empty()) throw std::invalid_argument("accuracy: empty true support");
  return static_cast<double>(recovered.intersection_size(truth)) / static_cast<double>(truth.size());
}

Instance make_instance(const ExperimentConfig& cfg, const GridPoint& point, std::uint64_t seed) {
  if (cfg.model == Model::ising) {
    IsingGenConfig gc;
    gc.p = point.p;
    gc.s_true = point.s;
    gc.n = point.n;
    gc.coupling_magnitude = cfg.magnitude();
    gc.seed = seed;
    auto inst = gen_ising(gc);
    return {inst.objective, std::move(inst.truth)};
  }
  LinearGenConfig gc;
  gc.n = point.n;
  gc.p = point.p;
  gc.s_true = point.s;
  gc.rho = cfg.rho;
  gc.snr = cfg.snr;
  gc.snr_convention = cfg.snr_convention;
  gc.signal_magnitude = cfg.magnitude();
  gc.seed = seed;
  gc.standardize_response = cfg.standardize_response;
  gc.orthonormal_design = cfg.orthonormal_design;
  if (cfg.model == Model::logistic) {
    auto inst = gen_logistic(gc);
    return {inst.objective, std::move(inst.truth)};
  }
  auto inst = gen_linear(gc);
  return {inst.objective, std::move(inst.truth)};
}

SolveResult run_method(const ExperimentConfig& cfg, const GridPoint& point, Method method, const Objective& obj) {
  HTConfig ht;
  ht.s = point.s;
  ht.max_iter = cfg.max_iter;
  switch (method) {
    case Method::scope: {
      SpliceConfig sc;
      sc.s = point.s;
      sc.k_max = point.k_max;
      sc.max_outer_iter = cfg.max_outer_iter;
      return scope_solve(obj, sc);
    }
    case Method::iht:
      ht.step = cfg.iht_step;
      return iht_solve(obj, ht);
    case Method::grahtp1:
      if (cfg.grahtp1_step) {
        ht.step = *cfg.grahtp1_step;
        return grahtp_solve(obj, ht);
      }
      return grahtp1_solve(obj, ht);
    case Method::grahtp2:
      return grahtp2_solve(obj, ht);
    case Method::grasp:
      return grasp_solve(obj, ht);
  }
  throw std::logic_error("run_method: unhandled method");
}

TrialRecord run_trial(const ExperimentConfig& cfg, const GridPoint& point, Method method, int replication) {
  TrialRecord rec;
  rec.experiment = cfg.name;
  rec.model = cfg.model;
  rec.point = point;
  rec.method = method;
  rec.seed = trial_seed(cfg, point, replication);
  const Instance inst = make_instance(cfg, point, rec.seed);
  rec.support = SupportSet({}, inst.objective->dimension());

  const auto start = std::chrono::steady_clock::now();
  try {
    const SolveResult result = run_method(cfg, point, method, *inst.objective);
    rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rec.support = result.support;
    rec.objective = result.objective();
    rec.outer_iterations = result.outer_iterations();
    rec.converged = result.converged;
  } catch (const std::exception& e) {
    rec.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    rec.objective = std::numeric_limits<double>::quiet_NaN();
    rec.converged = false;
    rec.error = e.what();
  }
  rec.accuracy = accuracy(rec.support, inst.truth.support);
  return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& opts) {
  std::vector<Method> methods;
  for (Method m : cfg.methods) {
    if (opts.only_methods.empty() ||
        std::find(opts.only_methods.begin(), opts.only_methods.end(), m) != opts.only_methods.end()) {
      methods.push_back(m);
    }
  }
  struct Job {
    GridPoint point;
    Method method;
    int replication;
  };
  std::vector<Job> jobs;
  for (const auto& pt : expand_grid(cfg)) {
    for (Method m : methods) {
      for (int r = 0; r < cfg.replications; ++r) jobs.push_back({pt, m, r});
    }
  }
  std::vector<TrialRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        records[i] = run_trial(cfg, jobs[i].point, jobs[i].method, jobs[i].replication);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(jobs.size())));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

void write_csv_row(std::ostream& out, const TrialRecord& rec) {
  out << rec.experiment << ',' << to_string(rec.model) << ',' << rec.point.n << ',' << rec.point.p << ','
      << rec.point.s << ',' << rec.point.k_max << ',' << rec.seed << ',' << to_string(rec.method) << ','
      << format_double("%.10g", rec.accuracy) << ',' << format_double("%.3f", rec.runtime_ms) << ','
      << format_double("%.17g", rec.objective) << ',' << rec.outer_iterations << ',' << (rec.converged ? 1 : 0) << ','
      << rec.support.to_string() << '\n';
}

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) write_csv_row(out, rec);
}

std::size_t run_grid(const std::vector<ExperimentConfig>& configs, const std::filesystem::path& out,
                     const RunOptions& opts) {
  std::vector<TrialRecord> all;
  for (const auto& cfg : configs) {
    auto rows = run_experiment(cfg, opts);
    all.insert(all.end(), std::make_move_iterator(rows.begin()), std::make_move_iterator(rows.end()));
  }
  std::filesystem::path tmp = out;
  tmp += ".partial";
  try {
    {
      std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
      if (!file) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
      write_csv(file, all);
      file.flush();
      if (!file) throw std::runtime_error("write to " + tmp.string() + " failed");
    }
    std::filesystem::rename(tmp, out);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
  return all.size();
}

}  // namespace scope::bench
