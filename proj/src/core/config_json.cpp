#include "core/config_json.hpp"

#include "json.hpp"

#include <initializer_list>
#include <stdexcept>

namespace ants {

namespace {

using nlohmann::json;

json parse_object(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  return j;
}

void reject_unknown(const json& j, std::initializer_list<const char*> allowed) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed)
      if (item.key() == key) {
        known = true;
        break;
      }
    if (!known) throw std::invalid_argument("unknown config key: " + item.key());
  }
}

template <typename T>
void load(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw std::invalid_argument(std::string("config key has the wrong type: ") + key);
  }
}

void load_algo(const json& j, const char* key, Algo& out) {
  std::string name;
  load(j, key, name);
  if (!name.empty()) out = algo_from_string(name);
}

}  // namespace

EntropyKind kind_from_string(const std::string& name) {
  if (name == "shannon") return EntropyKind::shannon;
  if (name == "tsallis2") return EntropyKind::tsallis2;
  throw std::invalid_argument("unknown entropy kind: " + name);
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  json j = parse_object(json_text);
  reject_unknown(j, {"algo", "env", "seeds", "episodes", "max_steps", "n_passes", "depth_limit",
                     "gamma", "base_seed", "trace_temperature"});
  ExperimentConfig cfg;
  load_algo(j, "algo", cfg.algo);
  load(j, "env", cfg.env_name);
  load(j, "seeds", cfg.seeds);
  load(j, "episodes", cfg.episodes);
  load(j, "max_steps", cfg.max_steps);
  load(j, "n_passes", cfg.n_passes);
  load(j, "depth_limit", cfg.depth_limit);
  load(j, "gamma", cfg.gamma);
  load(j, "base_seed", cfg.base_seed);
  load(j, "trace_temperature", cfg.trace_temperature);
  return cfg;
}

LoopRunConfig parse_loop_config(const std::string& json_text) {
  json j = parse_object(json_text);
  reject_unknown(j, {"algo", "env", "n_passes", "depth_limit", "gamma", "epochs",
                     "episodes_per_epoch", "updates_per_epoch", "batch_size", "eval_episodes",
                     "max_steps", "buffer_capacity", "learning_rate", "seed"});
  LoopRunConfig cfg;
  load_algo(j, "algo", cfg.algo);
  load(j, "env", cfg.env_name);
  load(j, "n_passes", cfg.n_passes);
  load(j, "depth_limit", cfg.depth_limit);
  load(j, "gamma", cfg.gamma);
  load(j, "epochs", cfg.loop.epochs);
  load(j, "episodes_per_epoch", cfg.loop.episodes_per_epoch);
  load(j, "updates_per_epoch", cfg.loop.updates_per_epoch);
  load(j, "batch_size", cfg.loop.batch_size);
  load(j, "eval_episodes", cfg.loop.eval_episodes);
  load(j, "max_steps", cfg.loop.max_steps);
  load(j, "buffer_capacity", cfg.loop.buffer_capacity);
  load(j, "learning_rate", cfg.loop.learning_rate);
  load(j, "seed", cfg.loop.seed);
  return cfg;
}

BanditRunConfig parse_bandit_config(const std::string& json_text) {
  json j = parse_object(json_text);
  reject_unknown(j, {"means", "sigma", "tau", "schedule", "decay_c", "horizon", "seeds",
                     "base_seed"});
  BanditRunConfig cfg;
  load(j, "means", cfg.trial.means);
  load(j, "sigma", cfg.trial.sigma);
  load(j, "tau", cfg.trial.tau);
  std::string schedule;
  load(j, "schedule", schedule);
  if (!schedule.empty()) {
    if (schedule == "constant")
      cfg.trial.schedule = ScheduleKind::constant;
    else if (schedule == "log_decay")
      cfg.trial.schedule = ScheduleKind::log_decay;
    else
      throw std::invalid_argument("unknown schedule: " + schedule);
  }
  load(j, "decay_c", cfg.trial.decay_c);
  load(j, "horizon", cfg.trial.horizon);
  load(j, "seeds", cfg.seeds);
  load(j, "base_seed", cfg.base_seed);
  return cfg;
}

SweepConfig parse_sweep_config(const std::string& json_text) {
  json j = parse_object(json_text);
  reject_unknown(j, {"algo", "param", "fixtures", "grid", "grid_kind", "grid_lo", "grid_hi",
                     "grid_points", "seeds", "episodes", "max_steps", "n_passes", "depth_limit",
                     "gamma", "base_seed", "threads"});
  SweepConfig cfg;
  load_algo(j, "algo", cfg.algo);
  std::string param;
  load(j, "param", param);
  if (!param.empty()) {
    if (param == "entropy_target")
      cfg.param = SweepParam::entropy_target;
    else if (param == "temperature")
      cfg.param = SweepParam::temperature;
    else
      throw std::invalid_argument("unknown sweep parameter: " + param);
  }
  load(j, "fixtures", cfg.fixtures);
  const bool explicit_grid = j.contains("grid");
  const bool spec_grid = j.contains("grid_kind") || j.contains("grid_lo") ||
                         j.contains("grid_hi") || j.contains("grid_points");
  if (explicit_grid && spec_grid)
    throw std::invalid_argument("give either grid or grid_kind/lo/hi/points, not both");
  if (explicit_grid) {
    load(j, "grid", cfg.grid);
  } else if (spec_grid) {
    std::string kind;
    double lo = 0.0, hi = 0.0;
    int points = 0;
    load(j, "grid_kind", kind);
    load(j, "grid_lo", lo);
    load(j, "grid_hi", hi);
    load(j, "grid_points", points);
    if (kind == "linear")
      cfg.grid = linear_grid(lo, hi, points);
    else if (kind == "log")
      cfg.grid = log_grid(lo, hi, points);
    else
      throw std::invalid_argument("grid_kind must be linear or log");
  }
  load(j, "seeds", cfg.seeds);
  load(j, "episodes", cfg.episodes);
  load(j, "max_steps", cfg.max_steps);
  load(j, "n_passes", cfg.n_passes);
  load(j, "depth_limit", cfg.depth_limit);
  load(j, "gamma", cfg.gamma);
  load(j, "base_seed", cfg.base_seed);
  load(j, "threads", cfg.threads);
  return cfg;
}

ReportRunConfig parse_report_config(const std::string& json_text) {
  json j = parse_object(json_text);
  reject_unknown(j, {"files"});
  ReportRunConfig cfg;
  load(j, "files", cfg.files);
  return cfg;
}

PlannerHandleConfig parse_planner_config(const std::string& json_text) {
  json j = parse_object(json_text);
  reject_unknown(j, {"algo", "env", "n_passes", "depth_limit", "gamma", "seed"});
  PlannerHandleConfig cfg;
  load_algo(j, "algo", cfg.algo);
  load(j, "env", cfg.env_name);
  load(j, "n_passes", cfg.n_passes);
  load(j, "depth_limit", cfg.depth_limit);
  load(j, "gamma", cfg.gamma);
  load(j, "seed", cfg.seed);
  return cfg;
}

}  // namespace ants
