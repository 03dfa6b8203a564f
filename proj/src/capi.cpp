#include "ants/ants.h"

#include "core/bandit.hpp"
#include "core/config_json.hpp"
#include "core/entropy.hpp"
#include "core/harness.hpp"
#include "core/learning.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <memory>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

thread_local std::string g_error;

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    g_error.clear();
    return ANTS_OK;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return ANTS_ERR_CONFIG;
  } catch (const std::domain_error& e) {
    g_error = e.what();
    return ANTS_ERR_CONFIG;
  } catch (const std::exception& e) {
    g_error = e.what();
    return ANTS_ERR_RUNTIME;
  } catch (...) {
    g_error = "unknown failure";
    return ANTS_ERR_RUNTIME;
  }
}

void check_row(const void* buf, int n, const void* out) {
  if (buf == nullptr || out == nullptr) throw std::invalid_argument("null buffer");
  if (n < 1) throw std::invalid_argument("need at least one entry");
}

std::string required_text(const char* json_config) {
  if (json_config == nullptr) throw std::invalid_argument("config JSON is required");
  return json_config;
}

std::filesystem::path prepare_out_dir(const char* out_dir) {
  if (out_dir == nullptr || *out_dir == '\0')
    throw std::invalid_argument("output directory is required");
  std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace

struct ants_planner {
  std::unique_ptr<ants::EnvironmentModel> env;
  std::unique_ptr<ants::PlannerHandle> planner;
};

extern "C" {

const char* ants_last_error(void) { return g_error.c_str(); }

int ants_soft_value(const double* q, int n, double tau, const char* kind, double* out) {
  return guarded([&] {
    check_row(q, n, out);
    ants::EntropyKind k = ants::kind_from_string(kind == nullptr ? "" : kind);
    *out = ants::soft_value(std::span<const double>(q, std::size_t(n)), k, tau);
  });
}

int ants_soft_policy(const double* q, int n, double tau, const char* kind, double* out) {
  return guarded([&] {
    check_row(q, n, out);
    ants::EntropyKind k = ants::kind_from_string(kind == nullptr ? "" : kind);
    std::vector<double> p =
        ants::soft_policy(std::span<const double>(q, std::size_t(n)), k, tau);
    std::copy(p.begin(), p.end(), out);
  });
}

int ants_entropy(const double* probs, int n, const char* kind, double* out) {
  return guarded([&] {
    check_row(probs, n, out);
    ants::EntropyKind k = ants::kind_from_string(kind == nullptr ? "" : kind);
    *out = ants::entropy(std::span<const double>(probs, std::size_t(n)), k);
  });
}

int ants_max_entropy(int n, const char* kind, double* out) {
  return guarded([&] {
    if (out == nullptr) throw std::invalid_argument("null buffer");
    if (n < 1) throw std::invalid_argument("need at least one action");
    ants::EntropyKind k = ants::kind_from_string(kind == nullptr ? "" : kind);
    *out = ants::max_entropy(k, std::size_t(n));
  });
}

ants_planner* ants_planner_create(const char* json_config) {
  ants_planner* handle = nullptr;
  guarded([&] {
    ants::PlannerHandleConfig cfg = ants::parse_planner_config(required_text(json_config));
    auto h = std::make_unique<ants_planner>();
    h->env = ants::make_env(cfg.env_name);
    ants::Preset p = ants::make_preset(cfg.algo);
    p.maxent.n_passes = cfg.n_passes;
    p.maxent.depth_limit = cfg.depth_limit;
    p.maxent.gamma = cfg.gamma;
    p.maxent.seed = cfg.seed;
    p.puct.n_passes = cfg.n_passes;
    p.puct.depth_limit = cfg.depth_limit;
    p.puct.gamma = cfg.gamma;
    p.puct.seed = cfg.seed;
    h->planner = ants::make_planner(p, cfg.algo, *h->env);
    handle = h.release();
  });
  return handle;
}

int ants_planner_plan(ants_planner* planner, int state, int* action_out) {
  return guarded([&] {
    if (planner == nullptr || action_out == nullptr)
      throw std::invalid_argument("null planner handle or output");
    *action_out = planner->planner->act(state);
  });
}

int ants_planner_tau(const ants_planner* planner, double* tau_out) {
  return guarded([&] {
    if (planner == nullptr || tau_out == nullptr)
      throw std::invalid_argument("null planner handle or output");
    *tau_out = planner->planner->tau();
  });
}

int ants_planner_reset(ants_planner* planner) {
  return guarded([&] {
    if (planner == nullptr) throw std::invalid_argument("null planner handle");
    planner->planner->reset();
  });
}

void ants_planner_destroy(ants_planner* planner) { delete planner; }

int ants_run_plan(const char* json_config, const char* out_dir) {
  return guarded([&] {
    ants::ExperimentConfig cfg = ants::parse_experiment_config(required_text(json_config));
    ants::ExperimentResult res = ants::run_experiment(cfg);
    std::filesystem::path dir = prepare_out_dir(out_dir);
    std::ostringstream episodes;
    ants::write_episode_csv(episodes, res.episodes);
    write_file(dir / "episodes.csv", episodes.str());
    if (cfg.trace_temperature) {
      std::ostringstream trace;
      ants::write_trace_csv(trace, res.trace);
      write_file(dir / "temperature_trace.csv", trace.str());
    }
  });
}

int ants_run_loop(const char* json_config, const char* out_dir) {
  return guarded([&] {
    ants::LoopRunConfig cfg = ants::parse_loop_config(required_text(json_config));
    ants::validate(cfg.loop);
    auto env = ants::make_env(cfg.env_name);
    ants::Preset p = ants::make_preset(cfg.algo);
    p.maxent.n_passes = cfg.n_passes;
    p.maxent.depth_limit = cfg.depth_limit;
    p.maxent.gamma = cfg.gamma;
    p.maxent.seed = cfg.loop.seed;
    p.puct.n_passes = cfg.n_passes;
    p.puct.depth_limit = cfg.depth_limit;
    p.puct.gamma = cfg.gamma;
    p.puct.seed = cfg.loop.seed;
    ants::LinearQEstimator estimator(env->state_count(), env->action_count(),
                                     cfg.loop.learning_rate);
    std::unique_ptr<ants::PlannerAgent> agent;
    if (cfg.algo == ants::Algo::puct)
      agent = std::make_unique<ants::PuctAgent>(p.puct, *env, estimator);
    else
      agent = std::make_unique<ants::MaxEntAgent>(p.maxent, p.ctl, *env, estimator);
    ants::ReplayBuffer buffer(cfg.loop.buffer_capacity);
    std::vector<ants::EpochRow> rows = ants::run_loop(cfg.loop, *env, *agent, &estimator, buffer);
    std::filesystem::path dir = prepare_out_dir(out_dir);
    std::ostringstream csv;
    ants::write_learning_curve_csv(csv, rows);
    write_file(dir / "learning_curve.csv", csv.str());
  });
}

int ants_run_bandit(const char* json_config, const char* out_dir) {
  return guarded([&] {
    ants::BanditRunConfig cfg = ants::parse_bandit_config(required_text(json_config));
    if (cfg.seeds < 1) throw std::invalid_argument("need at least one seed");
    std::vector<ants::CheckpointRow> rows;
    for (int s = 0; s < cfg.seeds; ++s) {
      ants::BanditTrial trial = cfg.trial;
      trial.seed = cfg.base_seed + std::uint64_t(s);
      ants::TrialLog log = ants::run_trial(trial);
      rows.insert(rows.end(), log.rows.begin(), log.rows.end());
    }
    std::filesystem::path dir = prepare_out_dir(out_dir);
    std::ostringstream csv;
    ants::write_bandit_csv(csv, rows);
    write_file(dir / "bandit.csv", csv.str());
  });
}

int ants_run_sweep(const char* json_config, const char* out_dir) {
  return guarded([&] {
    ants::SweepConfig cfg = ants::parse_sweep_config(required_text(json_config));
    ants::SweepResult res = ants::sweep(cfg);
    std::filesystem::path dir = prepare_out_dir(out_dir);
    std::ostringstream csv;
    ants::write_sweep_csv(csv, res);
    write_file(dir / "sweep.csv", csv.str());
  });
}

int ants_run_report(const char* json_config, const char* out_dir) {
  return guarded([&] {
    ants::ReportRunConfig cfg = ants::parse_report_config(required_text(json_config));
    if (cfg.files.empty()) throw std::invalid_argument("report needs at least one input file");
    std::vector<ants::ReportRow> rows = ants::report_files(cfg.files);
    std::filesystem::path dir = prepare_out_dir(out_dir);
    std::ostringstream csv;
    ants::write_report_csv(csv, rows);
    write_file(dir / "report.csv", csv.str());
  });
}

}  // extern "C"
