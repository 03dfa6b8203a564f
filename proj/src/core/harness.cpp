#include "core/harness.hpp"

#include "core/csvfmt.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ants {

std::string to_string(Algo algo) {
  switch (algo) {
    case Algo::ants_s: return "ants_s";
    case Algo::ants_t: return "ants_t";
    case Algo::ments: return "ments";
    case Algo::tents: return "tents";
    case Algo::puct: return "puct";
  }
  throw std::invalid_argument("unknown algorithm id");
}

Algo algo_from_string(const std::string& name) {
  for (Algo a : {Algo::ants_s, Algo::ants_t, Algo::ments, Algo::tents, Algo::puct})
    if (name == to_string(a)) return a;
  throw std::invalid_argument("unknown algorithm: " + name);
}

std::string to_string(SweepParam param) {
  switch (param) {
    case SweepParam::entropy_target: return "entropy_target";
    case SweepParam::temperature: return "temperature";
  }
  throw std::invalid_argument("unknown sweep parameter id");
}

Preset make_preset(Algo algo) {
  Preset p;
  switch (algo) {
    case Algo::ants_s:
      // Adaptive Shannon: the struct defaults are this configuration.
      break;
    case Algo::ants_t:
      p.maxent.kind = EntropyKind::tsallis2;
      p.ctl.tau_tilde = 100.0;
      p.ctl.tau0 = 100.0;
      p.ctl.tau_min = 0.001;
      p.ctl.alpha = 0.5;
      p.ctl.adaptation_frequency = 20;
      break;
    case Algo::ments:
      p.maxent.adapt = false;
      p.maxent.shaping = false;
      p.maxent.leaf_init = LeafInit::ments;
      p.maxent.tau_init = 0.01;
      p.maxent.epsilon = 0.001;
      p.ctl.tau_tilde = 1.0;
      p.ctl.tau0 = 1.0;
      break;
    case Algo::tents:
      p.maxent.kind = EntropyKind::tsallis2;
      p.maxent.adapt = false;
      p.maxent.shaping = false;
      p.maxent.leaf_init = LeafInit::ments;
      p.maxent.tau_init = 0.1;
      p.maxent.epsilon = 0.001;
      p.ctl.tau_tilde = 3.0;
      p.ctl.tau0 = 3.0;
      break;
    case Algo::puct:
      // Count-based baseline: the struct defaults are this configuration.
      break;
  }
  return p;
}

std::vector<std::string> known_envs() { return {"chain4", "chain8", "chain8_x100", "grid5"}; }

std::unique_ptr<EnvironmentModel> make_env(const std::string& name) {
  if (name == "chain4") return std::make_unique<ChainEnv>(4, 0.01, 1.0, 0.002);
  if (name == "chain8") return std::make_unique<ChainEnv>(8, 0.01, 1.0, 0.002);
  if (name == "chain8_x100") return std::make_unique<ChainEnv>(8, 0.01, 1.0, 0.002, 100.0);
  if (name == "grid5") {
    std::vector<GridEnv::Cell> walls{{2, 0}, {2, 1}, {2, 2}};
    return std::make_unique<GridEnv>(5, 5, walls, GridEnv::Cell{0, 0}, GridEnv::Cell{4, 4}, 0.01,
                                     1.0);
  }
  throw std::invalid_argument("unknown environment: " + name);
}

std::vector<double> linear_grid(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be at least 1");
  if (n == 1) return {lo};
  std::vector<double> g(std::size_t(n), 0.0);
  double step = (hi - lo) / double(n - 1);
  for (int i = 0; i < n; ++i) g[std::size_t(i)] = lo + step * i;
  g.front() = lo;
  g.back() = hi;
  return g;
}

std::vector<double> log_grid(double lo, double hi, int n) {
  if (n < 1) throw std::invalid_argument("grid size must be at least 1");
  if (!(lo > 0.0) || !(hi > 0.0)) throw std::invalid_argument("log grid needs positive endpoints");
  if (n == 1) return {lo};
  std::vector<double> g(std::size_t(n), 0.0);
  double llo = std::log(lo);
  double step = (std::log(hi) - llo) / double(n - 1);
  for (int i = 0; i < n; ++i) g[std::size_t(i)] = std::exp(llo + step * i);
  g.front() = lo;
  g.back() = hi;
  return g;
}

double normalized_score(double raw, double reference_random, double reference_oracle) {
  if (!(reference_oracle > reference_random))
    throw std::invalid_argument("normalized_score: oracle reference must exceed random reference");
  return (raw - reference_random) / (reference_oracle - reference_random);
}

double robustness_metric(const std::vector<std::vector<double>>& scores) {
  if (scores.empty() || scores.front().empty())
    throw std::invalid_argument("robustness_metric: empty score table");
  const std::size_t n = scores.front().size();
  double acc = 0.0;
  for (const auto& row : scores) {
    if (row.size() != n) throw std::invalid_argument("robustness_metric: ragged score table");
    double mean = 0.0;
    for (double x : row) mean += x;
    mean /= double(n);
    double var = 0.0;
    for (double x : row) var += (x - mean) * (x - mean);
    acc += var / double(n);
  }
  return acc / double(scores.size());
}

double measure_random_reference(const EnvironmentModel& env, int episodes, int max_steps,
                                std::uint64_t seed) {
  if (episodes < 1 || max_steps < 1)
    throw std::invalid_argument("random reference needs episodes >= 1 and max_steps >= 1");
  std::mt19937_64 gen(seed);
  const int actions = env.action_count();
  double total = 0.0;
  for (int e = 0; e < episodes; ++e) {
    Trajectory t = run_episode(
        env, [&](int) { return std::min(actions - 1, int(uniform01(gen) * actions)); }, max_steps);
    total += t.total_return;
  }
  return total / double(episodes);
}

double oracle_reference(const EnvironmentModel& env, int max_steps) {
  return exact_hard_values(env, 1.0, max_steps).value(max_steps, env.initial_state());
}

namespace {

struct MaxEntDriver final : PlannerHandle {
  ZeroEstimator zero;
  MaxEntPlanner planner;
  MaxEntDriver(const MaxEntConfig& cfg, const TemperatureController& ctl,
               const EnvironmentModel& env)
      : planner(cfg, ctl, env, zero) {}
  int act(int state) override { return planner.plan(state); }
  double tau() const override { return planner.tau(); }
  void reset() override { planner.reset(); }
};

struct PuctDriver final : PlannerHandle {
  ZeroEstimator zero;
  PuctPlanner planner;
  double tau_init;
  PuctDriver(const PuctConfig& cfg, const EnvironmentModel& env)
      : planner(cfg, env, zero), tau_init(cfg.tau_init) {}
  int act(int state) override { return planner.plan(state, PuctMode::train); }
  double tau() const override { return tau_init; }
  void reset() override { planner.reset(); }
};

EpisodeRow run_one_episode(const EnvironmentModel& env, PlannerHandle& driver, int max_steps,
                           std::uint64_t seed_index, int episode, std::vector<TraceRow>* trace) {
  driver.reset();
  EpisodeRow row;
  row.seed = seed_index;
  row.episode = episode;
  int state = env.initial_state();
  double tau_sum = 0.0;
  for (int s = 0; s < max_steps && !env.is_terminal(state); ++s) {
    int action = driver.act(state);
    StepResult r = env.step(state, action);
    row.ret += r.reward;
    double t = driver.tau();
    tau_sum += t;
    if (trace) trace->push_back(TraceRow{seed_index, episode, s, t});
    ++row.steps;
    state = r.state;
    if (r.terminal) break;
  }
  row.mean_tau = row.steps > 0 ? tau_sum / double(row.steps) : 0.0;
  return row;
}

void check_run_shape(int seeds, int episodes, int max_steps, int n_passes, int depth_limit,
                     double gamma) {
  if (seeds < 1) throw std::invalid_argument("need at least one seed");
  if (episodes < 1) throw std::invalid_argument("need at least one episode");
  if (max_steps < 1) throw std::invalid_argument("max_steps must be at least 1");
  if (n_passes < 1) throw std::invalid_argument("n_passes must be at least 1");
  if (depth_limit < 1) throw std::invalid_argument("depth_limit must be at least 1");
  if (!(gamma > 0.0) || !(gamma < 1.0)) throw std::invalid_argument("gamma must lie in (0, 1)");
}

}  // namespace

std::unique_ptr<PlannerHandle> make_planner(const Preset& preset, Algo algo,
                                            const EnvironmentModel& env) {
  if (algo == Algo::puct) return std::make_unique<PuctDriver>(preset.puct, env);
  return std::make_unique<MaxEntDriver>(preset.maxent, preset.ctl, env);
}

void validate(const ExperimentConfig& cfg) {
  check_run_shape(cfg.seeds, cfg.episodes, cfg.max_steps, cfg.n_passes, cfg.depth_limit, cfg.gamma);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  auto env = make_env(cfg.env_name);
  ExperimentResult res;
  for (int i = 0; i < cfg.seeds; ++i) {
    Preset p = make_preset(cfg.algo);
    std::uint64_t seed = derive_seed(cfg.base_seed, std::uint64_t(i));
    p.maxent.n_passes = cfg.n_passes;
    p.maxent.depth_limit = cfg.depth_limit;
    p.maxent.gamma = cfg.gamma;
    p.maxent.seed = seed;
    p.puct.n_passes = cfg.n_passes;
    p.puct.depth_limit = cfg.depth_limit;
    p.puct.gamma = cfg.gamma;
    p.puct.seed = seed;
    auto driver = make_planner(p, cfg.algo, *env);
    for (int e = 0; e < cfg.episodes; ++e)
      res.episodes.push_back(run_one_episode(*env, *driver, cfg.max_steps, std::uint64_t(i), e,
                                             cfg.trace_temperature ? &res.trace : nullptr));
  }
  return res;
}

void write_episode_csv(std::ostream& out, const std::vector<EpisodeRow>& rows) {
  out << "seed,episode,return,steps,mean_tau\n";
  for (const auto& r : rows)
    out << r.seed << ',' << r.episode << ',' << csv_double(r.ret) << ',' << r.steps << ','
        << csv_double(r.mean_tau) << '\n';
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << "seed,episode,step,tau\n";
  for (const auto& r : rows)
    out << r.seed << ',' << r.episode << ',' << r.step << ',' << csv_double(r.tau) << '\n';
}

void write_bandit_csv(std::ostream& out, const std::vector<CheckpointRow>& rows) {
  out << "seed,t,gap,greedy_correct,tau_t\n";
  for (const auto& r : rows)
    out << r.seed << ',' << r.t << ',' << csv_double(r.gap) << ',' << int(r.greedy_correct) << ','
        << csv_double(r.tau_t) << '\n';
}

std::vector<EpisodeRow> read_episode_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("episode CSV: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "seed,episode,return,steps,mean_tau")
    throw std::runtime_error("episode CSV: unexpected header: " + line);
  std::vector<EpisodeRow> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 5) throw std::runtime_error("episode CSV: malformed row: " + line);
    try {
      EpisodeRow r;
      r.seed = std::stoull(fields[0]);
      r.episode = std::stoi(fields[1]);
      r.ret = std::stod(fields[2]);
      r.steps = std::stoi(fields[3]);
      r.mean_tau = std::stod(fields[4]);
      rows.push_back(r);
    } catch (const std::exception&) {
      throw std::runtime_error("episode CSV: malformed row: " + line);
    }
  }
  return rows;
}

void validate(const SweepConfig& cfg) {
  if (cfg.fixtures.empty()) throw std::invalid_argument("sweep needs at least one fixture");
  if (cfg.grid.empty()) throw std::invalid_argument("sweep needs a non-empty grid");
  if (cfg.threads < 1) throw std::invalid_argument("thread count must be at least 1");
  if (cfg.algo == Algo::puct)
    throw std::invalid_argument("sweep parameters apply to the regularized planners only");
  if (cfg.param == SweepParam::entropy_target && !(cfg.algo == Algo::ants_s || cfg.algo == Algo::ants_t))
    throw std::invalid_argument("entropy-target sweep needs an adaptive configuration");
  check_run_shape(cfg.seeds, cfg.episodes, cfg.max_steps, cfg.n_passes, cfg.depth_limit, cfg.gamma);
}

namespace {

Preset sweep_cell_preset(const SweepConfig& cfg, double value, std::uint64_t seed) {
  Preset p = make_preset(cfg.algo);
  p.maxent.n_passes = cfg.n_passes;
  p.maxent.depth_limit = cfg.depth_limit;
  p.maxent.gamma = cfg.gamma;
  p.maxent.seed = seed;
  if (cfg.param == SweepParam::entropy_target) {
    p.ctl.h_avg = value;
  } else {
    p.maxent.adapt = false;
    p.ctl.tau0 = value;
    p.ctl.tau_tilde = value;
    p.ctl.tau_min = std::min(value, 1e-4);
  }
  return p;
}

}  // namespace

SweepResult sweep(const SweepConfig& cfg) {
  validate(cfg);
  const std::size_t fixtures = cfg.fixtures.size();
  const std::size_t grid = cfg.grid.size();
  SweepResult res;
  res.fixtures = cfg.fixtures;
  res.param = cfg.param;
  res.grid = cfg.grid;
  res.raw_mean.assign(fixtures, std::vector<double>(grid, 0.0));
  res.normalized.assign(fixtures, std::vector<double>(grid, 0.0));
  res.reference_random.resize(fixtures);
  res.reference_oracle.resize(fixtures);
  for (std::size_t f = 0; f < fixtures; ++f) {
    auto env = make_env(cfg.fixtures[f]);
    res.reference_random[f] =
        measure_random_reference(*env, 1000, cfg.max_steps, derive_seed(cfg.base_seed, 0x5eed00 + f));
    res.reference_oracle[f] = oracle_reference(*env, cfg.max_steps);
  }

  const std::size_t cells = fixtures * grid;
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    try {
      for (;;) {
        std::size_t idx = next.fetch_add(1);
        if (idx >= cells) return;
        {
          std::lock_guard<std::mutex> lock(err_mu);
          if (err) return;
        }
        std::size_t f = idx / grid;
        std::size_t g = idx % grid;
        auto env = make_env(cfg.fixtures[f]);
        double sum = 0.0;
        for (int s = 0; s < cfg.seeds; ++s) {
          std::uint64_t seed =
              derive_seed(cfg.base_seed, idx * std::uint64_t(cfg.seeds) + std::uint64_t(s));
          Preset p = sweep_cell_preset(cfg, cfg.grid[g], seed);
          auto driver = make_planner(p, cfg.algo, *env);
          for (int e = 0; e < cfg.episodes; ++e)
            sum += run_one_episode(*env, *driver, cfg.max_steps, std::uint64_t(s), e, nullptr).ret;
        }
        res.raw_mean[f][g] = sum / double(std::uint64_t(cfg.seeds) * std::uint64_t(cfg.episodes));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!err) err = std::current_exception();
    }
  };

  const int n_threads = int(std::min<std::size_t>(std::size_t(cfg.threads), cells));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (err) std::rethrow_exception(err);

  for (std::size_t f = 0; f < fixtures; ++f)
    for (std::size_t g = 0; g < grid; ++g)
      res.normalized[f][g] =
          normalized_score(res.raw_mean[f][g], res.reference_random[f], res.reference_oracle[f]);
  return res;
}

void write_sweep_csv(std::ostream& out, const SweepResult& res) {
  out << "env,param,value,raw_return,normalized_score,reference_random,reference_oracle\n";
  for (std::size_t f = 0; f < res.fixtures.size(); ++f)
    for (std::size_t g = 0; g < res.grid.size(); ++g)
      out << res.fixtures[f] << ',' << to_string(res.param) << ',' << csv_double(res.grid[g]) << ','
          << csv_double(res.raw_mean[f][g]) << ',' << csv_double(res.normalized[f][g]) << ','
          << csv_double(res.reference_random[f]) << ',' << csv_double(res.reference_oracle[f])
          << '\n';
}

ReportRow summarize_episodes(const std::string& file, const std::vector<EpisodeRow>& rows) {
  ReportRow out;
  out.file = file;
  out.rows = rows.size();
  if (rows.empty()) {
    out.mean_return = out.std_return = out.mean_steps = out.mean_tau =
        std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  const double n = double(rows.size());
  for (const auto& r : rows) {
    out.mean_return += r.ret / n;
    out.mean_steps += double(r.steps) / n;
    out.mean_tau += r.mean_tau / n;
  }
  double var = 0.0;
  for (const auto& r : rows) var += (r.ret - out.mean_return) * (r.ret - out.mean_return) / n;
  out.std_return = std::sqrt(var);
  return out;
}

std::vector<ReportRow> report_files(const std::vector<std::string>& paths) {
  std::vector<ReportRow> out;
  out.reserve(paths.size());
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    out.push_back(summarize_episodes(path, read_episode_csv(in)));
  }
  return out;
}

void write_report_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  out << "file,rows,mean_return,std_return,mean_steps,mean_tau\n";
  for (const auto& r : rows)
    out << r.file << ',' << r.rows << ',' << csv_double(r.mean_return) << ','
        << csv_double(r.std_return) << ',' << csv_double(r.mean_steps) << ','
        << csv_double(r.mean_tau) << '\n';
}

}  // namespace ants
