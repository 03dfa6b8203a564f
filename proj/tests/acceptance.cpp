// Acceptance gate: one test case per release criterion, each printing a
// single [PASS]/[FAIL] line with its runtime against the stated budget.
// Tolerances and budgets are frozen; calibrated workload knobs are noted
// where they were fixed by a reference run.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "core/bandit.hpp"
#include "core/entropy.hpp"
#include "core/env.hpp"
#include "core/harness.hpp"
#include "core/learning.hpp"
#include "core/maxent_planner.hpp"
#include "core/rng.hpp"
#include "core/tree.hpp"
#include "test_support.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace ants;

namespace {

struct Gate {
  int id;
  const char* name;
  double budget_s;  // <= 0: no stated runtime bound
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  bool ok = true;
};

#define GATE_CHECK(gate, ...)                             \
  do {                                                    \
    const bool gate_ok_ = static_cast<bool>(__VA_ARGS__); \
    (gate).ok = (gate).ok && gate_ok_;                    \
    CHECK_MESSAGE(gate_ok_, #__VA_ARGS__);                \
  } while (0)

void finish(Gate& g) {
  const double s =
      std::chrono::duration_cast<std::chrono::duration<double>>(std::chrono::steady_clock::now() -
                                                                g.t0)
          .count();
  const bool in_budget = g.budget_s <= 0.0 || s < g.budget_s;
  if (g.budget_s > 0.0)
    std::printf("[%s] criterion %d: %s (%.2fs, budget %.0fs)\n",
                (g.ok && in_budget) ? "PASS" : "FAIL", g.id, g.name, s, g.budget_s);
  else
    std::printf("[%s] criterion %d: %s (%.2fs)\n", g.ok ? "PASS" : "FAIL", g.id, g.name, s);
  CHECK_MESSAGE(g.ok, "criterion conditions hold");
  if (g.budget_s > 0.0) CHECK_MESSAGE(in_budget, "criterion finished inside its runtime budget");
}

TemperatureController fixed_controller(double tau) {
  TemperatureController ctl;
  ctl.tau_tilde = tau;
  ctl.tau0 = tau;
  ctl.tau_min = std::min(tau, 1e-3);
  ctl.h_avg = 0.2;
  return ctl;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

double l2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

TEST_CASE("criterion 1") {
  Gate g{1, "exhaustive soft backups match backward induction", 5.0};
  double worst = 0.0;
  for (EntropyKind kind : {EntropyKind::shannon, EntropyKind::tsallis2})
    for (int branching : {2, 3})
      for (int depth : {1, 2, 3})
        for (double tau : {0.05, 0.5, 5.0}) {
          ants_test::UniformTreeEnv env(branching, depth, 0xACCE0ull + std::uint64_t(10 * branching + depth));
          ZeroEstimator zero;
          MaxEntConfig cfg;
          cfg.kind = kind;
          cfg.epsilon = 0.0;
          cfg.shaping = false;
          cfg.adapt = false;
          cfg.gamma = 0.9;
          cfg.depth_limit = depth;
          MaxEntPlanner planner(cfg, fixed_controller(tau), env, zero);
          planner.build_exhaustive(0, depth);
          SoftValueTable oracle = exact_soft_values(env, cfg.gamma, tau, kind, depth);
          const TreeNode& root = *planner.root();
          for (int a = 0; a < branching; ++a)
            worst = std::max(worst,
                             std::abs(root.children[std::size_t(a)]->qvalue - oracle.qvalue(depth, 0, a)));
        }
  GATE_CHECK(g, worst <= 1e-9);
  finish(g);
}

TEST_CASE("criterion 2") {
  Gate g{2, "regularized value and policy Lipschitz bounds", 5.0};
  std::mt19937_64 gen(0x11f);
  int value_violations = 0;
  int policy_violations = 0;
  for (int i = 0; i < 10000; ++i) {
    const int k = 2 + int(gen() % 5);
    std::vector<double> q1(std::size_t(k), 0.0);
    std::vector<double> q2(std::size_t(k), 0.0);
    for (auto& x : q1) x = 4.0 * uniform01(gen) - 2.0;
    for (auto& x : q2) x = 4.0 * uniform01(gen) - 2.0;
    const double tau = std::exp(std::log(0.05) + uniform01(gen) * std::log(5.0 / 0.05));
    for (EntropyKind kind : {EntropyKind::shannon, EntropyKind::tsallis2}) {
      const double dv = std::abs(soft_value(q1, kind, tau) - soft_value(q2, kind, tau));
      if (dv > linf(q1, q2) + 1e-9) ++value_violations;
      const double dp = l2(soft_policy(q1, kind, tau), soft_policy(q2, kind, tau));
      if (dp > l2(q1, q2) / tau + 1e-9) ++policy_violations;
    }
  }
  GATE_CHECK(g, value_violations == 0);
  GATE_CHECK(g, policy_violations == 0);
  finish(g);
}

TEST_CASE("criterion 3") {
  Gate g{3, "bandit greedy convergence and occupation concentration", 120.0};
  const std::vector<long long> checkpoints = bandit_checkpoints();
  REQUIRE(checkpoints.size() == 4);
  for (ScheduleKind schedule : {ScheduleKind::constant, ScheduleKind::log_decay}) {
    std::vector<int> errors(checkpoints.size(), 0);
    int concentrated = 0;
    for (int seed = 0; seed < 100; ++seed) {
      BanditTrial trial;
      trial.means = {0.0, 0.25, 0.5, 0.75, 1.0};
      trial.sigma = 0.1;
      trial.tau = 0.1;
      trial.schedule = schedule;
      trial.decay_c = schedule == ScheduleKind::log_decay ? 1.0 : 0.0;
      trial.horizon = 100000;
      trial.seed = std::uint64_t(seed);
      TrialLog log = run_trial(trial);
      REQUIRE(log.rows.size() == checkpoints.size());
      bool non_increasing = true;
      double prev_ratio = 0.0;
      for (std::size_t j = 0; j < log.rows.size(); ++j) {
        if (!log.rows[j].greedy_correct) ++errors[j];
        const double t = double(checkpoints[j]);
        const double ratio = log.rows[j].gap / (t / std::log(t));
        if (j >= 2 && ratio > prev_ratio) non_increasing = false;  // spans the last three rows
        prev_ratio = ratio;
      }
      if (non_increasing) ++concentrated;
    }
    std::printf("  %s schedule: greedy errors [%d,%d,%d,%d], occupation ratio non-increasing in %d/100 seeds\n",
                schedule == ScheduleKind::constant ? "constant" : "log-decay", errors[0], errors[1],
                errors[2], errors[3], concentrated);
    for (std::size_t j = 1; j < errors.size(); ++j) GATE_CHECK(g, errors[j] <= errors[j - 1]);
    GATE_CHECK(g, errors.back() == 0);
    GATE_CHECK(g, concentrated >= 95);
  }
  finish(g);
}

TEST_CASE("criterion 4") {
  Gate g{4, "temperature adaptation hits the entropy target", 10.0};
  std::mt19937_64 gen(0x44);
  int interior = 0;
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const int k = 2 + int(gen() % 5);
    // Root plus its k children expanded; grandchildren are leaves.
    auto root = ants_test::make_node(0, 0.0, 0.0);
    for (int a = 0; a < k; ++a) {
      auto child = ants_test::make_node(1 + a, 0.0, 2.0 * uniform01(gen) - 1.0);
      for (int b = 0; b < k; ++b)
        child->children.push_back(
            ants_test::make_node(100 + k * a + b, 0.0, 2.0 * uniform01(gen) - 1.0));
      root->children.push_back(std::move(child));
    }
    for (EntropyKind kind : {EntropyKind::shannon, EntropyKind::tsallis2}) {
      const double h_max = max_entropy(kind, std::size_t(k));
      for (double frac : {0.25, 0.5, 0.75}) {
        TemperatureController ctl;
        ctl.tau_min = 1e-6;
        ctl.h_avg = frac * h_max;
        AdaptResult res = adapt_temperature(*root, ctl, kind);
        if (res.outcome != AdaptOutcome::root_interior) continue;
        ++interior;
        std::vector<const TreeNode*> internal;
        collect_internal(*root, internal);
        double mean = 0.0;
        for (const TreeNode* node : internal)
          mean += entropy(soft_policy(child_qvalues(*node), kind, res.tau), kind) /
                  double(internal.size());
        worst = std::max(worst, std::abs(mean - ctl.h_avg));
      }
    }
  }
  GATE_CHECK(g, interior >= 500);  // out of 600 instances; the claim must not be vacuous
  GATE_CHECK(g, worst <= 1e-6);
  finish(g);
}

TEST_CASE("criterion 5") {
  Gate g{5, "entropy shaping leaves per-node policies unchanged", 5.0};
  double worst = 0.0;
  for (EntropyKind kind : {EntropyKind::shannon, EntropyKind::tsallis2})
    for (int branching : {2, 3})
      for (double tau : {0.1, 1.0}) {
        const int depth = 3;
        ants_test::UniformTreeEnv env(branching, depth, 0x55ull + std::uint64_t(branching));
        ZeroEstimator zero;
        MaxEntConfig cfg;
        cfg.kind = kind;
        cfg.epsilon = 0.0;
        cfg.adapt = false;
        cfg.gamma = 0.9;
        cfg.depth_limit = depth;
        cfg.shaping = true;
        MaxEntPlanner shaped(cfg, fixed_controller(tau), env, zero);
        shaped.build_exhaustive(0, depth);
        cfg.shaping = false;
        MaxEntPlanner plain(cfg, fixed_controller(tau), env, zero);
        plain.build_exhaustive(0, depth);
        std::vector<const TreeNode*> a, b;
        collect_internal(*shaped.root(), a);
        collect_internal(*plain.root(), b);
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i)
          worst = std::max(worst, linf(soft_policy(child_qvalues(*a[i]), kind, tau),
                                       soft_policy(child_qvalues(*b[i]), kind, tau)));
      }
  GATE_CHECK(g, worst <= 1e-9);
  finish(g);
}

TEST_CASE("criterion 6") {
  Gate g{6, "internal node count equals the pass count", 5.0};
  for (int n_passes : {1, 10, 100}) {
    ChainEnv env(200, 0.01, 1.0, 0.05);
    ZeroEstimator zero;
    MaxEntConfig cfg;
    cfg.n_passes = n_passes;
    cfg.depth_limit = 200;
    cfg.reuse_tree = false;
    TemperatureController ctl;
    MaxEntPlanner planner(cfg, ctl, env, zero);
    planner.plan(0);
    GATE_CHECK(g, internal_node_count(*planner.root()) == std::size_t(n_passes));
  }
  finish(g);
}

TEST_CASE("criterion 7") {
  Gate g{7, "temperature smoothing identity and published grids", 0.0};
  // Log-space smoothing equals the weighted geometric mean.
  for (double alpha : {0.5, 0.9})
    for (auto [t0, tn] : std::vector<std::pair<double, double>>{
             {10.0, 0.1}, {0.5, 2.0}, {1.0, 1.0}, {3.7, 0.01}}) {
      TemperatureController ctl;
      ctl.tau_tilde = t0;
      ctl.tau_min = 1e-9;
      ctl.alpha = alpha;
      const double got = smooth_temperature(ctl, tn);
      const double want = std::pow(t0, alpha) * std::pow(tn, 1.0 - alpha);
      GATE_CHECK(g, std::abs(got - want) <= 1e-12);
      GATE_CHECK(g, std::abs(ctl.tau_tilde - want) <= 1e-12);
    }
  // Robustness grids reproduce the published nine-point sets.
  std::vector<double> temp = log_grid(1e-3, 10.0, 9);
  GATE_CHECK(g, temp.size() == 9);
  double worst_temp = 0.0;
  for (int i = 0; i < 9; ++i)
    worst_temp = std::max(worst_temp, std::abs(temp[std::size_t(i)] - std::pow(10.0, -3.0 + 0.5 * i)));
  GATE_CHECK(g, worst_temp <= 1e-9);
  GATE_CHECK(g, temp.front() == 1e-3);
  GATE_CHECK(g, temp.back() == 10.0);
  std::vector<double> shannon_set = linear_grid(0.3, 2.7, 9);
  std::vector<double> tsallis_set = linear_grid(0.05, 0.45, 9);
  double worst_lin = 0.0;
  for (int i = 0; i < 9; ++i) {
    worst_lin = std::max(worst_lin, std::abs(shannon_set[std::size_t(i)] - 0.3 * (i + 1)));
    worst_lin = std::max(worst_lin, std::abs(tsallis_set[std::size_t(i)] - 0.05 * (i + 1)));
  }
  GATE_CHECK(g, worst_lin <= 1e-12);
  GATE_CHECK(g, shannon_set.front() == 0.3);
  GATE_CHECK(g, shannon_set.back() == 2.7);
  finish(g);
}

namespace {

// Runs the planning-learning loop and reports whether any epoch inside the
// episode budget reaches the target evaluation return.
bool loop_reaches(Algo algo, const std::string& env_name, std::uint64_t seed, double target) {
  auto env = make_env(env_name);
  Preset p = make_preset(algo);
  p.maxent.n_passes = 100;
  p.maxent.depth_limit = 12;
  p.maxent.gamma = 0.99;
  p.maxent.seed = seed;
  LoopConfig lc;
  lc.episodes_per_epoch = 8;
  lc.updates_per_epoch = 200;
  lc.batch_size = 32;
  lc.epochs = 36;  // prefill epoch plus 36 -> 37 x 8 = 296 collected, inside the 300 budget
  lc.eval_episodes = 2;
  lc.max_steps = 8;
  lc.buffer_capacity = 4096;
  lc.learning_rate = 0.05;
  lc.seed = seed;
  LinearQEstimator estimator(env->state_count(), env->action_count(), lc.learning_rate);
  MaxEntAgent agent(p.maxent, p.ctl, *env, estimator);
  ReplayBuffer buffer(lc.buffer_capacity);
  std::vector<EpochRow> rows = run_loop(lc, *env, agent, &estimator, buffer);
  for (const EpochRow& r : rows)
    if (r.episodes_collected <= 300 && r.mean_return >= target - 1e-9) return true;
  return false;
}

}  // namespace

TEST_CASE("criterion 8") {
  Gate g{8, "adaptive learning reaches the oracle; mis-scaled fixed temperature does not", 600.0};
  int adaptive_successes = 0;
  int mis_scaled_failures = 0;
  for (int s = 0; s < 5; ++s) {
    if (loop_reaches(Algo::ants_s, "chain8", derive_seed(0xC8, std::uint64_t(s)), 0.92))
      ++adaptive_successes;
    if (!loop_reaches(Algo::ments, "chain8_x100", derive_seed(0xC8, std::uint64_t(s)), 92.0))
      ++mis_scaled_failures;
  }
  GATE_CHECK(g, adaptive_successes >= 4);
  GATE_CHECK(g, mis_scaled_failures >= 4);
  finish(g);
}

TEST_CASE("criterion 9") {
  Gate g{9, "entropy parameterization is more robust than temperature", 900.0};
  SweepConfig sc;
  sc.algo = Algo::ants_s;
  sc.fixtures = {"chain8", "chain8_x100"};
  // Workload frozen after calibration: 800 passes over 16-step episodes is the
  // smallest setting where well-set cells solve both fixtures by search alone,
  // so the grids measure parameter sensitivity rather than search failure.
  sc.seeds = 5;
  sc.episodes = 5;
  sc.max_steps = 16;
  sc.n_passes = 800;
  sc.depth_limit = 12;
  sc.gamma = 0.99;
  sc.base_seed = 0x909;
  sc.threads = 4;
  sc.param = SweepParam::entropy_target;
  // Entropy targets span the feasible range for two actions: the published
  // nine-point linear shape scaled to this action space.
  sc.grid = linear_grid(0.1 * std::log(2.0), 0.9 * std::log(2.0), 9);
  SweepResult entropy_sweep = sweep(sc);
  sc.param = SweepParam::temperature;
  sc.grid = log_grid(1e-3, 10.0, 9);
  SweepResult temperature_sweep = sweep(sc);
  const double rho_entropy = robustness_metric(entropy_sweep.normalized);
  const double rho_temperature = robustness_metric(temperature_sweep.normalized);
  std::printf("  robustness: entropy-grid variance %.6f vs temperature-grid variance %.6f\n",
              rho_entropy, rho_temperature);
  GATE_CHECK(g, rho_entropy < rho_temperature);
  finish(g);
}

namespace {

std::string slurp_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

}  // namespace

TEST_CASE("criterion 10") {
  Gate g{10, "every subcommand is byte-deterministic under a fixed seed", 0.0};
  const char* cli = std::getenv("ANTS_CLI");
  REQUIRE_MESSAGE(cli != nullptr, "ANTS_CLI must point at the command-line binary");
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "ants_acceptance";
  fs::remove_all(base);
  fs::create_directories(base);

  struct CliCase {
    std::string name;
    std::string args;
    std::vector<std::string> files;
  };
  std::vector<CliCase> cases = {
      {"plan",
       "plan --algo ants_s --env chain4 --seeds 2 --episodes 2 --max-steps 6 --passes 20 "
       "--depth 6 --seed 7 --trace-temperature",
       {"episodes.csv", "temperature_trace.csv"}},
      {"loop",
       "loop --algo ants_s --env chain4 --epochs 2 --episodes-per-epoch 2 --updates-per-epoch 5 "
       "--batch-size 2 --eval-episodes 1 --max-steps 6 --passes 15 --depth 5 --seed 3",
       {"learning_curve.csv"}},
      {"bandit",
       "bandit --means 0 0.5 1 --sigma 0.1 --tau 0.2 --horizon 1000 --seeds 5 --seed 2",
       {"bandit.csv"}},
      {"sweep",
       "sweep --algo ants_s --param temperature --fixtures chain4 --grid 0.1 1.0 --seeds 1 "
       "--episodes 2 --max-steps 6 --passes 10 --depth 5 --seed 4 --threads 2",
       {"sweep.csv"}},
  };

  auto run_into = [&](const CliCase& c, const std::string& tag) {
    const fs::path dir = base / (c.name + "_" + tag);
    const std::string cmd = std::string(cli) + " " + c.args + " --out " + dir.string();
    const int rc = std::system(cmd.c_str());
    GATE_CHECK(g, rc == 0);
    return dir;
  };

  for (const CliCase& c : cases) {
    const fs::path a = run_into(c, "a");
    const fs::path b = run_into(c, "b");
    for (const std::string& f : c.files) GATE_CHECK(g, slurp_file(a / f) == slurp_file(b / f));
  }

  // report, aggregating the plan output written above.
  const fs::path episodes = base / "plan_a" / "episodes.csv";
  for (const char* tag : {"a", "b"}) {
    const fs::path dir = base / (std::string("report_") + tag);
    const std::string cmd =
        std::string(cli) + " report " + episodes.string() + " --out " + dir.string();
    GATE_CHECK(g, std::system(cmd.c_str()) == 0);
  }
  GATE_CHECK(g, slurp_file(base / "report_a" / "report.csv") ==
                    slurp_file(base / "report_b" / "report.csv"));
  finish(g);
}
