#pragma once

#include "core/env.hpp"
#include "core/estimator.hpp"
#include "core/maxent_planner.hpp"
#include "core/puct_planner.hpp"
#include "core/rng.hpp"
#include "core/tree.hpp"

#include <cstdint>
#include <deque>
#include <iosfwd>
#include <random>
#include <vector>

namespace ants {

// One decision recorded during collection: the state acted from, the
// planner's root-child q-values (regression targets), and the planner
// temperature at decision time.
struct Transition {
  int state = 0;
  std::vector<double> q_targets;
  double tau = 1.0;
};

class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void push(Transition t);  // evicts the oldest entry once full
  std::size_t size() const { return data_.size(); }
  std::size_t capacity() const { return capacity_; }
  const Transition& at(std::size_t i) const { return data_.at(i); }  // 0 = oldest

  // Uniform minibatch without replacement; n must not exceed size().
  std::vector<const Transition*> sample(std::size_t n, std::mt19937_64& gen) const;

 private:
  std::size_t capacity_;
  std::deque<Transition> data_;
};

// Per-action linear model over one-hot state features plus a bias and a
// log-temperature feature; trained by mean-gradient SGD on the L2 loss.
class LinearQEstimator : public QEstimator {
 public:
  LinearQEstimator(int states, int actions, double learning_rate);

  double evaluate(int state, int action, double tau) const override;

  // One SGD step on the batch; returns the pre-update mean squared error
  // (averaged over samples and actions).
  double train_minibatch(const std::vector<const Transition*>& batch);

  int states() const { return states_; }
  int actions() const { return actions_; }

 private:
  int states_;
  int actions_;
  double lr_;
  std::vector<std::vector<double>> w_;  // [action][state one-hot.. | bias | ln tau]
};

// Normalized child visit counts; all-zero counts give the uniform policy.
std::vector<double> puct_policy_target(const TreeNode& root);

// Uniform face the loop drives; adapters wrap either planner family.
class PlannerAgent {
 public:
  virtual ~PlannerAgent() = default;
  virtual int act(int state) = 0;       // exploratory planning step
  virtual int act_eval(int state) = 0;  // greedy planning step
  virtual std::vector<double> root_q() const = 0;  // targets after the last act()
  virtual double tau() const = 0;                  // temperature at decision time
  virtual void reset() = 0;                        // episode boundary
};

// Entropy-planner adapter.  Evaluation runs a second planner instance over
// the same estimator with near-zero selection temperature (argmax actions)
// and an independent seed, so greedy rollouts never disturb training streams.
class MaxEntAgent final : public PlannerAgent {
 public:
  MaxEntAgent(const MaxEntConfig& cfg, const TemperatureController& ctl,
              const EnvironmentModel& env, const QEstimator& estimator);

  int act(int state) override { return train_.plan(state); }
  int act_eval(int state) override { return eval_.plan(state); }
  std::vector<double> root_q() const override { return child_qvalues(*train_.root()); }
  double tau() const override { return train_.tau(); }
  void reset() override;

 private:
  MaxEntPlanner train_;
  MaxEntPlanner eval_;
};

// Count-based-planner adapter; the reported temperature is the constant prior
// temperature (the only one this planner owns).
class PuctAgent final : public PlannerAgent {
 public:
  PuctAgent(const PuctConfig& cfg, const EnvironmentModel& env, const QEstimator& estimator);

  int act(int state) override { return train_.plan(state, PuctMode::train); }
  int act_eval(int state) override { return eval_.plan(state, PuctMode::eval); }
  std::vector<double> root_q() const override { return child_qvalues(*train_.root()); }
  double tau() const override { return tau_init_; }
  void reset() override;

 private:
  PuctPlanner train_;
  PuctPlanner eval_;
  double tau_init_;
};

struct LoopConfig {
  int episodes_per_epoch = 8;
  int updates_per_epoch = 200;
  int batch_size = 32;
  int epochs = 10;
  int eval_episodes = 4;
  int max_steps = 16;
  std::size_t buffer_capacity = 4096;
  double learning_rate = 0.05;
  std::uint64_t seed = 0;
};

void validate(const LoopConfig& cfg);

struct CollectStats {
  int episodes = 0;
  long long transitions = 0;
  double mean_return = 0.0;
  double mean_tau = 0.0;
};

// Runs episodes_per_epoch exploratory episodes, pushing one transition per
// decision into the buffer.
CollectStats collect_epoch(const LoopConfig& cfg, const EnvironmentModel& env,
                           PlannerAgent& agent, ReplayBuffer& buffer);

// Mean greedy return over eval_episodes episodes.
double eval_epoch(const LoopConfig& cfg, const EnvironmentModel& env, PlannerAgent& agent);

// updates_per_epoch minibatch steps; returns the epoch-mean loss, or NaN
// (with a warning) when the buffer cannot fill one batch yet.
double train_epoch(const LoopConfig& cfg, ReplayBuffer& buffer, LinearQEstimator& estimator,
                   std::mt19937_64& gen);

struct EpochRow {
  int epoch = 0;
  long long episodes_collected = 0;  // cumulative
  double mean_return = 0.0;
  double mean_loss = 0.0;  // NaN when no training happened
  double mean_tau = 0.0;
};

// Alternates collect / train / evaluate.  Epoch 0 only pre-fills the buffer
// (no gradient step); passing a null estimator disables training entirely.
std::vector<EpochRow> run_loop(const LoopConfig& cfg, const EnvironmentModel& env,
                               PlannerAgent& agent, LinearQEstimator* estimator,
                               ReplayBuffer& buffer);

void write_learning_curve_csv(std::ostream& out, const std::vector<EpochRow>& rows);

}  // namespace ants
