#include "core/learning.hpp"

#include "core/csvfmt.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace ants {

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity_ == 0) throw std::invalid_argument("replay buffer: zero capacity");
}

void ReplayBuffer::push(Transition t) {
  if (data_.size() == capacity_) data_.pop_front();
  data_.push_back(std::move(t));
}

std::vector<const Transition*> ReplayBuffer::sample(std::size_t n,
                                                    std::mt19937_64& gen) const {
  if (n > data_.size())
    throw std::invalid_argument("replay buffer: batch larger than current size");
  std::vector<std::size_t> idx(data_.size());
  std::iota(idx.begin(), idx.end(), std::size_t(0));
  std::vector<const Transition*> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = i + std::size_t(gen() % std::uint64_t(idx.size() - i));
    std::swap(idx[i], idx[j]);
    out.push_back(&data_[idx[i]]);
  }
  return out;
}

LinearQEstimator::LinearQEstimator(int states, int actions, double learning_rate)
    : states_(states), actions_(actions), lr_(learning_rate) {
  if (states_ < 1 || actions_ < 1)
    throw std::invalid_argument("linear estimator: need at least one state and action");
  if (!(lr_ > 0.0)) throw std::invalid_argument("linear estimator: learning rate must be > 0");
  w_.assign(std::size_t(actions_), std::vector<double>(std::size_t(states_) + 2, 0.0));
}

double LinearQEstimator::evaluate(int state, int action, double tau) const {
  if (state < 0 || state >= states_ || action < 0 || action >= actions_)
    throw std::out_of_range("linear estimator: state or action out of range");
  const std::vector<double>& w = w_[std::size_t(action)];
  double log_tau = std::log(std::max(tau, 1e-12));
  return w[std::size_t(state)] + w[std::size_t(states_)] + w[std::size_t(states_) + 1] * log_tau;
}

double LinearQEstimator::train_minibatch(const std::vector<const Transition*>& batch) {
  if (batch.empty()) throw std::invalid_argument("train_minibatch: empty batch");
  std::vector<std::vector<double>> grad(std::size_t(actions_),
                                        std::vector<double>(std::size_t(states_) + 2, 0.0));
  double loss = 0.0;
  const double norm = 1.0 / (double(batch.size()) * double(actions_));
  for (const Transition* t : batch) {
    if (t->q_targets.size() != std::size_t(actions_))
      throw std::logic_error("train_minibatch: target row width mismatch");
    double log_tau = std::log(std::max(t->tau, 1e-12));
    for (int a = 0; a < actions_; ++a) {
      double err = evaluate(t->state, a, t->tau) - t->q_targets[std::size_t(a)];
      loss += err * err * norm;
      double g = 2.0 * err * norm;
      std::vector<double>& ga = grad[std::size_t(a)];
      ga[std::size_t(t->state)] += g;
      ga[std::size_t(states_)] += g;
      ga[std::size_t(states_) + 1] += g * log_tau;
    }
  }
  for (int a = 0; a < actions_; ++a)
    for (std::size_t i = 0; i < w_[std::size_t(a)].size(); ++i)
      w_[std::size_t(a)][i] -= lr_ * grad[std::size_t(a)][i];
  return loss;
}

std::vector<double> puct_policy_target(const TreeNode& root) {
  if (root.leaf()) throw std::logic_error("puct_policy_target: root has no children");
  const std::size_t k = root.children.size();
  long long total = 0;
  for (const auto& c : root.children) total += c->count;
  std::vector<double> p(k, 1.0 / double(k));
  if (total > 0)
    for (std::size_t a = 0; a < k; ++a)
      p[a] = double(root.children[a]->count) / double(total);
  return p;
}

namespace {

MaxEntConfig greedy_variant(MaxEntConfig cfg) {
  cfg.tau_sel = 1e-6;  // below the argmax threshold of the action rule
  cfg.seed = derive_seed(cfg.seed, 0x9e11);
  return cfg;
}

PuctConfig greedy_variant(PuctConfig cfg) {
  cfg.seed = derive_seed(cfg.seed, 0x9e11);
  return cfg;
}

}  // namespace

MaxEntAgent::MaxEntAgent(const MaxEntConfig& cfg, const TemperatureController& ctl,
                         const EnvironmentModel& env, const QEstimator& estimator)
    : train_(cfg, ctl, env, estimator), eval_(greedy_variant(cfg), ctl, env, estimator) {}

void MaxEntAgent::reset() {
  train_.reset();
  eval_.reset();
}

PuctAgent::PuctAgent(const PuctConfig& cfg, const EnvironmentModel& env,
                     const QEstimator& estimator)
    : train_(cfg, env, estimator),
      eval_(greedy_variant(cfg), env, estimator),
      tau_init_(cfg.tau_init) {}

void PuctAgent::reset() {
  train_.reset();
  eval_.reset();
}

void validate(const LoopConfig& cfg) {
  if (cfg.episodes_per_epoch < 0)
    throw std::invalid_argument("loop config: episodes_per_epoch must be >= 0");
  if (cfg.epochs < 0) throw std::invalid_argument("loop config: epochs must be >= 0");
  if (cfg.updates_per_epoch < 1)
    throw std::invalid_argument("loop config: updates_per_epoch must be >= 1");
  if (cfg.batch_size < 1) throw std::invalid_argument("loop config: batch_size must be >= 1");
  if (cfg.eval_episodes < 1)
    throw std::invalid_argument("loop config: eval_episodes must be >= 1");
  if (cfg.max_steps < 1) throw std::invalid_argument("loop config: max_steps must be >= 1");
  if (cfg.buffer_capacity == 0)
    throw std::invalid_argument("loop config: buffer_capacity must be >= 1");
  if (!(cfg.learning_rate > 0.0))
    throw std::invalid_argument("loop config: learning_rate must be > 0");
}

CollectStats collect_epoch(const LoopConfig& cfg, const EnvironmentModel& env,
                           PlannerAgent& agent, ReplayBuffer& buffer) {
  validate(cfg);
  CollectStats stats;
  double return_sum = 0.0;
  double tau_sum = 0.0;
  for (int ep = 0; ep < cfg.episodes_per_epoch; ++ep) {
    agent.reset();
    int s = env.initial_state();
    double total = 0.0;
    for (int step = 0; step < cfg.max_steps && !env.is_terminal(s); ++step) {
      int a = agent.act(s);
      Transition t;
      t.state = s;
      t.q_targets = agent.root_q();
      t.tau = agent.tau();
      tau_sum += t.tau;
      buffer.push(std::move(t));
      stats.transitions += 1;
      StepResult r = env.step(s, a);
      total += r.reward;
      s = r.state;
    }
    stats.episodes += 1;
    return_sum += total;
  }
  if (stats.episodes > 0) stats.mean_return = return_sum / double(stats.episodes);
  if (stats.transitions > 0) stats.mean_tau = tau_sum / double(stats.transitions);
  return stats;
}

double eval_epoch(const LoopConfig& cfg, const EnvironmentModel& env, PlannerAgent& agent) {
  validate(cfg);
  double return_sum = 0.0;
  for (int ep = 0; ep < cfg.eval_episodes; ++ep) {
    agent.reset();
    int s = env.initial_state();
    for (int step = 0; step < cfg.max_steps && !env.is_terminal(s); ++step) {
      int a = agent.act_eval(s);
      StepResult r = env.step(s, a);
      return_sum += r.reward;
      s = r.state;
    }
  }
  return return_sum / double(cfg.eval_episodes);
}

double train_epoch(const LoopConfig& cfg, ReplayBuffer& buffer, LinearQEstimator& estimator,
                   std::mt19937_64& gen) {
  validate(cfg);
  if (buffer.size() < std::size_t(cfg.batch_size)) {
    std::cerr << "ants: train_epoch skipped: buffer holds " << buffer.size()
              << " transitions, batch needs " << cfg.batch_size << "\n";
    return std::numeric_limits<double>::quiet_NaN();
  }
  double loss_sum = 0.0;
  for (int u = 0; u < cfg.updates_per_epoch; ++u)
    loss_sum += estimator.train_minibatch(buffer.sample(std::size_t(cfg.batch_size), gen));
  return loss_sum / double(cfg.updates_per_epoch);
}

std::vector<EpochRow> run_loop(const LoopConfig& cfg, const EnvironmentModel& env,
                               PlannerAgent& agent, LinearQEstimator* estimator,
                               ReplayBuffer& buffer) {
  validate(cfg);
  std::vector<EpochRow> rows;
  if (cfg.epochs == 0) return rows;
  std::mt19937_64 gen(derive_seed(cfg.seed, 0x7ea1));
  long long cumulative = 0;
  for (int epoch = 0; epoch <= cfg.epochs; ++epoch) {
    CollectStats stats = collect_epoch(cfg, env, agent, buffer);
    cumulative += stats.episodes;
    double loss = std::numeric_limits<double>::quiet_NaN();
    if (epoch > 0 && estimator != nullptr) loss = train_epoch(cfg, buffer, *estimator, gen);
    double eval_return = eval_epoch(cfg, env, agent);
    rows.push_back({epoch, cumulative, eval_return, loss, stats.mean_tau});
  }
  return rows;
}

void write_learning_curve_csv(std::ostream& out, const std::vector<EpochRow>& rows) {
  out << "epoch,episodes_collected,mean_return,mean_loss,mean_tau\n";
  for (const EpochRow& r : rows)
    out << r.epoch << ',' << r.episodes_collected << ',' << csv_double(r.mean_return) << ','
        << csv_double(r.mean_loss) << ',' << csv_double(r.mean_tau) << '\n';
}

}  // namespace ants
