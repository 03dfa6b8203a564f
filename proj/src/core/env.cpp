#include "core/env.hpp"

#include <algorithm>
#include <stdexcept>

namespace ants {

ChainEnv::ChainEnv(int length, double step_penalty, double goal_reward, double distractor_reward,
                   double reward_scale)
    : length_(length),
      penalty_(step_penalty),
      goal_reward_(goal_reward),
      distractor_(distractor_reward),
      scale_(reward_scale) {
  if (length < 1) throw std::domain_error("ChainEnv: length must be >= 1");
}

StepResult ChainEnv::step(int state, int action) const {
  if (is_terminal(state)) return {state, 0.0, true};
  if (action == 1) {
    int next = state + 1;
    bool done = next == length_;
    return {next, scale_ * (-penalty_ + (done ? goal_reward_ : 0.0)), done};
  }
  return {state, scale_ * (state == 0 ? distractor_ : -penalty_), false};
}

GridEnv::GridEnv(int width, int height, std::vector<Cell> walls, Cell start, Cell goal,
                 double step_penalty, double goal_reward)
    : width_(width),
      height_(height),
      start_(start.y * width + start.x),
      goal_(goal.y * width + goal.x),
      wall_(std::size_t(width) * std::size_t(height), 0),
      penalty_(step_penalty),
      goal_reward_(goal_reward) {
  if (width < 1 || height < 1) throw std::domain_error("GridEnv: empty board");
  for (const Cell& w : walls) wall_[std::size_t(w.y * width + w.x)] = 1;
}

StepResult GridEnv::step(int state, int action) const {
  if (is_terminal(state)) return {state, 0.0, true};
  int x = state % width_;
  int y = state / width_;
  switch (action) {
    case 0: --y; break;
    case 1: ++y; break;
    case 2: --x; break;
    default: ++x; break;
  }
  int next = state;
  if (x >= 0 && x < width_ && y >= 0 && y < height_ && !wall_[std::size_t(y * width_ + x)])
    next = y * width_ + x;
  bool done = next == goal_;
  return {next, -penalty_ + (done ? goal_reward_ : 0.0), done};
}

namespace {

template <typename Backup>
SoftValueTable induct(const EnvironmentModel& env, double gamma, int horizon, Backup backup) {
  const int ns = env.state_count();
  const int na = env.action_count();
  if ((std::size_t(horizon) + 1) * std::size_t(ns) > 10000)
    throw std::domain_error("exact values: more than 1e4 state-horizon pairs");
  SoftValueTable t;
  t.horizon = horizon;
  t.states = ns;
  t.actions = na;
  t.v.assign((std::size_t(horizon) + 1) * std::size_t(ns), 0.0);
  t.q.assign(std::size_t(horizon) * std::size_t(ns) * std::size_t(na), 0.0);
  std::vector<double> qrow(static_cast<std::size_t>(na));
  for (int h = 1; h <= horizon; ++h) {
    for (int s = 0; s < ns; ++s) {
      if (env.is_terminal(s)) continue;
      for (int a = 0; a < na; ++a) {
        StepResult r = env.step(s, a);
        double future = r.terminal ? 0.0 : t.value(h - 1, r.state);
        qrow[std::size_t(a)] = r.reward + gamma * future;
        t.q[(std::size_t(h - 1) * ns + s) * std::size_t(na) + a] = qrow[std::size_t(a)];
      }
      t.v[std::size_t(h) * ns + s] = backup(qrow);
    }
  }
  return t;
}

}  // namespace

SoftValueTable exact_soft_values(const EnvironmentModel& env, double gamma, double tau,
                                 EntropyKind kind, int horizon) {
  return induct(env, gamma, horizon,
                [&](const std::vector<double>& q) { return soft_value(q, kind, tau); });
}

SoftValueTable exact_hard_values(const EnvironmentModel& env, double gamma, int horizon) {
  return induct(env, gamma, horizon, [](const std::vector<double>& q) {
    double best = q[0];
    for (double v : q) best = std::max(best, v);
    return best;
  });
}

Trajectory run_episode(const EnvironmentModel& env, const std::function<int(int)>& policy,
                       int max_steps) {
  Trajectory out;
  int s = env.initial_state();
  out.states.push_back(s);
  for (int step = 0; step < max_steps; ++step) {
    int a = policy(s);
    StepResult r = env.step(s, a);
    out.actions.push_back(a);
    out.rewards.push_back(r.reward);
    out.total_return += r.reward;
    out.states.push_back(r.state);
    s = r.state;
    if (r.terminal) break;
  }
  return out;
}

}  // namespace ants
