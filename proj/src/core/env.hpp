#pragma once

#include "core/entropy.hpp"

#include <functional>
#include <vector>

namespace ants {

struct StepResult {
  int state;
  double reward;
  bool terminal;
};

// Deterministic perfect model: step is a pure function of (state, action).
// States are small integer handles; state_count bounds them for enumeration
// oracles and tabular features.
class EnvironmentModel {
 public:
  virtual ~EnvironmentModel() = default;
  virtual int action_count() const = 0;
  virtual int state_count() const = 0;
  virtual int initial_state() const = 0;
  virtual bool is_terminal(int state) const = 0;
  virtual StepResult step(int state, int action) const = 0;
};

// Corridor of `length` cells plus a terminal goal cell.  Action 1 advances one
// cell (paying step_penalty, plus goal_reward on entering the goal); action 0
// stays put, paying step_penalty everywhere except state 0, where it collects
// the small distractor reward instead.  reward_scale multiplies every reward,
// giving the x1 / x100 fixture family.
class ChainEnv final : public EnvironmentModel {
 public:
  ChainEnv(int length, double step_penalty, double goal_reward, double distractor_reward,
           double reward_scale = 1.0);
  int action_count() const override { return 2; }
  int state_count() const override { return length_ + 1; }
  int initial_state() const override { return 0; }
  bool is_terminal(int state) const override { return state == length_; }
  StepResult step(int state, int action) const override;

 private:
  int length_;
  double penalty_, goal_reward_, distractor_, scale_;
};

// Four-action gridworld.  Moves off the board or into a wall are no-ops; every
// move pays the step penalty; entering the goal additionally pays goal_reward
// and terminates.
class GridEnv final : public EnvironmentModel {
 public:
  struct Cell {
    int x;
    int y;
  };
  GridEnv(int width, int height, std::vector<Cell> walls, Cell start, Cell goal,
          double step_penalty, double goal_reward);
  int action_count() const override { return 4; }
  int state_count() const override { return width_ * height_; }
  int initial_state() const override { return start_; }
  bool is_terminal(int state) const override { return state == goal_; }
  StepResult step(int state, int action) const override;

 private:
  int width_, height_, start_, goal_;
  std::vector<char> wall_;  // indexed by state
  double penalty_, goal_reward_;
};

// Finite-horizon value tables from backward induction.  v holds horizons
// 0..horizon; q holds horizons 1..horizon.  Terminal states have value 0 at
// every horizon.
struct SoftValueTable {
  int horizon = 0;
  int states = 0;
  int actions = 0;
  std::vector<double> v;
  std::vector<double> q;

  double value(int h, int s) const { return v[std::size_t(h) * states + s]; }
  double qvalue(int h, int s, int a) const {
    return q[(std::size_t(h - 1) * states + s) * actions + a];
  }
};

// Soft backup: V_h(s) = Omega*_tau(Q_h(s, .)), Q_h(s,a) = r + gamma V_{h-1}(s').
// Throws std::domain_error when (horizon+1) * state_count exceeds 1e4.
SoftValueTable exact_soft_values(const EnvironmentModel& env, double gamma, double tau,
                                 EntropyKind kind, int horizon);

// Same recursion with a hard max backup (the tau -> 0 limit).
SoftValueTable exact_hard_values(const EnvironmentModel& env, double gamma, int horizon);

struct Trajectory {
  std::vector<int> states;   // visited states, starting at the initial state
  std::vector<int> actions;
  std::vector<double> rewards;
  double total_return = 0.0;  // undiscounted sum of rewards
};

// Rolls out `policy` (state -> action) for at most max_steps steps, stopping
// early at a terminal transition.
Trajectory run_episode(const EnvironmentModel& env, const std::function<int(int)>& policy,
                       int max_steps);

}  // namespace ants
