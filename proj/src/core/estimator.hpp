#pragma once

#include "core/env.hpp"

#include <vector>

namespace ants {

// Action-value estimator consulted when initializing freshly expanded leaves.
// Implementations must be deterministic in (state, action, tau).
class QEstimator {
 public:
  virtual ~QEstimator() = default;
  virtual double evaluate(int state, int action, double tau) const = 0;
};

class ZeroEstimator final : public QEstimator {
 public:
  double evaluate(int, int, double) const override { return 0.0; }
};

// The one-step reward of the perfect model; an estimator that knows the
// immediate payoff but nothing beyond it.
class RewardEstimator final : public QEstimator {
 public:
  explicit RewardEstimator(const EnvironmentModel& env) : env_(env) {}
  double evaluate(int state, int action, double) const override {
    return env_.step(state, action).reward;
  }

 private:
  const EnvironmentModel& env_;
};

// Fixed lookup table, temperature-blind.  Used to inject oracle values.
class TableEstimator final : public QEstimator {
 public:
  TableEstimator(int states, int actions) : actions_(actions), q_(std::size_t(states) * actions, 0.0) {}
  double& at(int state, int action) { return q_[std::size_t(state) * actions_ + action]; }
  double evaluate(int state, int action, double) const override {
    return q_[std::size_t(state) * actions_ + action];
  }

 private:
  int actions_;
  std::vector<double> q_;
};

}  // namespace ants
