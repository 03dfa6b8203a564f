#pragma once

#include "core/env.hpp"
#include "core/estimator.hpp"
#include "core/tree.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace ants {

enum class PuctMode { train, eval };

// Visit-count tree search: children are scored by their running-mean value
// plus a prior-weighted exploration bonus, leaves bootstrap from the greedy
// estimator value, and the returned action follows visitation counts.
struct PuctConfig {
  double c = 1.0;         // exploration coefficient (0 disables the bonus)
  double tau_init = 1.0;  // temperature of the softmax prior over estimates
  double tau_sel = 0.2;   // sharpening temperature for train-mode sampling
  double gamma = 0.99;
  int n_passes = 100;
  int depth_limit = 12;
  bool reuse_tree = true;
  std::uint64_t seed = 0;
};

void validate(const PuctConfig& cfg);

// Softmax of the estimate row at the prior temperature.
std::vector<double> puct_prior(const std::vector<double>& qhat, double tau_init);

// Score of the child for `action`:
//   Q(s,a) + c * prior(a) * sqrt(N(s)) / (N(s,a) + 1).
double puct_score(const TreeNode& node, int action, double c);

// Folds one sampled discounted return into the running means along `path`
// (root first).  rewards[i] is the edge reward into path[i+1]; leaf_value
// bootstraps the return from the final node's state.
void puct_backup(const std::vector<TreeNode*>& path, const std::vector<double>& rewards,
                 double gamma, double leaf_value);

// eval: visitation argmax, ties to the first index.  train: sample an action
// with probability proportional to count^(1/tau_sel); unvisited actions get
// zero mass, and all-zero counts fall back to a uniform sample.
int puct_action(const TreeNode& root, double tau_sel, PuctMode mode, std::mt19937_64& gen);

class PuctPlanner {
 public:
  PuctPlanner(const PuctConfig& cfg, const EnvironmentModel& model,
              const QEstimator& estimator);

  // Runs the configured number of passes from `root_state` and returns the
  // chosen action.  Reuses the subtree under the matching child when enabled.
  int plan(int root_state, PuctMode mode = PuctMode::train);

  // Drops the search tree (episode boundary).
  void reset();

  const TreeNode* root() const { return root_.get(); }

 private:
  void run_pass();
  void expand(TreeNode& node);
  double bootstrap(const TreeNode& node) const;

  PuctConfig cfg_;
  const EnvironmentModel& model_;
  const QEstimator& estimator_;
  std::unique_ptr<TreeNode> root_;
  std::mt19937_64 gen_;
  int last_action_ = -1;
};

}  // namespace ants
