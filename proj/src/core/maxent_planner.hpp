#pragma once

#include "core/entropy.hpp"
#include "core/env.hpp"
#include "core/estimator.hpp"
#include "core/tree.hpp"

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

namespace ants {

// Owns the temperature state and its adaptation parameters.  tau_tilde is the
// smoothed operating temperature every backup and policy uses.
struct TemperatureController {
  double tau_tilde = 10.0;
  double tau0 = 10.0;
  double tau_min = 0.01;
  double h_avg = 0.2;              // target mean internal-node entropy
  double alpha = 0.9;              // log-space smoothing factor, in (0,1)
  int adaptation_frequency = 50;   // passes between adaptations
  double bracket_hi = 1e6;         // upper end of the root-search bracket
};

enum class LeafInit {
  raw,    // leaf Q <- estimator value
  ments,  // leaf Q <- (estimate - regularized value of the row) / tau_init
};

struct MaxEntConfig {
  EntropyKind kind = EntropyKind::shannon;
  int n_passes = 100;
  int depth_limit = 12;
  double epsilon = 0.01;   // uniform exploration mass scale in the mixed policy
  double tau_sel = 0.5;    // action-selection temperature multiplier, in (0,1]
  double gamma = 0.99;
  LeafInit leaf_init = LeafInit::raw;
  double tau_init = 1.0;   // only read in ments leaf init
  bool shaping = true;     // subtract tau * H_max inside backups
  bool e3w = true;         // false: sample the bare regularized policy
  bool adapt = true;       // false: fixed-temperature baseline mode
  bool reuse_tree = true;
  std::uint64_t seed = 0;
};

// Throw std::invalid_argument on violated invariants.  The controller check
// needs the action count to bound h_avg by the achievable maximum entropy.
void validate(const MaxEntConfig& cfg);
void validate(const TemperatureController& ctl, EntropyKind kind, int action_count);

// Exploration-mixed policy over an internal node's children:
// (1 - lambda) * soft_policy(child Q, tau) + lambda / K, with
// lambda = min(1, eps * K / ln(N + 1)) read from the node's current count.
// lambda is 1 at N = 0 (the formula's pole) and 0 whenever eps = 0.
std::vector<double> e3w_policy(const TreeNode& node, double tau, double eps, EntropyKind kind);

// A selection walk: visited nodes from the root to the stopping node, plus the
// reward of each traversed edge (one fewer than nodes).
struct SelectResult {
  std::vector<TreeNode*> path;
  std::vector<double> rewards;
};

// Samples the mixed policy at each internal node (one uniform draw per node,
// root first) until a leaf, a terminal node, or the depth limit.
SelectResult select(TreeNode& root, const MaxEntConfig& cfg, double tau, std::mt19937_64& gen);

// Creates one child per action from the perfect model.  The leaf must be
// non-terminal and unexpanded.
void expand(TreeNode& leaf, const EnvironmentModel& model);

// Initializes the q-values of a freshly expanded node's children from the
// estimator.  Terminal children take their edge reward instead.
void simulate(TreeNode& leaf, const QEstimator& estimator, double tau_tilde,
              const MaxEntConfig& cfg);

// Bottom-up along the selected path, root included: count += 1 and, for
// expanded nodes, qvalue <- edge_reward + gamma * (regularized child value,
// minus tau * H_max when shaping).
void backpropagate(const SelectResult& sel, double tau, const MaxEntConfig& cfg);

enum class AdaptOutcome {
  root_interior,  // the entropy-matching temperature lies inside the bracket
  clamped_lo,
  clamped_hi,
  no_internal,  // tree had no expanded nodes; temperature unchanged
};

struct AdaptResult {
  double tau;
  AdaptOutcome outcome;
};

// Temperature at which the mean entropy of the regularized policies across
// all internal nodes equals the target.  Root-finds the excess-entropy curve
// on [tau_min, bracket_hi], growing the upper end up to 1e9 if needed; without
// a sign change, returns the endpoint with the smaller excess.
AdaptResult adapt_temperature(const TreeNode& root, const TemperatureController& ctl,
                              EntropyKind kind);

// Log-space exponential smoothing toward tau_new; updates and returns
// tau_tilde (never below tau_min).
double smooth_temperature(TemperatureController& ctl, double tau_new);

// Recomputes every expanded node's qvalue bottom-up at the given temperature.
// Leaf q-values (estimator inits and terminal rewards) are untouched.
void recalculate_qvalues(TreeNode& root, double tau, const MaxEntConfig& cfg);

// Samples the root action from the mixed policy at tau_tilde * tau_sel.
// tau_sel <= 1e-3 means evaluation mode: argmax over child q-values with a
// random tie-break.  Consumes exactly one uniform draw either way.
int final_action(const TreeNode& root, double tau_tilde, const MaxEntConfig& cfg,
                 std::mt19937_64& gen);

// The planner: repeated select / expand / simulate / backpropagate passes with
// periodic temperature adaptation, then an action sample from the root.
class MaxEntPlanner {
 public:
  MaxEntPlanner(const MaxEntConfig& cfg, const TemperatureController& ctl,
                const EnvironmentModel& model, const QEstimator& estimator);

  // One planning step from root_state; returns the chosen action.  When tree
  // reuse is on and the previous step's chosen child matches root_state, its
  // subtree is retained.
  int plan(int root_state);

  // Systematically expands the full tree to `depth` (no sampling, no counts)
  // and recomputes all q-values at the current temperature.  This is the
  // deterministic construction the backward-induction oracles are compared
  // against.
  void build_exhaustive(int root_state, int depth);

  // Drops the tree and the reuse link; the smoothed temperature persists, so
  // adaptation carries across episodes of a run.
  void reset();

  const TreeNode* root() const { return root_.get(); }
  double tau() const { return ctl_.tau_tilde; }
  TemperatureController& controller() { return ctl_; }
  const MaxEntConfig& config() const { return cfg_; }

 private:
  void run_pass();

  MaxEntConfig cfg_;
  TemperatureController ctl_;
  const EnvironmentModel* model_;
  const QEstimator* estimator_;
  std::unique_ptr<TreeNode> root_;
  std::mt19937_64 gen_;
  int last_action_ = -1;
};

}  // namespace ants
