#include "core/puct_planner.hpp"

#include "core/entropy.hpp"
#include "core/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ants {

void validate(const PuctConfig& cfg) {
  if (!(cfg.c >= 0.0))
    throw std::invalid_argument("exploration coefficient must be >= 0");
  if (!(cfg.tau_init > 0.0))
    throw std::invalid_argument("prior temperature must be positive");
  if (!(cfg.tau_sel > 0.0) || cfg.tau_sel > 1.0)
    throw std::invalid_argument("selection temperature must lie in (0, 1]");
  if (cfg.n_passes < 1) throw std::invalid_argument("n_passes must be >= 1");
  if (cfg.depth_limit < 1) throw std::invalid_argument("depth_limit must be >= 1");
  if (!(cfg.gamma > 0.0) || !(cfg.gamma < 1.0))
    throw std::invalid_argument("gamma must lie in (0, 1)");
}

std::vector<double> puct_prior(const std::vector<double>& qhat, double tau_init) {
  return soft_policy(qhat, EntropyKind::shannon, tau_init);
}

double puct_score(const TreeNode& node, int action, double c) {
  const TreeNode& child = *node.children[std::size_t(action)];
  double bonus = c * child.prior * std::sqrt(double(node.count)) / (double(child.count) + 1.0);
  return child.qvalue + bonus;
}

void puct_backup(const std::vector<TreeNode*>& path, const std::vector<double>& rewards,
                 double gamma, double leaf_value) {
  if (path.empty()) throw std::logic_error("puct_backup: empty path");
  if (rewards.size() + 1 != path.size())
    throw std::logic_error("puct_backup: path/reward length mismatch");
  double v = leaf_value;
  for (std::size_t i = path.size(); i-- > 1;) {
    v = rewards[i - 1] + gamma * v;
    TreeNode& node = *path[i];
    node.count += 1;
    node.qvalue += (v - node.qvalue) / double(node.count);
  }
  TreeNode& root = *path.front();
  root.count += 1;
  root.qvalue += (v - root.qvalue) / double(root.count);
}

int puct_action(const TreeNode& root, double tau_sel, PuctMode mode, std::mt19937_64& gen) {
  if (root.leaf()) throw std::logic_error("puct_action: root has no children");
  const std::size_t k = root.children.size();
  if (mode == PuctMode::eval) {
    std::size_t best = 0;
    for (std::size_t a = 1; a < k; ++a)
      if (root.children[a]->count > root.children[best]->count) best = a;
    return int(best);
  }
  // count^(1/tau_sel) in log space; unvisited actions keep zero mass.
  std::vector<double> logw(k, -std::numeric_limits<double>::infinity());
  double max_log = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (std::size_t a = 0; a < k; ++a) {
    long long n = root.children[a]->count;
    if (n > 0) {
      logw[a] = std::log(double(n)) / tau_sel;
      max_log = std::max(max_log, logw[a]);
      any = true;
    }
  }
  std::vector<double> probs(k, 1.0 / double(k));
  if (any) {
    double z = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      probs[a] = std::isfinite(logw[a]) ? std::exp(logw[a] - max_log) : 0.0;
      z += probs[a];
    }
    for (double& p : probs) p /= z;
  }
  return int(sample_categorical(probs, uniform01(gen)));
}

PuctPlanner::PuctPlanner(const PuctConfig& cfg, const EnvironmentModel& model,
                         const QEstimator& estimator)
    : cfg_(cfg), model_(model), estimator_(estimator) {
  validate(cfg_);
  gen_.seed(cfg_.seed);
}

void PuctPlanner::expand(TreeNode& node) {
  if (node.terminal) throw std::logic_error("expand: node is terminal");
  if (!node.leaf()) throw std::logic_error("expand: node already expanded");
  const int k = model_.action_count();
  std::vector<double> qhat(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a)
    qhat[std::size_t(a)] = estimator_.evaluate(node.state, a, cfg_.tau_init);
  std::vector<double> prior = puct_prior(qhat, cfg_.tau_init);
  node.children.reserve(std::size_t(k));
  for (int a = 0; a < k; ++a) {
    StepResult r = model_.step(node.state, a);
    auto child = std::make_unique<TreeNode>();
    child->state = r.state;
    child->edge_reward = r.reward;
    child->terminal = r.terminal;
    child->prior = prior[std::size_t(a)];
    node.children.push_back(std::move(child));
  }
}

double PuctPlanner::bootstrap(const TreeNode& node) const {
  if (node.terminal) return 0.0;
  const int k = model_.action_count();
  double best = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < k; ++a)
    best = std::max(best, estimator_.evaluate(node.state, a, cfg_.tau_init));
  return best;
}

void PuctPlanner::run_pass() {
  std::vector<TreeNode*> path{root_.get()};
  std::vector<double> rewards;
  TreeNode* node = root_.get();
  int depth = 0;
  while (!node->terminal && !node->leaf() && depth < cfg_.depth_limit) {
    const std::size_t k = node->children.size();
    std::size_t best = 0;
    double best_score = puct_score(*node, 0, cfg_.c);
    for (std::size_t a = 1; a < k; ++a) {
      double s = puct_score(*node, int(a), cfg_.c);
      if (s > best_score) {
        best_score = s;
        best = a;
      }
    }
    node = node->children[best].get();
    path.push_back(node);
    rewards.push_back(node->edge_reward);
    ++depth;
  }
  if (!node->terminal && node->leaf() && depth < cfg_.depth_limit) expand(*node);
  puct_backup(path, rewards, cfg_.gamma, bootstrap(*node));
}

int PuctPlanner::plan(int root_state, PuctMode mode) {
  if (model_.is_terminal(root_state))
    throw std::invalid_argument("plan: root state is terminal");
  TreeNode* reused = nullptr;
  if (cfg_.reuse_tree && root_ && !root_->leaf() && last_action_ >= 0 &&
      std::size_t(last_action_) < root_->children.size()) {
    TreeNode* child = root_->children[std::size_t(last_action_)].get();
    if (child->state == root_state && !child->terminal) reused = child;
  }
  if (reused) {
    auto sub = detach_child(*root_, last_action_);
    root_ = std::move(sub);
    root_->edge_reward = 0.0;
  } else {
    root_ = std::make_unique<TreeNode>();
    root_->state = root_state;
  }
  for (int i = 0; i < cfg_.n_passes; ++i) run_pass();
  last_action_ = puct_action(*root_, cfg_.tau_sel, mode, gen_);
  return last_action_;
}

void PuctPlanner::reset() {
  root_.reset();
  last_action_ = -1;
}

}  // namespace ants
