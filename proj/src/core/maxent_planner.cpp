#include "core/maxent_planner.hpp"

#include "core/rng.hpp"
#include "core/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <stdexcept>

namespace ants {

void validate(const MaxEntConfig& cfg) {
  if (cfg.n_passes < 1) throw std::invalid_argument("planner: n_passes must be >= 1");
  if (cfg.depth_limit < 1) throw std::invalid_argument("planner: depth_limit must be >= 1");
  if (!(cfg.gamma > 0.0 && cfg.gamma < 1.0))
    throw std::invalid_argument("planner: gamma must lie in (0, 1)");
  if (!(cfg.tau_sel > 0.0 && cfg.tau_sel <= 1.0))
    throw std::invalid_argument("planner: tau_sel must lie in (0, 1]");
  if (!(cfg.epsilon >= 0.0)) throw std::invalid_argument("planner: epsilon must be >= 0");
  if (cfg.leaf_init == LeafInit::ments && !(cfg.tau_init > 0.0))
    throw std::invalid_argument("planner: tau_init must be positive");
}

void validate(const TemperatureController& ctl, EntropyKind kind, int action_count) {
  if (!(ctl.tau_min > 0.0)) throw std::invalid_argument("temperature: tau_min must be positive");
  if (!(ctl.tau_tilde >= ctl.tau_min) || !(ctl.tau0 >= ctl.tau_min))
    throw std::invalid_argument("temperature: tau must be >= tau_min");
  if (!(ctl.alpha > 0.0 && ctl.alpha < 1.0))
    throw std::invalid_argument("temperature: alpha must lie in (0, 1)");
  if (ctl.adaptation_frequency < 1)
    throw std::invalid_argument("temperature: adaptation_frequency must be >= 1");
  if (!(ctl.bracket_hi > ctl.tau_min))
    throw std::invalid_argument("temperature: bracket_hi must exceed tau_min");
  const double cap = max_entropy(kind, std::size_t(action_count));
  if (!(ctl.h_avg > 0.0 && ctl.h_avg < cap))
    throw std::invalid_argument("temperature: h_avg must lie in (0, max entropy)");
}

std::vector<double> e3w_policy(const TreeNode& node, double tau, double eps, EntropyKind kind) {
  std::vector<double> q = child_qvalues(node);
  std::vector<double> pi = soft_policy(q, kind, tau);
  const double k = double(q.size());
  double lambda = 0.0;
  if (eps > 0.0) {
    const double ln_n = std::log(double(node.count) + 1.0);
    lambda = ln_n > 0.0 ? std::min(1.0, eps * k / ln_n) : 1.0;
  }
  for (double& p : pi) p = (1.0 - lambda) * p + lambda / k;
  return pi;
}

SelectResult select(TreeNode& root, const MaxEntConfig& cfg, double tau, std::mt19937_64& gen) {
  SelectResult out;
  out.path.push_back(&root);
  TreeNode* node = &root;
  int depth = 0;
  const double eps = cfg.e3w ? cfg.epsilon : 0.0;
  while (!node->leaf() && !node->terminal && depth < cfg.depth_limit) {
    std::vector<double> probs = e3w_policy(*node, tau, eps, cfg.kind);
    std::size_t a = sample_categorical(probs, uniform01(gen));
    node = node->children[a].get();
    out.rewards.push_back(node->edge_reward);
    out.path.push_back(node);
    ++depth;
  }
  return out;
}

void expand(TreeNode& leaf, const EnvironmentModel& model) {
  if (leaf.terminal) throw std::logic_error("expand: terminal node");
  if (!leaf.leaf()) throw std::logic_error("expand: node already expanded");
  const int k = model.action_count();
  leaf.children.reserve(std::size_t(k));
  for (int a = 0; a < k; ++a) {
    StepResult r = model.step(leaf.state, a);
    auto child = std::make_unique<TreeNode>();
    child->state = r.state;
    child->edge_reward = r.reward;
    child->terminal = r.terminal;
    leaf.children.push_back(std::move(child));
  }
}

void simulate(TreeNode& leaf, const QEstimator& estimator, double tau_tilde,
              const MaxEntConfig& cfg) {
  const int k = int(leaf.children.size());
  std::vector<double> qhat(static_cast<std::size_t>(k));
  for (int a = 0; a < k; ++a) qhat[std::size_t(a)] = estimator.evaluate(leaf.state, a, tau_tilde);
  double baseline = 0.0;
  if (cfg.leaf_init == LeafInit::ments)
    baseline = soft_value(qhat, cfg.kind, cfg.tau_init);
  for (int a = 0; a < k; ++a) {
    TreeNode& child = *leaf.children[std::size_t(a)];
    if (child.terminal) {
      child.qvalue = child.edge_reward;
    } else if (cfg.leaf_init == LeafInit::raw) {
      child.qvalue = qhat[std::size_t(a)];
    } else {
      child.qvalue = (qhat[std::size_t(a)] - baseline) / cfg.tau_init;
    }
  }
}

namespace {

// edge_reward + gamma * (regularized child value, shaped when configured).
double backup_q(const TreeNode& node, double tau, const MaxEntConfig& cfg) {
  std::vector<double> q = child_qvalues(node);
  double value = soft_value(q, cfg.kind, tau);
  if (cfg.shaping) value -= tau * max_entropy(cfg.kind, q.size());
  return node.edge_reward + cfg.gamma * value;
}

}  // namespace

void backpropagate(const SelectResult& sel, double tau, const MaxEntConfig& cfg) {
  for (std::size_t i = sel.path.size(); i-- > 0;) {
    TreeNode* node = sel.path[i];
    node->count += 1;
    if (node->terminal) {
      node->qvalue = node->edge_reward;
    } else if (!node->leaf()) {
      node->qvalue = backup_q(*node, tau, cfg);
    }
    // Unexpanded non-terminal leaves keep their estimator init.
  }
}

AdaptResult adapt_temperature(const TreeNode& root, const TemperatureController& ctl,
                              EntropyKind kind) {
  std::vector<const TreeNode*> internal;
  collect_internal(root, internal);
  if (internal.empty()) {
    std::fputs("ants: adapt_temperature: no internal nodes, temperature unchanged\n", stderr);
    return {ctl.tau_tilde, AdaptOutcome::no_internal};
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(internal.size());
  for (const TreeNode* n : internal) rows.push_back(child_qvalues(*n));
  auto excess = [&](double tau) {
    double h = 0.0;
    for (const auto& q : rows) h += entropy(soft_policy(q, kind, tau), kind);
    return h / double(rows.size()) - ctl.h_avg;
  };

  const double lo = ctl.tau_min;
  double hi = ctl.bracket_hi;
  double f_lo = excess(lo);
  double f_hi = excess(hi);
  // Mean entropy is non-decreasing in temperature; grow the bracket before
  // giving up on a sign change.
  while ((f_lo > 0.0) == (f_hi > 0.0) && hi < 1e9) {
    hi = std::min(hi * 10.0, 1e9);
    f_hi = excess(hi);
  }
  if ((f_lo > 0.0) == (f_hi > 0.0)) {
    if (std::abs(f_lo) <= std::abs(f_hi)) return {lo, AdaptOutcome::clamped_lo};
    return {std::max(ctl.tau_min, hi), AdaptOutcome::clamped_hi};
  }
  RootResult r = brent_root(excess, lo, hi, 1e-8, 1e-12, 300);
  double tau = std::max(ctl.tau_min, r.x);
  AdaptOutcome outcome = AdaptOutcome::root_interior;
  if (tau <= lo)
    outcome = AdaptOutcome::clamped_lo;
  else if (tau >= hi)
    outcome = AdaptOutcome::clamped_hi;
  return {tau, outcome};
}

double smooth_temperature(TemperatureController& ctl, double tau_new) {
  const double mixed =
      std::exp(ctl.alpha * std::log(ctl.tau_tilde) + (1.0 - ctl.alpha) * std::log(tau_new));
  ctl.tau_tilde = std::max(ctl.tau_min, mixed);
  return ctl.tau_tilde;
}

void recalculate_qvalues(TreeNode& root, double tau, const MaxEntConfig& cfg) {
  for (auto& c : root.children) recalculate_qvalues(*c, tau, cfg);
  if (!root.leaf() && !root.terminal) root.qvalue = backup_q(root, tau, cfg);
}

int final_action(const TreeNode& root, double tau_tilde, const MaxEntConfig& cfg,
                 std::mt19937_64& gen) {
  if (root.leaf()) throw std::logic_error("final_action: root not expanded");
  const double u = uniform01(gen);
  if (cfg.tau_sel <= 1e-3) {
    std::vector<double> q = child_qvalues(root);
    const double best = *std::max_element(q.begin(), q.end());
    std::vector<int> ties;
    for (int a = 0; a < int(q.size()); ++a)
      if (q[std::size_t(a)] == best) ties.push_back(a);
    return ties[std::min(ties.size() - 1, std::size_t(u * double(ties.size())))];
  }
  std::vector<double> probs =
      e3w_policy(root, tau_tilde * cfg.tau_sel, cfg.e3w ? cfg.epsilon : 0.0, cfg.kind);
  return int(sample_categorical(probs, u));
}

MaxEntPlanner::MaxEntPlanner(const MaxEntConfig& cfg, const TemperatureController& ctl,
                             const EnvironmentModel& model, const QEstimator& estimator)
    : cfg_(cfg), ctl_(ctl), model_(&model), estimator_(&estimator) {
  validate(cfg_);
  validate(ctl_, cfg_.kind, model.action_count());
  gen_.seed(cfg_.seed);
}

void MaxEntPlanner::run_pass() {
  SelectResult sel = select(*root_, cfg_, ctl_.tau_tilde, gen_);
  TreeNode* leaf = sel.path.back();
  const int depth = int(sel.path.size()) - 1;
  if (leaf->leaf() && !leaf->terminal && depth < cfg_.depth_limit) {
    expand(*leaf, *model_);
    simulate(*leaf, *estimator_, ctl_.tau_tilde, cfg_);
  }
  backpropagate(sel, ctl_.tau_tilde, cfg_);
}

int MaxEntPlanner::plan(int root_state) {
  if (model_->is_terminal(root_state))
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
  for (int i = 1; i <= cfg_.n_passes; ++i) {
    run_pass();
    if (cfg_.adapt && i % ctl_.adaptation_frequency == 0) {
      AdaptResult ar = adapt_temperature(*root_, ctl_, cfg_.kind);
      if (ar.outcome != AdaptOutcome::no_internal) {
        smooth_temperature(ctl_, ar.tau);
        recalculate_qvalues(*root_, ctl_.tau_tilde, cfg_);
      }
    }
  }
  last_action_ = final_action(*root_, ctl_.tau_tilde, cfg_, gen_);
  return last_action_;
}

void MaxEntPlanner::build_exhaustive(int root_state, int depth) {
  if (depth < 0 || depth > cfg_.depth_limit)
    throw std::invalid_argument("build_exhaustive: depth out of range");
  root_ = std::make_unique<TreeNode>();
  root_->state = root_state;
  root_->terminal = model_->is_terminal(root_state);
  last_action_ = -1;
  std::deque<std::pair<TreeNode*, int>> queue;
  queue.emplace_back(root_.get(), 0);
  while (!queue.empty()) {
    auto [node, d] = queue.front();
    queue.pop_front();
    if (node->terminal || d >= depth) continue;
    expand(*node, *model_);
    simulate(*node, *estimator_, ctl_.tau_tilde, cfg_);
    for (auto& c : node->children) queue.emplace_back(c.get(), d + 1);
  }
  recalculate_qvalues(*root_, ctl_.tau_tilde, cfg_);
}

void MaxEntPlanner::reset() {
  root_.reset();
  last_action_ = -1;
}

}  // namespace ants
