#pragma once

#include <memory>
#include <vector>

namespace ants {

// One search-tree node.  qvalue estimates Q(parent_state, edge_action):
// edge_reward plus the discounted value of the subtree below.  A node is a
// leaf iff it has no children; internal nodes always carry one child per
// action (full expansion).
struct TreeNode {
  int state = 0;
  double edge_reward = 0.0;
  long long count = 0;
  double qvalue = 0.0;
  double prior = 0.0;  // selection prior over the incoming edge (count-based search only)
  bool terminal = false;
  std::vector<std::unique_ptr<TreeNode>> children;

  bool leaf() const { return children.empty(); }
};

// Q-values of the children, in action order.  Requires an internal node.
std::vector<double> child_qvalues(const TreeNode& node);

// Number of internal (expanded) nodes in the subtree, the root included when
// it is expanded.
std::size_t internal_node_count(const TreeNode& root);

// Appends pointers to every internal node of the subtree (preorder).
void collect_internal(const TreeNode& root, std::vector<const TreeNode*>& out);

// Removes and returns the child for `action`; the rest of the tree is
// discarded when the caller drops the old root.
std::unique_ptr<TreeNode> detach_child(TreeNode& root, int action);

}  // namespace ants
