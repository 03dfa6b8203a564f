#include "core/tree.hpp"

#include <stdexcept>

namespace ants {

std::vector<double> child_qvalues(const TreeNode& node) {
  std::vector<double> q;
  q.reserve(node.children.size());
  for (const auto& c : node.children) q.push_back(c->qvalue);
  return q;
}

std::size_t internal_node_count(const TreeNode& root) {
  if (root.leaf()) return 0;
  std::size_t n = 1;
  for (const auto& c : root.children) n += internal_node_count(*c);
  return n;
}

void collect_internal(const TreeNode& root, std::vector<const TreeNode*>& out) {
  if (root.leaf()) return;
  out.push_back(&root);
  for (const auto& c : root.children) collect_internal(*c, out);
}

std::unique_ptr<TreeNode> detach_child(TreeNode& root, int action) {
  if (action < 0 || std::size_t(action) >= root.children.size())
    throw std::logic_error("detach_child: no such child");
  return std::move(root.children[std::size_t(action)]);
}

}  // namespace ants
