#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rankenum/errors.hpp"

namespace rankenum {

struct TreeNode {
    std::string label;
    int left = -1;
    int right = -1;

    bool is_leaf() const { return left < 0; }
};

/// A rooted ordered full binary tree with labeled nodes. Node ids are the
/// preorder positions (root = 0, every child id exceeds its parent's).
class LabeledTree {
  public:
    explicit LabeledTree(std::vector<TreeNode> nodes);

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const TreeNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const std::string& label(int id) const { return node(id).label; }
    bool is_leaf(int id) const { return node(id).is_leaf(); }
    int left(int id) const { return node(id).left; }
    int right(int id) const { return node(id).right; }

  private:
    std::vector<TreeNode> nodes_;
};

/// Parses the s-expression tree format: "(label)" for leaves,
/// "(label child child)" for internal nodes.
LabeledTree parse_tree(std::string_view text);

std::string format_tree(const LabeledTree& tree);

}  // namespace rankenum
