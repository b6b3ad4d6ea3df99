#include "rankenum/tree.hpp"

#include <cctype>

namespace rankenum {

LabeledTree::LabeledTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
    if (nodes_.empty()) throw ValidationError("tree has no nodes");
    std::vector<char> seen(nodes_.size(), 0);
    seen[0] = 1;
    for (int id = 0; id < node_count(); ++id) {
        const TreeNode& n = nodes_[static_cast<std::size_t>(id)];
        if (n.label.empty()) throw ValidationError("node " + std::to_string(id) + " has no label");
        if ((n.left < 0) != (n.right < 0))
            throw ValidationError("node " + std::to_string(id) + " has exactly one child");
        if (n.left < 0) continue;
        for (int child : {n.left, n.right}) {
            if (child <= id || child >= node_count())
                throw ValidationError("node " + std::to_string(id) + " has a child out of preorder");
            if (seen[static_cast<std::size_t>(child)])
                throw ValidationError("node " + std::to_string(child) + " has two parents");
            seen[static_cast<std::size_t>(child)] = 1;
        }
    }
    for (std::size_t id = 0; id < nodes_.size(); ++id)
        if (!seen[id]) throw ValidationError("node " + std::to_string(id) + " is unreachable");
}

LabeledTree parse_tree(std::string_view text) {
    std::vector<TreeNode> nodes;
    std::vector<std::pair<int, std::vector<int>>> open;  // node id, children so far
    int root = -1;
    std::size_t i = 0;
    auto skip_space = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };

    skip_space();
    while (i < text.size()) {
        if (text[i] == '(') {
            ++i;
            skip_space();
            std::size_t start = i;
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) &&
                   text[i] != '(' && text[i] != ')')
                ++i;
            if (i == start) throw ParseError(0, "expected a node label after '('");
            int id = static_cast<int>(nodes.size());
            nodes.push_back(TreeNode{std::string(text.substr(start, i - start)), -1, -1});
            if (!open.empty()) open.back().second.push_back(id);
            open.emplace_back(id, std::vector<int>{});
        } else if (text[i] == ')') {
            ++i;
            if (open.empty()) throw ParseError(0, "unbalanced ')'");
            auto [id, children] = std::move(open.back());
            open.pop_back();
            if (children.size() != 0 && children.size() != 2)
                throw ParseError(0, "node '" + nodes[static_cast<std::size_t>(id)].label +
                                        "' must have zero or two children");
            if (!children.empty()) {
                nodes[static_cast<std::size_t>(id)].left = children[0];
                nodes[static_cast<std::size_t>(id)].right = children[1];
            }
            if (open.empty()) {
                if (root >= 0) throw ParseError(0, "more than one tree in input");
                root = id;
            }
        } else {
            throw ParseError(0, std::string("unexpected character '") + text[i] + "'");
        }
        skip_space();
    }
    if (!open.empty()) throw ParseError(0, "unbalanced '('");
    if (root < 0) throw ParseError(0, "empty tree input");
    return LabeledTree(std::move(nodes));
}

std::string format_tree(const LabeledTree& tree) {
    std::string out;
    // Explicit stack; node ids double as "emit subtree", negative as "close".
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int id = stack.back();
        stack.pop_back();
        if (id < 0) {
            out += ')';
            continue;
        }
        if (!out.empty() && out.back() != '(') out += ' ';
        out += '(';
        out += tree.label(id);
        stack.push_back(-1);
        if (!tree.is_leaf(id)) {
            stack.push_back(tree.right(id));
            stack.push_back(tree.left(id));
        }
    }
    return out;
}

}  // namespace rankenum
