#pragma once

#include "treeparse/term.hpp"

#include <optional>
#include <vector>

namespace treeparse {

struct TravTree;
using TravTreePtr = std::shared_ptr<const TravTree>;

/// Binary labeled tree; the empty tree is the null pointer.
struct TravTree {
    TermPtr label;
    TravTreePtr left;
    TravTreePtr right;
};

TravTreePtr trav_node(TermPtr label, TravTreePtr left = nullptr,
                      TravTreePtr right = nullptr);

enum class Order { Pre, Post, In };

bool travtree_eq(const TravTreePtr& a, const TravTreePtr& b);
int travtree_cmp(const TravTreePtr& a, const TravTreePtr& b);
std::size_t travtree_size(const TravTreePtr& t);

/// Pre: label, left, right. Post: left, right, label. In: left, label,
/// right. The empty tree emits nothing.
std::vector<TermPtr> traverse(Order order, const TravTreePtr& t);

/// All trees whose traversal in `order` equals `labels`, in a
/// deterministic order (splits enumerated smallest-left-subtree first),
/// without structural duplicates.
///
/// Works by recursive splitting rather than by running the traversal
/// clauses backwards: the first (Pre) or last (Post) label is the root, or
/// every pivot position is tried (In). The declarative readings of the
/// postorder and inorder programs are left recursive and would not
/// terminate under depth-first execution; splitting is terminating and
/// complete.
std::vector<TravTreePtr> invert(Order order,
                                const std::vector<TermPtr>& labels);

/// Term encoding used by the command line: empty <-> `empty`,
/// Node(l, a, b) <-> `node(l, A, B)`.
TermPtr travtree_to_term(const TravTreePtr& t);
std::optional<TravTreePtr> term_to_travtree(const TermPtr& t);

} // namespace treeparse
