#include "treeparse/traversal.hpp"

#include <span>

namespace treeparse {

TravTreePtr trav_node(TermPtr label, TravTreePtr left, TravTreePtr right) {
    return std::make_shared<const TravTree>(
        TravTree{std::move(label), std::move(left), std::move(right)});
}

bool travtree_eq(const TravTreePtr& a, const TravTreePtr& b) {
    if (!a || !b)
        return !a && !b;
    return term_eq(a->label, b->label) && travtree_eq(a->left, b->left) &&
           travtree_eq(a->right, b->right);
}

int travtree_cmp(const TravTreePtr& a, const TravTreePtr& b) {
    if (!a || !b) {
        if (!a && !b)
            return 0;
        return !a ? -1 : 1;
    }
    if (int c = term_cmp(a->label, b->label); c != 0)
        return c;
    if (int c = travtree_cmp(a->left, b->left); c != 0)
        return c;
    return travtree_cmp(a->right, b->right);
}

std::size_t travtree_size(const TravTreePtr& t) {
    if (!t)
        return 0;
    return 1 + travtree_size(t->left) + travtree_size(t->right);
}

namespace {

void traverse_into(Order order, const TravTreePtr& t,
                   std::vector<TermPtr>& out) {
    if (!t)
        return;
    switch (order) {
    case Order::Pre:
        out.push_back(t->label);
        traverse_into(order, t->left, out);
        traverse_into(order, t->right, out);
        break;
    case Order::Post:
        traverse_into(order, t->left, out);
        traverse_into(order, t->right, out);
        out.push_back(t->label);
        break;
    case Order::In:
        traverse_into(order, t->left, out);
        out.push_back(t->label);
        traverse_into(order, t->right, out);
        break;
    }
}

using LabelSpan = std::span<const TermPtr>;

std::vector<TravTreePtr> invert_span(Order order, LabelSpan labels) {
    if (labels.empty())
        return {nullptr};
    std::vector<TravTreePtr> out;
    auto combine = [&](const TermPtr& root, LabelSpan ls, LabelSpan rs) {
        for (const auto& l : invert_span(order, ls))
            for (const auto& r : invert_span(order, rs))
                out.push_back(trav_node(root, l, r));
    };
    std::size_t n = labels.size();
    switch (order) {
    case Order::Pre:
        for (std::size_t k = 0; k < n; ++k)
            combine(labels[0], labels.subspan(1, k), labels.subspan(1 + k));
        break;
    case Order::Post:
        for (std::size_t k = 0; k < n; ++k)
            combine(labels[n - 1], labels.subspan(0, k),
                    labels.subspan(k, n - 1 - k));
        break;
    case Order::In:
        for (std::size_t k = 0; k < n; ++k)
            combine(labels[k], labels.subspan(0, k), labels.subspan(k + 1));
        break;
    }
    return out;
}

} // namespace

std::vector<TermPtr> traverse(Order order, const TravTreePtr& t) {
    std::vector<TermPtr> out;
    traverse_into(order, t, out);
    return out;
}

std::vector<TravTreePtr> invert(Order order,
                                const std::vector<TermPtr>& labels) {
    // Distinct split positions always yield structurally distinct trees, so
    // the enumeration is duplicate-free by construction.
    return invert_span(order, LabelSpan(labels));
}

TermPtr travtree_to_term(const TravTreePtr& t) {
    if (!t)
        return Term::atom("empty");
    return Term::compound("node", {t->label, travtree_to_term(t->left),
                                   travtree_to_term(t->right)});
}

std::optional<TravTreePtr> term_to_travtree(const TermPtr& t) {
    if (t->is_atom() && t->functor() == "empty")
        return TravTreePtr(nullptr);
    if (t->is_compound() && t->functor() == "node" && t->arity() == 3) {
        auto l = term_to_travtree(t->args()[1]);
        auto r = term_to_travtree(t->args()[2]);
        if (!l || !r)
            return std::nullopt;
        return trav_node(t->args()[0], *l, *r);
    }
    return std::nullopt;
}

} // namespace treeparse
