#include "treeparse/term.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

namespace treeparse {

Term::Term(VarId v, std::string name, std::vector<TermPtr> args)
    : var_(v), name_(std::move(name)), args_(std::move(args)) {}

TermPtr Term::var(VarId id, std::string hint) {
    if (id < 0)
        throw std::invalid_argument("variable id must be non-negative");
    return TermPtr(new Term(id, std::move(hint), {}));
}

TermPtr Term::compound(std::string functor, std::vector<TermPtr> args) {
    if (functor.empty())
        throw std::invalid_argument("functor name must be nonempty");
    for (const auto& a : args)
        if (!a)
            throw std::invalid_argument("null argument term");
    return TermPtr(new Term(-1, std::move(functor), std::move(args)));
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get())
        return true;
    if (a->is_var() || b->is_var())
        return a->is_var() && b->is_var() && a->var_id() == b->var_id();
    if (a->functor() != b->functor() || a->arity() != b->arity())
        return false;
    for (std::size_t i = 0; i < a->arity(); ++i)
        if (!term_eq(a->args()[i], b->args()[i]))
            return false;
    return true;
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
    if (a.get() == b.get())
        return 0;
    if (a->is_var() != b->is_var())
        return a->is_var() ? -1 : 1;
    if (a->is_var()) {
        if (a->var_id() != b->var_id())
            return a->var_id() < b->var_id() ? -1 : 1;
        return 0;
    }
    if (int c = a->functor().compare(b->functor()); c != 0)
        return c < 0 ? -1 : 1;
    if (a->arity() != b->arity())
        return a->arity() < b->arity() ? -1 : 1;
    for (std::size_t i = 0; i < a->arity(); ++i)
        if (int c = term_cmp(a->args()[i], b->args()[i]); c != 0)
            return c;
    return 0;
}

bool occurs_in(VarId v, const TermPtr& t) {
    if (t->is_var())
        return t->var_id() == v;
    for (const auto& a : t->args())
        if (occurs_in(v, a))
            return true;
    return false;
}

namespace {

void collect_vars_impl(const TermPtr& t, std::vector<VarId>& order,
                       std::set<VarId>& seen) {
    if (t->is_var()) {
        if (seen.insert(t->var_id()).second)
            order.push_back(t->var_id());
        return;
    }
    for (const auto& a : t->args())
        collect_vars_impl(a, order, seen);
}

} // namespace

void collect_vars(const TermPtr& t, std::vector<VarId>& order) {
    std::set<VarId> seen(order.begin(), order.end());
    collect_vars_impl(t, order, seen);
}

void VarContext::absorb(const TermPtr& t) {
    if (t->is_var()) {
        next_ = std::max(next_, t->var_id() + 1);
        return;
    }
    for (const auto& a : t->args())
        absorb(a);
}

} // namespace treeparse
