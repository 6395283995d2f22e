#include "treeparse/subst.hpp"

#include <utility>

namespace treeparse {

namespace {

TermPtr replace_var(const TermPtr& t, VarId v, const TermPtr& repl) {
    if (t->is_var())
        return t->var_id() == v ? repl : t;
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->arity());
    for (const auto& a : t->args()) {
        TermPtr r = replace_var(a, v, repl);
        changed = changed || r.get() != a.get();
        args.push_back(std::move(r));
    }
    if (!changed)
        return t;
    return Term::compound(t->functor(), std::move(args));
}

TermPtr apply_map(const std::map<VarId, TermPtr>& m, const TermPtr& t) {
    if (t->is_var()) {
        auto it = m.find(t->var_id());
        return it == m.end() ? t : it->second;
    }
    bool changed = false;
    std::vector<TermPtr> args;
    args.reserve(t->arity());
    for (const auto& a : t->args()) {
        TermPtr r = apply_map(m, a);
        changed = changed || r.get() != a.get();
        args.push_back(std::move(r));
    }
    if (!changed)
        return t;
    return Term::compound(t->functor(), std::move(args));
}

} // namespace

const TermPtr* Substitution::lookup(VarId v) const {
    auto it = map_.find(v);
    return it == map_.end() ? nullptr : &it->second;
}

TermPtr Substitution::apply(const TermPtr& t) const {
    if (map_.empty())
        return t;
    return apply_map(map_, t);
}

std::optional<Substitution> Substitution::bind(VarId v, const TermPtr& t) const {
    TermPtr resolved = apply(t);
    if (resolved->is_var() && resolved->var_id() == v)
        return *this; // X ↦ X is a no-op
    if (occurs_in(v, resolved))
        return std::nullopt;
    Substitution out;
    for (const auto& [u, rhs] : map_)
        out.map_.emplace(u, replace_var(rhs, v, resolved));
    out.map_[v] = resolved;
    return out;
}

std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  const Substitution& s) {
    Substitution cur = s;
    // Worklist processed leftmost-first so the binding orientation is
    // deterministic.
    std::vector<std::pair<TermPtr, TermPtr>> work{{a, b}};
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        if (x->is_var())
            if (const TermPtr* t = cur.lookup(x->var_id()))
                x = *t;
        if (y->is_var())
            if (const TermPtr* t = cur.lookup(y->var_id()))
                y = *t;
        if (x->is_var() && y->is_var() && x->var_id() == y->var_id())
            continue;
        if (x->is_var() || y->is_var()) {
            VarId v = x->is_var() ? x->var_id() : y->var_id();
            const TermPtr& other = x->is_var() ? y : x;
            auto next = cur.bind(v, other);
            if (!next)
                return std::nullopt;
            cur = std::move(*next);
            continue;
        }
        if (x->functor() != y->functor() || x->arity() != y->arity())
            return std::nullopt;
        for (std::size_t i = x->arity(); i-- > 0;)
            work.emplace_back(x->args()[i], y->args()[i]);
    }
    return cur;
}

namespace {

TermPtr rename_with(const TermPtr& t, std::map<VarId, TermPtr>& fresh,
                    VarContext& ctx) {
    if (t->is_var()) {
        auto it = fresh.find(t->var_id());
        if (it == fresh.end())
            it = fresh.emplace(t->var_id(), ctx.fresh(t->var_hint())).first;
        return it->second;
    }
    std::vector<TermPtr> args;
    args.reserve(t->arity());
    for (const auto& a : t->args())
        args.push_back(rename_with(a, fresh, ctx));
    return Term::compound(t->functor(), std::move(args));
}

TermPtr canonicalize_with(const TermPtr& t, std::map<VarId, VarId>& num) {
    if (t->is_var()) {
        auto it = num.find(t->var_id());
        if (it == num.end())
            it = num.emplace(t->var_id(), static_cast<VarId>(num.size())).first;
        return Term::var(it->second);
    }
    std::vector<TermPtr> args;
    args.reserve(t->arity());
    for (const auto& a : t->args())
        args.push_back(canonicalize_with(a, num));
    return Term::compound(t->functor(), std::move(args));
}

} // namespace

TermPtr rename_apart(const TermPtr& t, VarContext& ctx) {
    std::map<VarId, TermPtr> fresh;
    return rename_with(t, fresh, ctx);
}

TermPtr canonicalize(const TermPtr& t) {
    std::map<VarId, VarId> num;
    return canonicalize_with(t, num);
}

std::vector<TermPtr> rename_apart_all(const std::vector<TermPtr>& ts,
                                      VarContext& ctx) {
    std::map<VarId, TermPtr> fresh;
    std::vector<TermPtr> out;
    out.reserve(ts.size());
    for (const auto& t : ts)
        out.push_back(rename_with(t, fresh, ctx));
    return out;
}

std::vector<TermPtr> canonicalize_all(const std::vector<TermPtr>& ts) {
    std::map<VarId, VarId> num;
    std::vector<TermPtr> out;
    out.reserve(ts.size());
    for (const auto& t : ts)
        out.push_back(canonicalize_with(t, num));
    return out;
}

} // namespace treeparse
