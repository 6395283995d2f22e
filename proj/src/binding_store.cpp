#include "treeparse/binding_store.hpp"

#include <utility>

namespace treeparse {

TermPtr BindingStore::fresh(std::string hint) {
    return Term::var(ctx_.fresh_id(), std::move(hint));
}

TermPtr BindingStore::import(const TermPtr& t, std::map<VarId, TermPtr>& map) {
    if (t->is_var()) {
        auto it = map.find(t->var_id());
        if (it == map.end())
            it = map.emplace(t->var_id(), fresh(t->var_hint())).first;
        return it->second;
    }
    std::vector<TermPtr> args;
    args.reserve(t->arity());
    for (const auto& a : t->args())
        args.push_back(import(a, map));
    return Term::compound(t->functor(), std::move(args));
}

BindingStore::Slot& BindingStore::slot(VarId v) {
    if (static_cast<std::size_t>(v) >= slots_.size())
        slots_.resize(static_cast<std::size_t>(v) + 1);
    return slots_[static_cast<std::size_t>(v)];
}

const BindingStore::Slot* BindingStore::find_slot(VarId v) const {
    if (v < 0 || static_cast<std::size_t>(v) >= slots_.size())
        return nullptr;
    return &slots_[static_cast<std::size_t>(v)];
}

TermPtr BindingStore::walk(TermPtr t) const {
    while (t->is_var()) {
        const Slot* s = find_slot(t->var_id());
        if (!s || !s->value)
            return t;
        t = s->value;
    }
    return t;
}

TermPtr BindingStore::resolve(const TermPtr& t) const {
    TermPtr w = walk(t);
    if (w->is_var())
        return w;
    bool changed = w.get() != t.get();
    std::vector<TermPtr> args;
    args.reserve(w->arity());
    for (const auto& a : w->args()) {
        TermPtr r = resolve(a);
        changed = changed || r.get() != a.get();
        args.push_back(std::move(r));
    }
    if (!changed)
        return t;
    return Term::compound(w->functor(), std::move(args));
}

bool BindingStore::occurs(VarId v, const TermPtr& t) const {
    TermPtr w = walk(t);
    if (w->is_var())
        return w->var_id() == v;
    for (const auto& a : w->args())
        if (occurs(v, a))
            return true;
    return false;
}

bool BindingStore::bind(VarId v, const TermPtr& value) {
    slot(v).value = value; // may resize; take references afterwards only
    trail_.push_back({TrailEntry::Kind::Bound, v});

    if (slot(v).pending.empty())
        return true;

    if (value->is_var()) {
        // Move the delayed checks to the variable we now stand for.
        VarId to = value->var_id();
        slot(to); // ensure both slots exist before taking references
        auto& from_pending = slots_[static_cast<std::size_t>(v)].pending;
        auto& to_pending = slots_[static_cast<std::size_t>(to)].pending;
        std::size_t moved = from_pending.size();
        for (auto& p : from_pending)
            to_pending.push_back(std::move(p));
        from_pending.clear();
        trail_.push_back({TrailEntry::Kind::PendingMoved, to, v, moved});
        return true;
    }

    // Discharge now that the variable has a concrete value. The checks stay
    // attached to the (now bound) slot so undo only restores the count.
    std::vector<TermPtr> checks = slot(v).pending;
    pending_count_ -= checks.size();
    trail_.push_back({TrailEntry::Kind::PendingCleared, v, -1, checks.size()});
    for (const auto& cat : checks)
        if (!unify_category(value, cat))
            return false;
    return true;
}

bool BindingStore::unify(const TermPtr& a, const TermPtr& b) {
    std::vector<std::pair<TermPtr, TermPtr>> work{{a, b}};
    while (!work.empty()) {
        auto [x, y] = work.back();
        work.pop_back();
        x = walk(std::move(x));
        y = walk(std::move(y));
        if (x->is_var() && y->is_var() && x->var_id() == y->var_id())
            continue;
        if (x->is_var() || y->is_var()) {
            VarId v = x->is_var() ? x->var_id() : y->var_id();
            const TermPtr& other = x->is_var() ? y : x;
            if (!other->is_var() && occurs(v, other))
                return false;
            if (!bind(v, other))
                return false;
            continue;
        }
        if (x->functor() != y->functor() || x->arity() != y->arity())
            return false;
        for (std::size_t i = x->arity(); i-- > 0;)
            work.emplace_back(x->args()[i], y->args()[i]);
    }
    return true;
}

bool BindingStore::unify_category(const TermPtr& value, const TermPtr& cat) {
    TermPtr w = walk(value);
    if (w->is_var()) {
        add_pending(w->var_id(), cat);
        return true;
    }
    if (is_tree_term(w))
        return unify(w->args()[0], cat);
    return unify(w, cat);
}

void BindingStore::add_pending(VarId v, const TermPtr& cat) {
    slot(v).pending.push_back(cat);
    ++pending_count_;
    trail_.push_back({TrailEntry::Kind::PendingAdded, v});
}

void BindingStore::undo_to(std::size_t mark) {
    while (trail_.size() > mark) {
        TrailEntry e = trail_.back();
        trail_.pop_back();
        switch (e.kind) {
        case TrailEntry::Kind::Bound:
            slots_[static_cast<std::size_t>(e.var)].value = nullptr;
            break;
        case TrailEntry::Kind::PendingAdded: {
            slots_[static_cast<std::size_t>(e.var)].pending.pop_back();
            --pending_count_;
            break;
        }
        case TrailEntry::Kind::PendingMoved: {
            // Last `count` entries of e.var move back to e.other.
            auto& to = slots_[static_cast<std::size_t>(e.var)].pending;
            auto& from = slots_[static_cast<std::size_t>(e.other)].pending;
            std::size_t start = to.size() - e.count;
            for (std::size_t i = start; i < to.size(); ++i)
                from.push_back(std::move(to[i]));
            to.resize(start);
            break;
        }
        case TrailEntry::Kind::PendingCleared:
            // The drained checks were left in place; only the count moved.
            pending_count_ += e.count;
            break;
        }
    }
}

} // namespace treeparse
