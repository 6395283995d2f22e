#pragma once

#include "treeparse/term.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace treeparse {

/// Mutable unification workspace for backtracking searches: bindings are
/// recorded on a trail and undone to a mark, which keeps a bind/undo at
/// O(1) even on million-step runs where a value-semantic substitution
/// would be copied once per step.
///
/// Besides plain bindings the store carries delayed category checks: a
/// pending constraint `category(X) = C` attached to an unbound variable X.
/// When X is later bound to a tree term node(...), the node's label is
/// unified with C at that moment; binding X to anything else unifies the
/// value itself with C. Unresolved pendings at harvest time mean a rule's
/// daughter was never realized, so a solution is only accepted when the
/// pending count is zero.
class BindingStore {
public:
    TermPtr fresh(std::string hint = {});
    VarId fresh_id() { return ctx_.fresh_id(); }

    /// Copy of `t` with every variable replaced by a store-fresh one;
    /// `map` accumulates the renaming so related terms stay related.
    TermPtr import(const TermPtr& t, std::map<VarId, TermPtr>& map);

    /// Follows top-level variable bindings only.
    TermPtr walk(TermPtr t) const;
    /// Full structural resolution.
    TermPtr resolve(const TermPtr& t) const;

    bool unify(const TermPtr& a, const TermPtr& b);

    /// category(value) = cat, projecting tree terms to their labels.
    bool unify_category(const TermPtr& value, const TermPtr& cat);

    /// Attaches a delayed category check to an unbound variable.
    void add_pending(VarId v, const TermPtr& cat);

    std::size_t pending_count() const { return pending_count_; }

    std::size_t mark() const { return trail_.size(); }
    void undo_to(std::size_t mark);

private:
    struct Slot {
        TermPtr value;
        std::vector<TermPtr> pending;
    };
    struct TrailEntry {
        enum class Kind { Bound, PendingAdded, PendingMoved, PendingCleared };
        Kind kind;
        VarId var = -1;
        VarId other = -1;       // PendingMoved: source variable
        std::size_t count = 0;  // PendingMoved/Cleared: number of entries
    };

    Slot& slot(VarId v);
    const Slot* find_slot(VarId v) const;
    bool bind(VarId v, const TermPtr& value);
    bool occurs(VarId v, const TermPtr& t) const;

    static bool is_tree_term(const TermPtr& t) {
        return t->is_compound() && t->functor() == "node" &&
               (t->arity() == 2 || t->arity() == 3);
    }

    VarContext ctx_;
    std::vector<Slot> slots_; // indexed by variable id
    std::vector<TrailEntry> trail_;
    std::size_t pending_count_ = 0;
};

} // namespace treeparse
