#pragma once

#include "treeparse/term.hpp"

#include <map>
#include <optional>

namespace treeparse {

/// Idempotent substitution: every right-hand side is fully resolved against
/// the substitution itself, and the occurs check keeps bindings acyclic, so
/// one structural pass of apply() reaches the fixed point.
class Substitution {
public:
    Substitution() = default;

    bool empty() const { return map_.empty(); }
    std::size_t size() const { return map_.size(); }
    const TermPtr* lookup(VarId v) const;
    const std::map<VarId, TermPtr>& bindings() const { return map_; }

    TermPtr apply(const TermPtr& t) const;

    /// Extends with v ↦ t, resolving t first. Empty result on occurs-check
    /// failure. Existing right-hand sides are rewritten so the idempotence
    /// invariant is preserved.
    std::optional<Substitution> bind(VarId v, const TermPtr& t) const;

private:
    std::map<VarId, TermPtr> map_;
};

/// Most general unifier extending `s`, or empty on clash/occurs failure.
/// When two variables meet, the one reached first in left-to-right order
/// is the one that gets bound.
std::optional<Substitution> unify(const TermPtr& a, const TermPtr& b,
                                  const Substitution& s = {});

/// Structure-preserving copy with every variable replaced by a fresh one
/// from `ctx`; internal sharing is preserved, display hints carried over.
TermPtr rename_apart(const TermPtr& t, VarContext& ctx);

/// Variables renumbered 0,1,2,... in first-occurrence depth-first
/// left-to-right order. Two terms are variants iff their canonical forms
/// are structurally equal. Display hints are dropped.
TermPtr canonicalize(const TermPtr& t);

/// Shared-numbering forms over a term sequence (used for clause-level
/// renaming and canonicalization).
std::vector<TermPtr> rename_apart_all(const std::vector<TermPtr>& ts,
                                      VarContext& ctx);
std::vector<TermPtr> canonicalize_all(const std::vector<TermPtr>& ts);

} // namespace treeparse
