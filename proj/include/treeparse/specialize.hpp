#pragma once

#include "treeparse/clause_ir.hpp"
#include "treeparse/grammar.hpp"

#include <string>

namespace treeparse {

struct SpecializeOptions {
    /// When false, word/2 constraints stay in the program and the lexicon
    /// is consulted at run time; rule/3 constraints are always unfolded.
    bool unfold_lexicon = true;
};

/// Unfolds constraint goals against the grammar: every clause containing an
/// unfoldable constraint is replaced by one specialized clause per unifying
/// fact — rename the fact apart, unify it with the constraint literal,
/// apply the substitution to the whole clause, drop the constraint. Clause
/// order follows the original program, facts in grammar order; a constraint
/// no fact unifies with contributes no clauses.
Program partially_execute(const Program& p, const Grammar& g,
                          const SpecializeOptions& opts = {});

struct IdentityReport {
    bool identical = false;
    std::string diff; // clause-level mismatches when not identical
};

/// Specializes the improved left-recursion-free bottom-up and left-corner
/// programs against `g` and checks that they are the same program under
/// the fixed bu<->lc predicate renaming.
IdentityReport specialization_identity(const Grammar& g);

} // namespace treeparse
