#pragma once

#include "treeparse/clause_ir.hpp"
#include "treeparse/engines.hpp"
#include "treeparse/grammar.hpp"

namespace treeparse {

/// Depth-first, clause-order resolution of a clause program over an input
/// string: each literal threads a pair of string positions, a terminal
/// consumes one token, and constraint goals resolve against renamed-apart
/// grammar facts. The main predicate is queried with a fresh variable over
/// the whole input, and each solution's bound tree argument becomes a
/// parse tree.
///
/// A rule/3 constraint relates the mother category and the two daughters'
/// root categories: a daughter argument already bound to a tree term is
/// matched through its label, and one still unbound gets a delayed check
/// that fires when the daughter's tree materializes. Budget steps are
/// charged exactly like the directly coded engines: one per clause
/// alternative, per fact tried, and per terminal match.
ParseResult run_program(const Program& p, const Grammar& g,
                        const std::vector<std::string>& words,
                        const ParseOptions& opts = {});

} // namespace treeparse
