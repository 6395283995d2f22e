#pragma once

#include "treeparse/grammar.hpp"
#include "treeparse/parse_tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace treeparse {

/// TD/BU_NAIVE/LC_NAIVE are the direct strategy encodings; the naive
/// bottom-up and left-corner ones are left recursive and never exhaust
/// their search space. BU_EGNF/LC_EGNF are their left-recursion-free forms
/// (auxiliary accumulator predicate carrying the growing left subtree) and
/// always terminate. ORACLE is the chart-based ground truth.
enum class Strategy { TD, BU_NAIVE, LC_NAIVE, BU_EGNF, LC_EGNF, ORACLE };

std::optional<Strategy> strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

struct ParseOptions {
    std::optional<TermPtr> root;        // keep only trees whose root
                                        // category unifies with this
    std::int64_t budget = 1'000'000;    // search steps; must be positive
};

struct ParseResult {
    std::vector<ParseTreePtr> trees; // canonicalized, deduplicated,
                                     // discovery order
    bool complete = true;            // false iff the budget ran out first
};

/// All parse trees whose yield is exactly `words`: each leaf licensed by a
/// word fact and each branch by a rule fact, with the rule's daughter
/// fields unified against the daughters' root categories. Clauses are
/// explored in listing order and facts in grammar order; one step is
/// charged per alternative tried.
ParseResult parse(const Grammar& g, const std::vector<std::string>& words,
                  Strategy strategy, const ParseOptions& opts = {});

/// Span-based dynamic program over the same licensing relation; immune to
/// left recursion, so it always explores the whole space.
std::vector<ParseTreePtr> oracle_parse(const Grammar& g,
                                       const std::vector<std::string>& words,
                                       const std::optional<TermPtr>& root = {});

/// Sorted canonical texts; the comparison form for tree-set equality.
std::vector<std::string> tree_set_texts(const std::vector<ParseTreePtr>& trees);

/// Root filter as its own operation: trees whose root category unifies
/// with `root` (fresh-renamed per check).
std::vector<ParseTreePtr> filter_by_root(const std::vector<ParseTreePtr>& trees,
                                         const TermPtr& root);

} // namespace treeparse
