#pragma once

#include "treeparse/term.hpp"

#include <optional>
#include <string>
#include <vector>

namespace treeparse {

struct ParseTree;
using ParseTreePtr = std::shared_ptr<const ParseTree>;

/// Lexical leaf node(PreTerm, lf(Word)) or binary branch
/// node(Mother, Left, Right). The category field holds the preterminal
/// (leaf) or mother (branch) term; residual variables are permitted.
struct ParseTree {
    TermPtr category;
    std::string word;          // leaves only
    ParseTreePtr left, right;  // branches only

    bool is_lex() const { return left == nullptr; }
};

ParseTreePtr make_lex(TermPtr preterm, std::string word);
ParseTreePtr make_branch(TermPtr mother, ParseTreePtr left,
                         ParseTreePtr right);

bool parse_tree_eq(const ParseTreePtr& a, const ParseTreePtr& b);

/// Left-to-right sequence of leaf words.
std::vector<std::string> yield_words(const ParseTreePtr& t);

/// Surface-notation term: node(PreTerm,lf(Word)) / node(Mother,L,R).
TermPtr tree_to_term(const ParseTreePtr& t);

/// Strict inverse of tree_to_term; anything else (including category terms
/// standing where a subtree belongs) is not a parse tree.
std::optional<ParseTreePtr> term_to_tree(const TermPtr& t);

/// Same tree with categories' variables canonically renumbered across the
/// whole tree; equal canonical trees are variants of each other.
ParseTreePtr canonical_tree(const ParseTreePtr& t);

/// Canonical surface text; the key used for deduplication and sorting.
std::string tree_text(const ParseTreePtr& t);

} // namespace treeparse
