#pragma once

#include "treeparse/term.hpp"

#include <string>
#include <vector>

namespace treeparse {

/// Binary phrase-structure rule fact rule(Mother, Left, Right). The three
/// fields may share variables; scope is the fact itself.
struct RuleFact {
    TermPtr mother;
    TermPtr left;
    TermPtr right;
};

/// Lexicon fact word(PreTerm, Word). The word is always an atom.
struct LexFact {
    TermPtr preterm;
    std::string word;
};

/// Immutable after load. Fact order is preserved and determines
/// enumeration order in every engine. Facts are stored with variables
/// renamed into disjoint ranges, so no two facts share a variable.
struct Grammar {
    std::vector<RuleFact> rules;
    std::vector<LexFact> lexicon;
};

} // namespace treeparse
