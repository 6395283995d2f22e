#pragma once

#include "treeparse/grammar.hpp"
#include "treeparse/io.hpp"

#include <functional>
#include <random>
#include <string>
#include <vector>

namespace fixtures {

// Small English fragment: categories are atoms.
inline constexpr const char* kG0 = R"(
rule(s, np, vp).    rule(np, det, n).    rule(vp, v, np).
word(det, the).  word(n, dog).  word(n, cat).  word(v, chased).
)";

// Tree-building rule with term-valued categories and shared variables.
inline constexpr const char* kG1 = R"(
rule(s(tree(s,NP,VP)), np(NP), vp(VP)).
word(np(tree(np,it)), it).  word(vp(tree(vp,ran)), ran).
)";

// Maximally ambiguous, left- and right-recursive.
inline constexpr const char* kGA = R"(
rule(a, a, a).   word(a, t).
)";

inline treeparse::Grammar g0() { return treeparse::load_grammar(kG0); }
inline treeparse::Grammar g1() { return treeparse::load_grammar(kG1); }
inline treeparse::Grammar ga() { return treeparse::load_grammar(kGA); }

// ---------------------------------------------------------------------
// Random grammar families.

struct RandomGrammar {
    treeparse::Grammar grammar;
    std::vector<std::string> words; // lexicon word pool
};

/// Atom-category family: <= 8 atom categories, <= 10 rules, <= 6 lexicon
/// entries.
inline RandomGrammar random_atom_grammar(std::mt19937& rng) {
    using namespace treeparse;
    std::uniform_int_distribution<int> cat_count(2, 8);
    std::uniform_int_distribution<int> rule_count(1, 10);
    std::uniform_int_distribution<int> lex_count(1, 6);

    int ncats = cat_count(rng);
    std::vector<TermPtr> cats;
    for (int i = 0; i < ncats; ++i)
        cats.push_back(Term::atom("c" + std::to_string(i)));
    auto cat = [&]() -> TermPtr {
        return cats[std::uniform_int_distribution<std::size_t>(
            0, cats.size() - 1)(rng)];
    };

    static const std::vector<std::string> word_pool{"w0", "w1", "w2",
                                                    "w3", "w4", "w5"};
    RandomGrammar out;
    int nrules = rule_count(rng);
    for (int i = 0; i < nrules; ++i)
        out.grammar.rules.push_back({cat(), cat(), cat()});
    int nlex = lex_count(rng);
    for (int i = 0; i < nlex; ++i) {
        std::string w = word_pool[std::uniform_int_distribution<std::size_t>(
            0, word_pool.size() - 1)(rng)];
        out.grammar.lexicon.push_back({cat(), w});
        out.words.push_back(w);
    }
    return out;
}

/// Term-category family: category terms up to depth 2 over a small functor
/// pool, with variables shared across the three fields of a rule.
inline treeparse::Grammar random_term_grammar(std::mt19937& rng) {
    using namespace treeparse;
    static const std::vector<std::string> functors{"s", "np", "vp", "f", "g"};
    static const std::vector<std::string> atoms{"a", "b", "c"};

    Grammar g;
    VarContext ctx;
    std::uniform_int_distribution<int> rule_count(1, 10);
    std::uniform_int_distribution<int> lex_count(1, 6);

    auto pick = [&](const std::vector<std::string>& pool) {
        return pool[std::uniform_int_distribution<std::size_t>(
            0, pool.size() - 1)(rng)];
    };

    // depth 0: atom or shared variable; depth 1-2: functor over smaller terms
    std::vector<TermPtr> shared_vars;
    std::function<TermPtr(int)> term = [&](int depth) -> TermPtr {
        std::uniform_int_distribution<int> kind(0, depth > 0 ? 3 : 1);
        int k = kind(rng);
        if (k == 0)
            return Term::atom(pick(atoms));
        if (k == 1) {
            if (!shared_vars.empty() &&
                std::uniform_int_distribution<int>(0, 1)(rng))
                return shared_vars[std::uniform_int_distribution<std::size_t>(
                    0, shared_vars.size() - 1)(rng)];
            TermPtr v = ctx.fresh("X" + std::to_string(shared_vars.size()));
            shared_vars.push_back(v);
            return v;
        }
        std::uniform_int_distribution<int> arity(1, 2);
        int n = arity(rng);
        std::vector<TermPtr> args;
        for (int i = 0; i < n; ++i)
            args.push_back(term(depth - 1));
        return Term::compound(pick(functors), std::move(args));
    };

    int nrules = rule_count(rng);
    for (int i = 0; i < nrules; ++i) {
        shared_vars.clear(); // sharing is per fact
        g.rules.push_back({term(2), term(2), term(2)});
    }
    static const std::vector<std::string> word_pool{"w0", "w1", "w2",
                                                    "w3", "w4", "w5"};
    int nlex = lex_count(rng);
    for (int i = 0; i < nlex; ++i) {
        shared_vars.clear();
        g.lexicon.push_back({term(2), pick(word_pool)});
    }
    return g;
}

/// Word sequence of length <= max_len drawn from the grammar's lexicon.
inline std::vector<std::string> random_words(std::mt19937& rng,
                                             const treeparse::Grammar& g,
                                             int max_len) {
    std::vector<std::string> pool;
    for (const auto& f : g.lexicon)
        pool.push_back(f.word);
    if (pool.empty())
        return {};
    std::uniform_int_distribution<int> len(1, max_len);
    int n = len(rng);
    std::vector<std::string> out;
    for (int i = 0; i < n; ++i)
        out.push_back(pool[std::uniform_int_distribution<std::size_t>(
            0, pool.size() - 1)(rng)]);
    return out;
}

} // namespace fixtures
