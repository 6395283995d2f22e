#include "treeparse/engines.hpp"

#include "treeparse/binding_store.hpp"
#include "treeparse/io.hpp"
#include "treeparse/subst.hpp"

#include <pthread.h>

#include <algorithm>
#include <exception>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace treeparse {

std::optional<Strategy> strategy_from_name(const std::string& name) {
    if (name == "td") return Strategy::TD;
    if (name == "bu-naive") return Strategy::BU_NAIVE;
    if (name == "lc-naive") return Strategy::LC_NAIVE;
    if (name == "bu") return Strategy::BU_EGNF;
    if (name == "lc") return Strategy::LC_EGNF;
    if (name == "oracle") return Strategy::ORACLE;
    return std::nullopt;
}

std::string strategy_name(Strategy s) {
    switch (s) {
    case Strategy::TD: return "td";
    case Strategy::BU_NAIVE: return "bu-naive";
    case Strategy::LC_NAIVE: return "lc-naive";
    case Strategy::BU_EGNF: return "bu";
    case Strategy::LC_EGNF: return "lc";
    case Strategy::ORACLE: return "oracle";
    }
    return "?";
}

namespace {

// The naive strategies recurse once per search step, so a budgeted run can
// need far more stack than the default 8 MiB. Searches run on a dedicated
// thread with a large stack.
void run_on_large_stack(const std::function<void()>& fn) {
    struct Ctx {
        const std::function<void()>* fn;
        std::exception_ptr error;
    } ctx{&fn, nullptr};

    pthread_attr_t attr;
    pthread_attr_init(&attr);
    pthread_attr_setstacksize(&attr, std::size_t(512) << 20);
    auto trampoline = [](void* p) -> void* {
        Ctx* c = static_cast<Ctx*>(p);
        try {
            (*c->fn)();
        } catch (...) {
            c->error = std::current_exception();
        }
        return nullptr;
    };
    pthread_t tid;
    if (pthread_create(&tid, &attr, trampoline, &ctx) != 0) {
        pthread_attr_destroy(&attr);
        fn(); // fall back to the current stack
        return;
    }
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
    if (ctx.error)
        std::rethrow_exception(ctx.error);
}

struct SearchLimit {
    std::int64_t remaining;
    bool exhausted = false;

    bool try_step() {
        if (exhausted)
            return false;
        if (remaining <= 0) {
            exhausted = true;
            return false;
        }
        --remaining;
        return true;
    }
};

struct RuleInst {
    TermPtr mother, left, right;
};

/// One backtracking engine run. Each strategy function is a direct
/// transcription of its clause listing: one step per clause alternative,
/// per terminal match, and per fact tried, in listing/grammar order, so a
/// run is step-for-step comparable with the clause interpreter.
class EngineRun {
public:
    EngineRun(const Grammar& g, const std::vector<std::string>& words,
              std::int64_t budget)
        : g_(g), tokens_(words), lim_{budget} {}

    ParseResult run(Strategy strategy) {
        Cont top = [&](const ParseTreePtr& t, std::size_t pos) {
            if (pos == tokens_.size())
                harvest(t);
        };
        switch (strategy) {
        case Strategy::TD: td(0, nullptr, top); break;
        case Strategy::BU_NAIVE: bu(0, top); break;
        case Strategy::LC_NAIVE: lc(0, nullptr, top); break;
        case Strategy::BU_EGNF: egnf_main(false, 0, nullptr, top); break;
        case Strategy::LC_EGNF: egnf_main(true, 0, nullptr, top); break;
        case Strategy::ORACLE: break; // handled by the caller
        }
        return {std::move(out_), !lim_.exhausted};
    }

private:
    using Cont = std::function<void(const ParseTreePtr&, std::size_t)>;

    RuleInst rename_rule(const RuleFact& f) {
        std::map<VarId, TermPtr> m;
        return {store_.import(f.mother, m), store_.import(f.left, m),
                store_.import(f.right, m)};
    }

    TermPtr rename_preterm(const LexFact& f) {
        std::map<VarId, TermPtr> m;
        return store_.import(f.preterm, m);
    }

    ParseTreePtr resolve_tree(const ParseTreePtr& t) {
        if (t->is_lex())
            return make_lex(store_.resolve(t->category), t->word);
        return make_branch(store_.resolve(t->category), resolve_tree(t->left),
                           resolve_tree(t->right));
    }

    void harvest(const ParseTreePtr& t) {
        ParseTreePtr tree = canonical_tree(resolve_tree(t));
        std::string key = tree_text(tree);
        if (seen_.insert(std::move(key)).second)
            out_.push_back(std::move(tree));
    }

    // Lexical clause shared by every strategy:
    //   p(node(PreTerm,lf(Word))) --> [Word], {word(PreTerm,Word)}.
    // `expected` carries a category the clause head must realize (the
    // deferred daughter check of a rule chosen higher up).
    void lexical_clause(std::size_t pos, const TermPtr& expected,
                        const std::function<void(const TermPtr&, std::size_t)>&
                            found) {
        if (!lim_.try_step()) // terminal
            return;
        if (pos >= tokens_.size())
            return;
        for (const LexFact& f : g_.lexicon) {
            if (!lim_.try_step())
                return;
            std::size_t m = store_.mark();
            TermPtr preterm = rename_preterm(f);
            if (f.word == tokens_[pos] &&
                (!expected || store_.unify(expected, preterm)))
                found(preterm, pos + 1);
            store_.undo_to(m);
            if (lim_.exhausted)
                return;
        }
    }

    // td(node(PreTerm,lf(Word))) --> [Word], {word(PreTerm,Word)}.
    // td(node(Mother,Left,Right)) -->
    //     {rule(Mother,Left,Right)}, td(Left), td(Right).
    void td(std::size_t pos, const TermPtr& expected, const Cont& k) {
        if (lim_.try_step()) // lexical clause
            lexical_clause(pos, expected,
                           [&](const TermPtr& preterm, std::size_t p) {
                               k(make_lex(preterm, tokens_[pos]), p);
                           });
        if (lim_.exhausted)
            return;
        if (!lim_.try_step()) // rule clause
            return;
        TermPtr mother = expected ? expected : store_.fresh("Mother");
        for (const RuleFact& f : g_.rules) {
            if (!lim_.try_step())
                return;
            std::size_t m = store_.mark();
            RuleInst r = rename_rule(f);
            if (store_.unify(mother, r.mother))
                td(pos, r.left, [&](const ParseTreePtr& lt, std::size_t p1) {
                    td(p1, r.right,
                       [&](const ParseTreePtr& rt, std::size_t p2) {
                           k(make_branch(mother, lt, rt), p2);
                       });
                });
            store_.undo_to(m);
            if (lim_.exhausted)
                return;
        }
    }

    // bu(node(PreTerm,lf(Word))) --> [Word], {word(PreTerm,Word)}.
    // bu(node(Mother,Left,Right)) -->
    //     bu(Left), bu(Right), {rule(Mother,Left,Right)}.
    void bu(std::size_t pos, const Cont& k) {
        if (lim_.try_step()) // lexical clause
            lexical_clause(pos, nullptr,
                           [&](const TermPtr& preterm, std::size_t p) {
                               k(make_lex(preterm, tokens_[pos]), p);
                           });
        if (lim_.exhausted)
            return;
        if (!lim_.try_step()) // rule clause
            return;
        bu(pos, [&](const ParseTreePtr& lt, std::size_t p1) {
            bu(p1, [&](const ParseTreePtr& rt, std::size_t p2) {
                for (const RuleFact& f : g_.rules) {
                    if (!lim_.try_step())
                        return;
                    std::size_t m = store_.mark();
                    RuleInst r = rename_rule(f);
                    if (store_.unify(lt->category, r.left) &&
                        store_.unify(rt->category, r.right))
                        k(make_branch(r.mother, lt, rt), p2);
                    store_.undo_to(m);
                    if (lim_.exhausted)
                        return;
                }
            });
        });
    }

    // lc(node(PreTerm,lf(Word))) --> [Word], {word(PreTerm,Word)}.
    // lc(node(Mother,Left,Right)) -->
    //     lc(Left), {rule(Mother,Left,Right)}, lc(Right).
    void lc(std::size_t pos, const TermPtr& expected, const Cont& k) {
        if (lim_.try_step()) // lexical clause
            lexical_clause(pos, expected,
                           [&](const TermPtr& preterm, std::size_t p) {
                               k(make_lex(preterm, tokens_[pos]), p);
                           });
        if (lim_.exhausted)
            return;
        if (!lim_.try_step()) // rule clause
            return;
        TermPtr mother = expected ? expected : store_.fresh("Mother");
        lc(pos, nullptr, [&](const ParseTreePtr& lt, std::size_t p1) {
            for (const RuleFact& f : g_.rules) {
                if (!lim_.try_step())
                    return;
                std::size_t m = store_.mark();
                RuleInst r = rename_rule(f);
                if (store_.unify(mother, r.mother) &&
                    store_.unify(lt->category, r.left))
                    lc(p1, r.right, [&](const ParseTreePtr& rt, std::size_t p2) {
                        k(make_branch(mother, lt, rt), p2);
                    });
                store_.undo_to(m);
                if (lim_.exhausted)
                    return;
            }
        });
    }

    // Shared main clause of the improved left-recursion-free programs:
    //   p(Node) --> [Word], {word(PreTerm,Word)}, b(node(PreTerm,lf(Word)),Node).
    void egnf_main(bool lc_mode, std::size_t pos, const TermPtr& expected,
                   const Cont& k) {
        if (!lim_.try_step()) // the single main clause
            return;
        lexical_clause(pos, nullptr,
                       [&](const TermPtr& preterm, std::size_t p) {
                           ParseTreePtr seed = make_lex(preterm, tokens_[pos]);
                           if (lc_mode)
                               egnf_b_lc(seed, p, expected, k);
                           else
                               egnf_b_bu(seed, p, expected, k);
                       });
    }

    // b(Node,Node) --> [].
    // b(L,Node) --> bu(R), {rule(Mother,L,R)}, b(node(Mother,L,R),Node).
    void egnf_b_bu(const ParseTreePtr& acc, std::size_t pos,
                   const TermPtr& expected, const Cont& k) {
        if (lim_.try_step()) { // unit clause
            std::size_t m = store_.mark();
            if (!expected || store_.unify(acc->category, expected))
                k(acc, pos);
            store_.undo_to(m);
        }
        if (lim_.exhausted)
            return;
        if (!lim_.try_step()) // continuation clause
            return;
        egnf_main(false, pos, nullptr,
                  [&](const ParseTreePtr& rt, std::size_t p1) {
                      for (const RuleFact& f : g_.rules) {
                          if (!lim_.try_step())
                              return;
                          std::size_t m = store_.mark();
                          RuleInst r = rename_rule(f);
                          if (store_.unify(acc->category, r.left) &&
                              store_.unify(rt->category, r.right))
                              egnf_b_bu(make_branch(r.mother, acc, rt), p1,
                                        expected, k);
                          store_.undo_to(m);
                          if (lim_.exhausted)
                              return;
                      }
                  });
    }

    // b(Node,Node) --> [].
    // b(L,Node) --> {rule(Mother,L,R)}, lc(R), b(node(Mother,L,R),Node).
    void egnf_b_lc(const ParseTreePtr& acc, std::size_t pos,
                   const TermPtr& expected, const Cont& k) {
        if (lim_.try_step()) { // unit clause
            std::size_t m = store_.mark();
            if (!expected || store_.unify(acc->category, expected))
                k(acc, pos);
            store_.undo_to(m);
        }
        if (lim_.exhausted)
            return;
        if (!lim_.try_step()) // continuation clause
            return;
        for (const RuleFact& f : g_.rules) {
            if (!lim_.try_step())
                return;
            std::size_t m = store_.mark();
            RuleInst r = rename_rule(f);
            if (store_.unify(acc->category, r.left))
                egnf_main(true, pos, r.right,
                          [&](const ParseTreePtr& rt, std::size_t p1) {
                              egnf_b_lc(make_branch(r.mother, acc, rt), p1,
                                        expected, k);
                          });
            store_.undo_to(m);
            if (lim_.exhausted)
                return;
        }
    }

    const Grammar& g_;
    const std::vector<std::string>& tokens_;
    SearchLimit lim_;
    BindingStore store_;
    std::set<std::string> seen_;
    std::vector<ParseTreePtr> out_;
};

ParseTreePtr apply_to_tree(const Substitution& s, const ParseTreePtr& t) {
    if (t->is_lex())
        return make_lex(s.apply(t->category), t->word);
    return make_branch(s.apply(t->category), apply_to_tree(s, t->left),
                       apply_to_tree(s, t->right));
}

ParseTreePtr rename_tree(const ParseTreePtr& t, VarContext& ctx) {
    return *term_to_tree(rename_apart(tree_to_term(t), ctx));
}

} // namespace

std::vector<ParseTreePtr> filter_by_root(const std::vector<ParseTreePtr>& trees,
                                         const TermPtr& root) {
    std::vector<ParseTreePtr> out;
    for (const auto& t : trees) {
        VarContext ctx;
        ParseTreePtr tr = rename_tree(t, ctx);
        TermPtr r = rename_apart(root, ctx);
        if (unify(tr->category, r))
            out.push_back(t);
    }
    return out;
}

std::vector<ParseTreePtr> oracle_parse(const Grammar& g,
                                       const std::vector<std::string>& words,
                                       const std::optional<TermPtr>& root) {
    std::size_t n = words.size();
    // cell(i,j) holds derivations over words[i..j); trees are deduplicated
    // by canonical form, which keeps ambiguous cells finite and minimal.
    std::map<std::pair<std::size_t, std::size_t>, std::vector<ParseTreePtr>>
        cells;
    std::map<std::pair<std::size_t, std::size_t>, std::set<std::string>> keys;

    auto insert = [&](std::size_t i, std::size_t j, const ParseTreePtr& t) {
        ParseTreePtr c = canonical_tree(t);
        if (keys[{i, j}].insert(tree_text(c)).second)
            cells[{i, j}].push_back(std::move(c));
    };

    for (std::size_t i = 0; i < n; ++i)
        for (const LexFact& f : g.lexicon)
            if (f.word == words[i])
                insert(i, i + 1, make_lex(f.preterm, f.word));

    for (std::size_t width = 2; width <= n; ++width) {
        for (std::size_t i = 0; i + width <= n; ++i) {
            std::size_t j = i + width;
            for (std::size_t k = i + 1; k < j; ++k) {
                auto li = cells.find({i, k});
                auto ri = cells.find({k, j});
                if (li == cells.end() || ri == cells.end())
                    continue;
                for (const auto& d1 : li->second) {
                    for (const auto& d2 : ri->second) {
                        for (const RuleFact& f : g.rules) {
                            VarContext ctx;
                            ParseTreePtr lt = rename_tree(d1, ctx);
                            ParseTreePtr rt = rename_tree(d2, ctx);
                            auto fact = rename_apart_all(
                                {f.mother, f.left, f.right}, ctx);
                            auto s1 = unify(fact[1], lt->category);
                            if (!s1)
                                continue;
                            auto s2 = unify(fact[2], rt->category, *s1);
                            if (!s2)
                                continue;
                            insert(i, j,
                                   make_branch(s2->apply(fact[0]),
                                               apply_to_tree(*s2, lt),
                                               apply_to_tree(*s2, rt)));
                        }
                    }
                }
            }
        }
    }

    std::vector<ParseTreePtr> full;
    if (auto it = cells.find({0, n}); it != cells.end())
        full = it->second;
    if (root)
        full = filter_by_root(full, *root);
    return full;
}

ParseResult parse(const Grammar& g, const std::vector<std::string>& words,
                  Strategy strategy, const ParseOptions& opts) {
    if (opts.budget <= 0)
        throw std::invalid_argument("budget must be positive");
    ParseResult result;
    if (strategy == Strategy::ORACLE) {
        result.trees = oracle_parse(g, words, opts.root);
        result.complete = true;
        return result;
    }
    run_on_large_stack([&] {
        EngineRun run(g, words, opts.budget);
        result = run.run(strategy);
    });
    if (opts.root)
        result.trees = filter_by_root(result.trees, *opts.root);
    return result;
}

std::vector<std::string> tree_set_texts(const std::vector<ParseTreePtr>& trees) {
    std::vector<std::string> out;
    out.reserve(trees.size());
    for (const auto& t : trees)
        out.push_back(tree_text(t));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace treeparse
