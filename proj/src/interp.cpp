#include "treeparse/interp.hpp"

#include "treeparse/binding_store.hpp"
#include "treeparse/io.hpp"

#include <map>
#include <set>
#include <stdexcept>

namespace treeparse {

namespace {

struct GoalNode {
    BodyItem item;
    std::shared_ptr<const GoalNode> next;
};
using GoalList = std::shared_ptr<const GoalNode>;

GoalList push_goal(BodyItem item, GoalList next) {
    return std::make_shared<const GoalNode>(
        GoalNode{std::move(item), std::move(next)});
}

struct ChoicePoint {
    GoalList goals; // first node is the goal being resolved
    std::size_t pos;
    std::size_t trail_mark;
    enum class Alts { Clauses, RuleFacts, LexFacts } alts;
    std::size_t next_alt = 0;
    const std::vector<const Clause*>* clauses = nullptr;
};

class Machine {
public:
    Machine(const Program& p, const Grammar& g,
            const std::vector<std::string>& words, std::int64_t budget)
        : grammar_(g), tokens_(words), remaining_(budget) {
        for (const Clause& c : p.clauses)
            index_[c.head.pred].push_back(&c);
        validate(p);
    }

    ParseResult run(const std::string& main) {
        query_ = store_.fresh("Result");
        GoalList goals = push_goal(BodyItem::call({main, {query_}}), nullptr);
        solve(std::move(goals));
        return {std::move(out_), !exhausted_};
    }

private:
    static void validate(const Program& p) {
        bool main_found = false;
        for (const Clause& c : p.clauses) {
            if (c.head.pred == p.main)
                main_found = true;
            for (const BodyItem& item : c.body) {
                if (item.kind != BodyItem::Kind::Constraint)
                    continue;
                bool ok = (item.lit.pred == "rule" &&
                           item.lit.args.size() == 3) ||
                          (item.lit.pred == "word" &&
                           item.lit.args.size() == 2);
                if (!ok)
                    throw std::invalid_argument(
                        "constraint goals are limited to rule/3 and word/2");
            }
        }
        if (!main_found)
            throw std::invalid_argument(
                "program's main predicate has no clause");
    }

    bool try_step() {
        if (exhausted_)
            return false;
        if (remaining_ <= 0) {
            exhausted_ = true;
            return false;
        }
        --remaining_;
        return true;
    }

    void harvest() {
        if (pos_ != tokens_.size() || store_.pending_count() != 0)
            return;
        auto tree = term_to_tree(store_.resolve(query_));
        if (!tree)
            return; // bound result is not a parse tree
        ParseTreePtr canon = canonical_tree(*tree);
        std::string key = tree_text(canon);
        if (seen_.insert(std::move(key)).second)
            out_.push_back(std::move(canon));
    }

    // Activates clause `c` for the call at the head of `cp.goals`;
    // on success installs the new goal list and position.
    bool activate(const ChoicePoint& cp, const Clause& c) {
        const Literal& call = cp.goals->item.lit;
        if (c.head.args.size() != call.args.size())
            return false;
        std::map<VarId, TermPtr> fresh;
        std::vector<TermPtr> head_args;
        head_args.reserve(c.head.args.size());
        for (const auto& a : c.head.args)
            head_args.push_back(store_.import(a, fresh));
        for (std::size_t i = 0; i < call.args.size(); ++i)
            if (!store_.unify(call.args[i], head_args[i]))
                return false;
        GoalList goals = cp.goals->next;
        for (std::size_t i = c.body.size(); i-- > 0;) {
            const BodyItem& item = c.body[i];
            if (item.kind == BodyItem::Kind::Terminal) {
                goals = push_goal(
                    BodyItem::terminal(store_.import(item.term, fresh)),
                    std::move(goals));
            } else {
                Literal inst{item.lit.pred, {}};
                inst.args.reserve(item.lit.args.size());
                for (const auto& a : item.lit.args)
                    inst.args.push_back(store_.import(a, fresh));
                goals = push_goal(item.kind == BodyItem::Kind::Call
                                      ? BodyItem::call(std::move(inst))
                                      : BodyItem::constraint(std::move(inst)),
                                  std::move(goals));
            }
        }
        goals_ = std::move(goals);
        pos_ = cp.pos;
        return true;
    }

    bool apply_rule_fact(const ChoicePoint& cp, const RuleFact& f) {
        const Literal& goal = cp.goals->item.lit;
        std::map<VarId, TermPtr> fresh;
        TermPtr mother = store_.import(f.mother, fresh);
        TermPtr left = store_.import(f.left, fresh);
        TermPtr right = store_.import(f.right, fresh);
        if (!store_.unify(goal.args[0], mother))
            return false;
        if (!store_.unify_category(goal.args[1], left))
            return false;
        if (!store_.unify_category(goal.args[2], right))
            return false;
        goals_ = cp.goals->next;
        pos_ = cp.pos;
        return true;
    }

    bool apply_lex_fact(const ChoicePoint& cp, const LexFact& f) {
        const Literal& goal = cp.goals->item.lit;
        std::map<VarId, TermPtr> fresh;
        if (!store_.unify(goal.args[0], store_.import(f.preterm, fresh)))
            return false;
        return store_.unify(goal.args[1], Term::atom(f.word));
    }

    void solve(GoalList start) {
        goals_ = std::move(start);
        pos_ = 0;
        std::vector<ChoicePoint> cps;
        static const std::vector<const Clause*> no_clauses;

        enum class Mode { Advance, Backtrack } mode = Mode::Advance;
        while (true) {
            if (mode == Mode::Advance) {
                if (exhausted_)
                    return;
                if (!goals_) {
                    harvest();
                    mode = Mode::Backtrack;
                    continue;
                }
                const BodyItem& item = goals_->item;
                if (item.kind == BodyItem::Kind::Terminal) {
                    if (!try_step())
                        return;
                    std::size_t m = store_.mark();
                    if (pos_ < tokens_.size() &&
                        store_.unify(item.term, Term::atom(tokens_[pos_]))) {
                        goals_ = goals_->next;
                        ++pos_;
                        continue;
                    }
                    store_.undo_to(m);
                    mode = Mode::Backtrack;
                    continue;
                }
                ChoicePoint cp;
                cp.goals = goals_;
                cp.pos = pos_;
                cp.trail_mark = store_.mark();
                if (item.kind == BodyItem::Kind::Call) {
                    cp.alts = ChoicePoint::Alts::Clauses;
                    auto it = index_.find(item.lit.pred);
                    cp.clauses = it == index_.end() ? &no_clauses : &it->second;
                } else {
                    cp.alts = item.lit.pred == "rule"
                                  ? ChoicePoint::Alts::RuleFacts
                                  : ChoicePoint::Alts::LexFacts;
                }
                cps.push_back(std::move(cp));
                mode = Mode::Backtrack; // fall through to alternative trying
                continue;
            }

            // Backtrack: advance the newest choice point.
            if (cps.empty())
                return;
            ChoicePoint& cp = cps.back();
            store_.undo_to(cp.trail_mark);
            bool advanced = false;
            switch (cp.alts) {
            case ChoicePoint::Alts::Clauses:
                while (cp.next_alt < cp.clauses->size()) {
                    const Clause* c = (*cp.clauses)[cp.next_alt++];
                    if (!try_step())
                        return;
                    if (activate(cp, *c)) {
                        advanced = true;
                        break;
                    }
                    store_.undo_to(cp.trail_mark);
                }
                break;
            case ChoicePoint::Alts::RuleFacts:
                while (cp.next_alt < grammar_.rules.size()) {
                    const RuleFact& f = grammar_.rules[cp.next_alt++];
                    if (!try_step())
                        return;
                    if (apply_rule_fact(cp, f)) {
                        advanced = true;
                        break;
                    }
                    store_.undo_to(cp.trail_mark);
                }
                break;
            case ChoicePoint::Alts::LexFacts:
                while (cp.next_alt < grammar_.lexicon.size()) {
                    const LexFact& f = grammar_.lexicon[cp.next_alt++];
                    if (!try_step())
                        return;
                    if (apply_lex_fact(cp, f)) {
                        advanced = true;
                        break;
                    }
                    store_.undo_to(cp.trail_mark);
                }
                break;
            }
            if (advanced) {
                mode = Mode::Advance;
            } else {
                cps.pop_back();
                mode = Mode::Backtrack;
            }
        }
    }

    const Grammar& grammar_;
    const std::vector<std::string>& tokens_;
    std::int64_t remaining_;
    bool exhausted_ = false;

    std::map<std::string, std::vector<const Clause*>> index_;
    BindingStore store_;
    TermPtr query_;
    GoalList goals_;
    std::size_t pos_ = 0;
    std::set<std::string> seen_;
    std::vector<ParseTreePtr> out_;
};

} // namespace

ParseResult run_program(const Program& p, const Grammar& g,
                        const std::vector<std::string>& words,
                        const ParseOptions& opts) {
    if (opts.budget <= 0)
        throw std::invalid_argument("budget must be positive");
    Machine machine(p, g, words, opts.budget);
    ParseResult result = machine.run(p.main);
    if (opts.root)
        result.trees = filter_by_root(result.trees, *opts.root);
    return result;
}

} // namespace treeparse
