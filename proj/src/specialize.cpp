#include "treeparse/specialize.hpp"

#include "treeparse/io.hpp"
#include "treeparse/subst.hpp"

#include <algorithm>
#include <sstream>

namespace treeparse {

namespace {

std::vector<TermPtr> clause_terms(const Clause& c) {
    std::vector<TermPtr> out(c.head.args.begin(), c.head.args.end());
    for (const BodyItem& item : c.body) {
        if (item.kind == BodyItem::Kind::Terminal)
            out.push_back(item.term);
        else
            out.insert(out.end(), item.lit.args.begin(), item.lit.args.end());
    }
    return out;
}

Clause apply_to_clause(const Substitution& s, const Clause& c) {
    Clause out;
    out.head.pred = c.head.pred;
    for (const auto& a : c.head.args)
        out.head.args.push_back(s.apply(a));
    for (const BodyItem& item : c.body) {
        if (item.kind == BodyItem::Kind::Terminal) {
            out.body.push_back(BodyItem::terminal(s.apply(item.term)));
        } else {
            Literal l{item.lit.pred, {}};
            for (const auto& a : item.lit.args)
                l.args.push_back(s.apply(a));
            out.body.push_back(item.kind == BodyItem::Kind::Call
                                   ? BodyItem::call(std::move(l))
                                   : BodyItem::constraint(std::move(l)));
        }
    }
    return out;
}

bool unfoldable(const BodyItem& item, const SpecializeOptions& opts) {
    if (item.kind != BodyItem::Kind::Constraint)
        return false;
    if (item.lit.pred == "rule")
        return true;
    return item.lit.pred == "word" && opts.unfold_lexicon;
}

Clause drop_item(const Clause& c, std::size_t index) {
    Clause out = c;
    out.body.erase(out.body.begin() + static_cast<std::ptrdiff_t>(index));
    return out;
}

// Unfolds the leftmost unfoldable constraint of `c`, recursing until none
// remain; emits fully specialized clauses in fact order.
void unfold_clause(const Clause& c, const Grammar& g,
                   const SpecializeOptions& opts, std::vector<Clause>& out) {
    std::size_t target = c.body.size();
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        if (unfoldable(c.body[i], opts)) {
            target = i;
            break;
        }
    }
    if (target == c.body.size()) {
        out.push_back(c);
        return;
    }

    const Literal& goal = c.body[target].lit;
    VarContext ctx;
    for (const TermPtr& t : clause_terms(c))
        ctx.absorb(t);

    auto try_fact = [&](const std::vector<TermPtr>& fields) {
        if (goal.args.size() != fields.size())
            return;
        Substitution s;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            auto next = unify(goal.args[i], fields[i], s);
            if (!next)
                return;
            s = std::move(*next);
        }
        unfold_clause(apply_to_clause(s, drop_item(c, target)), g, opts, out);
    };

    if (goal.pred == "rule") {
        for (const RuleFact& f : g.rules) {
            VarContext local = ctx;
            try_fact(rename_apart_all({f.mother, f.left, f.right}, local));
        }
    } else {
        for (const LexFact& f : g.lexicon) {
            VarContext local = ctx;
            try_fact({rename_apart(f.preterm, local), Term::atom(f.word)});
        }
    }
}

} // namespace

Program partially_execute(const Program& p, const Grammar& g,
                          const SpecializeOptions& opts) {
    Program out;
    out.main = p.main;
    for (const Clause& c : p.clauses)
        unfold_clause(c, g, opts, out.clauses);
    return out;
}

IdentityReport specialization_identity(const Grammar& g) {
    Program bu = partially_execute(builtin_program(BuiltinProgram::EgnfBuImproved), g);
    Program lc = partially_execute(builtin_program(BuiltinProgram::EgnfLcImproved), g);

    IdentityReport report;
    report.identical =
        program_equal(bu, lc, {{"bu", "lc"}, {"b", "b"}});
    if (report.identical)
        return report;

    std::ostringstream diff;
    if (bu.clauses.size() != lc.clauses.size())
        diff << "clause counts differ: " << bu.clauses.size() << " vs "
             << lc.clauses.size() << "\n";
    std::size_t n = std::min(bu.clauses.size(), lc.clauses.size());
    for (std::size_t i = 0; i < n; ++i) {
        Clause renamed = bu.clauses[i];
        auto rename = [](std::string& pred) {
            if (pred == "bu")
                pred = "lc";
        };
        rename(renamed.head.pred);
        for (BodyItem& item : renamed.body)
            if (item.kind == BodyItem::Kind::Call)
                rename(item.lit.pred);
        if (!clause_equal(renamed, lc.clauses[i])) {
            diff << "clause " << (i + 1) << " differs:\n"
                 << "  bottom-up:   " << pretty_clause(bu.clauses[i]) << "\n"
                 << "  left-corner: " << pretty_clause(lc.clauses[i]) << "\n";
        }
    }
    report.diff = diff.str();
    return report;
}

} // namespace treeparse
