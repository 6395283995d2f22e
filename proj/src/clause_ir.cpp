#include "treeparse/clause_ir.hpp"

#include "treeparse/io.hpp"
#include "treeparse/subst.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

namespace treeparse {

namespace {

// ---------------------------------------------------------------------
// Clause plumbing: flatten a clause's terms, rebuild with replacements,
// rename, canonicalize.

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

Clause rebuild_clause(const Clause& shape, const std::vector<TermPtr>& terms) {
    Clause out;
    out.head.pred = shape.head.pred;
    std::size_t i = 0;
    for (std::size_t k = 0; k < shape.head.args.size(); ++k)
        out.head.args.push_back(terms[i++]);
    for (const BodyItem& item : shape.body) {
        if (item.kind == BodyItem::Kind::Terminal) {
            out.body.push_back(BodyItem::terminal(terms[i++]));
        } else {
            Literal l{item.lit.pred, {}};
            for (std::size_t k = 0; k < item.lit.args.size(); ++k)
                l.args.push_back(terms[i++]);
            out.body.push_back(item.kind == BodyItem::Kind::Call
                                   ? BodyItem::call(std::move(l))
                                   : BodyItem::constraint(std::move(l)));
        }
    }
    return out;
}

Clause rename_clause(const Clause& c, VarContext& ctx) {
    return rebuild_clause(c, rename_apart_all(clause_terms(c), ctx));
}

Clause apply_to_clause(const Substitution& s, const Clause& c) {
    auto terms = clause_terms(c);
    for (auto& t : terms)
        t = s.apply(t);
    return rebuild_clause(c, terms);
}

[[noreturn]] void reject(const std::string& op, std::size_t clause_index,
                         const std::string& why) {
    std::ostringstream os;
    os << op << ": clause " << (clause_index + 1) << ": " << why;
    throw TransformError(os.str());
}

} // namespace

Clause canonicalize_clause(const Clause& c) {
    return rebuild_clause(c, canonicalize_all(clause_terms(c)));
}

bool clause_equal(const Clause& a, const Clause& b) {
    if (a.head.pred != b.head.pred || a.body.size() != b.body.size())
        return false;
    for (std::size_t i = 0; i < a.body.size(); ++i) {
        const BodyItem& x = a.body[i];
        const BodyItem& y = b.body[i];
        if (x.kind != y.kind)
            return false;
        if (x.kind != BodyItem::Kind::Terminal &&
            (x.lit.pred != y.lit.pred || x.lit.args.size() != y.lit.args.size()))
            return false;
    }
    auto ta = canonicalize_all(clause_terms(a));
    auto tb = canonicalize_all(clause_terms(b));
    if (ta.size() != tb.size())
        return false;
    for (std::size_t i = 0; i < ta.size(); ++i)
        if (!term_eq(ta[i], tb[i]))
            return false;
    return true;
}

// ---------------------------------------------------------------------
// The parser listings as data.

namespace {

struct ClauseSpec {
    const char* head;
    std::vector<std::pair<BodyItem::Kind, const char*>> body;
};

Program make_program(std::string main, const std::vector<ClauseSpec>& specs) {
    Program p;
    p.main = std::move(main);
    VarContext ctx;
    for (const ClauseSpec& spec : specs) {
        VarScope scope; // variables are clause-local
        Clause c;
        TermPtr head = read_term(spec.head, ctx, scope);
        c.head = {head->functor(),
                  {head->args().begin(), head->args().end()}};
        for (const auto& [kind, text] : spec.body) {
            TermPtr t = read_term(text, ctx, scope);
            if (kind == BodyItem::Kind::Terminal) {
                c.body.push_back(BodyItem::terminal(t));
            } else {
                Literal l{t->functor(),
                          {t->args().begin(), t->args().end()}};
                c.body.push_back(kind == BodyItem::Kind::Call
                                     ? BodyItem::call(std::move(l))
                                     : BodyItem::constraint(std::move(l)));
            }
        }
        p.clauses.push_back(std::move(c));
    }
    return p;
}

constexpr auto T = BodyItem::Kind::Terminal;
constexpr auto C = BodyItem::Kind::Call;
constexpr auto G = BodyItem::Kind::Constraint;

} // namespace

Program builtin_program(BuiltinProgram which) {
    switch (which) {
    case BuiltinProgram::NaiveTd:
        return make_program(
            "td",
            {{"td(node(PreTerm,lf(Word)))",
              {{T, "Word"}, {G, "word(PreTerm,Word)"}}},
             {"td(node(Mother,Left,Right))",
              {{G, "rule(Mother,Left,Right)"}, {C, "td(Left)"},
               {C, "td(Right)"}}}});
    case BuiltinProgram::NaiveBu:
        return make_program(
            "bu",
            {{"bu(node(PreTerm,lf(Word)))",
              {{T, "Word"}, {G, "word(PreTerm,Word)"}}},
             {"bu(node(Mother,Left,Right))",
              {{C, "bu(Left)"}, {C, "bu(Right)"},
               {G, "rule(Mother,Left,Right)"}}}});
    case BuiltinProgram::NaiveLc:
        return make_program(
            "lc",
            {{"lc(node(PreTerm,lf(Word)))",
              {{T, "Word"}, {G, "word(PreTerm,Word)"}}},
             {"lc(node(Mother,Left,Right))",
              {{C, "lc(Left)"}, {G, "rule(Mother,Left,Right)"},
               {C, "lc(Right)"}}}});
    case BuiltinProgram::EgnfBu:
        return make_program(
            "bu",
            {{"bu(node(PreTerm,lf(Word)))",
              {{T, "Word"}, {G, "word(PreTerm,Word)"}}},
             {"bu(Node)",
              {{T, "Word"}, {G, "word(PreTerm,Word)"},
               {C, "b(node(PreTerm,lf(Word)),Node)"}}},
             {"b(L,node(Mother,L,R))",
              {{C, "bu(R)"}, {G, "rule(Mother,L,R)"}}},
             {"b(L,Node)",
              {{C, "bu(R)"}, {G, "rule(Mother,L,R)"},
               {C, "b(node(Mother,L,R),Node)"}}}});
    case BuiltinProgram::EgnfBuImproved:
        return make_program(
            "bu",
            {{"bu(Node)",
              {{T, "Word"}, {G, "word(PreTerm,Word)"},
               {C, "b(node(PreTerm,lf(Word)),Node)"}}},
             {"b(Node,Node)", {}},
             {"b(L,Node)",
              {{C, "bu(R)"}, {G, "rule(Mother,L,R)"},
               {C, "b(node(Mother,L,R),Node)"}}}});
    case BuiltinProgram::EgnfLcImproved:
        return make_program(
            "lc",
            {{"lc(Node)",
              {{T, "Word"}, {G, "word(PreTerm,Word)"},
               {C, "b(node(PreTerm,lf(Word)),Node)"}}},
             {"b(Node,Node)", {}},
             {"b(L,Node)",
              {{G, "rule(Mother,L,R)"}, {C, "lc(R)"},
               {C, "b(node(Mother,L,R),Node)"}}}});
    }
    throw TransformError("unknown builtin program");
}

std::optional<BuiltinProgram> builtin_from_name(const std::string& name) {
    if (name == "naive_td") return BuiltinProgram::NaiveTd;
    if (name == "naive_bu") return BuiltinProgram::NaiveBu;
    if (name == "naive_lc") return BuiltinProgram::NaiveLc;
    if (name == "egnf_bu") return BuiltinProgram::EgnfBu;
    if (name == "egnf_bu_improved") return BuiltinProgram::EgnfBuImproved;
    if (name == "egnf_lc_improved") return BuiltinProgram::EgnfLcImproved;
    return std::nullopt;
}

// ---------------------------------------------------------------------
// Left-recursion removal.

Program egnf_transform(const Program& p) {
    const std::string op = "egnf_transform";
    if (p.clauses.empty())
        throw TransformError(op + ": program has no clauses");

    for (std::size_t i = 0; i < p.clauses.size(); ++i) {
        const Clause& c = p.clauses[i];
        if (c.head.pred != p.main)
            reject(op, i, "head predicate '" + c.head.pred +
                              "' is not the program's single predicate '" +
                              p.main + "'");
        if (c.head.args.size() != 1)
            reject(op, i, "head arity must be 1");
        for (const BodyItem& item : c.body) {
            if (item.kind == BodyItem::Kind::Call) {
                if (item.lit.pred != p.main)
                    reject(op, i, "calls foreign predicate '" + item.lit.pred +
                                      "'");
                if (item.lit.args.size() != 1)
                    reject(op, i, "call arity must be 1");
            } else if (item.kind == BodyItem::Kind::Constraint) {
                bool ok = (item.lit.pred == "rule" &&
                           item.lit.args.size() == 3) ||
                          (item.lit.pred == "word" &&
                           item.lit.args.size() == 2);
                if (!ok)
                    reject(op, i, "constraint must be rule/3 or word/2");
            }
        }
    }

    auto is_left_recursive = [](const Clause& c) {
        return !c.body.empty() && c.body.front().kind == BodyItem::Kind::Call;
    };

    std::vector<std::size_t> base, recursive;
    for (std::size_t i = 0; i < p.clauses.size(); ++i)
        (is_left_recursive(p.clauses[i]) ? recursive : base).push_back(i);
    if (recursive.empty())
        throw TransformError(op + ": no left-recursive clause");
    if (base.empty())
        throw TransformError(op + ": no non-left-recursive clause");

    for (std::size_t i : recursive) {
        const TermPtr& acc = p.clauses[i].body.front().lit.args[0];
        if (!acc->is_var())
            reject(op, i, "leading self-call argument must be a variable");
        if (!occurs_in(acc->var_id(), p.clauses[i].head.args[0]))
            reject(op, i,
                   "leading self-call argument does not occur in the head "
                   "argument");
    }

    const std::string aux = p.main == "b" ? "b_" : "b";
    VarContext ctx;
    Program out;
    out.main = p.main;

    // A -> beta  |  beta B   (beta = each non-left-recursive clause)
    for (std::size_t i : base) {
        out.clauses.push_back(rename_clause(p.clauses[i], ctx));

        Clause with = rename_clause(p.clauses[i], ctx);
        TermPtr seed = with.head.args[0];
        TermPtr node = ctx.fresh("Node");
        with.head.args[0] = node;
        with.body.push_back(BodyItem::call({aux, {seed, node}}));
        out.clauses.push_back(std::move(with));
    }

    // B -> alpha  |  alpha B   (alpha = each left-recursive clause minus
    // its leading self-call; the head argument becomes the accumulation)
    for (std::size_t i : recursive) {
        Clause flat = rename_clause(p.clauses[i], ctx);
        TermPtr acc = flat.body.front().lit.args[0];
        TermPtr result = flat.head.args[0];
        Clause stop;
        stop.head = {aux, {acc, result}};
        stop.body.assign(flat.body.begin() + 1, flat.body.end());
        out.clauses.push_back(std::move(stop));

        Clause cont = rename_clause(p.clauses[i], ctx);
        TermPtr acc2 = cont.body.front().lit.args[0];
        TermPtr step = cont.head.args[0];
        TermPtr node = ctx.fresh("Node");
        Clause go;
        go.head = {aux, {acc2, node}};
        go.body.assign(cont.body.begin() + 1, cont.body.end());
        go.body.push_back(BodyItem::call({aux, {step, node}}));
        out.clauses.push_back(std::move(go));
    }
    return out;
}

// ---------------------------------------------------------------------
// Continuation factoring.

namespace {

// True iff `with` is `bare` plus a final continuation call to `aux` whose
// result argument is the head's result position: resolving the final call
// against the unit clause b(X,X) must give back `bare`.
bool is_continuation_pair(const Clause& bare, const Clause& with,
                          const std::string& aux, std::size_t result_pos) {
    if (with.body.empty())
        return false;
    const BodyItem& last = with.body.back();
    if (last.kind != BodyItem::Kind::Call || last.lit.pred != aux ||
        last.lit.args.size() != 2)
        return false;
    if (with.head.args.size() <= result_pos)
        return false;
    const TermPtr& out_var = with.head.args[result_pos];
    if (!out_var->is_var() || !term_eq(last.lit.args[1], out_var))
        return false;
    auto s = unify(last.lit.args[0], last.lit.args[1]);
    if (!s)
        return false;
    Clause collapsed = apply_to_clause(*s, with);
    collapsed.body.pop_back();
    return clause_equal(collapsed, bare);
}

} // namespace

Program improve(const Program& p) {
    const std::string op = "improve";
    std::set<std::string> preds;
    for (const Clause& c : p.clauses)
        preds.insert(c.head.pred);
    if (preds.size() != 2 || !preds.count(p.main))
        throw TransformError(
            op + ": expected exactly the main predicate and one auxiliary");
    std::string aux;
    for (const auto& name : preds)
        if (name != p.main)
            aux = name;

    std::vector<Clause> mains, auxes;
    for (const Clause& c : p.clauses)
        (c.head.pred == p.main ? mains : auxes).push_back(c);
    if (mains.size() % 2 != 0)
        throw TransformError(op + ": main clauses do not come in "
                                  "with/without-continuation pairs");
    if (auxes.size() % 2 != 0)
        throw TransformError(op + ": auxiliary clauses do not come in "
                                  "with/without-continuation pairs");

    Program out;
    out.main = p.main;
    for (std::size_t i = 0; i < mains.size(); i += 2) {
        if (!is_continuation_pair(mains[i], mains[i + 1], aux, 0))
            throw TransformError(op + ": main clauses " +
                                 std::to_string(i + 1) + "/" +
                                 std::to_string(i + 2) +
                                 " differ in more than a final call to " +
                                 aux);
        out.clauses.push_back(mains[i + 1]);
    }

    VarContext ctx;
    Clause unit;
    TermPtr node = ctx.fresh("Node");
    unit.head = {aux, {node, node}};
    out.clauses.push_back(std::move(unit));

    for (std::size_t i = 0; i < auxes.size(); i += 2) {
        if (auxes[i].head.args.size() != 2 ||
            !is_continuation_pair(auxes[i], auxes[i + 1], aux, 1))
            throw TransformError(op + ": auxiliary clauses " +
                                 std::to_string(i + 1) + "/" +
                                 std::to_string(i + 2) +
                                 " differ in more than a final call to " +
                                 aux);
        out.clauses.push_back(auxes[i + 1]);
    }
    return out;
}

// ---------------------------------------------------------------------
// Program equality under head/call predicate renaming.

namespace {

using PredGroups = std::vector<std::pair<std::string, std::vector<const Clause*>>>;

PredGroups group_by_pred(const Program& p) {
    PredGroups out;
    for (const Clause& c : p.clauses) {
        auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) {
            return g.first == c.head.pred;
        });
        if (it == out.end()) {
            out.push_back({c.head.pred, {}});
            it = out.end() - 1;
        }
        it->second.push_back(&c);
    }
    return out;
}

const std::vector<const Clause*>* find_group(const PredGroups& gs,
                                             const std::string& pred) {
    for (const auto& [name, clauses] : gs)
        if (name == pred)
            return &clauses;
    return nullptr;
}

Clause rename_preds(const Clause& c,
                    const std::map<std::string, std::string>& m) {
    Clause out = c;
    if (auto it = m.find(out.head.pred); it != m.end())
        out.head.pred = it->second;
    for (BodyItem& item : out.body)
        if (item.kind == BodyItem::Kind::Call)
            if (auto it = m.find(item.lit.pred); it != m.end())
                item.lit.pred = it->second;
    return out;
}

bool verify_equal(const Program& p, const Program& q,
                  const std::map<std::string, std::string>& m) {
    // The renaming must be a bijection over head predicates that fixes
    // rule/word and maps main to main.
    std::set<std::string> targets;
    for (const auto& [from, to] : m) {
        if (from == "rule" || from == "word" || to == "rule" || to == "word")
            if (from != to)
                return false;
        if (!targets.insert(to).second)
            return false;
    }
    auto it = m.find(p.main);
    if (it == m.end() || it->second != q.main)
        return false;

    PredGroups gp = group_by_pred(p);
    PredGroups gq = group_by_pred(q);
    if (gp.size() != gq.size())
        return false;
    for (const auto& [pred, pcls] : gp) {
        auto mit = m.find(pred);
        if (mit == m.end())
            return false;
        const auto* qcls = find_group(gq, mit->second);
        if (!qcls || qcls->size() != pcls.size())
            return false;
        for (std::size_t i = 0; i < pcls.size(); ++i)
            if (!clause_equal(rename_preds(*pcls[i], m), *(*qcls)[i]))
                return false;
    }
    return true;
}

} // namespace

bool program_equal(const Program& p, const Program& q,
                   const std::map<std::string, std::string>& pred_map) {
    std::map<std::string, std::string> m = pred_map;
    m.emplace("rule", "rule");
    m.emplace("word", "word");
    // Any head predicate the map does not mention maps to itself.
    for (const Clause& c : p.clauses)
        m.emplace(c.head.pred, c.head.pred);
    return verify_equal(p, q, m);
}

bool program_equal(const Program& p, const Program& q) {
    // Derive the candidate renaming by walking the clause structure from
    // the entry predicates downwards.
    std::map<std::string, std::string> m{{"rule", "rule"}, {"word", "word"}};
    PredGroups gp = group_by_pred(p);
    PredGroups gq = group_by_pred(q);
    std::deque<std::pair<std::string, std::string>> queue{{p.main, q.main}};
    std::set<std::string> targets{"rule", "word"};
    while (!queue.empty()) {
        auto [a, b] = queue.front();
        queue.pop_front();
        if (auto it = m.find(a); it != m.end()) {
            if (it->second != b)
                return false;
            continue;
        }
        if (!targets.insert(b).second)
            return false;
        m.emplace(a, b);
        const auto* pa = find_group(gp, a);
        const auto* qb = find_group(gq, b);
        if (!pa || !qb || pa->size() != qb->size())
            return false;
        for (std::size_t i = 0; i < pa->size(); ++i) {
            const Clause& ca = *(*pa)[i];
            const Clause& cb = *(*qb)[i];
            if (ca.body.size() != cb.body.size())
                return false;
            for (std::size_t k = 0; k < ca.body.size(); ++k) {
                if (ca.body[k].kind != cb.body[k].kind)
                    return false;
                if (ca.body[k].kind == BodyItem::Kind::Call)
                    queue.push_back({ca.body[k].lit.pred, cb.body[k].lit.pred});
            }
        }
    }
    // Unreached predicates (none in practice) must already agree by name.
    for (const auto& [pred, _] : gp)
        m.emplace(pred, pred);
    return verify_equal(p, q, m);
}

// ---------------------------------------------------------------------
// Left-recursion check: no call cycle without a terminal on the way.

bool left_recursion_free(const Program& p) {
    std::set<std::string> preds;
    for (const Clause& c : p.clauses)
        preds.insert(c.head.pred);

    // A predicate is nullable when some clause can succeed without
    // consuming input.
    std::set<std::string> nullable;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Clause& c : p.clauses) {
            if (nullable.count(c.head.pred))
                continue;
            bool all = true;
            for (const BodyItem& item : c.body) {
                if (item.kind == BodyItem::Kind::Terminal ||
                    (item.kind == BodyItem::Kind::Call &&
                     !nullable.count(item.lit.pred))) {
                    all = false;
                    break;
                }
            }
            if (all) {
                nullable.insert(c.head.pred);
                changed = true;
            }
        }
    }

    // Edges reachable before any token is consumed.
    std::map<std::string, std::set<std::string>> edges;
    for (const Clause& c : p.clauses) {
        for (const BodyItem& item : c.body) {
            if (item.kind == BodyItem::Kind::Terminal)
                break;
            if (item.kind == BodyItem::Kind::Call) {
                edges[c.head.pred].insert(item.lit.pred);
                if (!nullable.count(item.lit.pred))
                    break;
            }
        }
    }

    // Cycle detection.
    std::map<std::string, int> state; // 0 new, 1 active, 2 done
    std::function<bool(const std::string&)> has_cycle =
        [&](const std::string& n) -> bool {
        state[n] = 1;
        for (const auto& next : edges[n]) {
            if (state[next] == 1)
                return true;
            if (state[next] == 0 && has_cycle(next))
                return true;
        }
        state[n] = 2;
        return false;
    };
    for (const auto& pred : preds)
        if (state[pred] == 0 && has_cycle(pred))
            return false;
    return true;
}

// ---------------------------------------------------------------------
// Surface printing.

namespace {

std::string literal_text(const Literal& l, VarNamer* namer) {
    std::vector<TermPtr> args(l.args.begin(), l.args.end());
    TermPtr t = Term::compound(l.pred, std::move(args));
    return namer ? print_term(t, *namer)
                 : print_term(t, PrintStyle::Canonical);
}

std::string item_text(const BodyItem& item, VarNamer* namer) {
    switch (item.kind) {
    case BodyItem::Kind::Terminal:
        return "[" +
               (namer ? print_term(item.term, *namer)
                      : print_term(item.term, PrintStyle::Canonical)) +
               "]";
    case BodyItem::Kind::Call:
        return literal_text(item.lit, namer);
    case BodyItem::Kind::Constraint:
        return "{" + literal_text(item.lit, namer) + "}";
    }
    return {};
}

std::string clause_text(const Clause& c, VarNamer* namer) {
    std::string out = literal_text(c.head, namer) + " -->";
    if (c.body.empty())
        return out + " [].";
    out += "\n";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
        out += "    " + item_text(c.body[i], namer);
        out += i + 1 < c.body.size() ? ",\n" : ".";
    }
    return out;
}

} // namespace

std::string pretty_clause(const Clause& c) {
    VarNamer namer;
    return clause_text(c, &namer);
}

std::string pretty_program(const Program& p) {
    std::string out;
    for (std::size_t i = 0; i < p.clauses.size(); ++i) {
        if (i)
            out += "\n\n";
        out += pretty_clause(p.clauses[i]);
    }
    out += "\n";
    return out;
}

std::string pretty_program_canonical(const Program& p) {
    std::string out;
    for (std::size_t i = 0; i < p.clauses.size(); ++i) {
        if (i)
            out += "\n\n";
        out += clause_text(canonicalize_clause(p.clauses[i]), nullptr);
    }
    out += "\n";
    return out;
}

} // namespace treeparse
