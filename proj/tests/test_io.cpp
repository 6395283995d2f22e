#include "fixtures.hpp"

#include "treeparse/io.hpp"
#include "treeparse/subst.hpp"

#include <doctest.h>

#include <set>

using namespace treeparse;

TEST_CASE("read_term parses the surface notation") {
    TermPtr t = read_term("node(s,X,Y)");
    CHECK(t->functor() == "node");
    CHECK(t->arity() == 3);
    CHECK(t->args()[0]->is_atom());
    CHECK(t->args()[1]->is_var());
    CHECK(t->args()[2]->is_var());
    CHECK_FALSE(term_eq(t->args()[1], t->args()[2]));

    TermPtr g1 = read_term("tree(s,NP,VP)");
    CHECK(g1->functor() == "tree");
    CHECK(g1->args()[1]->is_var());

    CHECK(read_term("lf")->is_atom());
}

TEST_CASE("read_term reports the offset of a syntax error") {
    try {
        read_term("f(");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.offset == 2);
    }
    CHECK_THROWS_AS(read_term("f(a,)"), SyntaxError);
    CHECK_THROWS_AS(read_term("f(a) b"), SyntaxError);
    CHECK_THROWS_AS(read_term(""), SyntaxError);
}

TEST_CASE("same name means same variable within one scope") {
    VarContext ctx;
    VarScope scope;
    TermPtr t = read_term("f(X,g(X,Y))", ctx, scope);
    CHECK(term_eq(t->args()[0], t->args()[1]->args()[0]));
    CHECK_FALSE(term_eq(t->args()[0], t->args()[1]->args()[1]));
}

TEST_CASE("print then read round-trips canonical terms") {
    for (const char* text :
         {"f(A,B,A)", "node(s,node(np,A,B),lf(w))", "a", "X",
          "f(g(h(A)),A,b)"}) {
        TermPtr canon = treeparse::canonicalize(read_term(text));
        TermPtr back = read_term(print_term(canon, PrintStyle::Canonical));
        CHECK(term_eq(back, canon));
    }
}

TEST_CASE("read after print is identity up to whitespace") {
    TermPtr t = read_term("  f( X ,  g(Y,  b) ) ");
    CHECK(print_term(treeparse::canonicalize(t), PrintStyle::Canonical) == "f(A,g(B,b))");
}

TEST_CASE("loads the fixture grammars") {
    Grammar g0 = fixtures::g0();
    CHECK(g0.rules.size() == 3);
    CHECK(g0.lexicon.size() == 4);
    CHECK(print_term(g0.rules[0].mother) == "s");
    CHECK(g0.lexicon[0].word == "the");

    Grammar g1 = fixtures::g1();
    CHECK(g1.rules.size() == 1);
    CHECK(g1.lexicon.size() == 2);

    Grammar ga = fixtures::ga();
    CHECK(ga.rules.size() == 1);
    CHECK(ga.lexicon.size() == 1);
}

TEST_CASE("single-line grammar with two facts") {
    Grammar g = load_grammar("rule(s,np,vp).\nword(n,dog).");
    CHECK(g.rules.size() == 1);
    CHECK(g.lexicon.size() == 1);
}

TEST_CASE("comments and blank lines are ignored") {
    Grammar g = load_grammar(
        "% a grammar\n\nrule(s, np, vp). % inline comment\n%word(n,ghost).\n");
    CHECK(g.rules.size() == 1);
    CHECK(g.lexicon.empty());
}

TEST_CASE("word facts must have an atom word") {
    try {
        load_grammar("word(v, tree(x)).");
        FAIL("expected a load error");
    } catch (const LoadError& e) {
        CHECK(e.line == 1);
    }
}

TEST_CASE("other fact shapes are load errors with a line number") {
    try {
        load_grammar("rule(s,np,vp).\nfoo(a,b).");
        FAIL("expected a load error");
    } catch (const LoadError& e) {
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(load_grammar("rule(s,np)."), LoadError);
    CHECK_THROWS_AS(load_grammar("rule(s,np,vp)"), LoadError); // no period
    CHECK_THROWS_AS(load_grammar("word(n, X)."), LoadError);
}

TEST_CASE("facts never share variables after loading") {
    Grammar g = load_grammar(
        "rule(s(X), np(X), vp(Y)).\nrule(q(X), r(X), t(X)).\nword(n(X), w).");
    std::set<VarId> seen;
    auto collect = [&](const TermPtr& t) {
        std::vector<VarId> vars;
        collect_vars(t, vars);
        return vars;
    };
    std::vector<std::vector<VarId>> groups;
    for (const auto& r : g.rules) {
        std::vector<VarId> vars = collect(r.mother);
        collect_vars(r.left, vars);
        collect_vars(r.right, vars);
        groups.push_back(vars);
    }
    for (const auto& l : g.lexicon)
        groups.push_back(collect(l.preterm));
    for (const auto& vars : groups) {
        for (VarId v : vars)
            CHECK(seen.insert(v).second); // disjoint across facts
    }
}
