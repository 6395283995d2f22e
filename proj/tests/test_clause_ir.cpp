#include "treeparse/clause_ir.hpp"
#include "treeparse/io.hpp"
#include "treeparse/subst.hpp"

#include <doctest.h>

using namespace treeparse;

namespace {

Program p(BuiltinProgram which) { return builtin_program(which); }

} // namespace

TEST_CASE("naive bottom-up as data: two clauses, listing order") {
    Program bu = p(BuiltinProgram::NaiveBu);
    CHECK(bu.main == "bu");
    REQUIRE(bu.clauses.size() == 2);

    const Clause& rec = bu.clauses[1];
    REQUIRE(rec.body.size() == 3);
    CHECK(rec.body[0].kind == BodyItem::Kind::Call);
    CHECK(rec.body[0].lit.pred == "bu");
    CHECK(rec.body[1].kind == BodyItem::Kind::Call);
    CHECK(rec.body[2].kind == BodyItem::Kind::Constraint);
    CHECK(rec.body[2].lit.pred == "rule");
    // the calls parse the rule's daughters: shared variables
    CHECK(term_eq(rec.body[0].lit.args[0], rec.body[2].lit.args[1]));
    CHECK(term_eq(rec.body[1].lit.args[0], rec.body[2].lit.args[2]));
}

TEST_CASE("improved bottom-up as data: unit clause present") {
    Program bu = p(BuiltinProgram::EgnfBuImproved);
    REQUIRE(bu.clauses.size() == 3);
    const Clause& unit = bu.clauses[1];
    CHECK(unit.head.pred == "b");
    CHECK(unit.body.empty());
    REQUIRE(unit.head.args.size() == 2);
    CHECK(term_eq(unit.head.args[0], unit.head.args[1]));
}

TEST_CASE("improved left-corner as data: rule before the recursive call") {
    Program lc = p(BuiltinProgram::EgnfLcImproved);
    REQUIRE(lc.clauses.size() == 3);
    const Clause& step = lc.clauses[2];
    REQUIRE(step.body.size() == 3);
    CHECK(step.body[0].kind == BodyItem::Kind::Constraint);
    CHECK(step.body[0].lit.pred == "rule");
    CHECK(step.body[1].kind == BodyItem::Kind::Call);
    CHECK(step.body[1].lit.pred == "lc");
    CHECK(step.body[2].kind == BodyItem::Kind::Call);
    CHECK(step.body[2].lit.pred == "b");
}

TEST_CASE("transforming naive bottom-up gives the 4-clause program") {
    Program out = egnf_transform(p(BuiltinProgram::NaiveBu));
    CHECK(out.clauses.size() == 4);
    CHECK(program_equal(out, p(BuiltinProgram::EgnfBu)));
}

TEST_CASE("improve collapses the optional continuation") {
    CHECK(program_equal(improve(egnf_transform(p(BuiltinProgram::NaiveBu))),
                        p(BuiltinProgram::EgnfBuImproved)));
    CHECK(program_equal(improve(egnf_transform(p(BuiltinProgram::NaiveLc))),
                        p(BuiltinProgram::EgnfLcImproved)));
}

TEST_CASE("improve also accepts the hand-transcribed 4-clause program") {
    CHECK(program_equal(improve(p(BuiltinProgram::EgnfBu)),
                        p(BuiltinProgram::EgnfBuImproved)));
}

TEST_CASE("top-down is rejected: nothing is left recursive") {
    CHECK_THROWS_WITH_AS(egnf_transform(p(BuiltinProgram::NaiveTd)),
                         doctest::Contains("no left-recursive clause"),
                         TransformError);
}

TEST_CASE("improve rejects programs that are not transform outputs") {
    CHECK_THROWS_AS(improve(p(BuiltinProgram::NaiveTd)), TransformError);
    // applying improve twice fails the shape precondition
    Program once = improve(egnf_transform(p(BuiltinProgram::NaiveBu)));
    CHECK_THROWS_AS(improve(once), TransformError);
}

TEST_CASE("transform rejects out-of-shape programs with a diagnostic") {
    Program two_preds = p(BuiltinProgram::EgnfBuImproved);
    CHECK_THROWS_WITH_AS(egnf_transform(two_preds),
                         doctest::Contains("single predicate"),
                         TransformError);

    // leading self-call argument must be a variable
    Program bad = p(BuiltinProgram::NaiveBu);
    bad.clauses[1].body[0].lit.args[0] = read_term("f(Z)");
    CHECK_THROWS_WITH_AS(egnf_transform(bad),
                         doctest::Contains("must be a variable"),
                         TransformError);
}

TEST_CASE("transform outputs are left-recursion free; naive inputs are not") {
    CHECK(left_recursion_free(p(BuiltinProgram::NaiveTd)));
    CHECK_FALSE(left_recursion_free(p(BuiltinProgram::NaiveBu)));
    CHECK_FALSE(left_recursion_free(p(BuiltinProgram::NaiveLc)));
    for (BuiltinProgram which : {BuiltinProgram::NaiveBu,
                                 BuiltinProgram::NaiveLc}) {
        Program out = egnf_transform(p(which));
        CHECK(left_recursion_free(out));
        CHECK(left_recursion_free(improve(out)));
    }
}

TEST_CASE("program equality: reflexive, variant-insensitive, order-aware") {
    Program bu = p(BuiltinProgram::NaiveBu);
    CHECK(program_equal(bu, bu));
    CHECK_FALSE(program_equal(bu, p(BuiltinProgram::NaiveLc)));

    // a variable-renamed copy is the same program
    VarContext ctx;
    for (int i = 0; i < 100; ++i)
        ctx.fresh();
    Program renamed = bu;
    for (Clause& c : renamed.clauses) {
        std::vector<TermPtr> terms(c.head.args);
        for (auto& item : c.body) {
            if (item.kind == BodyItem::Kind::Terminal)
                terms.push_back(item.term);
            else
                terms.insert(terms.end(), item.lit.args.begin(),
                             item.lit.args.end());
        }
        auto fresh = rename_apart_all(terms, ctx);
        std::size_t k = 0;
        for (auto& a : c.head.args)
            a = fresh[k++];
        for (auto& item : c.body) {
            if (item.kind == BodyItem::Kind::Terminal)
                item.term = fresh[k++];
            else
                for (auto& a : item.lit.args)
                    a = fresh[k++];
        }
    }
    CHECK(program_equal(bu, renamed));

    // swapping clause order breaks equality
    Program swapped = bu;
    std::swap(swapped.clauses[0], swapped.clauses[1]);
    CHECK_FALSE(program_equal(bu, swapped));
}

TEST_CASE("program equality matches predicates under a bijection") {
    Program bu = p(BuiltinProgram::EgnfBuImproved);
    Program lc = p(BuiltinProgram::EgnfLcImproved);
    // distinct programs even under renaming: item order differs
    CHECK_FALSE(program_equal(bu, lc));
    CHECK_FALSE(program_equal(bu, lc, {{"bu", "lc"}, {"b", "b"}}));
    // but bu is lc-renamed-to-bu's equal when bodies match
    Program relabeled = bu;
    relabeled.main = "lc";
    for (Clause& c : relabeled.clauses) {
        if (c.head.pred == "bu")
            c.head.pred = "lc";
        for (auto& item : c.body)
            if (item.kind == BodyItem::Kind::Call && item.lit.pred == "bu")
                item.lit.pred = "lc";
    }
    CHECK(program_equal(bu, relabeled));
    CHECK(program_equal(bu, relabeled, {{"bu", "lc"}, {"b", "b"}}));
}

TEST_CASE("pretty printing uses the surface notation") {
    Program bu = p(BuiltinProgram::EgnfBuImproved);
    std::string text = pretty_program(bu);
    CHECK(text.find("bu(Node) -->") != std::string::npos);
    CHECK(text.find("[Word]") != std::string::npos);
    CHECK(text.find("{word(PreTerm,Word)}") != std::string::npos);
    CHECK(text.find("b(node(PreTerm,lf(Word)),Node)") != std::string::npos);
    CHECK(text.find("b(Node,Node) --> [].") != std::string::npos);

    // the canonical printing of the transform output and of the
    // hand-transcribed listing coincide exactly
    CHECK(pretty_program_canonical(
              improve(egnf_transform(p(BuiltinProgram::NaiveBu)))) ==
          pretty_program_canonical(bu));
    CHECK(pretty_program_canonical(
              egnf_transform(p(BuiltinProgram::NaiveBu))) ==
          pretty_program_canonical(p(BuiltinProgram::EgnfBu)));
}

TEST_CASE("builtin names resolve") {
    CHECK(builtin_from_name("naive_td").has_value());
    CHECK(builtin_from_name("egnf_lc_improved").has_value());
    CHECK_FALSE(builtin_from_name("nonsense").has_value());
}
