#include "treeparse/parse_tree.hpp"

#include "treeparse/io.hpp"
#include "treeparse/subst.hpp"

namespace treeparse {

ParseTreePtr make_lex(TermPtr preterm, std::string word) {
    return std::make_shared<const ParseTree>(
        ParseTree{std::move(preterm), std::move(word), nullptr, nullptr});
}

ParseTreePtr make_branch(TermPtr mother, ParseTreePtr left,
                         ParseTreePtr right) {
    return std::make_shared<const ParseTree>(ParseTree{
        std::move(mother), {}, std::move(left), std::move(right)});
}

bool parse_tree_eq(const ParseTreePtr& a, const ParseTreePtr& b) {
    if (!a || !b)
        return !a && !b;
    if (a->is_lex() != b->is_lex())
        return false;
    if (!term_eq(a->category, b->category))
        return false;
    if (a->is_lex())
        return a->word == b->word;
    return parse_tree_eq(a->left, b->left) && parse_tree_eq(a->right, b->right);
}

namespace {

void yield_into(const ParseTreePtr& t, std::vector<std::string>& out) {
    if (t->is_lex()) {
        out.push_back(t->word);
        return;
    }
    yield_into(t->left, out);
    yield_into(t->right, out);
}

} // namespace

std::vector<std::string> yield_words(const ParseTreePtr& t) {
    std::vector<std::string> out;
    yield_into(t, out);
    return out;
}

TermPtr tree_to_term(const ParseTreePtr& t) {
    if (t->is_lex())
        return Term::compound(
            "node", {t->category, Term::compound("lf", {Term::atom(t->word)})});
    return Term::compound(
        "node", {t->category, tree_to_term(t->left), tree_to_term(t->right)});
}

std::optional<ParseTreePtr> term_to_tree(const TermPtr& t) {
    if (!t->is_compound() || t->functor() != "node")
        return std::nullopt;
    if (t->arity() == 2) {
        const TermPtr& lf = t->args()[1];
        if (!lf->is_compound() || lf->functor() != "lf" || lf->arity() != 1 ||
            !lf->args()[0]->is_atom())
            return std::nullopt;
        return make_lex(t->args()[0], lf->args()[0]->functor());
    }
    if (t->arity() == 3) {
        auto l = term_to_tree(t->args()[1]);
        auto r = term_to_tree(t->args()[2]);
        if (!l || !r)
            return std::nullopt;
        return make_branch(t->args()[0], *l, *r);
    }
    return std::nullopt;
}

ParseTreePtr canonical_tree(const ParseTreePtr& t) {
    auto back = term_to_tree(treeparse::canonicalize(tree_to_term(t)));
    return *back; // round trip through the term encoding cannot fail
}

std::string tree_text(const ParseTreePtr& t) {
    return print_term(treeparse::canonicalize(tree_to_term(t)), PrintStyle::Canonical);
}

} // namespace treeparse
