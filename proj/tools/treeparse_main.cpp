#include "treeparse/clause_ir.hpp"
#include "treeparse/engines.hpp"
#include "treeparse/interp.hpp"
#include "treeparse/io.hpp"
#include "treeparse/specialize.hpp"
#include "treeparse/subst.hpp"
#include "treeparse/traversal.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <sstream>

namespace {

using namespace treeparse;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNoTrees = 2;
constexpr int kExitIncomplete = 3;

std::string indent_tree(const TermPtr& t, int depth) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    if (t->is_var() || t->args().empty())
        return pad + print_term(t, PrintStyle::Canonical);
    std::string out = pad + t->functor() + "(\n";
    for (std::size_t i = 0; i < t->arity(); ++i) {
        out += indent_tree(t->args()[i], depth + 1);
        if (i + 1 < t->arity())
            out += ",";
        out += "\n";
    }
    out += pad + ")";
    return out;
}

int cmd_parse(const std::string& grammar_path, const std::string& strategy_name_,
              const std::string& root_text, std::int64_t budget,
              const std::vector<std::string>& words, bool pretty) {
    auto strategy = strategy_from_name(strategy_name_);
    if (!strategy) {
        std::cerr << "unknown strategy: " << strategy_name_ << "\n";
        return kExitError;
    }
    Grammar g = load_grammar_file(grammar_path);
    ParseOptions opts;
    opts.budget = budget;
    if (!root_text.empty())
        opts.root = read_term(root_text);
    ParseResult result = parse(g, words, *strategy, opts);

    std::vector<std::string> lines;
    lines.reserve(result.trees.size());
    for (const auto& t : result.trees)
        lines.push_back(tree_text(t));
    std::sort(lines.begin(), lines.end());
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (pretty)
            std::cout << indent_tree(
                             treeparse::canonicalize(tree_to_term(result.trees[i])), 0)
                      << "\n";
        else
            std::cout << lines[i] << "\n";
    }
    std::cout << "trees=" << lines.size()
              << " complete=" << (result.complete ? "true" : "false") << "\n";
    if (!result.complete)
        return kExitIncomplete;
    return lines.empty() ? kExitNoTrees : kExitOk;
}

int cmd_traverse(const std::string& order_name) {
    Order order = order_name == "pre"    ? Order::Pre
                  : order_name == "post" ? Order::Post
                                         : Order::In;
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    auto tree = term_to_travtree(read_term(buf.str()));
    if (!tree) {
        std::cerr << "input is not a tree term (expected node/3 or empty)\n";
        return kExitError;
    }
    bool first = true;
    for (const auto& label : traverse(order, *tree)) {
        if (!first)
            std::cout << ' ';
        first = false;
        std::cout << print_term(label, PrintStyle::Canonical);
    }
    std::cout << "\n";
    return kExitOk;
}

int cmd_invert(const std::string& order_name,
               const std::vector<std::string>& labels) {
    Order order = order_name == "pre"    ? Order::Pre
                  : order_name == "post" ? Order::Post
                                         : Order::In;
    std::vector<TermPtr> label_terms;
    label_terms.reserve(labels.size());
    for (const auto& text : labels)
        label_terms.push_back(read_term(text));
    auto trees = invert(order, label_terms);
    for (const auto& t : trees)
        std::cout << print_term(travtree_to_term(t), PrintStyle::Canonical)
                  << "\n";
    std::cout << "trees=" << trees.size() << "\n";
    return kExitOk;
}

int cmd_transform(const std::string& program_name, bool do_improve) {
    auto which = builtin_from_name(program_name);
    if (!which || (*which != BuiltinProgram::NaiveBu &&
                   *which != BuiltinProgram::NaiveLc)) {
        std::cerr << "transform supports naive_bu or naive_lc, got: "
                  << program_name << "\n";
        return kExitError;
    }
    Program out = egnf_transform(builtin_program(*which));
    if (do_improve)
        out = improve(out);
    std::cout << pretty_program(out);
    return kExitOk;
}

int cmd_specialize(const std::string& grammar_path,
                   const std::string& program_name, bool keep_lexicon) {
    BuiltinProgram which;
    if (program_name == "egnf_bu")
        which = BuiltinProgram::EgnfBuImproved;
    else if (program_name == "egnf_lc")
        which = BuiltinProgram::EgnfLcImproved;
    else {
        std::cerr << "specialize supports egnf_bu or egnf_lc, got: "
                  << program_name << "\n";
        return kExitError;
    }
    Grammar g = load_grammar_file(grammar_path);
    SpecializeOptions opts;
    opts.unfold_lexicon = !keep_lexicon;
    std::cout << pretty_program(partially_execute(builtin_program(which), g, opts));
    return kExitOk;
}

int cmd_compare(const std::string& grammar_path) {
    Grammar g = load_grammar_file(grammar_path);
    IdentityReport report = specialization_identity(g);
    std::cout << "identical=" << (report.identical ? "true" : "false") << "\n";
    if (!report.identical)
        std::cout << report.diff;
    return report.identical ? kExitOk : kExitError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Parsing strategies as tree traversals: top-down, bottom-up and "
        "left-corner parsers, left-recursion removal, and grammar "
        "specialization"};
    app.require_subcommand(1);

    // parse
    std::string grammar_path, strategy = "bu", root_text;
    std::int64_t budget = 1'000'000;
    std::vector<std::string> words;
    bool pretty = false;
    auto* parse_cmd = app.add_subcommand("parse", "Parse a sentence");
    parse_cmd->add_option("--grammar", grammar_path, "Grammar file")
        ->required();
    parse_cmd->add_option("--strategy", strategy,
                          "td|bu-naive|lc-naive|bu|lc|oracle");
    parse_cmd->add_option("--root", root_text, "Root category filter");
    parse_cmd->add_option("--budget", budget, "Search step budget");
    parse_cmd->add_flag("--pretty", pretty, "Indented tree output");
    parse_cmd->add_option("words", words, "Input words");

    // traverse
    std::string trav_order = "pre";
    auto* trav_cmd = app.add_subcommand(
        "traverse", "Read a tree term from stdin and print its labels");
    trav_cmd->add_option("--order", trav_order, "pre|post|in")
        ->check(CLI::IsMember({"pre", "post", "in"}));

    // invert
    std::string inv_order = "pre";
    std::vector<std::string> labels;
    auto* inv_cmd = app.add_subcommand(
        "invert", "All trees whose traversal yields the given labels");
    inv_cmd->add_option("--order", inv_order, "pre|post|in")
        ->check(CLI::IsMember({"pre", "post", "in"}));
    inv_cmd->add_option("labels", labels, "Label sequence");

    // transform
    std::string program_name;
    bool do_improve = false;
    auto* tr_cmd = app.add_subcommand(
        "transform", "Remove left recursion from a parser program");
    tr_cmd->add_option("--program", program_name, "naive_bu|naive_lc")
        ->required();
    tr_cmd->add_flag("--improve", do_improve,
                     "Factor the optional continuation into the auxiliary "
                     "predicate");

    // specialize
    std::string spec_grammar, spec_program;
    bool keep_lexicon = false;
    auto* spec_cmd = app.add_subcommand(
        "specialize", "Partially execute a parser against a grammar");
    spec_cmd->add_option("--grammar", spec_grammar, "Grammar file")
        ->required();
    spec_cmd->add_option("--program", spec_program, "egnf_bu|egnf_lc")
        ->required();
    spec_cmd->add_flag("--keep-lexicon", keep_lexicon,
                       "Leave word/2 constraints in place");

    // compare
    std::string cmp_grammar;
    auto* cmp_cmd = app.add_subcommand(
        "compare",
        "Check that the specialized bottom-up and left-corner parsers "
        "coincide");
    cmp_cmd->add_option("--grammar", cmp_grammar, "Grammar file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (parse_cmd->parsed())
            return cmd_parse(grammar_path, strategy, root_text, budget, words,
                             pretty);
        if (trav_cmd->parsed())
            return cmd_traverse(trav_order);
        if (inv_cmd->parsed())
            return cmd_invert(inv_order, labels);
        if (tr_cmd->parsed())
            return cmd_transform(program_name, do_improve);
        if (spec_cmd->parsed())
            return cmd_specialize(spec_grammar, spec_program, keep_lexicon);
        if (cmp_cmd->parsed())
            return cmd_compare(cmp_grammar);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
