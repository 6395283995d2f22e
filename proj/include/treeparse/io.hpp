#pragma once

#include "treeparse/grammar.hpp"
#include "treeparse/term.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treeparse {

struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& what, std::size_t offset_)
        : std::runtime_error(what), offset(offset_) {}
    std::size_t offset;
};

struct LoadError : std::runtime_error {
    LoadError(const std::string& what, std::size_t line_)
        : std::runtime_error(what), line(line_) {}
    std::size_t line; // 1-based
};

/// Name scope for one syntactic unit: occurrences of the same variable
/// name map to the same variable.
using VarScope = std::map<std::string, TermPtr>;

/// Parses functor-and-parentheses notation: lowercase-initial identifiers
/// are functors/atoms, uppercase- or underscore-initial identifiers are
/// variables, arguments are comma-separated in parentheses, whitespace is
/// insignificant. Throws SyntaxError with the offending offset.
TermPtr read_term(std::string_view text, VarContext& ctx, VarScope& scope);

/// Convenience form with a private context; ids are assigned 0,1,2,... in
/// first-occurrence order.
TermPtr read_term(std::string_view text);

enum class PrintStyle {
    Display,  // variable hints, disambiguated per printed unit
    Canonical // letter codes derived from variable ids (A, B, ..., A1, ...)
};

/// Display-name allocator shared across the terms of one printed unit
/// (e.g. one clause), so co-referring variables print alike and distinct
/// variables with the same hint are told apart.
class VarNamer {
public:
    const std::string& name_for(VarId id, const std::string& hint);

private:
    std::map<VarId, std::string> by_id_;
    std::vector<std::string> used_;
};

std::string print_term(const TermPtr& t, PrintStyle style = PrintStyle::Display);
std::string print_term(const TermPtr& t, VarNamer& namer);

/// Canonical text of the canonicalized term; the standard key for
/// variant-equality comparisons and sorted output.
std::string canonical_text(const TermPtr& t);

/// Loads `rule(M,L,R).` / `word(P,W).` facts. `%` starts a comment; facts
/// are period-terminated and may share a line (as grammar fixtures commonly
/// do). Facts keep file order; each fact's variables are renamed into a
/// range disjoint from every other fact's. Throws LoadError with the
/// 1-based line of the offending fact.
Grammar load_grammar(std::string_view text);

Grammar load_grammar_file(const std::string& path);

} // namespace treeparse
