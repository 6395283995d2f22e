#pragma once

#include "treeparse/term.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace treeparse {

struct Literal {
    std::string pred;
    std::vector<TermPtr> args;
};

/// One body position of a clause: a terminal `[Word]` consuming one input
/// token, a nonterminal call, or a curly-brace side constraint over the
/// grammar (rule/3 or word/2 only).
struct BodyItem {
    enum class Kind { Terminal, Call, Constraint };
    Kind kind;
    TermPtr term; // Terminal
    Literal lit;  // Call / Constraint

    static BodyItem terminal(TermPtr t) {
        return {Kind::Terminal, std::move(t), {}};
    }
    static BodyItem call(Literal l) {
        return {Kind::Call, nullptr, std::move(l)};
    }
    static BodyItem constraint(Literal l) {
        return {Kind::Constraint, nullptr, std::move(l)};
    }
};

/// Horn-style clause with string threading left implicit; variables are
/// clause-local.
struct Clause {
    Literal head;
    std::vector<BodyItem> body;
};

struct Program {
    std::vector<Clause> clauses;
    std::string main;
};

struct TransformError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class BuiltinProgram {
    NaiveTd,
    NaiveBu,
    NaiveLc,
    EgnfBu,
    EgnfBuImproved,
    EgnfLcImproved
};

/// The parser listings transcribed clause for clause.
Program builtin_program(BuiltinProgram which);
std::optional<BuiltinProgram> builtin_from_name(const std::string& name);

/// Left-recursion removal for the single-predicate parser shape: one
/// predicate of arity one with at least one non-left-recursive clause and
/// at least one immediately-left-recursive clause (first body item a
/// self-call whose argument is a variable occurring in the head argument).
///
/// Follows the classic A -> beta | beta B, B -> alpha | alpha B
/// construction with argument threading: the auxiliary predicate `b`
/// carries (accumulated result, final result); the left-recursive clause's
/// head argument becomes the accumulation step, and constraint goals keep
/// their positions relative to their neighbors. Inputs outside this shape
/// are rejected with a diagnostic naming the offending clause.
Program egnf_transform(const Program& p);

/// Factors the optional continuation of a freshly transformed program into
/// the auxiliary predicate itself: adds the unit clause b(Node,Node) --> []
/// and drops the continuation-free duplicate of each clause pair. Rejects
/// programs that are not a direct transform output (so applying it twice
/// fails).
Program improve(const Program& p);

/// Clause-wise canonical variable numbering (head first, then body items
/// left to right).
Clause canonicalize_clause(const Clause& c);
bool clause_equal(const Clause& a, const Clause& b);

/// Structural program equality: clauses grouped by head predicate compare
/// as ordered lists of canonical clauses, with head/call predicate names
/// matched under a bijective renaming that maps main to main and fixes
/// rule and word. `pred_map`, when given, pins the renaming instead of
/// deriving it positionally.
bool program_equal(const Program& p, const Program& q);
bool program_equal(const Program& p, const Program& q,
                   const std::map<std::string, std::string>& pred_map);

/// True iff no call cycle can be traversed without crossing a terminal,
/// i.e. depth-first execution always consumes input on the way around any
/// loop.
bool left_recursion_free(const Program& p);

/// Surface notation: head --> body with [Word] terminals and {...}
/// constraints, one clause per paragraph.
std::string pretty_clause(const Clause& c);
std::string pretty_program(const Program& p);
/// Same layout with canonical variable numbering throughout.
std::string pretty_program_canonical(const Program& p);

} // namespace treeparse
