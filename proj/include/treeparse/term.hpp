#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace treeparse {

using VarId = std::int64_t;

class Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable first-order term: a logic variable or a functor applied to
/// argument terms. An atom is a compound with zero arguments.
class Term {
public:
    static TermPtr var(VarId id, std::string hint = {});
    static TermPtr compound(std::string functor, std::vector<TermPtr> args = {});
    static TermPtr atom(std::string name) { return compound(std::move(name)); }

    bool is_var() const { return var_ >= 0; }
    bool is_compound() const { return var_ < 0; }
    bool is_atom() const { return is_compound() && args_.empty(); }

    VarId var_id() const { return var_; }
    /// Source-level display name, if any. Never part of term identity.
    const std::string& var_hint() const { return name_; }

    const std::string& functor() const { return name_; }
    const std::vector<TermPtr>& args() const { return args_; }
    std::size_t arity() const { return args_.size(); }

private:
    Term(VarId v, std::string name, std::vector<TermPtr> args);

    VarId var_;                // -1 for compounds
    std::string name_;         // functor, or variable display hint
    std::vector<TermPtr> args_;
};

/// Structural equality; variables compare by id, hints are ignored.
bool term_eq(const TermPtr& a, const TermPtr& b);

/// Total order: variables (by id) before compounds; compounds by functor,
/// arity, then arguments left to right.
int term_cmp(const TermPtr& a, const TermPtr& b);

bool occurs_in(VarId v, const TermPtr& t);

/// Appends each distinct variable id in first-occurrence, depth-first,
/// left-to-right order.
void collect_vars(const TermPtr& t, std::vector<VarId>& order);

struct TermPtrLess {
    bool operator()(const TermPtr& a, const TermPtr& b) const {
        return term_cmp(a, b) < 0;
    }
};

/// Monotone fresh-variable source. Passed explicitly wherever new variables
/// are introduced; there is no global counter.
class VarContext {
public:
    VarId fresh_id() { return next_++; }
    TermPtr fresh(std::string hint = {}) {
        return Term::var(fresh_id(), std::move(hint));
    }
    VarId next() const { return next_; }
    /// Advances the counter past every variable occurring in `t`.
    void absorb(const TermPtr& t);

private:
    VarId next_ = 0;
};

} // namespace treeparse
