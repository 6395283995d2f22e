#include "treeparse/io.hpp"

#include "treeparse/subst.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace treeparse {

namespace {

struct Reader {
    std::string_view text;
    std::size_t pos = 0;
    VarContext& ctx;
    VarScope& scope;

    void skip_ws() {
        while (pos < text.size() &&
               std::isspace(static_cast<unsigned char>(text[pos])))
            ++pos;
    }

    [[noreturn]] void fail(const std::string& msg) {
        std::ostringstream os;
        os << "syntax error at offset " << pos << ": " << msg;
        throw SyntaxError(os.str(), pos);
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    std::string read_ident() {
        skip_ws();
        if (pos >= text.size() || !ident_start(text[pos]))
            fail("expected identifier");
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos]))
            ++pos;
        return std::string(text.substr(start, pos - start));
    }

    TermPtr term() {
        skip_ws();
        if (pos >= text.size())
            fail("expected term");
        std::string name = read_ident();
        bool is_variable = std::isupper(static_cast<unsigned char>(name[0])) ||
                           name[0] == '_';
        if (is_variable) {
            auto it = scope.find(name);
            if (it == scope.end())
                it = scope.emplace(name, ctx.fresh(name)).first;
            return it->second;
        }
        skip_ws();
        if (pos < text.size() && text[pos] == '(') {
            ++pos;
            std::vector<TermPtr> args;
            args.push_back(term());
            skip_ws();
            while (pos < text.size() && text[pos] == ',') {
                ++pos;
                args.push_back(term());
                skip_ws();
            }
            if (pos >= text.size() || text[pos] != ')')
                fail("expected ',' or ')'");
            ++pos;
            return Term::compound(std::move(name), std::move(args));
        }
        return Term::atom(std::move(name));
    }

    TermPtr whole_term() {
        TermPtr t = term();
        skip_ws();
        if (pos != text.size())
            fail("trailing input after term");
        return t;
    }
};

} // namespace

TermPtr read_term(std::string_view text, VarContext& ctx, VarScope& scope) {
    Reader r{text, 0, ctx, scope};
    return r.whole_term();
}

TermPtr read_term(std::string_view text) {
    VarContext ctx;
    VarScope scope;
    return read_term(text, ctx, scope);
}

namespace {

std::string letter_code(VarId id) {
    std::string out(1, static_cast<char>('A' + id % 26));
    if (id >= 26)
        out += std::to_string(id / 26);
    return out;
}

void print_into(const TermPtr& t, PrintStyle style, VarNamer* names,
                std::string& out) {
    if (t->is_var()) {
        if (style == PrintStyle::Canonical || !names)
            out += letter_code(t->var_id());
        else
            out += names->name_for(t->var_id(), t->var_hint());
        return;
    }
    out += t->functor();
    if (!t->args().empty()) {
        out += '(';
        bool first = true;
        for (const auto& a : t->args()) {
            if (!first)
                out += ',';
            first = false;
            print_into(a, style, names, out);
        }
        out += ')';
    }
}

} // namespace

const std::string& VarNamer::name_for(VarId id, const std::string& hint) {
    auto it = by_id_.find(id);
    if (it != by_id_.end())
        return it->second;
    std::string want = hint.empty() ? letter_code(id) : hint;
    std::string candidate = want;
    int suffix = 2;
    while (std::find(used_.begin(), used_.end(), candidate) != used_.end())
        candidate = want + std::to_string(suffix++);
    used_.push_back(candidate);
    return by_id_.emplace(id, std::move(candidate)).first->second;
}

std::string print_term(const TermPtr& t, PrintStyle style) {
    VarNamer names;
    std::string out;
    print_into(t, style, &names, out);
    return out;
}

std::string print_term(const TermPtr& t, VarNamer& namer) {
    std::string out;
    print_into(t, PrintStyle::Display, &namer, out);
    return out;
}

std::string canonical_text(const TermPtr& t) {
    return print_term(treeparse::canonicalize(t), PrintStyle::Canonical);
}

namespace {

struct RawFact {
    std::string text;
    std::size_t line; // 1-based line where the fact starts
};

// Splits the input into period-terminated fact texts, dropping % comments.
std::vector<RawFact> split_facts(std::string_view text) {
    std::vector<RawFact> out;
    std::string cur;
    std::size_t line = 1;
    std::size_t fact_line = 1;
    bool in_comment = false;
    bool cur_has_content = false;
    for (char c : text) {
        if (c == '\n') {
            ++line;
            in_comment = false;
            continue;
        }
        if (in_comment)
            continue;
        if (c == '%') {
            in_comment = true;
            continue;
        }
        if (c == '.') {
            out.push_back({cur, fact_line});
            cur.clear();
            cur_has_content = false;
            continue;
        }
        if (!cur_has_content && !std::isspace(static_cast<unsigned char>(c))) {
            cur_has_content = true;
            fact_line = line;
        }
        cur += c;
    }
    // Anything left over never saw its terminating period.
    bool trailing = false;
    for (char c : cur)
        if (!std::isspace(static_cast<unsigned char>(c)))
            trailing = true;
    if (trailing)
        throw LoadError("fact is missing its terminating '.'", fact_line);
    return out;
}

} // namespace

Grammar load_grammar(std::string_view text) {
    Grammar g;
    VarContext ctx; // one context => fact variable ranges are disjoint
    for (const RawFact& raw : split_facts(text)) {
        TermPtr t;
        try {
            VarScope scope; // variable scope is per fact
            t = read_term(raw.text, ctx, scope);
        } catch (const SyntaxError& e) {
            throw LoadError(std::string("line ") + std::to_string(raw.line) +
                                ": " + e.what(),
                            raw.line);
        }
        if (t->is_var())
            throw LoadError("line " + std::to_string(raw.line) +
                                ": fact cannot be a variable",
                            raw.line);
        if (t->functor() == "rule" && t->arity() == 3) {
            g.rules.push_back({t->args()[0], t->args()[1], t->args()[2]});
        } else if (t->functor() == "word" && t->arity() == 2) {
            const TermPtr& w = t->args()[1];
            if (!w->is_atom())
                throw LoadError("line " + std::to_string(raw.line) +
                                    ": word fact's second argument must be "
                                    "an atom",
                                raw.line);
            g.lexicon.push_back({t->args()[0], w->functor()});
        } else {
            throw LoadError("line " + std::to_string(raw.line) +
                                ": expected rule/3 or word/2 fact, got " +
                                t->functor() + "/" +
                                std::to_string(t->arity()),
                            raw.line);
        }
    }
    return g;
}

Grammar load_grammar_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open grammar file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_grammar(buf.str());
}

} // namespace treeparse
