#pragma once

#include "idiomval/terminal.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idiomval {

/// One right-hand-side symbol: either a terminal or a variable name.
struct Symbol {
    enum class Kind { terminal, variable };

    Kind kind = Kind::terminal;
    Terminal terminal{};
    std::string variable;

    static Symbol term(Terminal t) { return Symbol{Kind::terminal, t, {}}; }
    static Symbol var(std::string name) { return Symbol{Kind::variable, {}, std::move(name)}; }

    bool is_terminal() const { return kind == Kind::terminal; }
    bool is_variable() const { return kind == Kind::variable; }

    bool operator==(const Symbol&) const = default;
};

struct Rule {
    std::string lhs;
    std::vector<Symbol> rhs;

    bool operator==(const Rule&) const = default;
};

/// A context-free grammar (V, Σ, S, R). Rules keep insertion order, which is
/// also the order used when printing.
class Grammar {
public:
    Grammar() = default;
    explicit Grammar(std::string start) : start_(std::move(start)) { variables_.insert(start_); }

    void set_start(std::string start) { start_ = std::move(start); }
    void declare_variable(const std::string& v) { variables_.insert(v); }
    void declare_terminal(Terminal t) { terminals_.insert(t); }

    /// Appends a rule. The lhs and every terminal of the rhs are declared;
    /// rhs variables must be declared separately (or be some rule's lhs).
    void add_rule(std::string lhs, std::vector<Symbol> rhs);

    /// Appends all rules of `other`, renaming each of its variables v to
    /// prefix + v. Returns the renamed start variable.
    std::string embed(const Grammar& other, const std::string& prefix);

    const std::string& start() const { return start_; }
    const std::set<std::string>& variables() const { return variables_; }
    const std::set<Terminal>& terminals() const { return terminals_; }
    const std::vector<Rule>& rules() const { return rules_; }
    std::size_t rule_count() const { return rules_.size(); }

    bool operator==(const Grammar&) const = default;

private:
    std::string start_;
    std::set<std::string> variables_;
    std::set<Terminal> terminals_;
    std::vector<Rule> rules_;
};

struct GrammarDiagnostic {
    enum class Kind {
        unknown_variable,
        unknown_terminal,
        start_not_declared,
        lhs_not_declared,
        empty_alphabet,
    };

    Kind kind;
    std::string message;
};

/// One diagnostic per violated invariant; empty iff the grammar is well formed.
std::vector<GrammarDiagnostic> grammar_validate(const Grammar& g);

/// Sum over rules of 1 + |rhs|.
std::size_t grammar_size(const Grammar& g);

class GrammarError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text format, one rule per line:
//
//   # comment
//   %start S
//   %terminal 'x' <sharp>
//   %alphabet bytes
//   S -> 'a' X
//   X ->
//
// `%alphabet bytes` declares all 256 byte terminals.

/// Parses grammar text. Throws GrammarError with a line number on syntax errors.
/// Semantic problems (undeclared variables) are left to grammar_validate.
Grammar parse_grammar_text(std::string_view text);

std::string grammar_to_text(const Grammar& g);

/// Formats a terminal the way the text format writes it: 'c', '\x0d', <sharp>.
std::string terminal_to_text(Terminal t);

}  // namespace idiomval
