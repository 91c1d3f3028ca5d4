#include "idiomval/grammar.hpp"

#include <map>

namespace idiomval {

void Grammar::add_rule(std::string lhs, std::vector<Symbol> rhs)
{
    variables_.insert(lhs);
    for (const auto& s : rhs) {
        if (s.is_terminal()) {
            terminals_.insert(s.terminal);
        }
    }
    rules_.push_back(Rule{std::move(lhs), std::move(rhs)});
}

std::string Grammar::embed(const Grammar& other, const std::string& prefix)
{
    for (const auto& v : other.variables()) {
        variables_.insert(prefix + v);
    }
    for (Terminal t : other.terminals()) {
        terminals_.insert(t);
    }
    for (const auto& r : other.rules()) {
        std::vector<Symbol> rhs;
        rhs.reserve(r.rhs.size());
        for (const auto& s : r.rhs) {
            rhs.push_back(s.is_variable() ? Symbol::var(prefix + s.variable) : s);
        }
        rules_.push_back(Rule{prefix + r.lhs, std::move(rhs)});
    }
    return prefix + other.start();
}

std::vector<GrammarDiagnostic> grammar_validate(const Grammar& g)
{
    std::vector<GrammarDiagnostic> out;
    using Kind = GrammarDiagnostic::Kind;

    if (!g.variables().contains(g.start())) {
        out.push_back({Kind::start_not_declared, "start variable '" + g.start() + "' is not declared"});
    }

    bool any_terminal_ref = false;
    std::map<std::string, bool> reported;
    for (std::size_t i = 0; i < g.rules().size(); ++i) {
        const Rule& r = g.rules()[i];
        if (!g.variables().contains(r.lhs)) {
            out.push_back({Kind::lhs_not_declared,
                "rule " + std::to_string(i + 1) + ": lhs '" + r.lhs + "' is not declared"});
        }
        for (const auto& s : r.rhs) {
            if (s.is_variable()) {
                if (!g.variables().contains(s.variable) && !reported[s.variable]) {
                    reported[s.variable] = true;
                    out.push_back({Kind::unknown_variable, "unknown variable " + s.variable});
                }
            } else {
                any_terminal_ref = true;
                if (!g.terminals().empty() && !g.terminals().contains(s.terminal)) {
                    out.push_back({Kind::unknown_terminal,
                        "rule " + std::to_string(i + 1) + ": terminal " + terminal_to_text(s.terminal) +
                            " is not in the alphabet"});
                }
            }
        }
    }
    if (any_terminal_ref && g.terminals().empty()) {
        out.push_back({Kind::empty_alphabet, "rules reference terminals but the alphabet is empty"});
    }
    return out;
}

std::size_t grammar_size(const Grammar& g)
{
    std::size_t size = 0;
    for (const auto& r : g.rules()) {
        size += 1 + r.rhs.size();
    }
    return size;
}

}  // namespace idiomval
