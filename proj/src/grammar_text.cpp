#include "idiomval/grammar.hpp"

#include <cctype>
#include <cstdio>
#include <optional>

namespace idiomval {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool is_ident_char(char c)
{
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

int hex_value(char c)
{
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    if (c >= 'A' && c <= 'F') {
        return c - 'A' + 10;
    }
    return -1;
}

class LineLexer {
public:
    LineLexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) {}

    [[noreturn]] void fail(const std::string& what) const
    {
        throw GrammarError("line " + std::to_string(line_no_) + ": " + what);
    }

    void skip_space()
    {
        while (pos_ < line_.size() && (line_[pos_] == ' ' || line_[pos_] == '\t' || line_[pos_] == '\r')) {
            ++pos_;
        }
    }

    bool done()
    {
        skip_space();
        return pos_ >= line_.size();
    }

    char peek() const { return line_[pos_]; }

    bool consume(std::string_view lit)
    {
        skip_space();
        if (line_.substr(pos_).starts_with(lit)) {
            pos_ += lit.size();
            return true;
        }
        return false;
    }

    std::string identifier()
    {
        skip_space();
        if (pos_ >= line_.size() || !is_ident_start(line_[pos_])) {
            fail("expected identifier");
        }
        std::size_t begin = pos_;
        while (pos_ < line_.size() && is_ident_char(line_[pos_])) {
            ++pos_;
        }
        return std::string(line_.substr(begin, pos_ - begin));
    }

    // Reads 'c', '\xHH', '\r', '\n', '\t', '\\', '\'' or <name>.
    Terminal terminal()
    {
        skip_space();
        if (pos_ < line_.size() && line_[pos_] == '<') {
            auto close = line_.find('>', pos_);
            Terminal t;
            if (close == std::string_view::npos ||
                !abstract_from_name(line_.substr(pos_ + 1, close - pos_ - 1), t)) {
                fail("unknown abstract symbol");
            }
            pos_ = close + 1;
            return t;
        }
        if (pos_ >= line_.size() || line_[pos_] != '\'') {
            fail("expected terminal");
        }
        ++pos_;
        if (pos_ >= line_.size()) {
            fail("unterminated terminal");
        }
        unsigned char value = 0;
        if (line_[pos_] == '\\') {
            ++pos_;
            if (pos_ >= line_.size()) {
                fail("unterminated escape");
            }
            char e = line_[pos_++];
            switch (e) {
            case 'r':
                value = '\r';
                break;
            case 'n':
                value = '\n';
                break;
            case 't':
                value = '\t';
                break;
            case '\\':
                value = '\\';
                break;
            case '\'':
                value = '\'';
                break;
            case 'x': {
                if (pos_ + 2 > line_.size() || hex_value(line_[pos_]) < 0 || hex_value(line_[pos_ + 1]) < 0) {
                    fail("bad \\x escape");
                }
                value = static_cast<unsigned char>(hex_value(line_[pos_]) * 16 + hex_value(line_[pos_ + 1]));
                pos_ += 2;
                break;
            }
            default:
                fail(std::string("unknown escape \\") + e);
            }
        } else {
            value = static_cast<unsigned char>(line_[pos_++]);
        }
        if (pos_ >= line_.size() || line_[pos_] != '\'') {
            fail("expected closing quote");
        }
        ++pos_;
        return Terminal::byte(value);
    }

    Symbol symbol()
    {
        skip_space();
        char c = peek();
        if (c == '\'' || c == '<') {
            return Symbol::term(terminal());
        }
        return Symbol::var(identifier());
    }

private:
    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

}  // namespace

Grammar parse_grammar_text(std::string_view text)
{
    Grammar g;
    std::optional<std::string> start;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        LineLexer lex(line, line_no);
        if (lex.done() || lex.peek() == '#') {
            if (eol == text.size()) {
                break;
            }
            continue;
        }
        if (lex.consume("%start")) {
            start = lex.identifier();
            if (!lex.done()) {
                lex.fail("trailing input after %start");
            }
        } else if (lex.consume("%terminal")) {
            while (!lex.done()) {
                g.declare_terminal(lex.terminal());
            }
        } else if (lex.consume("%alphabet")) {
            std::string kind = lex.identifier();
            if (kind != "bytes" || !lex.done()) {
                lex.fail("only '%alphabet bytes' is supported");
            }
            for (int b = 0; b < 256; ++b) {
                g.declare_terminal(Terminal::byte(static_cast<std::uint8_t>(b)));
            }
        } else if (lex.peek() == '%') {
            lex.fail("unknown directive");
        } else {
            std::string lhs = lex.identifier();
            if (!lex.consume("->")) {
                lex.fail("expected '->'");
            }
            std::vector<Symbol> rhs;
            while (!lex.done()) {
                rhs.push_back(lex.symbol());
            }
            if (!start) {
                start = lhs;
            }
            g.add_rule(std::move(lhs), std::move(rhs));
        }
        if (eol == text.size()) {
            break;
        }
    }
    if (!start) {
        throw GrammarError("grammar has no rules and no %start");
    }
    g.set_start(*start);
    return g;
}

std::string terminal_to_text(Terminal t)
{
    if (!t.is_byte()) {
        return "<" + std::string(abstract_name(t)) + ">";
    }
    char c = static_cast<char>(t.code);
    if (t.code >= 0x21 && t.code <= 0x7e && c != '\'' && c != '\\') {
        return std::string("'") + c + "'";
    }
    char buf[8];
    std::snprintf(buf, sizeof buf, "'\\x%02x'", t.code);
    return buf;
}

std::string grammar_to_text(const Grammar& g)
{
    std::string out = "%start " + g.start() + "\n";

    std::set<Terminal> used;
    for (const auto& r : g.rules()) {
        for (const auto& s : r.rhs) {
            if (s.is_terminal()) {
                used.insert(s.terminal);
            }
        }
    }
    bool all_bytes = true;
    for (int b = 0; b < 256 && all_bytes; ++b) {
        all_bytes = g.terminals().contains(Terminal::byte(static_cast<std::uint8_t>(b)));
    }
    if (all_bytes) {
        out += "%alphabet bytes\n";
    }
    std::string extra;
    for (Terminal t : g.terminals()) {
        if (!used.contains(t) && !(all_bytes && t.is_byte())) {
            extra += " " + terminal_to_text(t);
        }
    }
    if (!extra.empty()) {
        out += "%terminal" + extra + "\n";
    }

    for (const auto& r : g.rules()) {
        out += r.lhs + " ->";
        for (const auto& s : r.rhs) {
            out += ' ';
            out += s.is_terminal() ? terminal_to_text(s.terminal) : s.variable;
        }
        out += '\n';
    }
    return out;
}

}  // namespace idiomval
