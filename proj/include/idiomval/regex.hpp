#pragma once

#include "idiomval/terminal.hpp"

#include <bitset>
#include <memory>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace idiomval {

using SymbolClass = std::bitset<terminal_count>;

/// Regular expression syntax tree. Matching is always anchored: a word
/// matches iff the whole word is in the denoted language.
class Regex {
public:
    enum class Kind { epsilon, symbol_class, concat, alternate, star, plus, optional };

    static Regex epsilon();
    static Regex literal(Terminal t);
    static Regex literal(std::string_view bytes);
    static Regex symbols(SymbolClass cls);
    static Regex concat(std::vector<Regex> parts);
    static Regex alternate(std::vector<Regex> options);
    static Regex star(Regex inner);
    static Regex plus(Regex inner);
    static Regex optional(Regex inner);

    Kind kind() const { return kind_; }
    const SymbolClass& symbol_class() const { return cls_; }
    const std::vector<Regex>& children() const { return children_; }

private:
    Kind kind_ = Kind::epsilon;
    SymbolClass cls_;
    std::vector<Regex> children_;
};

class RegexSyntaxError : public std::runtime_error {
public:
    RegexSyntaxError(std::size_t offset, const std::string& what);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Parses the byte-oriented pattern syntax:
///   literals, `.` (any byte), `[a-z]`, `[^...]`, `|`, `(...)`, `*`, `+`, `?`,
///   `{m}`, `{m,}`, `{m,n}`, escapes `\r \n \t \xHH` and `\` + punctuation.
/// A leading `(?i)` makes ASCII letters case-insensitive.
Regex parse_regex(std::string_view pattern);

/// Thompson NFA simulated one state set per input symbol: O(|w| * |NFA|),
/// no backtracking. Immutable and safe to share across threads.
class RegexMatcher {
public:
    explicit RegexMatcher(const Regex& r);

    bool matches(WordView w) const;
    std::size_t state_count() const;

    struct Program;

private:
    std::shared_ptr<const Program> program_;
};

bool regex_match(const Regex& r, WordView w);

}  // namespace idiomval
