#include "idiomval/regex.hpp"

#include <cctype>

namespace idiomval {

Regex Regex::epsilon() { return Regex{}; }

Regex Regex::literal(Terminal t)
{
    Regex r;
    r.kind_ = Kind::symbol_class;
    r.cls_.set(t.code);
    return r;
}

Regex Regex::literal(std::string_view bytes)
{
    std::vector<Regex> parts;
    for (unsigned char c : bytes) {
        parts.push_back(literal(Terminal::byte(c)));
    }
    return concat(std::move(parts));
}

Regex Regex::symbols(SymbolClass cls)
{
    Regex r;
    r.kind_ = Kind::symbol_class;
    r.cls_ = cls;
    return r;
}

Regex Regex::concat(std::vector<Regex> parts)
{
    if (parts.empty()) {
        return epsilon();
    }
    if (parts.size() == 1) {
        return std::move(parts.front());
    }
    Regex r;
    r.kind_ = Kind::concat;
    r.children_ = std::move(parts);
    return r;
}

Regex Regex::alternate(std::vector<Regex> options)
{
    if (options.size() == 1) {
        return std::move(options.front());
    }
    Regex r;
    r.kind_ = Kind::alternate;
    r.children_ = std::move(options);
    return r;
}

Regex Regex::star(Regex inner)
{
    Regex r;
    r.kind_ = Kind::star;
    r.children_.push_back(std::move(inner));
    return r;
}

Regex Regex::plus(Regex inner)
{
    Regex r;
    r.kind_ = Kind::plus;
    r.children_.push_back(std::move(inner));
    return r;
}

Regex Regex::optional(Regex inner)
{
    Regex r;
    r.kind_ = Kind::optional;
    r.children_.push_back(std::move(inner));
    return r;
}

RegexSyntaxError::RegexSyntaxError(std::size_t offset, const std::string& what)
    : std::runtime_error("regex syntax error at offset " + std::to_string(offset) + ": " + what), offset_(offset)
{
}

namespace {

int hex_digit(char c)
{
    if (c >= '0' && c <= '9') {
        return c - '0';
    }
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (c >= 'a' && c <= 'f') {
        return c - 'a' + 10;
    }
    return -1;
}

class RegexParser {
public:
    explicit RegexParser(std::string_view p) : p_(p)
    {
        if (p_.starts_with("(?i)")) {
            icase_ = true;
            pos_ = 4;
        }
    }

    Regex parse()
    {
        Regex r = alternation();
        if (pos_ != p_.size()) {
            fail("unexpected ')'");
        }
        return r;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw RegexSyntaxError(pos_, what); }

    bool at_end() const { return pos_ >= p_.size(); }

    Regex alternation()
    {
        std::vector<Regex> options;
        options.push_back(sequence());
        while (!at_end() && p_[pos_] == '|') {
            ++pos_;
            options.push_back(sequence());
        }
        return Regex::alternate(std::move(options));
    }

    Regex sequence()
    {
        std::vector<Regex> parts;
        while (!at_end() && p_[pos_] != '|' && p_[pos_] != ')') {
            parts.push_back(repetition());
        }
        return Regex::concat(std::move(parts));
    }

    std::size_t number()
    {
        std::size_t begin = pos_;
        std::size_t value = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(p_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(p_[pos_] - '0');
            if (value > 1000) {
                fail("repetition count too large");
            }
            ++pos_;
        }
        if (pos_ == begin) {
            fail("expected repetition count");
        }
        return value;
    }

    Regex repetition()
    {
        Regex r = atom();
        while (!at_end()) {
            char c = p_[pos_];
            if (c == '*') {
                ++pos_;
                r = Regex::star(std::move(r));
            } else if (c == '+') {
                ++pos_;
                r = Regex::plus(std::move(r));
            } else if (c == '?') {
                ++pos_;
                r = Regex::optional(std::move(r));
            } else if (c == '{') {
                ++pos_;
                std::size_t lo = number();
                std::size_t hi = lo;
                bool unbounded = false;
                if (!at_end() && p_[pos_] == ',') {
                    ++pos_;
                    if (!at_end() && p_[pos_] != '}') {
                        hi = number();
                    } else {
                        unbounded = true;
                    }
                }
                if (at_end() || p_[pos_] != '}') {
                    fail("expected '}'");
                }
                ++pos_;
                if (!unbounded && hi < lo) {
                    fail("bad repetition range");
                }
                std::vector<Regex> parts(lo, r);
                if (unbounded) {
                    parts.push_back(Regex::star(r));
                } else {
                    for (std::size_t i = lo; i < hi; ++i) {
                        parts.push_back(Regex::optional(r));
                    }
                }
                r = Regex::concat(std::move(parts));
            } else {
                break;
            }
        }
        return r;
    }

    unsigned char escape()
    {
        // p_[pos_-1] was the backslash
        if (at_end()) {
            fail("dangling backslash");
        }
        char c = p_[pos_++];
        switch (c) {
        case 'r':
            return '\r';
        case 'n':
            return '\n';
        case 't':
            return '\t';
        case 'x': {
            if (pos_ + 2 > p_.size() || hex_digit(p_[pos_]) < 0 || hex_digit(p_[pos_ + 1]) < 0) {
                fail("bad \\x escape");
            }
            int v = hex_digit(p_[pos_]) * 16 + hex_digit(p_[pos_ + 1]);
            pos_ += 2;
            return static_cast<unsigned char>(v);
        }
        default:
            if (std::isalnum(static_cast<unsigned char>(c))) {
                fail(std::string("unknown escape \\") + c);
            }
            return static_cast<unsigned char>(c);
        }
    }

    void add_byte(SymbolClass& cls, unsigned char c) const
    {
        cls.set(c);
        if (icase_ && std::isalpha(c)) {
            cls.set(static_cast<unsigned char>(std::tolower(c)));
            cls.set(static_cast<unsigned char>(std::toupper(c)));
        }
    }

    Regex atom()
    {
        char c = p_[pos_];
        switch (c) {
        case '(': {
            ++pos_;
            Regex inner = alternation();
            if (at_end() || p_[pos_] != ')') {
                fail("expected ')'");
            }
            ++pos_;
            return inner;
        }
        case '[':
            ++pos_;
            return bracket();
        case '.': {
            ++pos_;
            SymbolClass any;
            for (int b = 0; b < 256; ++b) {
                any.set(static_cast<std::size_t>(b));
            }
            return Regex::symbols(any);
        }
        case '*':
        case '+':
        case '?':
        case '{':
            fail("repetition without operand");
        case '\\': {
            ++pos_;
            SymbolClass cls;
            add_byte(cls, escape());
            return Regex::symbols(cls);
        }
        default: {
            ++pos_;
            SymbolClass cls;
            add_byte(cls, static_cast<unsigned char>(c));
            return Regex::symbols(cls);
        }
        }
    }

    unsigned char class_char()
    {
        if (at_end()) {
            fail("unterminated character class");
        }
        char c = p_[pos_++];
        if (c == '\\') {
            return escape();
        }
        return static_cast<unsigned char>(c);
    }

    Regex bracket()
    {
        bool negate = false;
        if (!at_end() && p_[pos_] == '^') {
            negate = true;
            ++pos_;
        }
        SymbolClass cls;
        bool first = true;
        while (true) {
            if (at_end()) {
                fail("unterminated character class");
            }
            if (p_[pos_] == ']' && !first) {
                ++pos_;
                break;
            }
            first = false;
            unsigned char lo = class_char();
            unsigned char hi = lo;
            if (pos_ + 1 < p_.size() && p_[pos_] == '-' && p_[pos_ + 1] != ']') {
                ++pos_;
                hi = class_char();
                if (hi < lo) {
                    fail("bad class range");
                }
            }
            for (unsigned v = lo; v <= hi; ++v) {
                add_byte(cls, static_cast<unsigned char>(v));
            }
        }
        if (negate) {
            SymbolClass bytes;
            for (int b = 0; b < 256; ++b) {
                bytes.set(static_cast<std::size_t>(b));
            }
            cls = bytes & ~cls;
        }
        return Regex::symbols(cls);
    }

    std::string_view p_;
    std::size_t pos_ = 0;
    bool icase_ = false;
};

}  // namespace

Regex parse_regex(std::string_view pattern) { return RegexParser(pattern).parse(); }

struct RegexMatcher::Program {
    enum class Op { symbols, jump, split, accept };
    struct State {
        Op op;
        int out = -1;
        int out1 = -1;
        int cls = -1;
    };
    std::vector<State> states;
    std::vector<SymbolClass> classes;
    int start = -1;
};

namespace {

using Program = RegexMatcher::Program;

// A partially built NFA fragment: entry state plus unpatched exits,
// each given as (state index, which out slot).
struct Fragment {
    int start;
    std::vector<std::pair<int, int>> exits;
};

class NfaBuilder {
public:
    explicit NfaBuilder(Program& prog) : prog_(prog) {}

    Fragment build(const Regex& r)
    {
        using K = Regex::Kind;
        switch (r.kind()) {
        case K::epsilon: {
            int s = add(Program::Op::jump);
            return {s, {{s, 0}}};
        }
        case K::symbol_class: {
            int s = add(Program::Op::symbols);
            prog_.states[s].cls = static_cast<int>(prog_.classes.size());
            prog_.classes.push_back(r.symbol_class());
            return {s, {{s, 0}}};
        }
        case K::concat: {
            Fragment f = build(r.children().front());
            for (std::size_t i = 1; i < r.children().size(); ++i) {
                Fragment next = build(r.children()[i]);
                patch(f.exits, next.start);
                f.exits = std::move(next.exits);
            }
            return f;
        }
        case K::alternate: {
            if (r.children().empty()) {
                // Empty alternation denotes the empty language: a dead state.
                int s = add(Program::Op::symbols);
                prog_.states[s].cls = static_cast<int>(prog_.classes.size());
                prog_.classes.emplace_back();
                return {s, {{s, 0}}};
            }
            Fragment f = build(r.children().front());
            for (std::size_t i = 1; i < r.children().size(); ++i) {
                Fragment other = build(r.children()[i]);
                int s = add(Program::Op::split);
                prog_.states[s].out = f.start;
                prog_.states[s].out1 = other.start;
                f.start = s;
                f.exits.insert(f.exits.end(), other.exits.begin(), other.exits.end());
            }
            return f;
        }
        case K::star: {
            Fragment inner = build(r.children().front());
            int s = add(Program::Op::split);
            prog_.states[s].out = inner.start;
            patch(inner.exits, s);
            return {s, {{s, 1}}};
        }
        case K::plus: {
            Fragment inner = build(r.children().front());
            int s = add(Program::Op::split);
            prog_.states[s].out = inner.start;
            patch(inner.exits, s);
            return {inner.start, {{s, 1}}};
        }
        case K::optional: {
            Fragment inner = build(r.children().front());
            int s = add(Program::Op::split);
            prog_.states[s].out = inner.start;
            inner.exits.push_back({s, 1});
            return {s, std::move(inner.exits)};
        }
        }
        return {};
    }

    int add(Program::Op op)
    {
        prog_.states.push_back(Program::State{op});
        return static_cast<int>(prog_.states.size() - 1);
    }

    void patch(const std::vector<std::pair<int, int>>& exits, int target)
    {
        for (auto [state, slot] : exits) {
            (slot == 0 ? prog_.states[state].out : prog_.states[state].out1) = target;
        }
    }

private:
    Program& prog_;
};

}  // namespace

RegexMatcher::RegexMatcher(const Regex& r)
{
    auto prog = std::make_shared<Program>();
    NfaBuilder builder(*prog);
    Fragment f = builder.build(r);
    int accept = builder.add(Program::Op::accept);
    builder.patch(f.exits, accept);
    prog->start = f.start;
    program_ = std::move(prog);
}

std::size_t RegexMatcher::state_count() const { return program_->states.size(); }

bool RegexMatcher::matches(WordView w) const
{
    const Program& prog = *program_;
    const std::size_t n_states = prog.states.size();
    std::vector<int> current;
    std::vector<int> next;
    std::vector<std::size_t> mark(n_states, 0);
    std::vector<int> stack;
    std::size_t generation = 0;

    // Adds the epsilon closure of s to list; only symbol/accept states are kept.
    auto add_closure = [&](std::vector<int>& list, int s) {
        stack.push_back(s);
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            if (cur < 0 || mark[cur] == generation) {
                continue;
            }
            mark[cur] = generation;
            const auto& st = prog.states[cur];
            switch (st.op) {
            case Program::Op::jump:
                stack.push_back(st.out);
                break;
            case Program::Op::split:
                stack.push_back(st.out1);
                stack.push_back(st.out);
                break;
            default:
                list.push_back(cur);
            }
        }
    };

    ++generation;
    add_closure(current, prog.start);
    for (Terminal t : w) {
        ++generation;
        next.clear();
        for (int s : current) {
            const auto& st = prog.states[s];
            if (st.op == Program::Op::symbols && prog.classes[st.cls].test(t.code)) {
                add_closure(next, st.out);
            }
        }
        std::swap(current, next);
        if (current.empty()) {
            return false;
        }
    }
    for (int s : current) {
        if (prog.states[s].op == Program::Op::accept) {
            return true;
        }
    }
    return false;
}

bool regex_match(const Regex& r, WordView w) { return RegexMatcher(r).matches(w); }

}  // namespace idiomval
