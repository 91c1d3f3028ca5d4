#include "idiomval/cfg_recognizer.hpp"
#include "idiomval/generators.hpp"
#include "idiomval/regex.hpp"

#include <gtest/gtest.h>

#include <map>
#include <memory>
#include <random>
#include <thread>

using namespace idiomval;

namespace {

Symbol T(char c) { return Symbol::term(Terminal::byte(static_cast<std::uint8_t>(c))); }
Symbol V(const char* name) { return Symbol::var(name); }

Word W(std::string_view text) { return word_from_text(text); }

// Least fixpoint of "A derives w[i..j)" over the raw grammar. Unrelated to
// the chart algorithm under test; fine for short words.
bool fixpoint_derives(const Grammar& g, WordView w)
{
    const std::size_t n = w.size();
    std::map<std::string, std::vector<std::vector<bool>>> table;
    for (const auto& v : g.variables()) {
        table[v].assign(n + 1, std::vector<bool>(n + 1, false));
    }
    auto seq_matches = [&](const std::vector<Symbol>& rhs, std::size_t i, std::size_t j) {
        // reach[k] = prefix of rhs can derive w[i..k)
        std::vector<bool> reach(n + 1, false);
        reach[i] = true;
        for (const auto& s : rhs) {
            std::vector<bool> next(n + 1, false);
            for (std::size_t k = i; k <= j; ++k) {
                if (!reach[k]) {
                    continue;
                }
                if (s.is_terminal()) {
                    if (k < j && w[k] == s.terminal) {
                        next[k + 1] = true;
                    }
                } else {
                    for (std::size_t m = k; m <= j; ++m) {
                        if (table[s.variable][k][m]) {
                            next[m] = true;
                        }
                    }
                }
            }
            reach = std::move(next);
        }
        return static_cast<bool>(reach[j]);
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& r : g.rules()) {
            for (std::size_t i = 0; i <= n; ++i) {
                for (std::size_t j = i; j <= n; ++j) {
                    if (!table[r.lhs][i][j] && seq_matches(r.rhs, i, j)) {
                        table[r.lhs][i][j] = true;
                        changed = true;
                    }
                }
            }
        }
    }
    return table[g.start()][0][n];
}

}  // namespace

TEST(GrammarValidate, MinimalGrammarIsValid)
{
    Grammar g("S");
    g.add_rule("S", {});
    EXPECT_TRUE(grammar_validate(g).empty());
}

TEST(GrammarValidate, UnknownVariable)
{
    Grammar g("S");
    g.add_rule("S", {T('a'), V("X")});
    auto d = grammar_validate(g);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0].kind, GrammarDiagnostic::Kind::unknown_variable);
    EXPECT_NE(d[0].message.find("X"), std::string::npos);
}

TEST(GrammarValidate, StartNotDeclared)
{
    Grammar g;
    g.set_start("S");
    g.declare_variable("A");
    g.add_rule("A", {T('a')});
    auto d = grammar_validate(g);
    ASSERT_FALSE(d.empty());
    EXPECT_EQ(d[0].kind, GrammarDiagnostic::Kind::start_not_declared);
}

TEST(GrammarValidate, GeneratedLengthGrammarIsValid)
{
    LenParams p;
    p.width = 3;
    p.body_alphabet = alphabet_from_chars("abc");
    EXPECT_TRUE(grammar_validate(gen_len(p)).empty());
}

TEST(GrammarSize, Examples)
{
    Grammar eps("S");
    eps.add_rule("S", {});
    EXPECT_EQ(grammar_size(eps), 1u);

    Grammar g("S");
    g.add_rule("S", {T('a'), T('b')});
    g.add_rule("S", {V("S"), V("S")});
    EXPECT_EQ(grammar_size(g), 6u);
}

TEST(GrammarText, RoundTrip)
{
    const char* text =
        "# comment\n"
        "%start S\n"
        "S -> 'a' S 'b'\n"
        "S ->\n"
        "S -> <sharp> '\\x0d' '\\n'\n";
    Grammar g = parse_grammar_text(text);
    EXPECT_EQ(g.start(), "S");
    EXPECT_EQ(g.rule_count(), 3u);
    EXPECT_TRUE(g.rules()[1].rhs.empty());
    EXPECT_EQ(g.rules()[2].rhs[0].terminal, Terminal::sharp());
    EXPECT_EQ(g.rules()[2].rhs[1].terminal, Terminal::byte('\r'));
    EXPECT_EQ(parse_grammar_text(grammar_to_text(g)), g);
}

TEST(GrammarText, FirstRuleGivesStart)
{
    Grammar g = parse_grammar_text("A -> B\nB -> 'x'\n");
    EXPECT_EQ(g.start(), "A");
    EXPECT_TRUE(cfg_membership(g, W("x")));
}

TEST(GrammarText, ByteAlphabetDirective)
{
    Grammar g = parse_grammar_text("%alphabet bytes\nS -> 'a'\n");
    EXPECT_EQ(g.terminals().size(), 256u);
    EXPECT_EQ(parse_grammar_text(grammar_to_text(g)), g);
}

TEST(GrammarText, SyntaxErrorsNameTheLine)
{
    try {
        parse_grammar_text("S -> 'a'\nS 'b'\n");
        FAIL() << "expected GrammarError";
    } catch (const GrammarError& e) {
        EXPECT_NE(std::string(e.what()).find("2"), std::string::npos);
    }
    EXPECT_THROW(parse_grammar_text("S -> 'a\n"), GrammarError);
}

TEST(CfgMembership, EpsilonAcceptance)
{
    Grammar g("S");
    g.add_rule("S", {});
    EXPECT_TRUE(cfg_membership(g, {}));
}

TEST(CfgMembership, WorkedLengthExample)
{
    LenParams p;
    p.width = 3;
    p.body_alphabet = alphabet_from_chars("abc");
    EXPECT_TRUE(cfg_membership(gen_len(p), W("110abc")));
}

TEST(CfgMembership, WrongBodyLengthRejected)
{
    LenParams p;
    p.width = 2;
    p.body_alphabet = alphabet_from_chars("a");
    // 01 read least significant digit first is 2
    EXPECT_FALSE(cfg_membership(gen_len(p), W("01a")));
    EXPECT_TRUE(cfg_membership(gen_len(p), W("01aa")));
}

TEST(CfgMembership, OutOfAlphabetSymbolThrows)
{
    Grammar g("S");
    g.add_rule("S", {T('a')});
    try {
        cfg_membership(g, W("ab"));
        FAIL() << "expected AlphabetError";
    } catch (const AlphabetError& e) {
        EXPECT_EQ(e.offset(), 1u);
        EXPECT_EQ(e.symbol(), Terminal::byte('b'));
    }
}

TEST(CfgMembership, InvalidGrammarRejectedAtCompile)
{
    Grammar g("S");
    g.add_rule("S", {V("Missing")});
    EXPECT_THROW(CfgRecognizer{g}, GrammarError);
}

TEST(CfgMembership, AmbiguousEpsilonAndUnitCycles)
{
    Grammar g("S");
    g.add_rule("S", {V("S"), V("S")});
    g.add_rule("S", {V("A")});
    g.add_rule("S", {});
    g.add_rule("A", {V("S")});
    g.add_rule("A", {T('a')});
    CfgRecognizer r(g);
    for (std::size_t n = 0; n < 12; ++n) {
        EXPECT_TRUE(r.accepts(Word(n, Terminal::byte('a'))));
    }
}

TEST(CfgMembership, BalancedParentheses)
{
    Grammar g("S");
    g.add_rule("S", {});
    g.add_rule("S", {T('('), V("S"), T(')'), V("S")});
    CfgRecognizer r(g);
    EXPECT_TRUE(r.accepts(W("(()())()")));
    EXPECT_FALSE(r.accepts(W("(()")));
    EXPECT_FALSE(r.accepts(W("())(")));
}

TEST(CfgMembership, ViablePrefixReportsFirstBadOffset)
{
    Grammar g("S");
    g.add_rule("S", {T('a'), T('b'), T('c')});
    CfgRecognizer r(g);
    EXPECT_EQ(r.recognize(W("aba")).viable_prefix, 2u);
    EXPECT_EQ(r.recognize(W("ab")).viable_prefix, 2u);
    EXPECT_FALSE(r.recognize(W("ab")).accepted);
    EXPECT_EQ(r.recognize(W("abc")).viable_prefix, 3u);
}

TEST(CfgMembership, AgreesWithFixpointOracleOnRandomGrammars)
{
    std::mt19937 rng(7);
    const char* vars[] = {"S", "A", "B", "C"};
    std::size_t compared = 0;
    for (int round = 0; round < 150; ++round) {
        Grammar g("S");
        for (const char* v : vars) {
            g.declare_variable(v);
        }
        g.declare_terminal(Terminal::byte('a'));
        g.declare_terminal(Terminal::byte('b'));
        int rules = 2 + static_cast<int>(rng() % 7);
        for (int k = 0; k < rules; ++k) {
            std::vector<Symbol> rhs;
            int len = static_cast<int>(rng() % 4);
            for (int s = 0; s < len; ++s) {
                if (rng() % 2) {
                    rhs.push_back(V(vars[rng() % 4]));
                } else {
                    rhs.push_back(T(rng() % 2 ? 'a' : 'b'));
                }
            }
            g.add_rule(vars[rng() % 4], std::move(rhs));
        }
        CfgRecognizer r(g);
        for (std::size_t len = 0; len <= 6; ++len) {
            for (std::size_t bits = 0; bits < (1u << len); ++bits) {
                Word w;
                for (std::size_t i = 0; i < len; ++i) {
                    w.push_back(Terminal::byte((bits >> i) & 1 ? 'b' : 'a'));
                }
                ASSERT_EQ(r.accepts(w), fixpoint_derives(g, w))
                    << grammar_to_text(g) << "word: " << word_to_text(w);
                ++compared;
            }
        }
    }
    EXPECT_GT(compared, 10000u);
}

TEST(CfgMembership, DeterministicAndShareableAcrossThreads)
{
    LenParams p;
    p.width = 4;
    p.base = 3;
    p.body_alphabet = alphabet_from_chars("ab");
    CfgRecognizer r(gen_len(p));
    Word yes = W("2000ab");
    Word no = W("2000abb");
    std::vector<std::thread> workers;
    std::vector<int> bad(4, 0);
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&, t] {
            for (int k = 0; k < 200; ++k) {
                if (!r.accepts(yes) || r.accepts(no)) {
                    ++bad[t];
                }
            }
        });
    }
    for (auto& w : workers) {
        w.join();
    }
    for (int b : bad) {
        EXPECT_EQ(b, 0);
    }
}

TEST(IntersectMembership, EmptyIntersectionIsUniversal)
{
    EXPECT_TRUE(intersect_membership(std::span<const Grammar>{}, W("anything")));
}

TEST(IntersectMembership, EqualityComponents)
{
    auto sigma = alphabet_from_chars("ab");
    std::vector<Grammar> gs{gen_eq_component(2, 1, sigma), gen_eq_component(2, 2, sigma)};
    EXPECT_TRUE(intersect_membership(gs, W("abab")));
    EXPECT_FALSE(intersect_membership(gs, W("abaa")));
}

// --- regular expressions ---

TEST(Regex, Examples)
{
    EXPECT_TRUE(regex_match(parse_regex("a*"), {}));
    EXPECT_TRUE(regex_match(parse_regex("Host:"), W("Host:")));
    EXPECT_FALSE(regex_match(parse_regex("(0|1)+"), W("102")));
    EXPECT_TRUE(regex_match(parse_regex("(0|1)+"), W("1011")));
}

TEST(Regex, AnchoredFullMatch)
{
    EXPECT_FALSE(regex_match(parse_regex("Host:"), W("XHost:")));
    EXPECT_FALSE(regex_match(parse_regex("Host:"), W("Host: a")));
    EXPECT_TRUE(regex_match(parse_regex("Host:.*"), W("Host: a")));
}

TEST(Regex, ClassesEscapesRepetitionAndCase)
{
    EXPECT_TRUE(regex_match(parse_regex("[a-c]{2,3}"), W("cab")));
    EXPECT_FALSE(regex_match(parse_regex("[a-c]{2,3}"), W("c")));
    EXPECT_TRUE(regex_match(parse_regex("x{2,}"), W("xxxx")));
    EXPECT_TRUE(regex_match(parse_regex("[^\\r\\n]*\\r\\n"), W("abc\r\n")));
    EXPECT_FALSE(regex_match(parse_regex("[^\\r\\n]*\\r\\n"), W("a\nb\r\n")));
    EXPECT_TRUE(regex_match(parse_regex("\\x41\\."), W("A.")));
    EXPECT_TRUE(regex_match(parse_regex("(?i)host"), W("HoSt")));
    EXPECT_FALSE(regex_match(parse_regex("host"), W("HoSt")));
}

TEST(Regex, DotMatchesAbstractSymbolsNot)
{
    Word w{Terminal::dot()};
    EXPECT_FALSE(regex_match(parse_regex("."), w));
    EXPECT_TRUE(regex_match(parse_regex("."), W("\n")));
}

TEST(Regex, SyntaxErrorsCarryOffsets)
{
    EXPECT_THROW(parse_regex("(ab"), RegexSyntaxError);
    EXPECT_THROW(parse_regex("a{3,1}"), RegexSyntaxError);
    EXPECT_THROW(parse_regex("[b-a]"), RegexSyntaxError);
    try {
        parse_regex("ab)");
    } catch (const RegexSyntaxError& e) {
        EXPECT_EQ(e.offset(), 2u);
    }
}

TEST(Regex, NoBacktrackingBlowup)
{
    RegexMatcher m(parse_regex("(a|a)*(a*)*b"));
    Word w(20000, Terminal::byte('a'));
    EXPECT_FALSE(m.matches(w));
    w.push_back(Terminal::byte('b'));
    EXPECT_TRUE(m.matches(w));
}

namespace {

// Own regex tree with a Brzozowski-derivative matcher, independent of the
// engine's parser and NFA.
struct RNode {
    enum Kind { empty, eps, sym, cat, alt, star } kind;
    char c = 0;
    std::shared_ptr<RNode> l, r;
};
using RP = std::shared_ptr<RNode>;

RP mk(RNode::Kind k, RP l = nullptr, RP r = nullptr, char c = 0)
{
    return std::make_shared<RNode>(RNode{k, c, std::move(l), std::move(r)});
}

bool nullable(const RP& n)
{
    switch (n->kind) {
    case RNode::empty:
    case RNode::sym:
        return false;
    case RNode::eps:
    case RNode::star:
        return true;
    case RNode::cat:
        return nullable(n->l) && nullable(n->r);
    case RNode::alt:
        return nullable(n->l) || nullable(n->r);
    }
    return false;
}

RP deriv(const RP& n, char a)
{
    switch (n->kind) {
    case RNode::empty:
    case RNode::eps:
        return mk(RNode::empty);
    case RNode::sym:
        return n->c == a ? mk(RNode::eps) : mk(RNode::empty);
    case RNode::cat: {
        RP left = mk(RNode::cat, deriv(n->l, a), n->r);
        return nullable(n->l) ? mk(RNode::alt, left, deriv(n->r, a)) : left;
    }
    case RNode::alt:
        return mk(RNode::alt, deriv(n->l, a), deriv(n->r, a));
    case RNode::star:
        return mk(RNode::cat, deriv(n->l, a), n);
    }
    return mk(RNode::empty);
}

bool ref_match(RP n, const std::string& w)
{
    for (char a : w) {
        n = deriv(n, a);
    }
    return nullable(n);
}

// Random tree plus its pattern text; + and ? are written in the pattern and
// expanded in the tree.
std::pair<RP, std::string> random_regex(std::mt19937& rng, int depth)
{
    int pick = depth <= 0 ? 0 : static_cast<int>(rng() % 7);
    switch (pick) {
    case 0: {
        char c = "abc"[rng() % 3];
        return {mk(RNode::sym, nullptr, nullptr, c), std::string(1, c)};
    }
    case 1: {
        auto [l, ls] = random_regex(rng, depth - 1);
        auto [r, rs] = random_regex(rng, depth - 1);
        return {mk(RNode::cat, l, r), "(" + ls + rs + ")"};
    }
    case 2: {
        auto [l, ls] = random_regex(rng, depth - 1);
        auto [r, rs] = random_regex(rng, depth - 1);
        return {mk(RNode::alt, l, r), "(" + ls + "|" + rs + ")"};
    }
    case 3: {
        auto [l, ls] = random_regex(rng, depth - 1);
        return {mk(RNode::star, l), "(" + ls + ")*"};
    }
    case 4: {
        auto [l, ls] = random_regex(rng, depth - 1);
        return {mk(RNode::cat, l, mk(RNode::star, l)), "(" + ls + ")+"};
    }
    case 5: {
        auto [l, ls] = random_regex(rng, depth - 1);
        return {mk(RNode::alt, l, mk(RNode::eps)), "(" + ls + ")?"};
    }
    default: {
        // [ab] style class
        return {mk(RNode::alt, mk(RNode::sym, nullptr, nullptr, 'a'), mk(RNode::sym, nullptr, nullptr, 'b')), "[ab]"};
    }
    }
}

}  // namespace

TEST(Regex, AgreesWithDerivativeReference)
{
    std::mt19937 rng(12345);
    std::size_t cases = 0;
    for (int k = 0; k < 400; ++k) {
        auto [tree, pattern] = random_regex(rng, 4);
        RegexMatcher m(parse_regex(pattern));
        for (int j = 0; j < 40; ++j) {
            std::string w;
            int len = static_cast<int>(rng() % 8);
            for (int i = 0; i < len; ++i) {
                w += "abc"[rng() % 3];
            }
            ASSERT_EQ(m.matches(word_from_bytes(w)), ref_match(tree, w)) << pattern << " on '" << w << "'";
            ++cases;
        }
    }
    EXPECT_GE(cases, 10000u);
}
