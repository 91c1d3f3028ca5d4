#include "idiomval/oracle.hpp"
#include "idiomval/verify.hpp"

#include <gtest/gtest.h>

using namespace idiomval;

namespace {

Word W(std::string_view text) { return word_from_text(text); }

LenParams len_params(std::size_t n, unsigned base, std::string_view body)
{
    LenParams p;
    p.width = n;
    p.base = base;
    p.body_alphabet = alphabet_from_chars(body);
    return p;
}

Grammar without_rule(const Grammar& g, std::size_t drop)
{
    Grammar out(g.start());
    for (const auto& v : g.variables()) {
        out.declare_variable(v);
    }
    for (Terminal t : g.terminals()) {
        out.declare_terminal(t);
    }
    for (std::size_t i = 0; i < g.rules().size(); ++i) {
        if (i != drop) {
            out.add_rule(g.rules()[i].lhs, g.rules()[i].rhs);
        }
    }
    return out;
}

}  // namespace

TEST(OracleMembership, Examples)
{
    EXPECT_TRUE(oracle_membership(LenSpec{len_params(3, 2, "abc")}, W("110abc")));
    EXPECT_FALSE(oracle_membership(LenSpec{len_params(3, 2, "abc")}, W("110ab")));
    auto chunk = len_params(1, 2, "a");
    chunk.delimiter = Terminal::sharp();
    EXPECT_FALSE(oracle_membership(ChunkSpec{chunk}, W("")));
    EXPECT_TRUE(oracle_membership(ChunkSpec{chunk}, W("1a<sharp>0<sharp>")));
    EXPECT_FALSE(oracle_membership(EqSpec{2, alphabet_from_chars("ab")}, W("abba")));
    EXPECT_TRUE(oracle_membership(EqSpec{2, alphabet_from_chars("ab")}, W("abab")));
    EXPECT_TRUE(oracle_membership(LeqSpec{2, digit_order()}, W("0521")));
    EXPECT_FALSE(oracle_membership(LeqSpec{2, digit_order()}, W("2105")));
}

TEST(OracleMembership, GeneralEq)
{
    GeneralEqSpec spec{2, alphabet_from_chars("ab"), {W("#")}, {W("#")}, {W("#")}};
    EXPECT_TRUE(oracle_membership(spec, W("ab#ab#")));
    EXPECT_TRUE(oracle_membership(spec, W("ab#ab#ab#ab#")));
    EXPECT_FALSE(oracle_membership(spec, W("ab#ab#ba#ab#")));
    EXPECT_FALSE(oracle_membership(spec, W("ab#ab")));
}

TEST(OracleMembership, AlphabetMismatchThrows)
{
    EXPECT_THROW(oracle_membership(EqSpec{1, alphabet_from_chars("ab")}, W("ac")), OracleAlphabetError);
}

TEST(SpecAlphabet, SortedUnion)
{
    auto sigma = spec_alphabet(LenSpec{len_params(2, 2, "a")});
    EXPECT_EQ(word_to_text(sigma), "01a");
}

TEST(CountWords, SumOfPowers)
{
    EXPECT_EQ(count_words(3, 6), 1093u);
    EXPECT_EQ(count_words(2, 0), 1u);
    EXPECT_EQ(count_words(0, 5), 1u);
    EXPECT_EQ(count_words(256, 100), UINT64_MAX);
}

TEST(ExhaustiveEquiv, LenAgreesAndCountsWords)
{
    auto p = len_params(2, 2, "a");
    auto r = exhaustive_equiv(LenSpec{p}, gen_len(p), 6);
    EXPECT_TRUE(r.agree);
    EXPECT_FALSE(r.counterexample);
    // |{0,1,a}| = 3, lengths 0..6
    EXPECT_EQ(r.words_checked, 1 + 3 + 9 + 27 + 81 + 243 + 729u);
}

TEST(ExhaustiveEquiv, EqValidatorAgrees)
{
    auto sigma = alphabet_from_chars("ab");
    auto r = exhaustive_equiv(EqSpec{2, sigma}, eq_validator(2, sigma), 4);
    EXPECT_TRUE(r.agree);
    EXPECT_EQ(r.words_checked, 31u);
}

TEST(ExhaustiveEquiv, CorruptedGrammarGivesLeastCounterexample)
{
    auto p = len_params(2, 2, "a");
    Grammar g = gen_len(p);
    for (std::size_t drop = 0; drop < g.rule_count(); ++drop) {
        Grammar bad = without_rule(g, drop);
        auto r = exhaustive_equiv(LenSpec{p}, bad, 6);
        ASSERT_FALSE(r.agree) << "dropping rule " << drop;
        ASSERT_TRUE(r.counterexample);

        // Walk the same order by hand and find the first disagreement.
        CfgRecognizer rec(bad);
        auto sigma = spec_alphabet(LenSpec{p});
        std::optional<Word> first;
        std::vector<Word> layer{Word{}};
        for (std::size_t len = 0; len <= 6 && !first; ++len) {
            for (const auto& w : layer) {
                if (rec.accepts(w) != oracle_membership(LenSpec{p}, w)) {
                    first = w;
                    break;
                }
            }
            std::vector<Word> next;
            for (const auto& w : layer) {
                for (Terminal t : sigma) {
                    Word x = w;
                    x.push_back(t);
                    next.push_back(std::move(x));
                }
            }
            layer = std::move(next);
        }
        ASSERT_TRUE(first);
        EXPECT_EQ(*r.counterexample, *first);
        EXPECT_EQ(r.engine_verdict, rec.accepts(*first));
    }
}

TEST(ExhaustiveEquiv, CustomEngineDisagreement)
{
    auto sigma = alphabet_from_chars("ab");
    auto r = exhaustive_equiv(EqSpec{1, sigma}, [](WordView) { return false; }, 3);
    EXPECT_FALSE(r.agree);
    EXPECT_EQ(word_to_text(*r.counterexample), "aa");
    EXPECT_FALSE(r.engine_verdict);
}

TEST(ExhaustiveEquiv, BudgetExceededThrows)
{
    auto p = len_params(3, 2, "abc");
    EXPECT_THROW(exhaustive_equiv(LenSpec{p}, gen_len(p), 12, 1000), EnumerationBudgetError);
}

TEST(Residuals, AtLeastBaseToTheN)
{
    EXPECT_EQ(residual_dfa_states(LenSpec{len_params(1, 2, "a")}), 2u);
    EXPECT_EQ(residual_dfa_states(LenSpec{len_params(2, 2, "a")}), 4u);
    EXPECT_EQ(residual_dfa_states(LenSpec{len_params(3, 2, "a")}), 8u);
    EXPECT_GE(residual_dfa_states(LenSpec{len_params(2, 3, "a")}), 9u);
}

TEST(Verify, CappedLength)
{
    EXPECT_EQ(capped_length(2, 10, 10'000'000), 10u);
    EXPECT_EQ(capped_length(10, 10, 10'000'000), 6u);
    EXPECT_LE(count_words(10, capped_length(10, 10, 10'000'000)), 10'000'000u);
}

TEST(Verify, SmallBudgetMatrixAgrees)
{
    auto s = run_verify_matrix(100'000);
    EXPECT_TRUE(s.all_agree());
    EXPECT_GE(s.cases.size(), 30u);
    auto j = s.to_json();
    EXPECT_TRUE(j["all_agree"].get<bool>());
    EXPECT_EQ(j["cases"].size(), s.cases.size());
}
