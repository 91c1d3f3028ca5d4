#include "idiomval/cfg_recognizer.hpp"
#include "idiomval/extractors.hpp"
#include "idiomval/generators.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <ctime>

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

// Direct reading of the length-field definition for lsd-first digits.
bool len_member(std::size_t n, unsigned base, std::string_view body, std::string_view w)
{
    if (w.size() < n) {
        return false;
    }
    std::uint64_t value = 0;
    std::uint64_t weight = 1;
    for (std::size_t i = 0; i < n; ++i) {
        char c = w[i];
        unsigned d = c >= '0' && c <= '9' ? unsigned(c - '0') : c >= 'a' && c <= 'z' ? unsigned(c - 'a' + 10) : 99;
        if (d >= base) {
            return false;
        }
        value += d * weight;
        weight *= base;
    }
    auto rest = w.substr(n);
    for (char c : rest) {
        if (body.find(c) == std::string_view::npos) {
            return false;
        }
    }
    return rest.size() == value;
}

std::string digits_lsd(std::uint64_t v, std::size_t n, unsigned base)
{
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        unsigned d = unsigned(v % base);
        s += char(d < 10 ? '0' + d : 'a' + d - 10);
        v /= base;
    }
    return s;
}

bool accepts(const IdiomValidator& v, std::string_view text) { return CompiledValidator(v).accepts(W(text)); }

std::int64_t epoch(int y, int mon, int d, int h, int mi, int s)
{
    std::tm tm{};
    tm.tm_year = y - 1900;
    tm.tm_mon = mon - 1;
    tm.tm_mday = d;
    tm.tm_hour = h;
    tm.tm_min = mi;
    tm.tm_sec = s;
    return static_cast<std::int64_t>(timegm(&tm));
}

}  // namespace

TEST(GenLen, ThreeBitFieldRulesAndSize)
{
    Grammar g = gen_len(len_params(3, 2, "abc"));
    // S, Xn, 2n digit rules, n-1 doublings, |W| body rules
    EXPECT_EQ(g.rule_count(), 13u);
    EXPECT_EQ(grammar_size(g), 36u);
    EXPECT_TRUE(cfg_membership(g, W("110abc")));
}

TEST(GenLen, RuleCountFormulaBase2)
{
    for (std::size_t n = 1; n <= 32; ++n) {
        for (std::string_view body : {"a", "abc", "abcdefg"}) {
            auto p = len_params(n, 2, body);
            EXPECT_EQ(gen_len(p).rule_count(), 3 * n + 1 + body.size()) << n;
            p.delimiter = Terminal::sharp();
            EXPECT_EQ(gen_chunk(p).rule_count(), gen_len(len_params(n, 2, body)).rule_count() + 2) << n;
        }
    }
}

TEST(GenLen, RuleCountFormulaBaseB)
{
    for (unsigned b : {3u, 10u, 16u}) {
        for (std::size_t n = 1; n <= 8; ++n) {
            EXPECT_EQ(gen_len(len_params(n, b, "ab")).rule_count(), b * n + (n - 1) + 2 + 2);
        }
    }
    LenParams p;
    p.width = 80;
    p.base = 10;
    p.body_alphabet = {Terminal::dot()};
    EXPECT_EQ(gen_len(p).rule_count(), 882u);
}

TEST(GenLen, SizeGrowsLinearly)
{
    auto size = [](std::size_t n) { return grammar_size(gen_len(len_params(n, 2, "abc"))); };
    std::size_t step = size(2) - size(1);
    for (std::size_t n = 2; n <= 32; ++n) {
        EXPECT_EQ(size(n) - size(n - 1), step);
    }
    EXPECT_LE(size(16), 2 * size(8) + 16);
}

TEST(GenLen, ZeroFieldEmptyBody)
{
    Grammar g = gen_len(len_params(3, 2, "a"));
    EXPECT_TRUE(cfg_membership(g, W("000")));
    EXPECT_FALSE(cfg_membership(g, W("000a")));
}

TEST(GenLen, AgreesWithDirectDecodingBase3)
{
    const std::size_t n = 2;
    CfgRecognizer r(gen_len(len_params(n, 3, "ab")));
    for (std::uint64_t v = 0; v < 9; ++v) {
        for (std::size_t len = 0; len <= 10; ++len) {
            std::string w = digits_lsd(v, n, 3) + std::string(len, len % 2 ? 'a' : 'b');
            EXPECT_EQ(r.accepts(word_from_bytes(w)), len_member(n, 3, "ab", w)) << w;
        }
    }
}

TEST(GenLen, DelimiterBetweenFieldAndBody)
{
    auto p = len_params(2, 2, "a");
    p.delimiter = Terminal::sharp();
    Grammar g = gen_len(p);
    EXPECT_TRUE(cfg_membership(g, W("10<sharp>a")));
    EXPECT_FALSE(cfg_membership(g, W("10a")));
}

TEST(GenLen, MsdFirstIsDigitReversal)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        auto lsd = len_params(n, 2, "a");
        auto msd = lsd;
        msd.order = DigitOrder::msd_first;
        CfgRecognizer rl(gen_len(lsd));
        CfgRecognizer rm(gen_len(msd));
        for (std::uint64_t v = 0; v < (1u << n); ++v) {
            std::string digits = digits_lsd(v, n, 2);
            std::string reversed(digits.rbegin(), digits.rend());
            for (std::size_t len = 0; len <= (1u << n) + 1; ++len) {
                std::string body(len, 'a');
                EXPECT_EQ(rl.accepts(word_from_bytes(digits + body)), rm.accepts(word_from_bytes(reversed + body)));
            }
        }
    }
}

TEST(GenLen, InvalidParams)
{
    EXPECT_THROW(gen_len(len_params(0, 2, "a")), InvalidParams);
    EXPECT_THROW(gen_len(len_params(2, 1, "a")), InvalidParams);
    EXPECT_THROW(gen_len(len_params(2, 2, "")), InvalidParams);
    auto p = len_params(2, 2, "a");
    p.delimiter = Terminal::byte('a');
    EXPECT_THROW(gen_len(p), InvalidParams);
}

TEST(GenChunk, Examples)
{
    auto p = len_params(1, 2, "a");
    p.delimiter = Terminal::sharp();
    Grammar g = gen_chunk(p);
    EXPECT_TRUE(cfg_membership(g, W("1a<sharp>")));
    EXPECT_TRUE(cfg_membership(g, W("1a<sharp>0<sharp>")));
    EXPECT_FALSE(cfg_membership(g, W("")));
    EXPECT_FALSE(cfg_membership(g, W("1a")));
    EXPECT_THROW(gen_chunk(len_params(1, 2, "a")), InvalidParams);
}

TEST(GenChunk, ChunkedResponseSizes)
{
    auto chunk = [](std::uint64_t size, std::size_t n, unsigned base) {
        return digits_lsd(size, n, base) + std::string(size, '.') + "<sharp>";
    };
    auto hex = len_params(2, 16, "");
    hex.body_alphabet = {Terminal::byte('.')};
    hex.delimiter = Terminal::sharp();
    CfgRecognizer rh(gen_chunk(hex));
    EXPECT_TRUE(rh.accepts(W(chunk(0x12, 2, 16) + chunk(0x16, 2, 16) + chunk(0, 2, 16))));

    // "The file is " and "3,400 bytes long" have 12 and 16 bytes, so the
    // sizes on the wire only add up when read in decimal.
    EXPECT_EQ(std::string("The file is ").size(), 12u);
    EXPECT_EQ(std::string("3,400 bytes long").size(), 16u);
    auto dec = hex;
    dec.base = 10;
    CfgRecognizer rd(gen_chunk(dec));
    EXPECT_TRUE(rd.accepts(W(chunk(12, 2, 10) + chunk(16, 2, 10) + chunk(0, 2, 10))));
    EXPECT_FALSE(rh.accepts(W(digits_lsd(0x12, 2, 16) + std::string(12, '.') + "<sharp>")));
}

TEST(GenEq, ComponentExamples)
{
    auto sigma = alphabet_from_chars("ab");
    EXPECT_TRUE(cfg_membership(gen_eq_component(2, 1, sigma), W("abaa")));
    EXPECT_FALSE(cfg_membership(gen_eq_component(2, 2, sigma), W("abaa")));
    EXPECT_EQ(gen_eq_component(5, 3, sigma).rule_count(), 4u);
    EXPECT_EQ(gen_eq_component(5, 3, alphabet_from_chars("abcde")).rule_count(), 10u);
    EXPECT_THROW(gen_eq_component(2, 3, sigma), InvalidParams);
    EXPECT_THROW(gen_eq_component(2, 0, sigma), InvalidParams);
}

TEST(GenEq, ValidatorExamples)
{
    EXPECT_TRUE(accepts(eq_validator(3, printable_ascii_alphabet()), "h2ch2c"));
    EXPECT_FALSE(accepts(eq_validator(3, printable_ascii_alphabet()), "h2ch2d"));
    EXPECT_TRUE(accepts(eq_validator(1, alphabet_from_chars("a")), "aa"));
}

TEST(GenEq, ValidatorExhaustiveOverSigma4)
{
    CompiledValidator v(eq_validator(2, alphabet_from_chars("ab")));
    for (unsigned bits = 0; bits < 16; ++bits) {
        std::string w;
        for (int i = 0; i < 4; ++i) {
            w += (bits >> i) & 1 ? 'b' : 'a';
        }
        EXPECT_EQ(v.accepts(word_from_bytes(w)), w.substr(0, 2) == w.substr(2)) << w;
    }
}

TEST(GenLeq, ComponentExamples)
{
    auto ord = digit_order();
    EXPECT_TRUE(cfg_membership(gen_leq_component(2, 1, ord), W("0521")));
    EXPECT_FALSE(cfg_membership(gen_leq_component(2, 1, ord), W("2105")));
    for (std::size_t i = 1; i <= 3; ++i) {
        EXPECT_TRUE(cfg_membership(gen_leq_component(3, i, ord), W("947947")));
    }
}

TEST(GenLeq, ValidatorExamples)
{
    auto ord = digit_order();
    EXPECT_TRUE(accepts(leq_validator(2, ord), "0521"));
    EXPECT_TRUE(accepts(leq_validator(4, ord), "28337026"));
    EXPECT_FALSE(accepts(leq_validator(4, ord), "70262833"));
}

TEST(GenLeq, ExhaustiveAgainstLexicographicComparison)
{
    CompiledValidator v(leq_validator(2, digit_order()));
    for (int x = 0; x < 100; ++x) {
        for (int y = 0; y < 100; ++y) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "%02d%02d", x, y);
            ASSERT_EQ(v.accepts(word_from_bytes(buf)), x <= y) << buf;
        }
    }
}

TEST(GenLeq, TotalAndAntisymmetric)
{
    for (std::size_t n = 1; n <= 3; ++n) {
        OrderSpec ord(alphabet_from_chars("wxyz"));
        CompiledValidator v(leq_validator(n, ord));
        std::vector<std::string> words{""};
        for (std::size_t k = 0; k < n; ++k) {
            std::vector<std::string> next;
            for (const auto& w : words) {
                for (char c : std::string("wxyz")) {
                    next.push_back(w + c);
                }
            }
            words = std::move(next);
        }
        for (const auto& x : words) {
            for (const auto& y : words) {
                bool xy = v.accepts(word_from_bytes(x + y));
                bool yx = v.accepts(word_from_bytes(y + x));
                ASSERT_TRUE(xy || yx) << x << " " << y;
                ASSERT_EQ(xy && yx, x == y) << x << " " << y;
            }
        }
    }
}

TEST(GenLeq, PadForCompare)
{
    auto ord = digit_order();
    auto [x, y] = pad_for_compare(W("5"), W("21"), ord);
    EXPECT_EQ(word_to_text(x), "05");
    EXPECT_EQ(word_to_text(y), "21");
    EXPECT_TRUE(accepts(leq_validator(2, ord), word_to_text(x) + word_to_text(y)));

    OrderSpec ab(alphabet_from_chars("ab"));
    auto [a1, a2] = pad_for_compare(W("a"), W("a"), ab);
    EXPECT_EQ(word_to_text(a1), "a");
    EXPECT_EQ(word_to_text(a2), "a");
    auto [e1, e2] = pad_for_compare(W(""), W("ab"), ab);
    EXPECT_EQ(word_to_text(e1), "aa");
    EXPECT_EQ(word_to_text(e2), "ab");
    EXPECT_THROW(pad_for_compare(W("c"), W("a"), ab), InvalidParams);
}

TEST(GenGeneralEq, MimeBoundaryFullWidth)
{
    const std::string w = "Mydelimiter";
    GeneralEqParams p;
    p.width = w.size();
    p.alphabet = alphabet_from_chars(w);
    p.first_filler = finite_language_grammar({W("\r\nPlain ASCII text.\r\n--")});
    p.middle_filler = finite_language_grammar({W("\r\nPlain ASCII text.\r\n--")});
    p.last_filler = finite_language_grammar({W("--\r\n")});
    std::string text = w + "\r\nPlain ASCII text.\r\n--" + w + "\r\nPlain ASCII text.\r\n--" + w +
                       "\r\nPlain ASCII text.\r\n--" + w + "--\r\n";
    auto v = general_eq_validator(p);
    ASSERT_EQ(v.atoms.size(), w.size());
    for (const auto& a : v.atoms) {
        EXPECT_TRUE(cfg_membership(a.grammar, W(text))) << a.id;
    }
    std::string bad = text;
    bad[bad.rfind("Mydelimiter") + 2] = 'e';
    EXPECT_FALSE(CompiledValidator(v).accepts(W(bad)));
}

TEST(GenGeneralEq, MimeReducedWidth)
{
    GeneralEqParams p;
    p.width = 3;
    p.alphabet = alphabet_from_chars("Myd");
    p.first_filler = finite_language_grammar({W("-")});
    p.middle_filler = finite_language_grammar({W("-")});
    p.last_filler = finite_language_grammar({W("--")});
    EXPECT_TRUE(accepts(general_eq_validator(p), "Myd-Myd-Myd-Myd--"));
    EXPECT_TRUE(accepts(general_eq_validator(p), "Myd-Myd--"));
    EXPECT_FALSE(accepts(general_eq_validator(p), "Myd-Myd-dyM-Myd--"));
    EXPECT_FALSE(accepts(general_eq_validator(p), "Myd-Myd"));
}

TEST(GenGeneralEq, EpsilonFillersGiveSquares)
{
    GeneralEqParams p;
    p.width = 2;
    p.alphabet = alphabet_from_chars("ab");
    p.first_filler = finite_language_grammar({Word{}});
    p.middle_filler = finite_language_grammar({Word{}});
    p.last_filler = finite_language_grammar({Word{}});
    EXPECT_TRUE(accepts(general_eq_validator(p), "abab"));
    EXPECT_FALSE(accepts(general_eq_validator(p), "abba"));
}

TEST(GenGeneralEq, FlipInThirdBlockRejectsOnlyThatPosition)
{
    const std::size_t n = 3;
    GeneralEqParams p;
    p.width = n;
    p.alphabet = alphabet_from_chars("ab");
    p.first_filler = finite_language_grammar({W("#")});
    p.middle_filler = finite_language_grammar({W("#")});
    p.last_filler = finite_language_grammar({W("#")});
    for (const std::string block : {"aab", "bab", "bbb"}) {
        for (std::size_t i = 1; i <= n; ++i) {
            std::string third = block;
            third[i - 1] = third[i - 1] == 'a' ? 'b' : 'a';
            std::string w = block + "#" + block + "#" + third + "#" + block + "#";
            for (std::size_t j = 1; j <= n; ++j) {
                EXPECT_EQ(cfg_membership(gen_general_eq_component(p, j), W(w)), j != i) << w << " component " << j;
            }
        }
    }
}

TEST(GenDate, NotModifiedPair)
{
    auto lm = imf_fixdate_canonical("Wed, 24 Feb 2016 15:23:38 GMT");
    auto date = imf_fixdate_canonical("Tue, 29 Mar 2016 09:05:57 GMT");
    ASSERT_TRUE(lm && date);
    EXPECT_EQ(*lm, "20160224152338");
    EXPECT_EQ(*date, "20160329090557");
    auto v = date_compare_validator(DateFormat::http_date);
    bool earlier = epoch(2016, 2, 24, 15, 23, 38) <= epoch(2016, 3, 29, 9, 5, 57);
    EXPECT_EQ(accepts(v, *lm + *date), earlier);
    EXPECT_TRUE(accepts(v, *lm + *date));
    EXPECT_FALSE(accepts(v, *date + *lm));
    EXPECT_TRUE(accepts(v, *date + *date));
}

TEST(GenDate, AgreesWithTimestampComparison)
{
    auto v = CompiledValidator(date_compare_validator(DateFormat::http_date));
    const char* dates[] = {
        "Sun, 06 Nov 1994 08:49:37 GMT",
        "Thu, 31 Dec 2015 23:59:59 GMT",
        "Fri, 01 Jan 2016 00:00:00 GMT",
        "Tue, 29 Mar 2016 09:05:57 GMT",
        "Tue, 29 Mar 2016 09:05:58 GMT",
        "Mon, 28 Mar 2016 23:59:59 GMT",
    };
    const char* months = "JanFebMarAprMayJunJulAugSepOctNovDec";
    auto to_epoch = [&](const std::string& d) {
        int day = std::stoi(d.substr(5, 2));
        int mon = int(std::string(months).find(d.substr(8, 3)) / 3) + 1;
        return epoch(std::stoi(d.substr(12, 4)), mon, day, std::stoi(d.substr(17, 2)), std::stoi(d.substr(20, 2)),
            std::stoi(d.substr(23, 2)));
    };
    for (const char* a : dates) {
        for (const char* b : dates) {
            auto ca = imf_fixdate_canonical(a);
            auto cb = imf_fixdate_canonical(b);
            ASSERT_TRUE(ca && cb);
            EXPECT_EQ(v.accepts(W(*ca + *cb)), to_epoch(a) <= to_epoch(b)) << a << " vs " << b;
        }
    }
}

TEST(FiniteLanguage, ExactlyTheListedWords)
{
    Grammar g = finite_language_grammar({W("ab"), W(""), W("c")});
    EXPECT_TRUE(cfg_membership(g, W("ab")));
    EXPECT_TRUE(cfg_membership(g, W("")));
    EXPECT_TRUE(cfg_membership(g, W("c")));
    EXPECT_FALSE(cfg_membership(g, W("abc")));
    EXPECT_FALSE(cfg_membership(g, W("a")));
}
