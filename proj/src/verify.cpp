#include "idiomval/verify.hpp"

#include <chrono>

namespace idiomval {

namespace {

LenParams len_params(std::size_t n, unsigned base, std::string_view body, DigitOrder order = DigitOrder::lsd_first)
{
    LenParams p;
    p.width = n;
    p.base = base;
    p.body_alphabet = alphabet_from_chars(body);
    p.order = order;
    return p;
}

std::string order_name(DigitOrder o) { return o == DigitOrder::lsd_first ? "lsd" : "msd"; }

class Matrix {
public:
    explicit Matrix(std::uint64_t budget) : budget_(budget) {}

    template <class Engine>
    void run(std::string name, IdiomSpec spec, const Engine& engine, std::size_t n)
    {
        VerifyCase c;
        c.name = std::move(name);
        c.max_len = capped_length(spec_alphabet(spec).size(), 2 * n + 6, budget_);
        auto t0 = std::chrono::steady_clock::now();
        c.report = exhaustive_equiv(spec, engine, c.max_len, budget_);
        c.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        c.spec = std::move(spec);
        summary.cases.push_back(std::move(c));
    }

    VerifySummary summary;

private:
    std::uint64_t budget_;
};

}  // namespace

bool VerifySummary::all_agree() const
{
    for (const auto& c : cases) {
        if (!c.report.agree) {
            return false;
        }
    }
    for (const auto& r : residuals) {
        if (r.states < r.lower_bound) {
            return false;
        }
    }
    return true;
}

nlohmann::json VerifySummary::to_json() const
{
    nlohmann::json j;
    j["cases"] = nlohmann::json::array();
    std::uint64_t total = 0;
    for (const auto& c : cases) {
        nlohmann::json cj{{"name", c.name}, {"kind", spec_kind(c.spec)}, {"max_len", c.max_len},
            {"words_checked", c.report.words_checked}, {"agree", c.report.agree},
            {"ms", static_cast<long long>(c.ms)}};
        if (c.report.counterexample) {
            cj["counterexample"] = word_to_text(*c.report.counterexample);
            cj["engine_verdict"] = c.report.engine_verdict;
        }
        total += c.report.words_checked;
        j["cases"].push_back(std::move(cj));
    }
    j["residuals"] = nlohmann::json::array();
    for (const auto& r : residuals) {
        j["residuals"].push_back(
            {{"n", r.width}, {"base", r.base}, {"states", r.states}, {"lower_bound", r.lower_bound}});
    }
    j["total_words"] = total;
    j["all_agree"] = all_agree();
    return j;
}

std::size_t capped_length(std::size_t alphabet_size, std::size_t wanted, std::uint64_t budget)
{
    std::size_t len = wanted;
    while (len > 0 && count_words(alphabet_size, len) > budget) {
        --len;
    }
    return len;
}

VerifySummary run_verify_matrix(std::uint64_t budget)
{
    Matrix m(budget);

    for (unsigned b : {2u, 3u}) {
        for (std::size_t n = 1; n <= 3; ++n) {
            auto p = len_params(n, b, "a");
            m.run("len n=" + std::to_string(n) + " b=" + std::to_string(b), LenSpec{p}, gen_len(p), n);
        }
    }
    for (std::size_t n = 1; n <= 3; ++n) {
        auto p = len_params(n, 2, "a", DigitOrder::msd_first);
        m.run("len n=" + std::to_string(n) + " b=2 " + order_name(p.order), LenSpec{p}, gen_len(p), n);
    }
    for (std::size_t n = 1; n <= 2; ++n) {
        auto p = len_params(n, 2, "ab");
        m.run("len n=" + std::to_string(n) + " b=2 W=ab", LenSpec{p}, gen_len(p), n);
    }
    for (std::size_t n = 1; n <= 3; ++n) {
        auto p = len_params(n, 2, "a");
        p.delimiter = Terminal::sharp();
        m.run("len-delim n=" + std::to_string(n) + " b=2", LenSpec{p}, gen_len(p), n);
    }
    for (std::size_t n = 1; n <= 2; ++n) {
        auto p = len_params(n, 2, "a");
        p.delimiter = Terminal::sharp();
        m.run("chunk n=" + std::to_string(n) + " b=2", ChunkSpec{p}, gen_chunk(p), n);
    }
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::string_view sigma : {"a", "ab", "abc"}) {
            auto alphabet = alphabet_from_chars(sigma);
            m.run("eq n=" + std::to_string(n) + " sigma=" + std::string(sigma), EqSpec{n, alphabet},
                eq_validator(n, alphabet), n);
        }
    }
    for (std::size_t n = 1; n <= 3; ++n) {
        for (std::string_view digits : {"01", "012"}) {
            OrderSpec ord(alphabet_from_chars(digits));
            m.run("leq n=" + std::to_string(n) + " digits=" + std::string(digits), LeqSpec{n, ord},
                leq_validator(n, ord), n);
        }
    }
    for (std::size_t n = 1; n <= 2; ++n) {
        Word filler = word_from_text("#");
        Grammar g = finite_language_grammar({filler});
        GeneralEqParams p{n, alphabet_from_chars("ab"), g, g, g};
        GeneralEqSpec spec{n, p.alphabet, {filler}, {filler}, {filler}};
        m.run("general-eq n=" + std::to_string(n) + " sigma=ab fillers=#", spec, general_eq_validator(p), n);
    }

    for (std::size_t n = 1; n <= 3; ++n) {
        LenSpec spec{len_params(n, 2, "a")};
        m.summary.residuals.push_back({n, 2, residual_dfa_states(spec, budget), std::uint64_t{1} << n});
    }
    return std::move(m.summary);
}

}  // namespace idiomval
