#include "idiomval/oracle.hpp"

#include <algorithm>
#include <set>

namespace idiomval {

namespace {

template <class... Fs>
struct overloaded : Fs... {
    using Fs::operator()...;
};
template <class... Fs>
overloaded(Fs...) -> overloaded<Fs...>;

bool in(const std::vector<Terminal>& set, Terminal t) { return std::find(set.begin(), set.end(), t) != set.end(); }

// Value of the digit block, or nullopt if some symbol is not a digit.
// Saturates at cap + 1.
std::optional<std::uint64_t> field_value(const LenParams& p, WordView x, std::uint64_t cap)
{
    auto digits = p.digit_alphabet();
    const std::uint64_t limit = cap + 1;
    std::uint64_t value = 0;
    std::uint64_t weight = 1;
    for (std::size_t i = 0; i < x.size(); ++i) {
        // (x)_{i+1} has weight b^i when the least significant digit comes first
        Terminal d = p.order == DigitOrder::lsd_first ? x[i] : x[x.size() - 1 - i];
        auto it = std::find(digits.begin(), digits.end(), d);
        if (it == digits.end()) {
            return std::nullopt;
        }
        auto digit = static_cast<std::uint64_t>(it - digits.begin());
        value = std::min(limit, value + std::min(limit, digit * weight));
        weight = std::min(limit, weight * p.base);
    }
    return value;
}

bool len_member(const LenParams& p, WordView w)
{
    const std::size_t n = p.width;
    if (w.size() < n) {
        return false;
    }
    auto value = field_value(p, w.first(n), w.size());
    if (!value) {
        return false;
    }
    WordView rest = w.subspan(n);
    if (p.delimiter) {
        if (rest.empty() || rest.front() != *p.delimiter) {
            return false;
        }
        rest = rest.subspan(1);
    }
    return std::all_of(rest.begin(), rest.end(), [&](Terminal t) { return in(p.body_alphabet, t); }) &&
           rest.size() == *value;
}

bool chunk_member(const LenParams& p, WordView w)
{
    if (w.empty() || w.back() != *p.delimiter) {
        return false;
    }
    LenParams inner = p;
    inner.delimiter.reset();
    std::size_t start = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] == *p.delimiter) {
            if (!len_member(inner, w.subspan(start, i - start))) {
                return false;
            }
            start = i + 1;
        }
    }
    return true;
}

bool eq_member(const EqSpec& s, WordView w)
{
    if (w.size() != 2 * s.width) {
        return false;
    }
    return std::equal(w.begin(), w.begin() + s.width, w.begin() + s.width);
}

bool leq_member(const LeqSpec& s, WordView w)
{
    if (w.size() != 2 * s.width) {
        return false;
    }
    for (std::size_t i = 0; i < s.width; ++i) {
        auto a = s.order.rank(w[i]);
        auto b = s.order.rank(w[s.width + i]);
        if (a != b) {
            return a < b;
        }
    }
    return true;
}

bool starts_with(WordView w, std::size_t pos, WordView part)
{
    return pos + part.size() <= w.size() && std::equal(part.begin(), part.end(), w.begin() + pos);
}

// w x w y1 w ... yk w z
bool general_eq_member(const GeneralEqSpec& s, WordView w)
{
    const std::size_t n = s.width;
    if (w.size() < n) {
        return false;
    }
    WordView block = w.first(n);
    if (!std::all_of(block.begin(), block.end(), [&](Terminal t) { return in(s.alphabet, t); })) {
        return false;
    }
    // after_block(p): a w block ended at p, and at least two blocks have been read
    std::function<bool(std::size_t)> after_block = [&](std::size_t p) {
        for (const auto& z : s.last_filler) {
            if (p + z.size() == w.size() && starts_with(w, p, z)) {
                return true;
            }
        }
        for (const auto& y : s.middle_filler) {
            if (starts_with(w, p, y) && starts_with(w, p + y.size(), block) && after_block(p + y.size() + n)) {
                return true;
            }
        }
        return false;
    };
    for (const auto& x : s.first_filler) {
        if (starts_with(w, n, x) && starts_with(w, n + x.size(), block) && after_block(n + x.size() + n)) {
            return true;
        }
    }
    return false;
}

void collect(std::set<Terminal>& out, const std::vector<Word>& words)
{
    for (const auto& w : words) {
        out.insert(w.begin(), w.end());
    }
}

}  // namespace

std::string spec_kind(const IdiomSpec& spec)
{
    return std::visit(overloaded{
                          [](const LenSpec& s) -> std::string { return s.params.delimiter ? "len-delim" : "len"; },
                          [](const ChunkSpec&) -> std::string { return "chunk"; },
                          [](const EqSpec&) -> std::string { return "eq"; },
                          [](const LeqSpec&) -> std::string { return "leq"; },
                          [](const GeneralEqSpec&) -> std::string { return "general-eq"; },
                      },
        spec);
}

std::vector<Terminal> spec_alphabet(const IdiomSpec& spec)
{
    std::set<Terminal> out;
    std::visit(overloaded{
                   [&](const LenSpec& s) {
                       auto d = s.params.digit_alphabet();
                       out.insert(d.begin(), d.end());
                       out.insert(s.params.body_alphabet.begin(), s.params.body_alphabet.end());
                       if (s.params.delimiter) {
                           out.insert(*s.params.delimiter);
                       }
                   },
                   [&](const ChunkSpec& s) {
                       auto d = s.params.digit_alphabet();
                       out.insert(d.begin(), d.end());
                       out.insert(s.params.body_alphabet.begin(), s.params.body_alphabet.end());
                       out.insert(*s.params.delimiter);
                   },
                   [&](const EqSpec& s) { out.insert(s.alphabet.begin(), s.alphabet.end()); },
                   [&](const LeqSpec& s) { out.insert(s.order.symbols().begin(), s.order.symbols().end()); },
                   [&](const GeneralEqSpec& s) {
                       out.insert(s.alphabet.begin(), s.alphabet.end());
                       collect(out, s.first_filler);
                       collect(out, s.middle_filler);
                       collect(out, s.last_filler);
                   },
               },
        spec);
    return {out.begin(), out.end()};
}

bool oracle_membership(const IdiomSpec& spec, WordView w)
{
    auto sigma = spec_alphabet(spec);
    for (Terminal t : w) {
        if (!std::binary_search(sigma.begin(), sigma.end(), t)) {
            throw OracleAlphabetError("symbol " + terminal_to_text(t) + " is outside the " + spec_kind(spec) +
                                      " alphabet");
        }
    }
    return std::visit(overloaded{
                          [&](const LenSpec& s) { return len_member(s.params, w); },
                          [&](const ChunkSpec& s) { return chunk_member(s.params, w); },
                          [&](const EqSpec& s) { return eq_member(s, w); },
                          [&](const LeqSpec& s) { return leq_member(s, w); },
                          [&](const GeneralEqSpec& s) { return general_eq_member(s, w); },
                      },
        spec);
}

std::uint64_t count_words(std::size_t k, std::size_t max_len)
{
    constexpr std::uint64_t top = UINT64_MAX;
    std::uint64_t total = 0;
    std::uint64_t layer = 1;
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (total > top - layer) {
            return top;
        }
        total += layer;
        layer = (k != 0 && layer > top / k) ? top : layer * k;
    }
    return total;
}

EquivReport exhaustive_equiv(const IdiomSpec& spec, const MembershipFn& engine, std::size_t max_len,
    std::uint64_t budget)
{
    auto sigma = spec_alphabet(spec);
    auto total = count_words(sigma.size(), max_len);
    if (total > budget) {
        throw EnumerationBudgetError(std::to_string(total) + " words exceed the enumeration budget of " +
                                     std::to_string(budget));
    }
    EquivReport report;
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (sigma.empty() && len > 0) {
            break;
        }
        std::vector<std::size_t> idx(len, 0);
        Word w(len, sigma.empty() ? Terminal{} : sigma.front());
        for (;;) {
            ++report.words_checked;
            bool got = engine(w);
            if (got != oracle_membership(spec, w)) {
                report.agree = false;
                report.counterexample = w;
                report.engine_verdict = got;
                return report;
            }
            std::size_t pos = len;
            while (pos > 0 && idx[pos - 1] + 1 == sigma.size()) {
                idx[pos - 1] = 0;
                w[pos - 1] = sigma.front();
                --pos;
            }
            if (pos == 0) {
                break;
            }
            ++idx[pos - 1];
            w[pos - 1] = sigma[idx[pos - 1]];
        }
    }
    return report;
}

EquivReport exhaustive_equiv(const IdiomSpec& spec, const Grammar& g, std::size_t max_len, std::uint64_t budget)
{
    CfgRecognizer r(g);
    return exhaustive_equiv(
        spec,
        [&](WordView w) {
            for (Terminal t : w) {
                if (!r.in_alphabet(t)) {
                    return false;
                }
            }
            return r.accepts(w);
        },
        max_len, budget);
}

EquivReport exhaustive_equiv(const IdiomSpec& spec, const IdiomValidator& v, std::size_t max_len,
    std::uint64_t budget)
{
    CompiledValidator c(v);
    return exhaustive_equiv(
        spec,
        [&](WordView w) {
            try {
                return c.accepts(w);
            } catch (const AlphabetError&) {
                return false;
            }
        },
        max_len, budget);
}

std::size_t residual_dfa_states(const LenSpec& spec, std::uint64_t budget)
{
    const LenParams& p = spec.params;
    p.check();
    std::uint64_t prefixes = 1;
    for (std::size_t i = 0; i < p.width; ++i) {
        prefixes *= p.base;
        if (prefixes > budget) {
            throw EnumerationBudgetError("too many digit prefixes");
        }
    }
    const std::size_t probe_len = static_cast<std::size_t>(prefixes) + (p.delimiter ? 1 : 0);
    auto sigma = spec_alphabet(spec);
    auto probes = count_words(sigma.size(), probe_len);
    if (probes > budget / prefixes) {
        throw EnumerationBudgetError("residual probing exceeds the enumeration budget");
    }

    // All suffixes up to probe_len, in length-then-lexicographic order.
    std::vector<Word> suffixes{Word{}};
    for (std::size_t begin = 0; suffixes.size() < probes;) {
        std::size_t end = suffixes.size();
        for (std::size_t i = begin; i < end; ++i) {
            for (Terminal t : sigma) {
                Word s = suffixes[i];
                s.push_back(t);
                suffixes.push_back(std::move(s));
            }
        }
        begin = end;
    }

    auto digits = p.digit_alphabet();
    std::set<std::vector<bool>> residuals;
    Word x(p.width, digits.front());
    std::vector<std::size_t> idx(p.width, 0);
    for (std::uint64_t k = 0; k < prefixes; ++k) {
        std::vector<bool> signature;
        signature.reserve(suffixes.size());
        for (const auto& s : suffixes) {
            Word w = x;
            w.insert(w.end(), s.begin(), s.end());
            signature.push_back(oracle_membership(spec, w));
        }
        residuals.insert(std::move(signature));
        for (std::size_t pos = p.width; pos > 0; --pos) {
            if (++idx[pos - 1] < digits.size()) {
                x[pos - 1] = digits[idx[pos - 1]];
                break;
            }
            idx[pos - 1] = 0;
            x[pos - 1] = digits.front();
        }
    }
    return residuals.size();
}

}  // namespace idiomval
