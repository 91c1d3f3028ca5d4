#include "idiomval/cfg_recognizer.hpp"

#include <map>
#include <vector>

namespace idiomval {

namespace {

constexpr std::int32_t complete_marker = -1;
constexpr std::int32_t K = static_cast<std::int32_t>(terminal_count);

struct Item {
    std::uint32_t dotted;
    std::uint32_t origin;
};

// Open-addressing set of items for the Earley set under construction.
class ItemSet {
public:
    ItemSet() : slots_(64, empty_slot) {}

    void clear()
    {
        for (auto i : used_) {
            slots_[i] = empty_slot;
        }
        used_.clear();
    }

    // Returns true if newly inserted.
    bool insert(Item item)
    {
        if ((used_.size() + 1) * 2 > slots_.size()) {
            grow();
        }
        std::uint64_t key = (static_cast<std::uint64_t>(item.dotted) << 32) | item.origin;
        std::size_t mask = slots_.size() - 1;
        std::size_t i = hash(key) & mask;
        while (slots_[i] != empty_slot) {
            if (slots_[i] == key) {
                return false;
            }
            i = (i + 1) & mask;
        }
        slots_[i] = key;
        used_.push_back(i);
        return true;
    }

private:
    static constexpr std::uint64_t empty_slot = ~std::uint64_t{0};

    static std::size_t hash(std::uint64_t key)
    {
        key ^= key >> 29;
        key *= 0xbf58476d1ce4e5b9ULL;
        key ^= key >> 32;
        return static_cast<std::size_t>(key);
    }

    void grow()
    {
        std::vector<std::uint64_t> keys;
        keys.reserve(used_.size());
        for (auto i : used_) {
            keys.push_back(slots_[i]);
        }
        slots_.assign(slots_.size() * 2, empty_slot);
        used_.clear();
        std::size_t mask = slots_.size() - 1;
        for (auto key : keys) {
            std::size_t i = hash(key) & mask;
            while (slots_[i] != empty_slot) {
                i = (i + 1) & mask;
            }
            slots_[i] = key;
            used_.push_back(i);
        }
    }

    std::vector<std::uint64_t> slots_;
    std::vector<std::size_t> used_;
};

}  // namespace

AlphabetError::AlphabetError(std::size_t offset, Terminal symbol)
    : std::invalid_argument("symbol " + terminal_to_text(symbol) + " at offset " + std::to_string(offset) +
                            " is not in the grammar alphabet"),
      offset_(offset), symbol_(symbol)
{
}

struct CfgRecognizer::Tables {
    std::int32_t num_vars = 0;
    std::int32_t start = 0;
    std::vector<std::int32_t> rule_lhs;
    std::vector<std::uint32_t> rule_dotted;    // dotted id of "lhs -> . rhs"
    std::vector<std::int32_t> dotted_next;     // terminal code, K + var, or complete_marker
    std::vector<std::int32_t> dotted_rule;
    std::vector<char> nullable;
    // Rules of variable v worth predicting when the next input symbol is la
    // (la == K means end of input): predict[off[v*(K+1)+la] .. off[v*(K+1)+la+1]).
    std::vector<std::uint32_t> predict_off;
    std::vector<std::int32_t> predict;

    std::pair<std::uint32_t, std::uint32_t> predictions(std::int32_t var, std::int32_t la) const
    {
        std::size_t slot = static_cast<std::size_t>(var) * (K + 1) + la;
        return {predict_off[slot], predict_off[slot + 1]};
    }
};

CfgRecognizer::CfgRecognizer(const Grammar& g)
{
    auto diags = grammar_validate(g);
    if (!diags.empty()) {
        throw GrammarError("invalid grammar: " + diags.front().message);
    }

    auto t = std::make_shared<Tables>();
    std::map<std::string, std::int32_t> var_index;
    for (const auto& v : g.variables()) {
        var_index.emplace(v, static_cast<std::int32_t>(var_index.size()));
    }
    t->num_vars = static_cast<std::int32_t>(var_index.size());
    t->start = var_index.at(g.start());
    for (Terminal term : g.terminals()) {
        alphabet_.set(term.code);
    }

    const auto& rules = g.rules();
    std::vector<std::vector<std::int32_t>> rhs_codes(rules.size());
    for (std::size_t r = 0; r < rules.size(); ++r) {
        t->rule_lhs.push_back(var_index.at(rules[r].lhs));
        t->rule_dotted.push_back(static_cast<std::uint32_t>(t->dotted_next.size()));
        for (const auto& s : rules[r].rhs) {
            std::int32_t code = s.is_terminal() ? s.terminal.code : K + var_index.at(s.variable);
            rhs_codes[r].push_back(code);
            t->dotted_next.push_back(code);
            t->dotted_rule.push_back(static_cast<std::int32_t>(r));
        }
        t->dotted_next.push_back(complete_marker);
        t->dotted_rule.push_back(static_cast<std::int32_t>(r));
    }

    // Nullable variables.
    t->nullable.assign(t->num_vars, 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            if (t->nullable[t->rule_lhs[r]]) {
                continue;
            }
            bool all = true;
            for (auto code : rhs_codes[r]) {
                if (code < K || !t->nullable[code - K]) {
                    all = false;
                    break;
                }
            }
            if (all) {
                t->nullable[t->rule_lhs[r]] = 1;
                changed = true;
            }
        }
    }

    // FIRST sets of variables.
    using TermSet = std::bitset<terminal_count>;
    std::vector<TermSet> first(t->num_vars);
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t r = 0; r < rules.size(); ++r) {
            TermSet& target = first[t->rule_lhs[r]];
            TermSet before = target;
            for (auto code : rhs_codes[r]) {
                if (code < K) {
                    target.set(code);
                    break;
                }
                target |= first[code - K];
                if (!t->nullable[code - K]) {
                    break;
                }
            }
            if (target != before) {
                changed = true;
            }
        }
    }

    std::vector<TermSet> rule_first(rules.size());
    std::vector<char> rule_nullable(rules.size(), 1);
    std::vector<std::vector<std::int32_t>> rules_of(t->num_vars);
    for (std::size_t r = 0; r < rules.size(); ++r) {
        rules_of[t->rule_lhs[r]].push_back(static_cast<std::int32_t>(r));
        for (auto code : rhs_codes[r]) {
            if (code < K) {
                rule_first[r].set(code);
                rule_nullable[r] = 0;
                break;
            }
            rule_first[r] |= first[code - K];
            if (!t->nullable[code - K]) {
                rule_nullable[r] = 0;
                break;
            }
        }
    }

    t->predict_off.reserve(static_cast<std::size_t>(t->num_vars) * (K + 1) + 1);
    for (std::int32_t v = 0; v < t->num_vars; ++v) {
        for (std::int32_t la = 0; la <= K; ++la) {
            t->predict_off.push_back(static_cast<std::uint32_t>(t->predict.size()));
            for (auto r : rules_of[v]) {
                if (rule_nullable[r] || (la < K && rule_first[r].test(la))) {
                    t->predict.push_back(r);
                }
            }
        }
    }
    t->predict_off.push_back(static_cast<std::uint32_t>(t->predict.size()));

    tables_ = std::move(t);
}

Recognition CfgRecognizer::recognize(WordView w) const
{
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (!alphabet_.test(w[i].code)) {
            throw AlphabetError(i, w[i]);
        }
    }

    const Tables& t = *tables_;
    const std::size_t n = w.size();
    auto lookahead = [&](std::size_t k) { return k < n ? static_cast<std::int32_t>(w[k].code) : K; };

    std::vector<Item> items;
    items.reserve(64);
    std::vector<std::size_t> set_begin(n + 2, 0);
    std::vector<std::uint32_t> predicted(t.num_vars, 0);
    ItemSet seen;

    auto add = [&](Item item) {
        if (seen.insert(item)) {
            items.push_back(item);
        }
    };

    auto predict = [&](std::int32_t var, std::size_t k) {
        auto [b, e] = t.predictions(var, lookahead(k));
        for (auto i = b; i < e; ++i) {
            add(Item{t.rule_dotted[t.predict[i]], static_cast<std::uint32_t>(k)});
        }
    };

    predicted[t.start] = 1;
    predict(t.start, 0);

    for (std::size_t k = 0;; ++k) {
        const auto stamp = static_cast<std::uint32_t>(k + 1);
        for (std::size_t idx = set_begin[k]; idx < items.size(); ++idx) {
            const Item item = items[idx];
            const std::int32_t next = t.dotted_next[item.dotted];
            if (next == complete_marker) {
                const std::int32_t lhs_code = K + t.rule_lhs[t.dotted_rule[item.dotted]];
                const std::size_t origin = item.origin;
                // When origin == k the set is still growing; re-read its size.
                for (std::size_t j = set_begin[origin]; j < (origin == k ? items.size() : set_begin[origin + 1]);
                     ++j) {
                    const Item waiting = items[j];
                    if (t.dotted_next[waiting.dotted] == lhs_code) {
                        add(Item{waiting.dotted + 1, waiting.origin});
                    }
                }
            } else if (next >= K) {
                const std::int32_t var = next - K;
                if (predicted[var] != stamp) {
                    predicted[var] = stamp;
                    predict(var, k);
                }
                if (t.nullable[var]) {
                    add(Item{item.dotted + 1, item.origin});
                }
            }
        }

        if (k == n) {
            break;
        }

        // Scan. Distinct items map to distinct scanned items, so no dedupe here.
        set_begin[k + 1] = items.size();
        const std::int32_t sym = w[k].code;
        for (std::size_t idx = set_begin[k]; idx < set_begin[k + 1]; ++idx) {
            if (t.dotted_next[items[idx].dotted] == sym) {
                items.push_back(Item{items[idx].dotted + 1, items[idx].origin});
            }
        }
        if (items.size() == set_begin[k + 1]) {
            return Recognition{false, k};
        }
        seen.clear();
        for (std::size_t idx = set_begin[k + 1]; idx < items.size(); ++idx) {
            seen.insert(items[idx]);
        }
    }

    for (std::size_t idx = set_begin[n]; idx < items.size(); ++idx) {
        const Item item = items[idx];
        if (item.origin == 0 && t.dotted_next[item.dotted] == complete_marker &&
            t.rule_lhs[t.dotted_rule[item.dotted]] == t.start) {
            return Recognition{true, n};
        }
    }
    return Recognition{false, n};
}

bool cfg_membership(const Grammar& g, WordView w) { return CfgRecognizer(g).accepts(w); }

bool intersect_membership(std::span<const Grammar> gs, WordView w)
{
    for (const auto& g : gs) {
        if (!cfg_membership(g, w)) {
            return false;
        }
    }
    return true;
}

bool intersect_membership(std::span<const CfgRecognizer> gs, WordView w)
{
    for (const auto& g : gs) {
        if (!g.accepts(w)) {
            return false;
        }
    }
    return true;
}

}  // namespace idiomval
