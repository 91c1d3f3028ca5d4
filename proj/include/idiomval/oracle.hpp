#pragma once

#include "idiomval/generators.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace idiomval {

// Language definitions checked directly. Fillers of the generalized equality
// language are finite word sets here, so the oracle needs no grammar code.

struct LenSpec {  // L_len(n), or L#_len(n) with a delimiter
    LenParams params;
};

struct ChunkSpec {  // (L_len(n) {#})+ ; params.delimiter is the separator
    LenParams params;
};

struct EqSpec {  // { xx : x in Σ^n }
    std::size_t width = 1;
    std::vector<Terminal> alphabet;
};

struct LeqSpec {  // { xy : x, y in Σ^n, x ⪯* y }
    std::size_t width = 1;
    OrderSpec order{{Terminal::byte('0')}};
};

struct GeneralEqSpec {  // { w x w y1 ... w yk w z }
    std::size_t width = 1;
    std::vector<Terminal> alphabet;
    std::vector<Word> first_filler;
    std::vector<Word> middle_filler;
    std::vector<Word> last_filler;
};

using IdiomSpec = std::variant<LenSpec, ChunkSpec, EqSpec, LeqSpec, GeneralEqSpec>;

std::string spec_kind(const IdiomSpec& spec);

/// Every symbol that can occur in a word of the language, sorted by code.
std::vector<Terminal> spec_alphabet(const IdiomSpec& spec);

class OracleAlphabetError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws OracleAlphabetError if w has a symbol outside spec_alphabet(spec).
bool oracle_membership(const IdiomSpec& spec, WordView w);

class EnumerationBudgetError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t default_enumeration_budget = 10'000'000;

struct EquivReport {
    bool agree = true;
    std::optional<Word> counterexample;  // least in length-then-lexicographic order
    bool engine_verdict = false;         // engine's answer on the counterexample
    std::uint64_t words_checked = 0;
};

using MembershipFn = std::function<bool(WordView)>;

/// Number of words over an alphabet of size k with length <= max_len,
/// saturating at UINT64_MAX.
std::uint64_t count_words(std::size_t k, std::size_t max_len);

/// Compares engine and oracle on every word up to max_len (including the
/// empty word). Throws EnumerationBudgetError if that is more than budget
/// words.
EquivReport exhaustive_equiv(const IdiomSpec& spec, const MembershipFn& engine, std::size_t max_len,
    std::uint64_t budget = default_enumeration_budget);
EquivReport exhaustive_equiv(const IdiomSpec& spec, const Grammar& g, std::size_t max_len,
    std::uint64_t budget = default_enumeration_budget);
EquivReport exhaustive_equiv(const IdiomSpec& spec, const IdiomValidator& v, std::size_t max_len,
    std::uint64_t budget = default_enumeration_budget);

/// Distinct residuals of L_len(n) after the b^n digit prefixes, separated by
/// every suffix of length <= b^n (+1 with a delimiter) over the language's
/// alphabet.
std::size_t residual_dfa_states(const LenSpec& spec, std::uint64_t budget = default_enumeration_budget);

}  // namespace idiomval
