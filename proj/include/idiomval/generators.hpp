#pragma once

#include "idiomval/grammar.hpp"
#include "idiomval/validator.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace idiomval {

class InvalidParams : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class DigitOrder { lsd_first, msd_first };

/// Terminal for digit value d: '0'-'9' then 'a'-'z'.
Terminal digit_symbol(unsigned d);

/// Length-field language parameters: an n-digit base-b field followed by a
/// body over W whose length equals the field's value, optionally with a
/// delimiter between field and body.
struct LenParams {
    std::size_t width = 1;
    unsigned base = 2;
    std::vector<Terminal> body_alphabet;
    DigitOrder order = DigitOrder::lsd_first;
    std::optional<Terminal> delimiter;

    std::vector<Terminal> digit_alphabet() const;
    /// Throws InvalidParams.
    void check() const;
};

/// Grammar with variables S, X0..Xn, F0..F(n-1): S -> X0, Xn -> ε (or the
/// delimiter), Xi -> d X(i+1) F_k^d for every digit d, F_j -> F_(j-1)^b,
/// F0 -> c for c in W. F_k derives exactly the W-words of length b^k.
/// Rule count: b*n + (n-1) + |W| + 2.
Grammar gen_len(const LenParams& p);

/// (L_len(n) {delim})+ : gen_len without the inner delimiter plus a fresh
/// start Z -> S delim Z | S delim. Requires p.delimiter.
Grammar gen_chunk(const LenParams& p);

/// {xy : x, y in Σ^n, x_i = y_i}. 2|Σ| rules.
Grammar gen_eq_component(std::size_t n, std::size_t i, std::span<const Terminal> alphabet);

/// Conjunction of the n position components; accepts exactly {xx : x in Σ^n}.
IdiomValidator eq_validator(std::size_t n, std::span<const Terminal> alphabet);

/// A total order on an alphabet, given in ascending order.
class OrderSpec {
public:
    explicit OrderSpec(std::vector<Terminal> ascending);

    const std::vector<Terminal>& symbols() const { return ascending_; }
    Terminal min() const { return ascending_.front(); }
    bool contains(Terminal t) const;
    std::size_t rank(Terminal t) const;
    bool leq(Terminal a, Terminal b) const { return rank(a) <= rank(b); }

private:
    std::vector<Terminal> ascending_;
};

/// '0' < '1' < ... for the given base.
OrderSpec digit_order(unsigned base = 10);

/// {xy : x, y in Σ^n, x_i ⪯ y_i}.
Grammar gen_leq_component(std::size_t n, std::size_t i, const OrderSpec& ord);

/// The 2n-language boolean combination for {xy : x ⪯* y}: full equality, or
/// for some i, equal up to i-1, different at i, and x_i ⪯ y_i.
/// Atoms are named eq1..eqN and leq1..leqN.
IdiomValidator leq_validator(std::size_t n, const OrderSpec& ord);

/// Left-pads the shorter word with the order's minimal symbol.
/// Throws InvalidParams for symbols outside the order.
std::pair<Word, Word> pad_for_compare(WordView x, WordView y, const OrderSpec& ord);

/// Parameters for w x w y1 ... w yk w z with |w| = n, x in L_fm, each yj in
/// L_mm, z in L_lm, k >= 0.
struct GeneralEqParams {
    std::size_t width = 1;
    std::vector<Terminal> alphabet;
    Grammar first_filler;
    Grammar middle_filler;
    Grammar last_filler;
};

/// Position-i component with symbol-indexed block variables:
///   S -> P_c F Q_c P_c L | P_c F P_c L,  Q_c -> P_c M Q_c | P_c M,
///   P_c -> T^(i-1) c T^(n-i),  T -> c
/// where F, M, L start renamed copies of the filler grammars.
Grammar gen_general_eq_component(const GeneralEqParams& p, std::size_t i);
IdiomValidator general_eq_validator(const GeneralEqParams& p);

/// Grammar whose language is exactly the given finite set of words.
Grammar finite_language_grammar(const std::vector<Word>& words);

enum class DateFormat { http_date };

/// Earlier-or-equal check over two concatenated YYYYMMDDhhmmss blocks.
IdiomValidator date_compare_validator(DateFormat format);

/// Canonical date width for date_compare_validator.
inline constexpr std::size_t date_canonical_width = 14;

}  // namespace idiomval
