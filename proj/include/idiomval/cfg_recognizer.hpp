#pragma once

#include "idiomval/grammar.hpp"

#include <bitset>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>

namespace idiomval {

/// Thrown when the input word contains a symbol outside the grammar's alphabet.
class AlphabetError : public std::invalid_argument {
public:
    AlphabetError(std::size_t offset, Terminal symbol);

    std::size_t offset() const { return offset_; }
    Terminal symbol() const { return symbol_; }

private:
    std::size_t offset_;
    Terminal symbol_;
};

struct Recognition {
    bool accepted = false;
    /// Length of the longest prefix that is still a prefix of some word of
    /// the language. Equals the word length when accepted.
    std::size_t viable_prefix = 0;
};

/// Earley recognizer compiled from a Grammar.
///
/// Handles epsilon rules with the nullable-advance rule at prediction time and
/// filters predictions with one symbol of lookahead. Worst case is cubic in the
/// word length. Instances are immutable and safe to share across threads.
class CfgRecognizer {
public:
    /// Throws GrammarError if grammar_validate reports anything.
    explicit CfgRecognizer(const Grammar& g);

    Recognition recognize(WordView w) const;
    bool accepts(WordView w) const { return recognize(w).accepted; }

    bool in_alphabet(Terminal t) const { return alphabet_.test(t.code); }

private:
    struct Tables;
    std::shared_ptr<const Tables> tables_;
    std::bitset<terminal_count> alphabet_;
};

bool cfg_membership(const Grammar& g, WordView w);

/// True iff every grammar accepts w; stops at the first rejection.
bool intersect_membership(std::span<const Grammar> gs, WordView w);
bool intersect_membership(std::span<const CfgRecognizer> gs, WordView w);

}  // namespace idiomval
