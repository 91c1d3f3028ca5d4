#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace idiomval {

/// A terminal symbol: one byte (0-255) or one of a few abstract symbols that
/// only ever appear in canonical words built by extractors.
struct Terminal {
    std::uint16_t code = 0;

    static constexpr std::uint16_t sharp_code = 256;
    static constexpr std::uint16_t dot_code = 257;
    static constexpr std::uint16_t pad_code = 258;

    static constexpr Terminal byte(std::uint8_t b) { return Terminal{b}; }
    static constexpr Terminal sharp() { return Terminal{sharp_code}; }
    static constexpr Terminal dot() { return Terminal{dot_code}; }
    static constexpr Terminal pad() { return Terminal{pad_code}; }

    constexpr bool is_byte() const { return code < 256; }

    constexpr auto operator<=>(const Terminal&) const = default;
};

/// Number of distinct terminal codes.
inline constexpr std::size_t terminal_count = 259;

using Word = std::vector<Terminal>;
using WordView = std::span<const Terminal>;

Word word_from_bytes(std::string_view bytes);

/// Bytes map to themselves; abstract symbols are written `<sharp>`, `<dot>`,
/// `<pad>` so that desk examples like "110abc" or "1a<sharp>" read naturally.
Word word_from_text(std::string_view text);

/// Inverse of word_from_text for display.
std::string word_to_text(WordView w);

/// Returns the abstract-symbol name ("sharp", "dot", "pad") or empty.
std::string_view abstract_name(Terminal t);

/// Parses an abstract-symbol name. Returns false if unknown.
bool abstract_from_name(std::string_view name, Terminal& out);

/// Terminals for every byte in `chars`, in order, without duplicates.
std::vector<Terminal> alphabet_from_chars(std::string_view chars);

/// Printable ASCII 0x20-0x7e plus horizontal tab.
std::vector<Terminal> printable_ascii_alphabet();

}  // namespace idiomval

template <>
struct std::hash<idiomval::Terminal> {
    std::size_t operator()(idiomval::Terminal t) const noexcept { return t.code; }
};
