#include "idiomval/terminal.hpp"

#include <algorithm>

namespace idiomval {

Word word_from_bytes(std::string_view bytes)
{
    Word w;
    w.reserve(bytes.size());
    for (unsigned char c : bytes) {
        w.push_back(Terminal::byte(c));
    }
    return w;
}

Word word_from_text(std::string_view text)
{
    Word w;
    w.reserve(text.size());
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] == '<') {
            auto close = text.find('>', i);
            Terminal t;
            if (close != std::string_view::npos &&
                abstract_from_name(text.substr(i + 1, close - i - 1), t)) {
                w.push_back(t);
                i = close + 1;
                continue;
            }
        }
        w.push_back(Terminal::byte(static_cast<unsigned char>(text[i])));
        ++i;
    }
    return w;
}

std::string word_to_text(WordView w)
{
    std::string out;
    out.reserve(w.size());
    for (Terminal t : w) {
        if (t.is_byte()) {
            out.push_back(static_cast<char>(t.code));
        } else {
            out += '<';
            out += abstract_name(t);
            out += '>';
        }
    }
    return out;
}

std::string_view abstract_name(Terminal t)
{
    switch (t.code) {
    case Terminal::sharp_code:
        return "sharp";
    case Terminal::dot_code:
        return "dot";
    case Terminal::pad_code:
        return "pad";
    default:
        return {};
    }
}

bool abstract_from_name(std::string_view name, Terminal& out)
{
    if (name == "sharp") {
        out = Terminal::sharp();
    } else if (name == "dot") {
        out = Terminal::dot();
    } else if (name == "pad") {
        out = Terminal::pad();
    } else {
        return false;
    }
    return true;
}

std::vector<Terminal> alphabet_from_chars(std::string_view chars)
{
    std::vector<Terminal> out;
    for (Terminal t : word_from_text(chars)) {
        if (std::find(out.begin(), out.end(), t) == out.end()) {
            out.push_back(t);
        }
    }
    return out;
}

std::vector<Terminal> printable_ascii_alphabet()
{
    std::vector<Terminal> out;
    out.push_back(Terminal::byte('\t'));
    for (int c = 0x20; c <= 0x7e; ++c) {
        out.push_back(Terminal::byte(static_cast<std::uint8_t>(c)));
    }
    return out;
}

}  // namespace idiomval
