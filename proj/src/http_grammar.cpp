#include "idiomval/http.hpp"

#include <string_view>

namespace idiomval {

namespace {

Symbol v(const char* name) { return Symbol::var(name); }
Symbol t(char c) { return Symbol::term(Terminal::byte(static_cast<std::uint8_t>(c))); }

void one_of(Grammar& g, const char* lhs, unsigned lo, unsigned hi)
{
    for (unsigned c = lo; c <= hi; ++c) {
        g.add_rule(lhs, {Symbol::term(Terminal::byte(static_cast<std::uint8_t>(c)))});
    }
}

void one_of(Grammar& g, const char* lhs, std::string_view chars)
{
    for (char c : chars) {
        g.add_rule(lhs, {t(c)});
    }
}

Grammar build_core()
{
    Grammar g("head");
    for (unsigned b = 0; b < 256; ++b) {
        g.declare_terminal(Terminal::byte(static_cast<std::uint8_t>(b)));
    }

    g.add_rule("head", {v("start-line"), v("crlf"), v("fields"), v("crlf")});
    g.add_rule("fields", {});
    g.add_rule("fields", {v("fields"), v("field"), v("crlf")});
    g.add_rule("start-line", {v("request-line")});
    g.add_rule("start-line", {v("status-line")});

    g.add_rule("request-line", {v("token"), v("sp"), v("target"), v("sp"), v("version")});
    g.add_rule("target", {v("vchar")});
    g.add_rule("target", {v("target"), v("vchar")});
    g.add_rule("version", {t('H'), t('T'), t('T'), t('P'), t('/'), v("digit"), t('.'), v("digit")});

    g.add_rule("status-line",
        {v("version"), v("sp"), v("digit"), v("digit"), v("digit"), v("sp"), v("text")});
    g.add_rule("text", {});
    g.add_rule("text", {v("text"), v("text-char")});

    g.add_rule("field", {v("token"), t(':'), v("text")});

    g.add_rule("token", {v("tchar")});
    g.add_rule("token", {v("token"), v("tchar")});

    g.add_rule("crlf", {t('\r'), t('\n')});
    g.add_rule("sp", {t(' ')});

    one_of(g, "digit", '0', '9');
    one_of(g, "tchar", "!#$%&'*+-.^_`|~");
    one_of(g, "tchar", '0', '9');
    one_of(g, "tchar", 'A', 'Z');
    one_of(g, "tchar", 'a', 'z');
    one_of(g, "vchar", 0x21, 0x7e);
    g.add_rule("text-char", {t('\t')});
    g.add_rule("text-char", {t(' ')});
    g.add_rule("text-char", {v("vchar")});
    one_of(g, "text-char", 0x80, 0xff);
    return g;
}

}  // namespace

const Grammar& http_core_grammar()
{
    static const Grammar g = build_core();
    return g;
}

const CfgRecognizer& http_core_recognizer()
{
    static const CfgRecognizer r(http_core_grammar());
    return r;
}

}  // namespace idiomval
