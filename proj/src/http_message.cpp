#include "idiomval/http.hpp"

#include <algorithm>
#include <cctype>

namespace idiomval {

namespace {

constexpr std::string_view crlf = "\r\n";

std::string_view trim_ows(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

[[noreturn]] void syntax_error(std::string_view bytes, std::size_t offset)
{
    // Locate the CRLF-delimited line holding the offending byte.
    std::size_t line_start = 0;
    std::size_t line_no = 0;
    for (;;) {
        auto end = bytes.find(crlf, line_start);
        if (end == std::string_view::npos || end + 2 > offset) {
            break;
        }
        line_start = end + 2;
        ++line_no;
    }
    auto line_end = std::min(bytes.find(crlf, line_start), bytes.size());
    std::string_view line = bytes.substr(line_start, line_end - line_start);

    std::string what;
    if (line_no == 0) {
        what = "malformed start line";
    } else if (line.find(':') == std::string_view::npos && !line.empty()) {
        what = "header line " + std::to_string(line_no) + " has no ':'";
    } else {
        what = "malformed header line " + std::to_string(line_no);
    }
    throw HttpSyntaxError(offset, what);
}

}  // namespace

HttpSyntaxError::HttpSyntaxError(std::size_t offset, const std::string& what)
    : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset)
{
}

bool iequals(std::string_view a, std::string_view b)
{
    return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
        return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
    });
}

std::string to_lower(std::string_view s)
{
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::vector<std::string> HttpMessage::header_values(std::string_view name) const
{
    std::vector<std::string> out;
    for (const auto& h : headers) {
        if (iequals(h.name, name)) {
            out.push_back(h.value);
        }
    }
    return out;
}

bool HttpMessage::has_header(std::string_view name) const
{
    return std::any_of(headers.begin(), headers.end(), [&](const HeaderField& h) { return iequals(h.name, name); });
}

std::string HttpMessage::serialize() const
{
    std::string out = start_line;
    out += crlf;
    for (const auto& h : headers) {
        out += h.raw_line;
        out += crlf;
    }
    out += crlf;
    out += body;
    return out;
}

std::string_view message_head(std::string_view bytes)
{
    auto end = bytes.find("\r\n\r\n");
    return end == std::string_view::npos ? bytes : bytes.substr(0, end + 4);
}

HttpMessage parse_http_message(std::string_view bytes)
{
    if (bytes.empty()) {
        throw HttpSyntaxError(0, "empty message");
    }
    std::string_view head = message_head(bytes);
    Recognition r = http_core_recognizer().recognize(word_from_bytes(head));
    if (!r.accepted) {
        if (r.viable_prefix == head.size()) {
            throw HttpSyntaxError(head.size(), "header section not terminated by an empty line");
        }
        syntax_error(bytes, r.viable_prefix);
    }

    HttpMessage m;
    std::string_view lines = head.substr(0, head.size() - 4);
    m.body = std::string(bytes.substr(head.size()));

    auto first_end = std::min(lines.find(crlf), lines.size());
    m.start_line = std::string(lines.substr(0, first_end));
    std::size_t pos = first_end;
    while (pos < lines.size()) {
        pos += 2;
        auto end = std::min(lines.find(crlf, pos), lines.size());
        std::string_view line = lines.substr(pos, end - pos);
        auto colon = line.find(':');
        m.headers.push_back(HeaderField{std::string(line.substr(0, colon)),
            std::string(trim_ows(line.substr(colon + 1))), std::string(line)});
        pos = end;
    }

    std::string_view sl = m.start_line;
    auto sp1 = sl.find(' ');
    if (sl.starts_with("HTTP/")) {
        m.kind = MessageKind::response;
        m.version = std::string(sl.substr(0, sp1));
        m.status = std::stoi(std::string(sl.substr(sp1 + 1, 3)));
        m.reason = std::string(sl.substr(sp1 + 5));
    } else {
        m.kind = MessageKind::request;
        auto sp2 = sl.find(' ', sp1 + 1);
        m.method = std::string(sl.substr(0, sp1));
        m.target = std::string(sl.substr(sp1 + 1, sp2 - sp1 - 1));
        m.version = std::string(sl.substr(sp2 + 1));
    }
    return m;
}

}  // namespace idiomval
