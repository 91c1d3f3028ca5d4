#include "idiomval/extractors.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace idiomval {

MessageInput MessageInput::from_bytes(std::string raw)
{
    MessageInput in;
    in.raw = std::move(raw);
    try {
        in.parsed = parse_http_message(in.raw);
    } catch (const HttpSyntaxError& e) {
        in.error = e.what();
    }
    return in;
}

MessageInput MessageInput::from_message(const HttpMessage& m)
{
    MessageInput in;
    in.raw = m.serialize();
    in.parsed = m;
    return in;
}

namespace {

struct ExtractorId {
    std::string_view name;
    std::string_view arg;
};

ExtractorId split_id(std::string_view id)
{
    auto colon = id.find(':');
    if (colon == std::string_view::npos) {
        return {id, {}};
    }
    return {id.substr(0, colon), id.substr(colon + 1)};
}

std::optional<std::size_t> parse_width(std::string_view s)
{
    std::size_t n = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), n);
    if (ec != std::errc() || p != s.data() + s.size() || n == 0) {
        return std::nullopt;
    }
    return n;
}

bool all_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string joined(const std::vector<std::string>& values)
{
    std::string out;
    for (const auto& v : values) {
        if (!out.empty()) {
            out += ", ";
        }
        out += v;
    }
    return out;
}

void append_reversed_padded(Word& w, std::string_view digits, std::size_t width)
{
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        w.push_back(Terminal::byte(static_cast<std::uint8_t>(std::tolower(static_cast<unsigned char>(*it)))));
    }
    w.insert(w.end(), width - digits.size(), Terminal::byte('0'));
}

void append_right_padded(Word& w, std::string_view s, std::size_t width)
{
    Word part = word_from_bytes(s);
    w.insert(w.end(), part.begin(), part.end());
    w.insert(w.end(), width - s.size(), Terminal::pad());
}

bool bodyless_status(const HttpMessage& m)
{
    return m.kind == MessageKind::response && ((m.status >= 100 && m.status < 200) || m.status == 204 || m.status == 304);
}

Extraction content_length(const HttpMessage& m, std::size_t width)
{
    auto values = m.header_values("Content-Length");
    if (values.empty()) {
        return Extraction::absent("no Content-Length");
    }
    if (m.has_header("Transfer-Encoding")) {
        return Extraction::absent("Transfer-Encoding overrides Content-Length");
    }
    if (bodyless_status(m)) {
        return Extraction::absent("status " + std::to_string(m.status) + " has no body");
    }
    if (values.size() > 1) {
        return Extraction::bad("duplicate Content-Length");
    }
    std::string_view digits = values.front();
    if (!all_digits(digits)) {
        return Extraction::bad("Content-Length is not a digit string");
    }
    if (digits.size() > width) {
        return Extraction::bad("Content-Length wider than " + std::to_string(width) + " digits");
    }
    Word w;
    append_reversed_padded(w, digits, width);
    w.insert(w.end(), m.body.size(), Terminal::dot());
    return Extraction::of(std::move(w));
}

// chunk-size [ chunk-ext ] CRLF starting at pos. Returns the size digits and
// the offset just past the CRLF.
struct SizeLine {
    std::string_view digits;
    std::size_t next = 0;
};

std::optional<SizeLine> size_line_at(std::string_view body, std::size_t pos)
{
    std::size_t p = pos;
    while (p < body.size() && is_hex(body[p])) {
        ++p;
    }
    if (p == pos) {
        return std::nullopt;
    }
    SizeLine line{body.substr(pos, p - pos), 0};
    if (p < body.size() && body[p] == ';') {
        while (p < body.size() && body[p] != '\r' && body[p] != '\n') {
            ++p;
        }
    }
    if (body.substr(p, 2) != "\r\n") {
        return std::nullopt;
    }
    line.next = p + 2;
    return line;
}

bool is_zero(std::string_view digits)
{
    return std::all_of(digits.begin(), digits.end(), [](char c) { return c == '0'; });
}

std::optional<std::uint64_t> hex_value(std::string_view digits)
{
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v, 16);
    if (ec != std::errc() || p != digits.data() + digits.size()) {
        return std::nullopt;
    }
    return v;
}

std::string_view final_coding(const std::string& te)
{
    std::string_view s = te;
    auto comma = s.rfind(',');
    if (comma != std::string_view::npos) {
        s = s.substr(comma + 1);
    }
    s = s.substr(0, s.find(';'));
    return trim(s);
}

// Chunk data is not cut at the declared size blindly: it ends at the declared
// size when a CRLF and another size line sit there, and otherwise at the
// earliest CRLF followed by a size line. The grammar then checks the counts.
Extraction chunked(const HttpMessage& m, std::size_t width)
{
    auto values = m.header_values("Transfer-Encoding");
    if (values.empty()) {
        return Extraction::absent("no Transfer-Encoding");
    }
    if (!iequals(final_coding(joined(values)), "chunked")) {
        return Extraction::absent("final transfer coding is not chunked");
    }
    std::string_view body = m.body;
    Word w;
    std::size_t pos = 0;
    for (;;) {
        auto line = size_line_at(body, pos);
        if (!line) {
            return Extraction::bad("malformed chunk-size line at body offset " + std::to_string(pos));
        }
        if (line->digits.size() > width) {
            return Extraction::bad("chunk size wider than " + std::to_string(width) + " hex digits");
        }
        append_reversed_padded(w, line->digits, width);
        if (is_zero(line->digits)) {
            w.push_back(Terminal::sharp());
            pos = line->next;
            break;
        }
        const std::size_t data = line->next;
        auto boundary_at = [&](std::size_t end) {
            return body.substr(end, 2) == "\r\n" && size_line_at(body, end + 2).has_value();
        };
        std::size_t end = std::string_view::npos;
        if (auto declared = hex_value(line->digits); declared && *declared <= body.size() - data &&
                                                     boundary_at(data + static_cast<std::size_t>(*declared))) {
            end = data + static_cast<std::size_t>(*declared);
        } else {
            for (std::size_t j = body.find("\r\n", data); j != std::string_view::npos; j = body.find("\r\n", j + 1)) {
                if (boundary_at(j)) {
                    end = j;
                    break;
                }
            }
        }
        if (end == std::string_view::npos) {
            return Extraction::bad("chunk data not followed by CRLF and a chunk-size line");
        }
        w.insert(w.end(), end - data, Terminal::dot());
        w.push_back(Terminal::sharp());
        pos = end + 2;
    }
    // trailer section
    for (;;) {
        if (body.substr(pos, 2) == "\r\n") {
            if (pos + 2 != body.size()) {
                return Extraction::bad("bytes after the end of the chunked body");
            }
            break;
        }
        auto end = body.find("\r\n", pos);
        if (end == std::string_view::npos) {
            return Extraction::bad("chunked body not terminated");
        }
        if (body.substr(pos, end - pos).find(':') == std::string_view::npos) {
            return Extraction::bad("malformed trailer line");
        }
        pos = end + 2;
    }
    return Extraction::of(std::move(w));
}

Extraction range_pair(const HttpMessage& m, std::size_t width)
{
    auto values = m.header_values("Range");
    if (values.empty()) {
        return Extraction::absent("no Range");
    }
    if (values.size() > 1) {
        return Extraction::bad("duplicate Range");
    }
    std::string_view v = values.front();
    auto eq = v.find('=');
    if (eq == std::string_view::npos) {
        return Extraction::bad("Range without '='");
    }
    if (!iequals(trim(v.substr(0, eq)), "bytes")) {
        return Extraction::absent("range unit is not bytes");
    }
    std::string_view set = trim(v.substr(eq + 1));
    if (set.find(',') != std::string_view::npos) {
        return Extraction::absent("multiple ranges");
    }
    auto dash = set.find('-');
    if (dash == std::string_view::npos) {
        return Extraction::bad("byte range without '-'");
    }
    std::string_view first = trim(set.substr(0, dash));
    std::string_view last = trim(set.substr(dash + 1));
    if (first.empty() || last.empty()) {
        return Extraction::absent("open-ended or suffix range");
    }
    if (!all_digits(first) || !all_digits(last)) {
        return Extraction::bad("byte positions must be digit strings");
    }
    if (first.size() > width || last.size() > width) {
        return Extraction::bad("byte position wider than " + std::to_string(width) + " digits");
    }
    Word w(width - first.size(), Terminal::byte('0'));
    Word f = word_from_bytes(first);
    w.insert(w.end(), f.begin(), f.end());
    w.insert(w.end(), width - last.size(), Terminal::byte('0'));
    Word l = word_from_bytes(last);
    w.insert(w.end(), l.begin(), l.end());
    return Extraction::of(std::move(w));
}

// warning-value = #warning ; warning = code SP agent SP quoted [SP quoted-date]
// Returns the first warn-date, "" if no warning carries one, nullopt if the
// field does not parse.
std::optional<std::string> first_warn_date(std::string_view v)
{
    std::size_t p = 0;
    auto skip_ows = [&] {
        while (p < v.size() && (v[p] == ' ' || v[p] == '\t')) {
            ++p;
        }
    };
    auto quoted = [&]() -> std::optional<std::string> {
        if (p >= v.size() || v[p] != '"') {
            return std::nullopt;
        }
        std::string out;
        for (++p; p < v.size(); ++p) {
            if (v[p] == '\\' && p + 1 < v.size()) {
                out += v[++p];
            } else if (v[p] == '"') {
                ++p;
                return out;
            } else {
                out += v[p];
            }
        }
        return std::nullopt;
    };
    auto word = [&] {
        std::size_t start = p;
        while (p < v.size() && v[p] != ' ' && v[p] != ',' && v[p] != '"') {
            ++p;
        }
        return p > start;
    };
    while (true) {
        skip_ows();
        if (p < v.size() && v[p] == ',') {
            ++p;
            continue;
        }
        if (p >= v.size()) {
            return std::string();
        }
        std::size_t code_start = p;
        if (!word() || p - code_start != 3 || !all_digits(v.substr(code_start, 3))) {
            return std::nullopt;
        }
        if (p >= v.size() || v[p] != ' ') {
            return std::nullopt;
        }
        ++p;
        if (!word() || p >= v.size() || v[p] != ' ') {
            return std::nullopt;
        }
        ++p;
        if (!quoted()) {
            return std::nullopt;
        }
        if (p < v.size() && v[p] == ' ' && p + 1 < v.size() && v[p + 1] == '"') {
            ++p;
            auto date = quoted();
            if (!date) {
                return std::nullopt;
            }
            return date;
        }
        skip_ows();
        if (p < v.size() && v[p] != ',') {
            return std::nullopt;
        }
    }
}

Extraction warning_date_pair(const HttpMessage& m, std::size_t width)
{
    auto warnings = m.header_values("Warning");
    if (warnings.empty()) {
        return Extraction::absent("no Warning");
    }
    std::string warn_date;
    for (const auto& w : warnings) {
        auto d = first_warn_date(w);
        if (!d) {
            return Extraction::bad("malformed Warning field");
        }
        if (!d->empty()) {
            warn_date = *d;
            break;
        }
    }
    if (warn_date.empty()) {
        return Extraction::absent("no warn-date");
    }
    auto dates = m.header_values("Date");
    if (dates.empty()) {
        return Extraction::absent("no Date");
    }
    if (dates.size() > 1) {
        return Extraction::bad("duplicate Date");
    }
    if (warn_date.size() > width || dates.front().size() > width) {
        return Extraction::bad("date wider than " + std::to_string(width));
    }
    Word w;
    append_right_padded(w, warn_date, width);
    append_right_padded(w, dates.front(), width);
    return Extraction::of(std::move(w));
}

Extraction date_pair(const HttpMessage& m, std::string_view arg)
{
    auto comma = arg.find(',');
    std::string_view first_name = arg.substr(0, comma);
    std::string_view second_name = arg.substr(comma + 1);
    auto a = m.header_values(first_name);
    auto b = m.header_values(second_name);
    if (a.empty() || b.empty()) {
        return Extraction::absent("needs both " + std::string(first_name) + " and " + std::string(second_name));
    }
    if (a.size() > 1 || b.size() > 1) {
        return Extraction::bad("duplicate date field");
    }
    auto ca = imf_fixdate_canonical(a.front());
    auto cb = imf_fixdate_canonical(b.front());
    if (!ca) {
        return Extraction::bad(std::string(first_name) + " is not an IMF-fixdate");
    }
    if (!cb) {
        return Extraction::bad(std::string(second_name) + " is not an IMF-fixdate");
    }
    return Extraction::of(word_from_bytes(*ca + *cb));
}

Extraction version_vs(const HttpMessage& m, std::string_view bound)
{
    // The core grammar guarantees "HTTP/" DIGIT "." DIGIT.
    std::string w{m.version[5], m.version[7]};
    w += bound;
    return Extraction::of(word_from_bytes(w));
}

bool valid_single(const ExtractorId& e)
{
    if (e.name == "head" || e.name == "request-headers-http11" || e.name == "header-names") {
        return e.arg.empty();
    }
    if (e.name == "header-value") {
        return !e.arg.empty();
    }
    if (e.name == "content-length-canonical" || e.name == "chunked-canonical" || e.name == "range-pair" ||
        e.name == "warning-date-pair") {
        return parse_width(e.arg).has_value();
    }
    if (e.name == "date-pair") {
        auto comma = e.arg.find(',');
        return comma != std::string_view::npos && comma > 0 && comma + 1 < e.arg.size();
    }
    if (e.name == "version-vs") {
        return e.arg.size() == 2 && all_digits(e.arg);
    }
    return false;
}

bool valid_pair(const ExtractorId& e) { return e.name == "upgrade-pair" && parse_width(e.arg).has_value(); }

}  // namespace

bool is_known_extractor(std::string_view id)
{
    auto e = split_id(id);
    return valid_single(e) || valid_pair(e);
}

bool is_pair_extractor(std::string_view id) { return valid_pair(split_id(id)); }

Extraction extract_canonical(const MessageInput& in, std::string_view id)
{
    auto e = split_id(id);
    if (!valid_single(e)) {
        if (valid_pair(e)) {
            return Extraction::absent("needs a request/response pair");
        }
        return Extraction::bad("unknown extractor '" + std::string(id) + "'");
    }
    if (e.name == "head") {
        return Extraction::of(word_from_bytes(message_head(in.raw)));
    }
    if (!in.parsed) {
        return Extraction::absent("message did not parse");
    }
    const HttpMessage& m = *in.parsed;

    if (e.name == "request-headers-http11") {
        if (m.kind != MessageKind::request || m.version != "HTTP/1.1") {
            return Extraction::absent("not an HTTP/1.1 request");
        }
        std::string block;
        for (const auto& h : m.headers) {
            block += h.raw_line;
            block += "\r\n";
        }
        return Extraction::of(word_from_bytes(block));
    }
    if (e.name == "header-names") {
        std::string names;
        for (const auto& h : m.headers) {
            names += to_lower(h.name);
            names += '\n';
        }
        return Extraction::of(word_from_bytes(names));
    }
    if (e.name == "header-value") {
        auto values = m.header_values(e.arg);
        if (values.empty()) {
            return Extraction::absent("no " + std::string(e.arg));
        }
        return Extraction::of(word_from_bytes(joined(values)));
    }
    if (e.name == "content-length-canonical") {
        return content_length(m, *parse_width(e.arg));
    }
    if (e.name == "chunked-canonical") {
        return chunked(m, *parse_width(e.arg));
    }
    if (e.name == "range-pair") {
        return range_pair(m, *parse_width(e.arg));
    }
    if (e.name == "warning-date-pair") {
        return warning_date_pair(m, *parse_width(e.arg));
    }
    if (e.name == "date-pair") {
        return date_pair(m, e.arg);
    }
    return version_vs(m, e.arg);
}

Extraction extract_canonical(const HttpMessage& m, std::string_view id)
{
    return extract_canonical(MessageInput::from_message(m), id);
}

Extraction extract_pair(const MessageInput& request, const MessageInput& response, std::string_view id)
{
    auto e = split_id(id);
    if (!valid_pair(e)) {
        return Extraction::bad("not a pair extractor: '" + std::string(id) + "'");
    }
    if (!request.parsed || !response.parsed) {
        return Extraction::absent("message did not parse");
    }
    const HttpMessage& req = *request.parsed;
    const HttpMessage& resp = *response.parsed;
    if (resp.kind != MessageKind::response || resp.status != 101) {
        return Extraction::absent("not a 101 response");
    }
    const std::size_t width = *parse_width(e.arg);
    auto offered = req.header_values("Upgrade");
    auto chosen = resp.header_values("Upgrade");
    if (chosen.empty()) {
        return Extraction::bad("101 response without Upgrade");
    }
    if (offered.empty()) {
        return Extraction::bad("101 response to a request without Upgrade");
    }
    std::string a = joined(offered);
    std::string b = joined(chosen);
    if (a.size() > width || b.size() > width) {
        return Extraction::bad("Upgrade value wider than " + std::to_string(width));
    }
    Word w;
    append_right_padded(w, a, width);
    append_right_padded(w, b, width);
    return Extraction::of(std::move(w));
}

std::optional<std::string> imf_fixdate_canonical(std::string_view d)
{
    static constexpr std::array<std::string_view, 7> days{"Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"};
    static constexpr std::array<std::string_view, 12> months{
        "Jan", "Feb", "Mar", "Apr", "May", "Jun", "Jul", "Aug", "Sep", "Oct", "Nov", "Dec"};
    // "Sun, 06 Nov 1994 08:49:37 GMT"
    if (d.size() != 29 || d.substr(3, 2) != ", " || d[7] != ' ' || d[11] != ' ' || d[16] != ' ' || d[19] != ':' ||
        d[22] != ':' || d.substr(25) != " GMT") {
        return std::nullopt;
    }
    if (std::find(days.begin(), days.end(), d.substr(0, 3)) == days.end()) {
        return std::nullopt;
    }
    auto month = std::find(months.begin(), months.end(), d.substr(8, 3));
    if (month == months.end()) {
        return std::nullopt;
    }
    std::string_view day = d.substr(5, 2), year = d.substr(12, 4), hh = d.substr(17, 2), mm = d.substr(20, 2),
                     ss = d.substr(23, 2);
    for (auto part : {day, year, hh, mm, ss}) {
        if (!all_digits(part)) {
            return std::nullopt;
        }
    }
    auto num = [](std::string_view s) { return std::stoi(std::string(s)); };
    if (num(day) < 1 || num(day) > 31 || num(hh) > 23 || num(mm) > 59 || num(ss) > 60) {
        return std::nullopt;
    }
    int mon = static_cast<int>(month - months.begin()) + 1;
    std::string out(year);
    out += static_cast<char>('0' + mon / 10);
    out += static_cast<char>('0' + mon % 10);
    out += day;
    out += hh;
    out += mm;
    out += ss;
    return out;
}

}  // namespace idiomval
