#include "idiomval/generators.hpp"
#include "idiomval/http_validate.hpp"

#include <fstream>

namespace idiomval {

namespace {

using nlohmann::json;

Expr prefixed(const Expr& e, const std::string& prefix)
{
    std::vector<Expr> kids;
    for (const auto& c : e.children()) {
        kids.push_back(prefixed(c, prefix));
    }
    switch (e.kind()) {
    case Expr::Kind::atom:
        return Expr::atom(prefix + e.atom_id());
    case Expr::Kind::all:
        return Expr::all(std::move(kids));
    case Expr::Kind::any:
        return Expr::any(std::move(kids));
    case Expr::Kind::negate:
        return Expr::negate(std::move(kids.front()));
    case Expr::Kind::constant:
        break;
    }
    return e;
}

class Builder {
public:
    void constraint(const std::string& id, const std::string& description, const Expr& expr)
    {
        constraints_.push_back({{"id", id}, {"description", description}, {"expr", expr.to_json()}});
        root_.push_back(expr);
    }

    void atom(const std::string& id, const char* kind, const std::string& path, const std::string& extractor,
        bool required = false)
    {
        atoms_.push_back({{"id", id}, {"kind", kind}, {"language_path", path}, {"extractor", extractor},
            {"required", required}});
    }

    void grammar_file(const std::string& path, const Grammar& g, const std::string& comment)
    {
        files_["http/" + path] = "# " + comment + "\n" + grammar_to_text(g);
    }

    void regex_file(const std::string& path, const std::string& pattern) { files_["http/" + path] = pattern + "\n"; }

    /// One atom per validator grammar, ids and files under `name`.
    Expr validator(const std::string& name, const IdiomValidator& v, const std::string& extractor,
        const std::string& comment)
    {
        for (const auto& ga : v.atoms) {
            std::string path = name + "/" + ga.id + ".cfg";
            grammar_file(path, ga.grammar, comment + ", " + ga.id);
            atom(name + "." + ga.id, "cfg", "http/" + path, extractor);
        }
        return prefixed(v.expr, name + ".");
    }

    std::map<std::string, std::string> finish()
    {
        json doc;
        doc["atoms"] = atoms_;
        doc["expr"] = Expr::all(root_).to_json();
        doc["meta"] = {{"name", "http"}, {"constraints", constraints_}};
        files_["http.profile"] = doc.dump(2) + "\n";
        return std::move(files_);
    }

private:
    json atoms_ = json::array();
    json constraints_ = json::array();
    std::vector<Expr> root_;
    std::map<std::string, std::string> files_;
};

std::vector<Terminal> printable_with_pad()
{
    auto sigma = printable_ascii_alphabet();
    sigma.push_back(Terminal::pad());
    return sigma;
}

}  // namespace

std::map<std::string, std::string> build_http_profile_files()
{
    Builder b;

    b.grammar_file("core.cfg", http_core_grammar(), "message head: start line, header fields, CRLF framing");
    b.atom("message-syntax", "cfg", "http/core.cfg", "head", true);
    b.constraint("message-syntax", "the message head matches the core HTTP/1.1 message grammar",
        Expr::atom("message-syntax"));

    b.regex_file("host.re", R"((?i)([^\r\n]*\r\n)*host:[^\r\n]*\r\n([^\r\n]*\r\n)*)");
    b.atom("host-line", "regex", "http/host.re", "request-headers-http11");
    b.constraint("host-required", "an HTTP/1.1 request carries a Host header field", Expr::atom("host-line"));

    b.regex_file("te-chunked.re", "(?i).*chunked.*");
    b.atom("te-chunked", "regex", "http/te-chunked.re", "header-value:TE");
    b.constraint("te-no-chunked", "the chunked transfer coding is not listed in TE",
        Expr::negate(Expr::atom("te-chunked")));

    LenParams len;
    len.width = 80;
    len.base = 10;
    len.body_alphabet = {Terminal::dot()};
    b.grammar_file("len80.cfg", gen_len(len), "80-digit decimal length field, least significant digit first");
    b.atom("content-length", "cfg", "http/len80.cfg", "content-length-canonical:80");
    b.constraint("content-length-matches", "Content-Length equals the number of body bytes",
        Expr::atom("content-length"));

    LenParams chunk;
    chunk.width = 8;
    chunk.base = 16;
    chunk.body_alphabet = {Terminal::dot()};
    chunk.delimiter = Terminal::sharp();
    b.grammar_file("chunk8.cfg", gen_chunk(chunk), "chunked framing, 8 hex digits per chunk size");
    b.atom("chunk-framing", "cfg", "http/chunk8.cfg", "chunked-canonical:8");
    b.constraint("chunked-framing-valid", "every chunk size matches its chunk data", Expr::atom("chunk-framing"));

    b.regex_file("has-cl.re", R"(([^\n]*\n)*content-length\n([^\n]*\n)*)");
    b.regex_file("has-te.re", R"(([^\n]*\n)*transfer-encoding\n([^\n]*\n)*)");
    b.atom("has-content-length", "regex", "http/has-cl.re", "header-names");
    b.atom("has-transfer-encoding", "regex", "http/has-te.re", "header-names");
    b.constraint("no-cl-and-te-together", "Content-Length and Transfer-Encoding do not both appear",
        Expr::negate(Expr::all({Expr::atom("has-content-length"), Expr::atom("has-transfer-encoding")})));

    b.constraint("range-order", "first-byte-pos of a byte range is not after last-byte-pos",
        b.validator("range", leq_validator(20, digit_order(10)), "range-pair:20", "byte positions, width 20"));

    b.constraint("warning-date-equals-date", "the warn-date of a Warning equals the Date header",
        b.validator("warning-date", eq_validator(29, printable_with_pad()), "warning-date-pair:29",
            "dates padded to 29"));

    b.constraint("last-modified-not-after-date", "Last-Modified is not later than Date",
        b.validator("last-modified", date_compare_validator(DateFormat::http_date), "date-pair:Last-Modified,Date",
            "YYYYMMDDhhmmss"));

    b.constraint("upgrade-equality", "a 101 response upgrades to the protocol the request asked for",
        b.validator("upgrade", eq_validator(24, printable_with_pad()), "upgrade-pair:24", "Upgrade values padded to 24"));

    b.constraint("version-compare", "the protocol version is at most HTTP/1.1",
        b.validator("version", leq_validator(2, digit_order(10)), "version-vs:11", "major and minor digit"));

    return b.finish();
}

void write_http_profile(const std::filesystem::path& dir)
{
    for (const auto& [rel, content] : build_http_profile_files()) {
        auto path = dir / rel;
        std::filesystem::create_directories(path.parent_path());
        std::ofstream out(path, std::ios::binary);
        out << content;
        if (!out) {
            throw std::runtime_error("cannot write " + path.string());
        }
    }
}

}  // namespace idiomval
