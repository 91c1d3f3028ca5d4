#include "idiomval/cli.hpp"

#include "idiomval/http_validate.hpp"
#include "idiomval/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace idiomval {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string read_bytes(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw UsageError("cannot read " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<Terminal> symbols(const std::string& text)
{
    Word w = word_from_text(text);
    return {w.begin(), w.end()};
}

std::vector<Word> word_list(const std::string& text)
{
    std::vector<Word> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(word_from_text(item));
    }
    if (text.empty() || text.back() == ',') {
        out.push_back({});
    }
    return out;
}

void print_grammar(std::ostream& out, const Grammar& g)
{
    out << "# " << g.rule_count() << " rules, size " << grammar_size(g) << "\n" << grammar_to_text(g);
}

void print_validator(std::ostream& out, const IdiomValidator& v)
{
    for (const auto& a : v.atoms) {
        out << "# atom " << a.id << "\n";
        print_grammar(out, a.grammar);
        out << "\n";
    }
    out << "# expr " << v.expr.to_json().dump() << "\n";
}

struct GenOptions {
    std::size_t n = 1;
    std::size_t i = 0;
    unsigned base = 2;
    std::string body = "a";
    bool msd_first = false;
    std::string delimiter;
    std::string alphabet = "ab";
    std::string order = "0123456789";
    std::string first = "#";
    std::string middle = "#";
    std::string last = "#";
};

LenParams len_params(const GenOptions& o)
{
    LenParams p;
    p.width = o.n;
    p.base = o.base;
    p.body_alphabet = symbols(o.body);
    p.order = o.msd_first ? DigitOrder::msd_first : DigitOrder::lsd_first;
    if (!o.delimiter.empty()) {
        Word d = word_from_text(o.delimiter);
        if (d.size() != 1) {
            throw InvalidParams("delimiter must be a single symbol");
        }
        p.delimiter = d.front();
    }
    return p;
}

void run_gen(const std::string& kind, const GenOptions& o, std::ostream& out)
{
    if (kind == "len") {
        print_grammar(out, gen_len(len_params(o)));
    } else if (kind == "chunk") {
        GenOptions with_delim = o;
        if (with_delim.delimiter.empty()) {
            with_delim.delimiter = "<sharp>";
        }
        print_grammar(out, gen_chunk(len_params(with_delim)));
    } else if (kind == "eq") {
        auto sigma = symbols(o.alphabet);
        if (o.i) {
            print_grammar(out, gen_eq_component(o.n, o.i, sigma));
        } else {
            print_validator(out, eq_validator(o.n, sigma));
        }
    } else if (kind == "leq") {
        OrderSpec ord(symbols(o.order));
        if (o.i) {
            print_grammar(out, gen_leq_component(o.n, o.i, ord));
        } else {
            print_validator(out, leq_validator(o.n, ord));
        }
    } else {
        GeneralEqParams p{o.n, symbols(o.alphabet), finite_language_grammar(word_list(o.first)),
            finite_language_grammar(word_list(o.middle)), finite_language_grammar(word_list(o.last))};
        if (o.i) {
            print_grammar(out, gen_general_eq_component(p, o.i));
        } else {
            print_validator(out, general_eq_validator(p));
        }
    }
}

void print_report(std::ostream& out, const ValidationReport& r)
{
    out << "overall: " << (r.overall ? "valid" : "invalid") << "\n";
    for (const auto& c : r.constraints) {
        std::string line = std::string(to_string(c.status));
        line.resize(9, ' ');
        out << line << c.id;
        std::vector<std::string> notes;
        for (const auto& a : c.atoms) {
            if (a.status == VerdictStatus::fail && !a.note.empty() &&
                std::find(notes.begin(), notes.end(), a.note) == notes.end()) {
                notes.push_back(a.note);
                out << "  (" << a.note << ")";
            }
        }
        out << "\n";
    }
}

Profile open_profile(const std::string& path)
{
    try {
        return load_http_profile(path);
    } catch (const ProfileError& e) {
        throw UsageError(std::string("profile: ") + e.what());
    }
}

struct LabeledCase {
    std::string name;
    bool valid = false;
};

std::vector<LabeledCase> read_labels(const fs::path& path)
{
    std::istringstream in(read_bytes(path));
    std::vector<LabeledCase> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto comma = line.rfind(',');
        std::string label = comma == std::string::npos ? "" : line.substr(comma + 1);
        if (label != "valid" && label != "invalid") {
            throw UsageError(path.string() + ":" + std::to_string(line_no) + ": expected 'file,valid|invalid'");
        }
        out.push_back({line.substr(0, comma), label == "valid"});
    }
    return out;
}

bool classify(const Profile& profile, const fs::path& dir, const std::string& name)
{
    auto plus = name.find('+');
    if (plus == std::string::npos) {
        return validate_http(profile, MessageInput::from_bytes(read_bytes(dir / name))).overall;
    }
    auto request = MessageInput::from_bytes(read_bytes(dir / name.substr(0, plus)));
    auto response = MessageInput::from_bytes(read_bytes(dir / name.substr(plus + 1)));
    return validate_http(profile, request, response).overall;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Input validators built from grammar and regex membership checks", "idiomval"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "print an idiom grammar in grammar text format");
    gen_cmd->require_subcommand(1);
    std::string gen_kind;
    for (const char* kind : {"len", "chunk", "eq", "leq", "general-eq"}) {
        auto* sub = gen_cmd->add_subcommand(kind);
        sub->callback([&gen_kind, kind] { gen_kind = kind; });
        sub->add_option("--n", gen.n, "field or block width")->required()->check(CLI::PositiveNumber);
        std::string_view k = kind;
        if (k == "len" || k == "chunk") {
            sub->add_option("--base", gen.base, "digit base (2-36)");
            sub->add_option("--body-alphabet", gen.body, "body symbols, e.g. abc or <dot>");
            sub->add_flag("--msd-first", gen.msd_first, "most significant digit first");
            sub->add_option("--delimiter", gen.delimiter, "delimiter symbol (chunk default <sharp>)");
        } else {
            sub->add_option("--i", gen.i, "only the component for position i");
            if (k == "leq") {
                sub->add_option("--order", gen.order, "alphabet in ascending order");
            } else {
                sub->add_option("--alphabet", gen.alphabet, "alphabet symbols");
            }
            if (k == "general-eq") {
                sub->add_option("--first-filler", gen.first, "comma-separated filler words after the first block");
                sub->add_option("--middle-filler", gen.middle, "comma-separated filler words between blocks");
                sub->add_option("--last-filler", gen.last, "comma-separated filler words after the last block");
            }
        }
    }

    std::uint64_t budget = default_enumeration_budget;
    auto* verify_cmd = app.add_subcommand("verify", "exhaustive oracle equivalence matrix (JSON)");
    verify_cmd->add_option("--budget", budget, "maximum words per case");

    std::string profile_path = IDIOMVAL_DEFAULT_PROFILE;
    std::string message_path;
    std::string paired_path;
    bool as_json = false;
    auto* validate_cmd = app.add_subcommand("validate", "validate one HTTP message or a request/response pair");
    validate_cmd->add_option("--profile", profile_path, "profile document");
    validate_cmd->add_option("--message", message_path, "message file (the request in pair mode)")->required();
    validate_cmd->add_option("--paired", paired_path, "response file for pair mode");
    validate_cmd->add_flag("--json", as_json, "print the report as JSON");

    std::string corpus_dir;
    std::string labels_path;
    auto* corpus_cmd = app.add_subcommand("corpus", "validate a labeled corpus and compare with the labels");
    corpus_cmd->add_option("--dir", corpus_dir, "corpus directory")->required();
    corpus_cmd->add_option("--labels", labels_path, "labels file: one 'file,valid|invalid' per line")->required();
    corpus_cmd->add_option("--profile", profile_path, "profile document");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "idiomval: " << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (gen_cmd->parsed()) {
            std::ostringstream text;
            run_gen(gen_kind, gen, text);
            out << text.str();
            return exit_ok;
        }
        if (verify_cmd->parsed()) {
            auto summary = run_verify_matrix(budget);
            out << summary.to_json().dump(2) << "\n";
            return summary.all_agree() ? exit_ok : exit_invalid;
        }
        if (validate_cmd->parsed()) {
            Profile profile = open_profile(profile_path);
            auto message = MessageInput::from_bytes(read_bytes(message_path));
            ValidationReport report = paired_path.empty()
                                          ? validate_http(profile, message)
                                          : validate_http(profile, message, MessageInput::from_bytes(read_bytes(paired_path)));
            if (as_json) {
                out << report.to_json().dump(2) << "\n";
            } else {
                print_report(out, report);
            }
            return report.overall ? exit_ok : exit_invalid;
        }
        Profile profile = open_profile(profile_path);
        auto cases = read_labels(labels_path);
        nlohmann::json summary{{"total", cases.size()}, {"agree", 0}, {"disagree", nlohmann::json::array()}};
        std::size_t agree = 0;
        for (const auto& c : cases) {
            if (classify(profile, corpus_dir, c.name) == c.valid) {
                ++agree;
            } else {
                summary["disagree"].push_back(c.name);
            }
        }
        summary["agree"] = agree;
        out << summary.dump(2) << "\n";
        return agree == cases.size() ? exit_ok : exit_invalid;
    } catch (const std::exception& e) {
        err << "idiomval: " << e.what() << "\n";
    }
    return exit_usage;
}

}  // namespace idiomval
