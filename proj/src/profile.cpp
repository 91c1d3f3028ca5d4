#include "idiomval/profile.hpp"

#include <chrono>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace idiomval {

namespace fs = std::filesystem;

const Atom* Profile::find_atom(std::string_view id) const
{
    for (const auto& a : atoms) {
        if (a.id == id) {
            return &a;
        }
    }
    return nullptr;
}

namespace {

using Kind = ProfileError::Kind;

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    if (!in) {
        throw ProfileError(Kind::dangling_reference, "cannot open " + p.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::shared_ptr<const Language> load_language(AtomKind kind, const fs::path& path)
{
    std::string text = read_file(path);
    if (kind == AtomKind::cfg) {
        Grammar g;
        try {
            g = parse_grammar_text(text);
        } catch (const GrammarError& e) {
            throw ProfileError(Kind::invalid_grammar, path.string() + ": " + e.what());
        }
        auto diags = grammar_validate(g);
        if (!diags.empty()) {
            throw ProfileError(Kind::invalid_grammar, path.string() + ": " + diags.front().message);
        }
        return std::make_shared<const Language>(CfgRecognizer(g));
    }
    // A regex file holds one pattern; a single trailing newline is not part of it.
    if (text.ends_with("\r\n")) {
        text.resize(text.size() - 2);
    } else if (text.ends_with('\n')) {
        text.pop_back();
    }
    try {
        return std::make_shared<const Language>(RegexMatcher(parse_regex(text)));
    } catch (const RegexSyntaxError& e) {
        throw ProfileError(Kind::invalid_regex, path.string() + ": " + e.what());
    }
}

Expr parse_expr(const nlohmann::json& j, const std::string& where)
{
    try {
        return Expr::from_json(j);
    } catch (const std::invalid_argument& e) {
        throw ProfileError(Kind::schema, where + ": " + e.what());
    }
}

template <typename T>
T field(const nlohmann::json& obj, const char* key, const std::string& where)
{
    if (!obj.contains(key)) {
        throw ProfileError(Kind::schema, where + ": missing \"" + key + "\"");
    }
    try {
        return obj.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw ProfileError(Kind::schema, where + ": \"" + key + "\" has the wrong type");
    }
}

}  // namespace

Profile load_profile(const nlohmann::json& doc, const fs::path& base_dir, const ExtractorCheck& known_extractor)
{
    if (!doc.is_object()) {
        throw ProfileError(Kind::schema, "profile must be a JSON object");
    }
    Profile p;
    std::set<std::string> ids;
    std::map<std::string, std::shared_ptr<const Language>> cache;

    if (doc.contains("atoms")) {
        if (!doc["atoms"].is_array()) {
            throw ProfileError(Kind::schema, "\"atoms\" must be an array");
        }
        for (const auto& aj : doc["atoms"]) {
            Atom a;
            a.id = field<std::string>(aj, "id", "atom");
            std::string where = "atom '" + a.id + "'";
            if (!ids.insert(a.id).second) {
                throw ProfileError(Kind::schema, where + ": duplicate id");
            }
            auto kind = field<std::string>(aj, "kind", where);
            if (kind == "cfg") {
                a.kind = AtomKind::cfg;
            } else if (kind == "regex") {
                a.kind = AtomKind::regex;
            } else {
                throw ProfileError(Kind::schema, where + ": kind must be \"cfg\" or \"regex\"");
            }
            a.language_path = field<std::string>(aj, "language_path", where);
            a.extractor = field<std::string>(aj, "extractor", where);
            a.required = aj.value("required", false);
            if (known_extractor && !known_extractor(a.extractor)) {
                throw ProfileError(Kind::dangling_reference, where + ": unknown extractor '" + a.extractor + "'");
            }
            auto key = kind + ":" + a.language_path;
            auto it = cache.find(key);
            if (it == cache.end()) {
                it = cache.emplace(key, load_language(a.kind, base_dir / a.language_path)).first;
            }
            a.language = it->second;
            p.atoms.push_back(std::move(a));
        }
    }

    auto check_refs = [&](const Expr& e, const std::string& where) {
        for (const auto& id : e.atom_ids()) {
            if (!ids.contains(id)) {
                throw ProfileError(Kind::dangling_reference, where + ": unknown atom '" + id + "'");
            }
        }
    };

    p.root = doc.contains("expr") ? parse_expr(doc["expr"], "expr") : Expr::constant(true);
    check_refs(p.root, "expr");

    const nlohmann::json* constraints = nullptr;
    if (doc.contains("meta") && doc["meta"].contains("constraints")) {
        constraints = &doc["meta"]["constraints"];
    }
    if (constraints && !constraints->empty()) {
        std::map<std::string, std::string> owner;
        for (const auto& cj : *constraints) {
            ConstraintSpec c;
            c.id = field<std::string>(cj, "id", "constraint");
            std::string where = "constraint '" + c.id + "'";
            c.description = cj.value("description", "");
            c.expr = parse_expr(field<nlohmann::json>(cj, "expr", where), where);
            check_refs(c.expr, where);
            c.atom_ids = c.expr.atom_ids();
            for (const auto& id : c.atom_ids) {
                if (auto [it, fresh] = owner.emplace(id, c.id); !fresh) {
                    throw ProfileError(Kind::schema, "atom '" + id + "' belongs to both '" + it->second +
                                                         "' and '" + c.id + "'");
                }
            }
            p.constraints.push_back(std::move(c));
        }
        for (const auto& a : p.atoms) {
            if (!owner.contains(a.id)) {
                throw ProfileError(Kind::schema, "atom '" + a.id + "' belongs to no constraint");
            }
        }
    } else {
        for (const auto& a : p.atoms) {
            p.constraints.push_back(ConstraintSpec{a.id, {}, Expr::atom(a.id), {a.id}});
        }
    }
    return p;
}

Profile load_profile(const fs::path& path, const ExtractorCheck& known_extractor)
{
    std::string text = read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ProfileError(Kind::parse, path.string() + ": " + e.what());
    }
    return load_profile(doc, path.parent_path(), known_extractor);
}

ValidationReport evaluate_profile(const Profile& profile, const ExtractFn& extract)
{
    return evaluate_profile_with(profile, [&](const Atom& a) { return eval_atom(a, extract(a)); });
}

ValidationReport evaluate_profile_with(const Profile& profile, const AtomEvalFn& eval)
{
    using clock = std::chrono::steady_clock;
    ValidationReport report;
    std::map<std::string, Verdict> verdicts;
    for (const auto& atom : profile.atoms) {
        auto t0 = clock::now();
        Verdict v = eval(atom);
        auto t1 = clock::now();
        report.timing_ms[atom.id] = std::chrono::duration<double, std::milli>(t1 - t0).count();
        verdicts.emplace(atom.id, std::move(v));
    }

    for (const auto& c : profile.constraints) {
        ConstraintVerdict cv{c.id, c.description, VerdictStatus::skipped, {}};
        bool all_skipped = true;
        for (const auto& id : c.atom_ids) {
            const Verdict& v = verdicts.at(id);
            all_skipped = all_skipped && v.status == VerdictStatus::skipped;
            cv.atoms.push_back(v);
        }
        if (!all_skipped || c.atom_ids.empty()) {
            cv.status = eval_expr(c.expr, verdicts) ? VerdictStatus::pass : VerdictStatus::fail;
        }
        report.constraints.push_back(std::move(cv));
    }
    report.overall = eval_expr(profile.root, verdicts);
    return report;
}

}  // namespace idiomval
