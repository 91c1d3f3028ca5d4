#pragma once

#include "idiomval/cfg_recognizer.hpp"
#include "idiomval/regex.hpp"

#include "json.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace idiomval {

enum class VerdictStatus { pass, fail, skipped };

std::string_view to_string(VerdictStatus s);

struct Verdict {
    std::string id;
    VerdictStatus status = VerdictStatus::fail;
    std::string note;
};

/// Boolean combination of membership atoms.
class Expr {
public:
    enum class Kind { atom, all, any, negate, constant };

    static Expr atom(std::string id);
    static Expr all(std::vector<Expr> children);
    static Expr any(std::vector<Expr> children);
    static Expr negate(Expr child);
    static Expr constant(bool value);

    Kind kind() const { return kind_; }
    const std::string& atom_id() const { return atom_id_; }
    const std::vector<Expr>& children() const { return children_; }
    bool value() const { return value_; }

    /// Atom ids in first-occurrence order.
    std::vector<std::string> atom_ids() const;

    /// {"atom": id} | {"and": [...]} | {"or": [...]} | {"not": e} | true | false
    nlohmann::json to_json() const;
    static Expr from_json(const nlohmann::json& j);

    bool operator==(const Expr&) const = default;

private:
    Kind kind_ = Kind::constant;
    bool value_ = true;
    std::string atom_id_;
    std::vector<Expr> children_;
};

class UnresolvedAtomError : public std::runtime_error {
public:
    explicit UnresolvedAtomError(const std::string& id) : std::runtime_error("unresolved atom '" + id + "'") {}
};

/// Looks up the verdict status of an atom id. May evaluate lazily; throws
/// UnresolvedAtomError for unknown ids.
using VerdictLookup = std::function<VerdictStatus(const std::string&)>;

/// Two-valued evaluation with inapplicable ("skipped") atoms read as true
/// directly under an And, as false directly under an Or, and as false under a
/// Not (so Not(skipped) is true). A skipped atom at the root is true.
/// And/Or short-circuit; the result does not depend on evaluation order.
bool eval_expr(const Expr& e, const VerdictLookup& lookup);
bool eval_expr(const Expr& e, const std::map<std::string, Verdict>& verdicts);

/// A compiled membership language: CFG or regex.
class Language {
public:
    explicit Language(CfgRecognizer cfg) : impl_(std::move(cfg)) {}
    explicit Language(RegexMatcher re) : impl_(std::move(re)) {}

    /// Throws AlphabetError for CFGs when w contains an out-of-alphabet symbol.
    bool accepts(WordView w) const;
    bool is_cfg() const { return std::holds_alternative<CfgRecognizer>(impl_); }

private:
    std::variant<CfgRecognizer, RegexMatcher> impl_;
};

/// Result of running an extractor: a canonical word, "not applicable", or a
/// malformed source field.
struct Extraction {
    enum class Status { word, not_applicable, malformed };

    Status status = Status::not_applicable;
    Word word;
    std::string note;

    static Extraction of(Word w) { return {Status::word, std::move(w), {}}; }
    static Extraction absent(std::string note = {}) { return {Status::not_applicable, {}, std::move(note)}; }
    static Extraction bad(std::string note) { return {Status::malformed, {}, std::move(note)}; }
};

enum class AtomKind { cfg, regex };

struct Atom {
    std::string id;
    AtomKind kind = AtomKind::cfg;
    std::shared_ptr<const Language> language;
    std::string language_path;
    std::string extractor;
    bool required = false;
};

/// Absent input gives skipped (or fail if required); a malformed source or a
/// membership engine error gives fail with a note.
Verdict eval_atom(const Atom& a, const Extraction& input);

/// A named grammar inside a generated validator.
struct GrammarAtom {
    std::string id;
    Grammar grammar;
};

/// Grammars plus the boolean expression combining their memberships over one
/// shared input word. This is what the idiom generators return.
struct IdiomValidator {
    std::vector<GrammarAtom> atoms;
    Expr expr;
};

/// An IdiomValidator with its grammars compiled.
class CompiledValidator {
public:
    explicit CompiledValidator(const IdiomValidator& v);

    /// Atoms are evaluated lazily, so conjunctions stop at the first rejection.
    bool accepts(WordView w) const;
    std::size_t atom_count() const { return recognizers_.size(); }

private:
    std::map<std::string, CfgRecognizer> recognizers_;
    Expr expr_;
};

struct ConstraintVerdict {
    std::string id;
    std::string description;
    VerdictStatus status = VerdictStatus::skipped;
    std::vector<Verdict> atoms;
};

struct ValidationReport {
    bool overall = false;
    std::vector<ConstraintVerdict> constraints;
    std::map<std::string, double> timing_ms;

    const ConstraintVerdict* constraint(std::string_view id) const;
    nlohmann::json to_json() const;
};

}  // namespace idiomval
