#pragma once

#include "idiomval/validator.hpp"

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

namespace idiomval {

struct ConstraintSpec {
    std::string id;
    std::string description;
    Expr expr;
    std::vector<std::string> atom_ids;
};

/// A loaded validation profile: atoms with compiled languages, the root
/// expression, and the constraints the atoms are grouped into. Immutable
/// after load.
struct Profile {
    std::vector<Atom> atoms;
    Expr root = Expr::constant(true);
    std::vector<ConstraintSpec> constraints;

    const Atom* find_atom(std::string_view id) const;
};

class ProfileError : public std::runtime_error {
public:
    enum class Kind { parse, schema, dangling_reference, invalid_grammar, invalid_regex };

    ProfileError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Returns true if the extractor id is known to the caller's message model.
using ExtractorCheck = std::function<bool(std::string_view)>;

/// Loads a profile document:
///
///   { "atoms": [ {"id", "kind": "cfg"|"regex", "language_path", "extractor", "required"} ],
///     "expr": <expression>,
///     "meta": { "constraints": [ {"id", "description", "expr"} ] } }
///
/// language_path is resolved against base_dir. Without meta constraints each
/// atom forms its own constraint.
Profile load_profile(const nlohmann::json& doc, const std::filesystem::path& base_dir,
    const ExtractorCheck& known_extractor = {});
Profile load_profile(const std::filesystem::path& path, const ExtractorCheck& known_extractor = {});

using ExtractFn = std::function<Extraction(const Atom&)>;

/// Evaluates every atom (all verdicts are reported even where the root
/// expression would short-circuit), groups them by constraint and evaluates
/// the root expression. A constraint whose atoms are all skipped is skipped.
ValidationReport evaluate_profile(const Profile& profile, const ExtractFn& extract);

using AtomEvalFn = std::function<Verdict(const Atom&)>;

/// Same as evaluate_profile, with the caller producing each atom's verdict.
ValidationReport evaluate_profile_with(const Profile& profile, const AtomEvalFn& eval);

}  // namespace idiomval
