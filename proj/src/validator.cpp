#include "idiomval/validator.hpp"

#include <set>

namespace idiomval {

std::string_view to_string(VerdictStatus s)
{
    switch (s) {
    case VerdictStatus::pass:
        return "pass";
    case VerdictStatus::fail:
        return "fail";
    case VerdictStatus::skipped:
        return "skipped";
    }
    return "?";
}

Expr Expr::atom(std::string id)
{
    Expr e;
    e.kind_ = Kind::atom;
    e.atom_id_ = std::move(id);
    return e;
}

Expr Expr::all(std::vector<Expr> children)
{
    Expr e;
    e.kind_ = Kind::all;
    e.children_ = std::move(children);
    return e;
}

Expr Expr::any(std::vector<Expr> children)
{
    Expr e;
    e.kind_ = Kind::any;
    e.children_ = std::move(children);
    return e;
}

Expr Expr::negate(Expr child)
{
    Expr e;
    e.kind_ = Kind::negate;
    e.children_.push_back(std::move(child));
    return e;
}

Expr Expr::constant(bool value)
{
    Expr e;
    e.kind_ = Kind::constant;
    e.value_ = value;
    return e;
}

std::vector<std::string> Expr::atom_ids() const
{
    std::vector<std::string> out;
    std::set<std::string> seen;
    std::function<void(const Expr&)> walk = [&](const Expr& e) {
        if (e.kind_ == Kind::atom) {
            if (seen.insert(e.atom_id_).second) {
                out.push_back(e.atom_id_);
            }
        }
        for (const auto& c : e.children_) {
            walk(c);
        }
    };
    walk(*this);
    return out;
}

nlohmann::json Expr::to_json() const
{
    switch (kind_) {
    case Kind::atom:
        return {{"atom", atom_id_}};
    case Kind::all:
    case Kind::any: {
        auto arr = nlohmann::json::array();
        for (const auto& c : children_) {
            arr.push_back(c.to_json());
        }
        return {{kind_ == Kind::all ? "and" : "or", arr}};
    }
    case Kind::negate:
        return {{"not", children_.front().to_json()}};
    case Kind::constant:
        return value_;
    }
    return nullptr;
}

Expr Expr::from_json(const nlohmann::json& j)
{
    if (j.is_boolean()) {
        return constant(j.get<bool>());
    }
    if (!j.is_object() || j.size() != 1) {
        throw std::invalid_argument("expression node must be a boolean or a single-key object");
    }
    const std::string key = j.begin().key();
    const nlohmann::json& value = j.begin().value();
    if (key == "atom") {
        if (!value.is_string()) {
            throw std::invalid_argument("\"atom\" must name an atom id");
        }
        return atom(value.get<std::string>());
    }
    if (key == "and" || key == "or") {
        if (!value.is_array()) {
            throw std::invalid_argument("\"" + key + "\" takes an array");
        }
        std::vector<Expr> children;
        for (const auto& c : value) {
            children.push_back(from_json(c));
        }
        return key == "and" ? all(std::move(children)) : any(std::move(children));
    }
    if (key == "not") {
        return negate(from_json(value));
    }
    throw std::invalid_argument("unknown expression operator '" + key + "'");
}

namespace {

enum class Context { root, in_and, in_or, in_not };

bool eval_node(const Expr& e, const VerdictLookup& lookup, Context ctx)
{
    switch (e.kind()) {
    case Expr::Kind::constant:
        return e.value();
    case Expr::Kind::atom:
        switch (lookup(e.atom_id())) {
        case VerdictStatus::pass:
            return true;
        case VerdictStatus::fail:
            return false;
        case VerdictStatus::skipped:
            return ctx == Context::root || ctx == Context::in_and;
        }
        return false;
    case Expr::Kind::all:
        for (const auto& c : e.children()) {
            if (!eval_node(c, lookup, Context::in_and)) {
                return false;
            }
        }
        return true;
    case Expr::Kind::any:
        for (const auto& c : e.children()) {
            if (eval_node(c, lookup, Context::in_or)) {
                return true;
            }
        }
        return false;
    case Expr::Kind::negate:
        return !eval_node(e.children().front(), lookup, Context::in_not);
    }
    return false;
}

}  // namespace

bool eval_expr(const Expr& e, const VerdictLookup& lookup) { return eval_node(e, lookup, Context::root); }

bool eval_expr(const Expr& e, const std::map<std::string, Verdict>& verdicts)
{
    return eval_expr(e, [&](const std::string& id) {
        auto it = verdicts.find(id);
        if (it == verdicts.end()) {
            throw UnresolvedAtomError(id);
        }
        return it->second.status;
    });
}

bool Language::accepts(WordView w) const
{
    return std::visit(
        [&](const auto& engine) {
            if constexpr (std::is_same_v<std::decay_t<decltype(engine)>, CfgRecognizer>) {
                return engine.accepts(w);
            } else {
                return engine.matches(w);
            }
        },
        impl_);
}

Verdict eval_atom(const Atom& a, const Extraction& input)
{
    Verdict v{a.id, VerdictStatus::fail, {}};
    switch (input.status) {
    case Extraction::Status::not_applicable:
        if (a.required) {
            v.note = input.note.empty() ? "required input is absent" : input.note;
        } else {
            v.status = VerdictStatus::skipped;
            v.note = input.note;
        }
        return v;
    case Extraction::Status::malformed:
        v.note = input.note;
        return v;
    case Extraction::Status::word:
        break;
    }
    if (!a.language) {
        v.note = "atom has no language";
        return v;
    }
    try {
        v.status = a.language->accepts(input.word) ? VerdictStatus::pass : VerdictStatus::fail;
    } catch (const std::exception& e) {
        v.status = VerdictStatus::fail;
        v.note = e.what();
    }
    return v;
}

CompiledValidator::CompiledValidator(const IdiomValidator& v) : expr_(v.expr)
{
    for (const auto& a : v.atoms) {
        recognizers_.emplace(a.id, CfgRecognizer(a.grammar));
    }
}

bool CompiledValidator::accepts(WordView w) const
{
    return eval_expr(expr_, [&](const std::string& id) {
        auto it = recognizers_.find(id);
        if (it == recognizers_.end()) {
            throw UnresolvedAtomError(id);
        }
        return it->second.accepts(w) ? VerdictStatus::pass : VerdictStatus::fail;
    });
}

const ConstraintVerdict* ValidationReport::constraint(std::string_view id) const
{
    for (const auto& c : constraints) {
        if (c.id == id) {
            return &c;
        }
    }
    return nullptr;
}

nlohmann::json ValidationReport::to_json() const
{
    nlohmann::json j;
    j["overall"] = overall ? "pass" : "fail";
    j["constraints"] = nlohmann::json::array();
    for (const auto& c : constraints) {
        nlohmann::json cj{{"id", c.id}, {"verdict", to_string(c.status)}, {"description", c.description}};
        cj["atoms"] = nlohmann::json::array();
        for (const auto& a : c.atoms) {
            nlohmann::json aj{{"id", a.id}, {"verdict", to_string(a.status)}};
            if (!a.note.empty()) {
                aj["note"] = a.note;
            }
            cj["atoms"].push_back(std::move(aj));
        }
        j["constraints"].push_back(std::move(cj));
    }
    j["timing_ms"] = timing_ms;
    return j;
}

}  // namespace idiomval
