#include "idiomval/http_validate.hpp"

namespace idiomval {

Profile load_http_profile(const std::filesystem::path& path)
{
    return load_profile(path, [](std::string_view id) { return is_known_extractor(id); });
}

ValidationReport validate_http(const Profile& profile, const MessageInput& message)
{
    return evaluate_profile(profile, [&](const Atom& a) { return extract_canonical(message, a.extractor); });
}

ValidationReport validate_http(const Profile& profile, const HttpMessage& message)
{
    return validate_http(profile, MessageInput::from_message(message));
}

ValidationReport validate_http(const Profile& profile, const MessageInput& request, const MessageInput& response)
{
    return evaluate_profile_with(profile, [&](const Atom& a) {
        if (is_pair_extractor(a.extractor)) {
            return eval_atom(a, extract_pair(request, response, a.extractor));
        }
        Verdict q = eval_atom(a, extract_canonical(request, a.extractor));
        Verdict r = eval_atom(a, extract_canonical(response, a.extractor));
        Verdict out{a.id, VerdictStatus::pass, {}};
        if (q.status == VerdictStatus::fail || r.status == VerdictStatus::fail) {
            out.status = VerdictStatus::fail;
            if (q.status == VerdictStatus::fail) {
                out.note = "request: " + (q.note.empty() ? std::string("rejected") : q.note);
            }
            if (r.status == VerdictStatus::fail) {
                out.note += (out.note.empty() ? "" : "; ") + std::string("response: ") +
                            (r.note.empty() ? std::string("rejected") : r.note);
            }
        } else if (q.status == VerdictStatus::skipped && r.status == VerdictStatus::skipped) {
            out.status = VerdictStatus::skipped;
        }
        return out;
    });
}

ValidationReport validate_http(const Profile& profile, const MessagePair& pair)
{
    return validate_http(profile, MessageInput::from_message(pair.request), MessageInput::from_message(pair.response));
}

}  // namespace idiomval
