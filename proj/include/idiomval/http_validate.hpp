#pragma once

#include "idiomval/extractors.hpp"
#include "idiomval/profile.hpp"

#include <filesystem>
#include <map>
#include <string>

namespace idiomval {

/// load_profile with the HTTP extractor registry.
Profile load_http_profile(const std::filesystem::path& path);

/// Runs every atom of the profile on one message.
ValidationReport validate_http(const Profile& profile, const MessageInput& message);
ValidationReport validate_http(const Profile& profile, const HttpMessage& message);

/// Pair mode. Single-message atoms run on both messages: the atom fails if it
/// fails on either, and is skipped only if skipped on both. Pair atoms run
/// once on the pair.
ValidationReport validate_http(const Profile& profile, const MessageInput& request, const MessageInput& response);
ValidationReport validate_http(const Profile& profile, const MessagePair& pair);

/// The bundled profile as files: relative path -> contents. `http.profile`
/// is the profile document; grammars and regexes live under `http/`.
std::map<std::string, std::string> build_http_profile_files();

/// Writes build_http_profile_files() under dir.
void write_http_profile(const std::filesystem::path& dir);

}  // namespace idiomval
