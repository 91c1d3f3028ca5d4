#pragma once

#include "idiomval/http.hpp"
#include "idiomval/validator.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace idiomval {

/// Raw message bytes plus the parse result. Extractors other than `head`
/// are not applicable to a message that did not parse.
struct MessageInput {
    std::string raw;
    std::optional<HttpMessage> parsed;
    std::string error;

    static MessageInput from_bytes(std::string raw);
    static MessageInput from_message(const HttpMessage& m);
};

// Extractor ids (parameters follow a colon):
//
//   head                          bytes through the first CRLFCRLF
//   request-headers-http11        header lines + CRLF of HTTP/1.1 requests
//   header-names                  lowercase field names, each followed by '\n'
//   header-value:NAME             values of NAME joined by ", "
//   content-length-canonical:N    reversed Content-Length digits padded with
//                                 '0' to N, then one <dot> per body byte
//   chunked-canonical:N           per chunk: reversed lowercase hex size padded
//                                 to N, one <dot> per data byte, <sharp>
//   range-pair:N                  first and last byte position of a single
//                                 byte range, each left-padded with '0' to N
//   warning-date-pair:N           warn-date and Date, each right-padded with
//                                 <pad> to N
//   date-pair:A,B                 YYYYMMDDhhmmss of header A then header B
//   version-vs:XY                 the message's major and minor version
//                                 digits followed by X and Y
//   upgrade-pair:N                (pairs only) request and 101 response
//                                 Upgrade values, right-padded with <pad>

bool is_known_extractor(std::string_view id);
bool is_pair_extractor(std::string_view id);

/// Single-message extraction. Pair extractors are not applicable here.
Extraction extract_canonical(const MessageInput& m, std::string_view id);
Extraction extract_canonical(const HttpMessage& m, std::string_view id);

/// Pair extraction for pair extractors.
Extraction extract_pair(const MessageInput& request, const MessageInput& response, std::string_view id);

/// "Sun, 06 Nov 1994 08:49:37 GMT" -> "19941106084937". Returns nullopt for
/// anything that is not a well-formed IMF-fixdate.
std::optional<std::string> imf_fixdate_canonical(std::string_view date);

}  // namespace idiomval
