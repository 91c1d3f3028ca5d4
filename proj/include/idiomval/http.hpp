#pragma once

#include "idiomval/cfg_recognizer.hpp"
#include "idiomval/grammar.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace idiomval {

enum class MessageKind { request, response };

struct HeaderField {
    std::string name;      // as written
    std::string value;     // without surrounding whitespace
    std::string raw_line;  // the whole line, without CRLF
};

/// A structurally parsed HTTP/1.1 message. Serializing the parts gives back
/// the original bytes.
struct HttpMessage {
    MessageKind kind = MessageKind::request;
    std::string start_line;

    // request line
    std::string method;
    std::string target;
    // status line
    int status = 0;
    std::string reason;

    std::string version;  // "HTTP/1.1"
    std::vector<HeaderField> headers;
    std::string body;

    /// Values of every field with this name (case-insensitive), in order.
    std::vector<std::string> header_values(std::string_view name) const;
    bool has_header(std::string_view name) const;

    std::string serialize() const;
};

struct MessagePair {
    HttpMessage request;
    HttpMessage response;
};

class HttpSyntaxError : public std::runtime_error {
public:
    HttpSyntaxError(std::size_t offset, const std::string& what);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

/// Checks the head (through the first CRLFCRLF) against the core message
/// grammar and splits the message. The body is everything after the first
/// CRLFCRLF. Throws HttpSyntaxError with the byte offset of the first
/// unparseable byte.
HttpMessage parse_http_message(std::string_view bytes);

/// Bytes through the first CRLFCRLF, or all bytes if there is none.
std::string_view message_head(std::string_view bytes);

/// Byte-level grammar for a message head: start line, header fields, CRLF
/// framing. Bare LF is never accepted.
const Grammar& http_core_grammar();
const CfgRecognizer& http_core_recognizer();

bool iequals(std::string_view a, std::string_view b);
std::string to_lower(std::string_view s);

}  // namespace idiomval
