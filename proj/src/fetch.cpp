#include <httplib.h>

#include "grantrec/corpus.hpp"
#include "grantrec/error.hpp"
#include "grantrec/text.hpp"

namespace grantrec {

namespace {

struct SplitUri {
    std::string scheme_host_port;
    std::string path;
};

auto split_uri(const std::string& uri) -> SplitUri
{
    const auto scheme_end = uri.find("://");
    if (scheme_end == std::string::npos) {
        throw ValidationError("not an absolute URI: " + uri, "uri");
    }
    const std::string scheme = uri.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw ValidationError("unsupported URI scheme: " + scheme, "uri");
    }
    const auto path_start = uri.find('/', scheme_end + 3);
    SplitUri parts;
    parts.scheme_host_port = uri.substr(0, path_start);
    parts.path = path_start == std::string::npos ? "/" : uri.substr(path_start);
    if (parts.scheme_host_port.size() == scheme_end + 3) {
        throw ValidationError("URI has no host: " + uri, "uri");
    }
    return parts;
}

auto lower(std::string s) -> std::string
{
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

}  // namespace

auto fetch_remote(const std::string& uri, const Owner& owner) -> RawDocument
{
    const auto parts = split_uri(uri);
    httplib::Client client(parts.scheme_host_port);
    client.set_follow_location(true);
    client.set_connection_timeout(10);
    client.set_read_timeout(30);

    auto response = client.Get(parts.path);
    if (!response) {
        throw FetchError(uri, httplib::to_string(response.error()));
    }
    if (response->status == 404) {
        throw NotFoundError("not found: " + uri);
    }
    if (response->status < 200 || response->status >= 300) {
        throw FetchError(uri, "HTTP status " + std::to_string(response->status), response->status);
    }

    const std::string type = lower(response->get_header_value("Content-Type"));
    DocumentKind kind = DocumentKind::plain_text;
    if (type.starts_with("text/html") || type.starts_with("application/xhtml+xml")) {
        kind = DocumentKind::html;
    } else if (!type.empty() && !type.starts_with("text/")) {
        throw UnsupportedContentError("unsupported content type '" + type + "' at " + uri);
    }
    if (!text::is_valid_utf8(response->body)) {
        throw DecodeError(uri);
    }
    return RawDocument{uri, uri, kind, std::move(response->body), owner};
}

}  // namespace grantrec
