#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace grantrec {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A lookup by id (document, grant, researcher, remote resource) found nothing.
class NotFoundError : public Error {
public:
    using Error::Error;
};

/// Input failed a domain check. `field()` names the offending field when one applies.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message, std::string field = {})
        : Error(message), field_(std::move(field))
    {}

    [[nodiscard]] auto field() const -> const std::string& { return field_; }

private:
    std::string field_;
};

/// Malformed input file. Line numbers are 1-based; 0 means "not line oriented".
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t line)
        : Error(line == 0 ? message : "line " + std::to_string(line) + ": " + message), line_(line)
    {}

    [[nodiscard]] auto line() const -> std::size_t { return line_; }

private:
    std::size_t line_;
};

class DuplicateIdError : public ValidationError {
public:
    explicit DuplicateIdError(const std::string& id)
        : ValidationError("duplicate document id: " + id, "id"), id_(id)
    {}

    [[nodiscard]] auto id() const -> const std::string& { return id_; }

private:
    std::string id_;
};

/// Bytes that are not valid UTF-8.
class DecodeError : public Error {
public:
    explicit DecodeError(const std::string& origin)
        : Error("not valid UTF-8: " + origin), origin_(origin)
    {}

    [[nodiscard]] auto origin() const -> const std::string& { return origin_; }

private:
    std::string origin_;
};

/// Network failure or non-success HTTP status while fetching `uri`.
class FetchError : public Error {
public:
    FetchError(const std::string& uri, const std::string& reason, int status = 0)
        : Error("fetch " + uri + ": " + reason), uri_(uri), status_(status)
    {}

    [[nodiscard]] auto uri() const -> const std::string& { return uri_; }
    [[nodiscard]] auto status() const -> int { return status_; }

private:
    std::string uri_;
    int status_;
};

class UnsupportedContentError : public Error {
public:
    using Error::Error;
};

/// tf is undefined for a document that produced zero tokens.
class UndefinedTfError : public Error {
public:
    using Error::Error;
};

class EmptyGrantError : public Error {
public:
    using Error::Error;
};

/// Antecedent and consequent overlap, or one of them is empty.
class InvalidRuleError : public Error {
public:
    using Error::Error;
};

/// σ(X) or σ(Y) is zero, so confidence or lift has no value.
class UndefinedMetricError : public Error {
public:
    using Error::Error;
};

class EmptyDatabaseError : public Error {
public:
    using Error::Error;
};

class InvalidWeightsError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Caller asked for something the interface does not offer (e.g. an unknown report format).
class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace grantrec
