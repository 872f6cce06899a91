#pragma once

#include <stdexcept>
#include <string>

namespace glyphmcda {

/// Base for every error the library raises; each subclass maps to one
/// status code on the C surface and one HTTP status in the service.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Document or argument does not satisfy the schema. `path` is a
/// JSON-pointer-like location ("/assessments/3/direct_score"), may be empty.
class ValidationError : public Error {
public:
    ValidationError(std::string path, const std::string& message)
        : Error(path.empty() ? message : path + ": " + message), path_(std::move(path)) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

class ConflictError : public Error {
public:
    using Error::Error;
};

/// Structurally valid inputs that a level function cannot score
/// (zero-variance ranking, non-monotone invariance flags, n = 0, ...).
class CriterionInputError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace glyphmcda
