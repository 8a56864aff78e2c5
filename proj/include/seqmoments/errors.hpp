#pragma once

#include <stdexcept>
#include <string>

namespace seqmoments {

// Failure categories map one-to-one onto CLI exit codes.
enum class ErrorKind { Input = 2, Coverage = 3, Consistency = 4 };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }
    int exit_code() const noexcept { return static_cast<int>(kind_); }

private:
    ErrorKind kind_;
};

// Malformed files, bad arguments, unknown symbols.
class InputError : public Error {
public:
    explicit InputError(const std::string& what) : Error(ErrorKind::Input, what) {}
};

// A prediction file does not cover every distinct domain sequence.
class CoverageError : public Error {
public:
    explicit CoverageError(const std::string& what) : Error(ErrorKind::Coverage, what) {}
};

// Tables built over different supports or lengths were combined.
class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& what) : Error(ErrorKind::Consistency, what) {}
};

} // namespace seqmoments
