#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hhgsq {

/// Base class of every error raised by the library. kind() is a stable
/// machine-readable tag used in the CLI's error JSON.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& message);
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message);
    explicit ValidationError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    std::vector<std::string> violations_;
};

class DomainError : public Error {
public:
    explicit DomainError(const std::string& message) : Error("domain", message) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& message) : Error("numerical", message) {}
};

class ParseError : public Error {
public:
    ParseError(const std::string& message, long line);
    long line() const noexcept { return line_; }

private:
    long line_;
};

class TruncationError : public Error {
public:
    explicit TruncationError(const std::string& message) : Error("truncation", message) {}
};

class HeraldImpossibleError : public Error {
public:
    explicit HeraldImpossibleError(const std::string& message)
        : Error("herald_impossible", message) {}
};

class ConsistencyError : public Error {
public:
    explicit ConsistencyError(const std::string& message)
        : Error("internal_consistency", message) {}
};

/// Collects violations and throws a single ValidationError listing all of them.
class Violations {
public:
    void check(bool ok, const std::string& message);
    void add(const std::string& message) { items_.push_back(message); }
    bool empty() const noexcept { return items_.empty(); }
    void raise_if_any() const;

private:
    std::vector<std::string> items_;
};

} // namespace hhgsq
