#include "hhgsq/errors.hpp"

namespace hhgsq {

Error::Error(std::string kind, const std::string& message)
    : std::runtime_error(message), kind_(std::move(kind)) {}

ValidationError::ValidationError(const std::string& message)
    : Error("validation", message), violations_{message} {}

namespace {
std::string join_violations(const std::vector<std::string>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += "; ";
        out += v[i];
    }
    return out;
}
} // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error("validation", join_violations(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(const std::string& message, long line)
    : Error("parse", "line " + std::to_string(line) + ": " + message), line_(line) {}

void Violations::check(bool ok, const std::string& message) {
    if (!ok) items_.push_back(message);
}

void Violations::raise_if_any() const {
    if (!items_.empty()) throw ValidationError(items_);
}

} // namespace hhgsq
