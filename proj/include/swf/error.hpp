#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swf {

enum class ErrorKind {
    input,            // malformed or out-of-range caller data
    invalid_complex,  // boundary composition is nonzero
    invalid_ideal,
    invalid_triple,
    inconsistency,    // data cannot come from a space of type SWF
    duality_range,
    context,          // Floer normalization does not match the class
    not_applicable,
    unavailable,
    invalid_module,   // ring axioms fail on an internally built module
    internal,
    ambiguity,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Raised when connecting ranks are left unspecified and more than one value
/// is consistent with the degree data.
class AmbiguityError : public Error {
public:
    AmbiguityError(const std::string& what, std::vector<std::string> alternatives)
        : Error(ErrorKind::ambiguity, what), alternatives_(std::move(alternatives)) {}

    const std::vector<std::string>& alternatives() const noexcept { return alternatives_; }

private:
    std::vector<std::string> alternatives_;
};

} // namespace swf
