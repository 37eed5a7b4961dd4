#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace trel {

/// Malformed input text, or a formula of the wrong syntactic shape
/// (not in prenex form, arity conflict). Maps to CLI exit code 2.
class ParseError : public std::runtime_error {
public:
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    explicit ParseError(const std::string& message, std::size_t position = npos)
        : std::runtime_error(position == npos
                                 ? message
                                 : message + " at position " + std::to_string(position)),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Well-formed input that violates a semantic requirement: free variable,
/// undeclared predicate, empty universe, size caps. Maps to CLI exit code 3.
class SemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace trel
