#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetdisc {

/// Base class for every operational failure raised by the library.
/// Mathematical verdicts (an empty fiber, mld = -infinity, an unclassified
/// germ) are never reported through exceptions.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(std::string const& what, std::size_t position)
        : Error(what + " at position " + std::to_string(position)), position_(position)
    {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// A step/degree/enumeration cap was hit. Results are never silently truncated.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace jetdisc
