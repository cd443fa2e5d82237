#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace diaglab {

// Base of everything the library throws on purpose.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed group spec, partition text or graph6 string.
class ParseError : public Error {
public:
    using Error::Error;
};

// Input parsed but violates a structural requirement (group axioms,
// mismatched ground sets, duplicate poset elements, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// A configured size limit would be exceeded.
class CapExceeded : public Error {
public:
    CapExceeded(const std::string& what, std::size_t requested, std::size_t cap)
        : Error(what + ": " + std::to_string(requested) + " exceeds cap " + std::to_string(cap)),
          requested_(requested), cap_(cap) {}

    std::size_t requested() const noexcept { return requested_; }
    std::size_t cap() const noexcept { return cap_; }

private:
    std::size_t requested_;
    std::size_t cap_;
};

// A computed quantity contradicts the theory it is supposed to confirm.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

} // namespace diaglab
