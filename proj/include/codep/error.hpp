#pragma once

#include <stdexcept>
#include <string>

namespace codep {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed input document (molecular data file, config file).
class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// Input parses but violates a contract (selection rule, normalization, schema).
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& msg) : Error(msg) {}
};

// Runtime numerical failure (near-resonant denominator, non-finite state).
class NumericsError : public Error {
public:
    explicit NumericsError(const std::string& msg) : Error(msg) {}
};

} // namespace codep
