#pragma once

#include <stdexcept>
#include <string>

namespace surfstokes {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DegenerateGradient : public Error {
public:
    using Error::Error;
};

class NoConvergence : public Error {
public:
    using Error::Error;
};

class DegenerateMesh : public Error {
public:
    using Error::Error;
};

class ManifoldError : public Error {
public:
    using Error::Error;
};

/// Malformed input file; carries the offending 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_;
};

class DegenerateJacobian : public Error {
public:
    using Error::Error;
};

class SingularSystem : public Error {
public:
    using Error::Error;
};

class ResidualTooLarge : public Error {
public:
    using Error::Error;
};

class NotSimplyConnected : public Error {
public:
    using Error::Error;
};

class VortexNotFound : public Error {
public:
    using Error::Error;
};

class DegenerateInput : public Error {
public:
    using Error::Error;
};

class InvalidOrder : public Error {
public:
    using Error::Error;
};

class InvalidMesh : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace surfstokes
