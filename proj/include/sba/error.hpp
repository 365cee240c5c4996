#pragma once

#include <stdexcept>
#include <string>

namespace sba {

enum class ErrorKind {
    NonComposable,
    NotAdmissible,
    InfiniteDimensional,
    UnknownVertex,
    UnknownArrow,
    LoopAtDistinguished,
    SignMismatch,
    UnsupportedClass,
    NotSkewGentleSource,
    NotSourceOrSink,
    TrivialPolygon,
    InvalidPosition,
    NotReflectable,
    InvalidInput,
    Parse,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

// Raised by the text readers; carries a 1-based line number (0 when not line specific).
class ParseError : public Error {
public:
    ParseError(const std::string& file, int line, const std::string& what)
        : Error(ErrorKind::Parse, file + ":" + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

}  // namespace sba
