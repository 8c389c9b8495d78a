#pragma once

#include <stdexcept>
#include <string>

namespace fomax {

// Malformed user input: formula text, graph/weight/cover files, flags.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& what, int line, int column)
        : InputError(std::to_string(line) + ":" + std::to_string(column) + ": " + what), line_(line), column_(column)
    {
    }
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

// A formula or call that violates a semantic precondition (unbound variable,
// unknown symbol, undominated trigger, ...).
class LogicError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A configurable resource ceiling was exceeded (templates, DNF size, DP keys,
// brute-force size, colors).
class GuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fomax
