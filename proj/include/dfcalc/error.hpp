#pragma once

#include <stdexcept>
#include <string>

namespace dfcalc {

// Bad input to a library call: out-of-range node, non-dominant label, marking mismatch.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An operation was asked for outside the regime it is defined on
// (e.g. BGG on a transported fibration).
class PreconditionError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line = 0, std::string field = {})
        : std::runtime_error(decorate(what, line, field)), line_(line), field_(std::move(field)) {}

    int line() const { return line_; }
    const std::string& field() const { return field_; }

private:
    static std::string decorate(const std::string& what, int line, const std::string& field) {
        std::string out;
        if (line > 0) out += "line " + std::to_string(line) + ": ";
        if (!field.empty()) out += "field '" + field + "': ";
        return out + what;
    }
    int line_;
    std::string field_;
};

}  // namespace dfcalc
