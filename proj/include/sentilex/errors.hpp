#ifndef SENTILEX_ERRORS_HPP
#define SENTILEX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sentilex {

// Bad user input: unreadable files, malformed data, inconsistent configuration.
// The CLI maps this to exit code 2; everything else is an internal failure.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed line-oriented input. Carries the source name and line number in
// the message ("corpus.jsonl:17: ...").
class ParseError : public InputError {
public:
    ParseError(const std::string& source, std::size_t line, const std::string& what)
        : InputError(source + ":" + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

} // namespace sentilex

#endif
