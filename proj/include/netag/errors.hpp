#ifndef NETAG_ERRORS_HPP
#define NETAG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netag {

// Malformed input text, corpora, config or model files.  CLI exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Parse failure with a source location attached.
class ParseError : public DataError {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : DataError(msg + " (line " + std::to_string(line) + ", column " +
                    std::to_string(column) + ")"),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

// A discounting scheme was asked to handle counts it cannot discount.
class SchemeInapplicableError : public DataError {
public:
    explicit SchemeInapplicableError(const std::string& msg) : DataError(msg) {}
};

// Degenerate numerical situation (e.g. back-off denominator <= 0).
// CLI exit code 3.
class DegeneracyError : public std::runtime_error {
public:
    explicit DegeneracyError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace netag

#endif  // NETAG_ERRORS_HPP
