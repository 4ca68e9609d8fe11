#pragma once

#include <stdexcept>
#include <string>

namespace resev {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& message) : std::runtime_error(message) {}
};

// Raised while ingesting input files. Carries enough context to point the
// user at the offending cell: file, 1-based line, 1-based column (field
// index). line/column are 0 when the error concerns the file as a whole.
class LoadError : public Error {
 public:
  LoadError(std::string file, std::size_t line, std::size_t column,
            const std::string& message)
      : Error(format(file, line, column, message)),
        file_(std::move(file)),
        line_(line),
        column_(column) {}

  const std::string& file() const { return file_; }
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& file, std::size_t line,
                            std::size_t column, const std::string& message) {
    std::string out = file;
    if (line > 0) {
      out += ":" + std::to_string(line);
      if (column > 0) out += ":" + std::to_string(column);
    }
    out += ": " + message;
    return out;
  }

  std::string file_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace resev
