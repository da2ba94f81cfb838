#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace langvol {

// Base of every exception thrown by the library. The category decides the
// process exit code used by the command line tool.
class Error : public std::runtime_error {
 public:
  enum class Category { usage, data, network };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

 private:
  Category category_;
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(Category::usage, what) {}
};

class DataError : public Error {
 public:
  explicit DataError(const std::string& what) : Error(Category::data, what) {}
};

// Malformed text input. `position` is a character offset or a 1-based line
// number, depending on the format being parsed.
class ParseError : public DataError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : DataError(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class FormatVersionError : public DataError {
 public:
  explicit FormatVersionError(const std::string& what) : DataError(what) {}
};

class InvariantError : public DataError {
 public:
  explicit InvariantError(const std::string& what) : DataError(what) {}
};

class NetworkError : public Error {
 public:
  enum class Kind { unreachable, http_status, malformed_response };

  NetworkError(Kind kind, const std::string& what, int attempts = 1)
      : Error(Category::network, what), kind_(kind), attempts_(attempts) {}

  Kind kind() const noexcept { return kind_; }
  int attempts() const noexcept { return attempts_; }

 private:
  Kind kind_;
  int attempts_;
};

// Exit code contract of the command line tool: 1 usage, 2 data, 3 network.
int exit_code_for(const Error& error) noexcept;

}  // namespace langvol
