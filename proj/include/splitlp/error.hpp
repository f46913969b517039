#ifndef SPLITLP_ERROR_HPP
#define SPLITLP_ERROR_HPP

#include <stdexcept>
#include <string>

namespace splitlp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mismatched lengths, widths or degrees.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A precondition on values (not shapes) failed.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An enumeration or closure would exceed its configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : Error(line > 0 ? std::to_string(line) + ":" + std::to_string(column) + ": " + what : what), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

/// A claimed fact, automorphism or certificate did not check out.
class VerificationError : public Error {
 public:
  using Error::Error;
};

}  // namespace splitlp

#endif  // SPLITLP_ERROR_HPP
