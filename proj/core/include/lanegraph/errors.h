#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lanegraph {

// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A graph failed structural validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

// Degenerate geometry, e.g. a zero-length polyline or a rank-deficient fit.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Malformed document. what() starts with the JSON path of the offending field.
class ParseError : public Error {
 public:
  ParseError(std::string field_path, std::string message)
      : Error(field_path + ": " + message), field_path_(std::move(field_path)), message_(std::move(message)) {}

  const std::string& field_path() const { return field_path_; }
  const std::string& message() const { return message_; }

 private:
  std::string field_path_;
  std::string message_;
};

}  // namespace lanegraph
