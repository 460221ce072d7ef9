#pragma once

#include <stdexcept>
#include <string>

namespace abc {

// Error kinds raised by the engine. Each derives from the closest standard
// exception so callers can catch either the specific or the generic type.

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct OutOfRange : std::out_of_range {
  using std::out_of_range::out_of_range;
};

struct ResourceLimit : std::length_error {
  using std::length_error::length_error;
};

// Raised while reading a table file; field() names the header or payload
// part that failed validation ("magic", "version", "checksum", ...).
class FormatError : public std::runtime_error {
 public:
  FormatError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace abc
