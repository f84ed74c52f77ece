#pragma once

#include <stdexcept>
#include <string>

namespace patchcert {

// A geometry/strategy/patch combination that cannot be processed.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input file (records, config, certificate rows).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// An exhaustive check would exceed its work bound; refused instead of run.
class GuardError : public std::runtime_error {
 public:
  explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace patchcert
