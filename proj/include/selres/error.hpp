#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace selres {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input data. Carries the 1-based line number when
// the problem is tied to a line of an input file (0 otherwise).
class DataError : public Error {
 public:
  DataError(const std::string& what, std::size_t line = 0)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Invalid configuration (flags, thresholds, missing optional inputs).
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Lookup of a class id or noun lemma the taxonomy does not know.
class UnknownIdError : public Error {
 public:
  using Error::Error;
};

// Lemma absent from the taxonomy. Callers ingesting corpora skip and count.
class UnknownNounError : public UnknownIdError {
 public:
  explicit UnknownNounError(const std::string& lemma)
      : UnknownIdError("noun not in taxonomy: " + lemma) {}
};

// Probability event (context or relation) with no observations.
class UnseenEventError : public Error {
 public:
  using Error::Error;
};

// An association measure is mathematically undefined for the given table,
// e.g. a positive posterior against a zero prior.
class UndefinedAssociationError : public Error {
 public:
  using Error::Error;
};

// The prior source cannot be reconciled with the corpus (negative cells in
// the 2x2 table).
class IncompatiblePriorError : public Error {
 public:
  using Error::Error;
};

}  // namespace selres
