#pragma once

#include <stdexcept>
#include <string>

namespace rankenum {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the 1-based line number when known.
class ParseError : public Error {
  public:
    ParseError(int line, const std::string& what)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// A structural requirement (decomposability, smoothness, totality, ...) does not hold.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A brute-force operation was asked to enumerate more than its hard limit allows.
class GuardError : public Error {
  public:
    using Error::Error;
};

/// A per-gate model count does not fit in 64 bits.
class CountOverflowError : public Error {
  public:
    using Error::Error;
};

/// The trimmed automaton accepts no tree at all.
class EmptyLanguageError : public Error {
  public:
    using Error::Error;
};

/// The compiled circuit has no satisfying assignment.
class EmptyAnswerSetError : public Error {
  public:
    using Error::Error;
};

/// The automaton violates the per-state variable-set discipline.
class NotWellFormedError : public Error {
  public:
    using Error::Error;
};

}  // namespace rankenum
