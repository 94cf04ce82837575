#pragma once

#include <stdexcept>
#include <string>

namespace symdyn {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the operation's domain (bad symbol, beta <= 1,
/// alpha outside the spectrum, prefix too short, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A configured enumeration or length budget would be exceeded.
class ResourceError : public Error {
 public:
  ResourceError(const std::string& budget, const std::string& what)
      : Error(what + " (budget: " + budget + ")"), budget_(budget) {}
  const std::string& budget() const noexcept { return budget_; }

 private:
  std::string budget_;
};

/// An iterative method failed to converge or produced a non-finite value.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// A search (nearest good word, feasible grid point) came back empty.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

/// The Moran construction could not be carried out (empty good-word set).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// No candidate satisfies a constraint (e.g. an empty feasible grid).
class InfeasibleError : public Error {
 public:
  using Error::Error;
};

/// A configuration file or command-line value could not be parsed.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace symdyn
