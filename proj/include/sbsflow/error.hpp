#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sbsflow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data (files, series, registries).
class InputError : public Error {
 public:
  using Error::Error;
};

/// One or more configuration problems; `problems()` lists all of them.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> problems);

  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// A numerical procedure that cannot produce a meaningful answer.
class NumericError : public Error {
 public:
  using Error::Error;
};

}  // namespace sbsflow
