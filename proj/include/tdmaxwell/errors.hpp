#pragma once

#include <stdexcept>
#include <string>

namespace tdmaxwell {

/// Invalid user input: bad scenario values, inconsistent patches, unknown keys.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A linear solve or factorization failed or was judged numerically singular.
class SolverError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Arguments that violate an operation's preconditions (dimension mismatch etc).
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace tdmaxwell
