#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperpol {

/// Base of the library's exception hierarchy. The CLI maps the three
/// subclasses to exit codes: InvalidInput/ConfigError -> 2,
/// NumericError -> 3, IoError -> 4.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Violated precondition or out-of-domain argument.
class InvalidInput : public Error {
  public:
    using Error::Error;
};

/// Singular input, failed root search, failed fit, missing band edge.
class NumericError : public Error {
  public:
    using Error::Error;
};

/// File system / stream failure.
class IoError : public Error {
  public:
    using Error::Error;
};

/// One schema problem found while validating a config document.
struct ConfigViolation {
    std::string path;     ///< JSON pointer-ish field path, e.g. "stack.layers[0].thickness_nm"
    std::string message;
};

/// Carries the complete list of schema violations, not just the first.
class ConfigError : public Error {
  public:
    explicit ConfigError(std::vector<ConfigViolation> violations)
        : Error(format(violations)), violations_(std::move(violations)) {}

    const std::vector<ConfigViolation>& violations() const { return violations_; }

    static std::string format(const std::vector<ConfigViolation>& vs) {
        std::string out = "config validation failed (" + std::to_string(vs.size()) +
                          (vs.size() == 1 ? " violation)" : " violations)");
        for (const auto& v : vs) out += "\n  " + v.path + ": " + v.message;
        return out;
    }

  private:
    std::vector<ConfigViolation> violations_;
};

}  // namespace hyperpol
