#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bowtie {

/// Base class of every exception thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation received the wrong kind of input, e.g. a frequency model
/// where a probability model is required.
class MisuseError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument is outside the operation's domain (negative time,
/// probability outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The model is structurally invalid: dangling reference, malformed gate,
/// unmapped initiating event, duplicate outcome label, ...
class ModelError : public Error {
 public:
  using Error::Error;
};

/// A sensitivity-case transform produced an out-of-range parameter.
class TransformError : public Error {
 public:
  using Error::Error;
};

/// The configuration is valid in isolation but not supported by the
/// implementation (e.g. a CCF group with heterogeneous rates).
class UnsupportedConfigurationError : public Error {
 public:
  using Error::Error;
};

/// One validation finding, addressed by a path into the model document.
struct Diagnostic {
  std::string path;
  std::string message;
};

/// Thrown by the convenience parse entry point; carries every finding,
/// not just the first.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Diagnostic> diagnostics)
      : Error(Join(diagnostics)), diagnostics_(std::move(diagnostics)) {}

  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  static std::string Join(const std::vector<Diagnostic>& diagnostics) {
    std::string out = "model validation failed:";
    for (const auto& d : diagnostics) {
      out += "\n  " + d.path + ": " + d.message;
    }
    return out;
  }

  std::vector<Diagnostic> diagnostics_;
};

}  // namespace bowtie
