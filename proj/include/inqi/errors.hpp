#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace inqi {

// Parse failure; position is a 0-based byte offset into the input.
class SyntaxError : public std::runtime_error {
public:
  SyntaxError(std::string message, std::size_t position)
      : std::runtime_error("syntax error at position " + std::to_string(position) + ": " +
                           message),
        position_(position) {}

  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

// A formula or model was used outside the dialect that admits it,
// e.g. a modality fed to the modality-free evaluator.
class DialectError : public std::runtime_error {
public:
  explicit DialectError(const std::string& message) : std::runtime_error(message) {}
};

// An enumeration bound would be exceeded; raised instead of sampling so
// that verdicts stay sound.
class SizeLimitError : public std::runtime_error {
public:
  explicit SizeLimitError(const std::string& message) : std::runtime_error(message) {}
};

// The resolution set of a formula would exceed the configured cap.
class ResolutionExplosionError : public std::runtime_error {
public:
  explicit ResolutionExplosionError(const std::string& message) : std::runtime_error(message) {}
};

// Model constructions that require both operands to share a kind.
class KindMismatchError : public std::runtime_error {
public:
  explicit KindMismatchError(const std::string& message) : std::runtime_error(message) {}
};

class UnknownSuiteError : public std::runtime_error {
public:
  explicit UnknownSuiteError(const std::string& name)
      : std::runtime_error("unknown property suite: " + name) {}
};

}  // namespace inqi
