#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace greenseq {

/// A guaranteed property of matrix patterns failed: zero or incoherent
/// c-vector, a nonpositive C that is not -P, a failed duality.  Valid inputs
/// never produce it; it signals a bug or corrupted state.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// The input is well formed but lacks the required property, e.g. a sequence
/// that is not reddening was passed where one is required.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Mutation along `prefix` produced a matrix that is not sign-skew-symmetric.
class NotTotallyMutable : public std::runtime_error {
 public:
  NotTotallyMutable(const std::string& what, std::vector<int> prefix)
      : std::runtime_error(what), prefix_(std::move(prefix)) {}
  const std::vector<int>& prefix() const noexcept { return prefix_; }

 private:
  std::vector<int> prefix_;
};

}  // namespace greenseq
