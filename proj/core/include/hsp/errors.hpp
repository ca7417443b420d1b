#pragma once

#include <stdexcept>
#include <string>

namespace hsp {

/// Invalid input: out-of-range parameters, malformed text, unsupported group
/// shapes. Maps to process exit code 1 in the CLI.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// An internal consistency check derived from the group theory failed.
/// This never fires on valid inputs; it indicates a bug and maps to exit
/// code 2 in the CLI.
class theory_violation : public std::logic_error {
 public:
  explicit theory_violation(const std::string& what) : std::logic_error(what) {}
};

/// The randomized solver could not reach a conclusion (for example, every
/// round of a batch was discarded, or a verification query rejected the
/// candidate). Callers running experiment batches count these by reason
/// instead of propagating them.
class solver_error : public std::runtime_error {
 public:
  enum class Reason {
    no_survivors,         // both coset-sampling batches were uninformative
    rejected_candidate,   // a verification query contradicted the candidate
    other,
  };

  explicit solver_error(const std::string& what, Reason reason = Reason::other)
      : std::runtime_error(what), reason_(reason) {}

  Reason reason() const { return reason_; }

 private:
  Reason reason_ = Reason::other;
};

}  // namespace hsp
