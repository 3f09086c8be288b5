#ifndef SKEWLIN_ERRORS_HPP
#define SKEWLIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace skewlin {

/// Malformed input document (bad JSON, unknown keys, bad scalar syntax).
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Structurally valid input that violates an instance invariant
/// (non-prime characteristic, reducible modulus, singular group generator,
/// out-of-range residue, shape mismatch, ...).
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

/// A randomized procedure exhausted its budget without reaching a verdict.
class InconclusiveError : public std::runtime_error {
 public:
  explicit InconclusiveError(const std::string& what) : std::runtime_error(what) {}
};

/// A pipeline check failed: the input is not an instance of the theorem
/// (or corollary) being run.  `claim` identifies the failed check; the
/// linearisation pipeline uses "i".."xv" plus "irreducibility" and
/// "double_centralizer", the corollary pipelines add their own tags.
class HypothesisViolation : public std::runtime_error {
 public:
  HypothesisViolation(std::string claim_tag, const std::string& what,
                      std::string witness_text = {})
      : std::runtime_error(what),
        claim(std::move(claim_tag)),
        witness(std::move(witness_text)) {}

  std::string claim;
  std::string witness;  // serialized witness object, may be empty
};

}  // namespace skewlin

#endif
