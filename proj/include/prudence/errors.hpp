#pragma once

#include <stdexcept>
#include <string>

namespace prudence {

// Failure categories surfaced to callers. Report orchestration catches these
// per cell and renders an NA entry; library users treat them as hard errors.
enum class errc {
  non_positive_weight,
  empty_sample,
  length_mismatch,
  domain_error,
  no_bracket,
  zero_variance,
  too_few_observations,
  degenerate_mean,
  degenerate_v,
  missing_column,
  parse_error,
  invariant_violation,
  internal_fault,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace prudence
