#pragma once

#include <stdexcept>
#include <string>

namespace fidelium {

/** Machine-readable failure categories surfaced by the library.
 *
 * Checks that produce verdicts (structure verification, Leibniz audits,
 * axiom checks) return report objects instead of throwing; errors here are
 * reserved for inputs that cannot be processed at all. */
enum class ErrorCode {
  not_a_lattice,
  not_distributive,
  no_residual,
  inconsistent_tables,
  empty_join_no_bottom,
  no_bottom,
  unknown_element,
  kind_mismatch,
  empty_n_set,
  syntax_error,
  unbound_name,
  bad_justification,
  size_cap_exceeded,
  budget_exceeded,
  mixed_algebras,
  policy_violation,
  open_formula,
  hypothesis_not_met,
  not_a_subalgebra,
  not_refinable,
  unsupported_axiom,
  io_error,
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace fidelium
