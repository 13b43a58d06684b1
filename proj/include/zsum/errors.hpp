#pragma once

#include <stdexcept>
#include <string>

namespace zsum {

enum class Errc {
  invalid_modulus,
  group_mismatch,
  group_too_large,
  not_a_subsequence,
  enumeration_too_large,
  not_zero_sum,
  incomplete_atom_set,
  lambda_needs_exact_rho,
  invalid_certificate,
  invalid_c1_witness,
  not_applicable,
  spread_mismatch,
  pattern_not_found,
  wrong_length,
  search_budget_exceeded,
  lemtech_violation,
  invalid_input,
  parse_error,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc c, const std::string& what)
      : std::runtime_error(std::string(errc_name(c)) + ": " + what), code_(c) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& what) { throw Error(c, what); }

}  // namespace zsum
