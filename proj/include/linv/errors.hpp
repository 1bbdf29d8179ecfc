#pragma once

#include <stdexcept>
#include <string>

namespace linv {

// Failure modes surfaced by the library. Each carries a stable code name so
// callers (and the CLI) can match on it without parsing messages.
enum class errc {
  // padic
  unsupported_prime,
  division_by_imprecise_zero,
  zero_to_precision_operand,
  not_a_unit,
  outside_convergence_domain,
  not_simple_root,
  root_seed_invalid,
  not_a_unit_in_extension,
  // fields
  prime_not_split,
  prime_not_split_completely,
  p_unit_search_failed,
  search_bound_exceeded,
  invalid_discriminant,
  // lfunctions
  pole_at_one,
  odd_character,
  precision_exhausted,
  root_of_unity_construction_failed,
  // linvariants
  denominator_vanishes_to_precision,
  routes_disagree,
  incomplete_table,
  // thetaforms
  character_descends,
  regular_case,
  length_exhausted,
  identity_fails,
  class_group_unsupported,
  // localalg
  relation_not_local,
  not_surjective,
  truncation_inconclusive,
  element_not_regular,
  not_a_morphism,
  invalid_parameters,
  // generic
  internal,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace linv
