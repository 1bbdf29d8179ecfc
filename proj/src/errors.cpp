#include "linv/errors.hpp"

namespace linv {

const char* errc_name(errc c) {
  switch (c) {
    case errc::unsupported_prime: return "UnsupportedPrime";
    case errc::division_by_imprecise_zero: return "DivisionByImpreciseZero";
    case errc::zero_to_precision_operand: return "ZeroToPrecisionOperand";
    case errc::not_a_unit: return "NotAUnit";
    case errc::outside_convergence_domain: return "OutsideConvergenceDomain";
    case errc::not_simple_root: return "NotSimpleRoot";
    case errc::root_seed_invalid: return "RootSeedInvalid";
    case errc::not_a_unit_in_extension: return "NotAUnitInExtension";
    case errc::prime_not_split: return "PrimeNotSplit";
    case errc::prime_not_split_completely: return "PrimeNotSplitCompletely";
    case errc::p_unit_search_failed: return "PUnitSearchFailed";
    case errc::search_bound_exceeded: return "SearchBoundExceeded";
    case errc::invalid_discriminant: return "InvalidDiscriminant";
    case errc::pole_at_one: return "PoleAtOne";
    case errc::odd_character: return "OddCharacter";
    case errc::precision_exhausted: return "PrecisionExhausted";
    case errc::root_of_unity_construction_failed: return "RootOfUnityConstructionFailed";
    case errc::denominator_vanishes_to_precision: return "DenominatorVanishesToPrecision";
    case errc::routes_disagree: return "RoutesDisagree";
    case errc::incomplete_table: return "IncompleteTable";
    case errc::character_descends: return "CharacterDescends";
    case errc::regular_case: return "RegularCase";
    case errc::length_exhausted: return "LengthExhausted";
    case errc::identity_fails: return "IdentityFails";
    case errc::class_group_unsupported: return "ClassGroupUnsupported";
    case errc::relation_not_local: return "RelationNotLocal";
    case errc::not_surjective: return "NotSurjective";
    case errc::truncation_inconclusive: return "TruncationInconclusive";
    case errc::element_not_regular: return "ElementNotRegular";
    case errc::not_a_morphism: return "NotAMorphism";
    case errc::invalid_parameters: return "InvalidParameters";
    case errc::internal: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace linv
