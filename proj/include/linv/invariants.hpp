#pragma once

#include <optional>
#include <vector>

#include "linv/fields.hpp"
#include "linv/lfun.hpp"
#include "linv/padic.hpp"

namespace linv::invariants {

using fields::BiquadConfig;
using padic::Scalar;

struct CheckResult {
  Scalar lhs, rhs;
  long agreement_digits = 0;
  bool trivial_zero = false;  // whether the identity tested is the split (derivative) form
};

/// Slope regulator -log(u_psi)/log(tau(u_psi)) built from the Minkowski unit
/// orbit; -1 for quadratic configurations. DenominatorVanishesToPrecision if
/// the denominator log has no visible digit (would contradict Baker-Brumer).
Scalar slope(const BiquadConfig& cfg);

/// ell_p = -log(iota(u_p)) / ord_p(u_p) for the p-unit of an imaginary
/// quadratic field at the embedding-convention place.
Scalar ell_frak_p(const fields::QuadField& K, unsigned long p, unsigned prec);
/// Same, from an assembled configuration (uses cfg.uP and the v0 embedding).
Scalar ell_frak_p(const BiquadConfig& cfg);

/// Table row for one g in the cyclic group C: the character value and the
/// logs of g^{-1}(y0) and tau g^{-1}(y0) under the fixed embedding.
struct RegulatorRow {
  Scalar psi_value;
  Scalar log_g;
  Scalar log_tau_g;
};

struct RegulatorTable {
  std::vector<RegulatorRow> rows;
  Scalar ord_v0;                        // nonzero valuation of y0 at v0
  std::optional<Scalar> slope_value;    // supplied, or derived from unit rows
  std::vector<RegulatorRow> unit_rows;  // logs of a global-unit orbit (ord 0)
};

/// Evaluates the cocycle regulator
///   -( sum psi(g) log g^{-1}y0 + S * sum psi(g) log tau g^{-1}y0 ) / ord_v0.
Scalar general_regulator(const RegulatorTable& table);

struct EllMinusResult {
  Scalar value;    // the anti-cyclotomic invariant (route A)
  Scalar route_a;
  Scalar route_b;  // general-regulator route minus 2 ell_p
  long agreement_digits = 0;
};

/// The anti-cyclotomic invariant of the quadratic configuration by two
/// routes; RoutesDisagree when they part ways beyond precision loss.
EllMinusResult ell_minus(const BiquadConfig& cfg);

/// Derivative identity at the trivial zero (p split in K'):
///   L_p'(eps_{K'} omega, 0) = 2 ell_p(K') L(eps_{K'}, 0),
/// the odd-character L-invariant being the regulator of the anti-unit u/ubar
/// (the isotypic projection doubles the log; sign pinned by this check).
/// For p inert there is no trivial zero and the value itself is checked
/// against the interpolation formula.
CheckResult fg_check(long dKprime, unsigned long p, unsigned prec);

/// Product L_p(eps_{K'} omega, s) * L_p(eps_F, 1-s), the Kubota-Leopoldt
/// factorization of the cyclotomic p-adic L-function of the configuration.
Scalar gross_cyclotomic(const BiquadConfig& cfg, const Scalar& s);

struct SimpleZeroReport {
  bool value_vanishes = false;   // value at 0 is zero to precision
  long value_bound = 0;          // the O(p^k) bound certified for the value
  Scalar derivative;             // nonzero first derivative
  Scalar eps_f_at_one;           // Leopoldt non-vanishing witness
  bool simple = false;           // order exactly one at this precision
};

SimpleZeroReport simple_zero_check(const BiquadConfig& cfg);

struct LInvariantReport {
  BiquadConfig config;
  Scalar slope;
  Scalar ell_p;                  // ell_frak_p of K
  Scalar ell_minus;              // anti-cyclotomic invariant
  Scalar ell_psi;                // ell_minus + 2 ell_p
  Scalar eta_pbar_at_frob_p;     // recomputed via the conjugate embedding; = -ell_p
  Scalar eta_minus_eta_p_at_frob_p;  // = ell_psi - ell_p
  long route_agreement_digits = 0;
};

LInvariantReport report(const BiquadConfig& cfg);

}  // namespace linv::invariants
