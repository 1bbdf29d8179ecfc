#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "linv/errors.hpp"

namespace linv::padic {

/// Element of Q_p with capped relative precision.
///
/// A nonzero value is stored as p^val * unit where unit is a residue mod
/// p^prec with unit % p != 0; the element is known modulo p^(val+prec).
/// A value all of whose known digits vanish is kept in a distinct
/// "zero to precision" state O(p^abs): nothing is known beyond the bound.
/// Arithmetic never reports more precision than its inputs justify:
/// addition works at the minimum absolute precision, multiplication at the
/// minimum relative precision. All values are immutable once built.
class Scalar {
public:
  Scalar() = default;  // invalid sentinel (p == 0); assigned before use

  static Scalar zero(unsigned long p, long abs_prec);
  static Scalar from_mpz(const mpz_class& n, unsigned long p, unsigned prec);
  static Scalar from_long(long n, unsigned long p, unsigned prec);
  static Scalar from_mpq(const mpq_class& q, unsigned long p, unsigned prec);
  /// p^val * unit with unit taken mod p^prec (normalized on construction).
  static Scalar from_unit(unsigned long p, long val, const mpz_class& unit, unsigned prec);
  /// Residue known modulo p^abs_prec (valuation extracted, may degrade to zero state).
  static Scalar from_residue(const mpz_class& residue, unsigned long p, long abs_prec);

  unsigned long prime() const { return p_; }
  bool valid() const { return p_ != 0; }
  bool is_zero_to_precision() const { return zero_; }
  /// Valuation of a nonzero element; throws on the zero state.
  long val() const;
  /// Valuation if known, or nullopt for zero-to-precision.
  std::optional<long> val_if_known() const;
  /// Index of the first unknown digit: val+prec for nonzero, the bound for zero.
  long abs_prec() const { return zero_ ? abs_ : val_ + long(prec_); }
  unsigned rel_prec() const { return zero_ ? 0 : prec_; }
  const mpz_class& unit_part() const;  // residue mod p^prec, coprime to p

  /// The canonical representative p^val*unit when val >= 0, reduced mod p^abs_prec.
  mpz_class residue() const;
  /// Base-p digits of the unit part, little-endian, length rel_prec().
  std::vector<unsigned long> digits() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  Scalar pow(long e) const;
  Scalar inv() const { return from_long(1, p_, prec_ ? prec_ : 1) / *this; }

  /// Forget digits beyond absolute precision a.
  Scalar cap_abs(long a) const;
  /// Forget digits beyond relative precision n.
  Scalar cap_rel(unsigned n) const;

  /// True if the two values cannot be distinguished at the shared precision.
  bool same_to_precision(const Scalar& other) const;
  /// Significant agreement: abs precision (or valuation) of a-b minus min valuation.
  long agreement_digits(const Scalar& other) const;

  /// Structural equality (same state, valuation, digits, precision).
  bool operator==(const Scalar& o) const;

  std::string str() const;

private:
  unsigned long p_ = 0;
  bool zero_ = true;
  long val_ = 0;      // valuation when nonzero
  long abs_ = 0;      // absolute precision bound when zero
  unsigned prec_ = 0; // relative precision when nonzero
  mpz_class unit_;    // unit digits mod p^prec_, coprime to p

  static void check_same_prime(const Scalar& a, const Scalar& b);
};

mpz_class pow_p(unsigned long p, unsigned long k);
/// v_p(n) for n != 0.
unsigned long valuation(const mpz_class& n, unsigned long p);
mpz_class inv_mod(const mpz_class& a, const mpz_class& m);

/// Teichmueller lift: the unique (p-1)-st root of unity congruent to a mod p.
Scalar teichmuller(unsigned long a, unsigned long p, unsigned prec);
Scalar teichmuller(const Scalar& a);

/// Iwasawa branch of log: log(p) = 0, roots of unity are killed,
/// log(xy) = log(x) + log(y).
Scalar iwasawa_log(const Scalar& x);

/// exp via its power series; requires val(x) >= 1 (p odd).
Scalar padic_exp(const Scalar& x);

/// <a> = a / omega(a), the principal-unit projection of a unit.
Scalar principal_unit(const Scalar& a);

/// Newton lift of a simple root of f (integer coefficients, ascending) from
/// the seed a0 mod p to precision p^prec.
Scalar hensel_root(const std::vector<mpz_class>& f, const mpz_class& a0, unsigned long p,
                   unsigned prec);

/// Square root of n in Z_p with seed chosen as the smaller nonnegative
/// residue; fixes the embedding convention for quadratic fields.
Scalar hensel_sqrt(long n, unsigned long p, unsigned prec);

void require_odd_prime(unsigned long p);

// ---------------------------------------------------------------------------
// Unramified cyclotomic arithmetic.
//
// Z_p[zeta_f] is realized as Z_p[T]/(Phi_f(T)) for p coprime to f. The
// algebra is etale (a product of unramified fields, all of residue degree
// d = ord of p mod f), so elements are polynomials with coefficients known
// to a uniform absolute precision and a value has coordinatewise valuation
// >= c exactly when it lies in p^c * Z_p[T]/(Phi_f). Galois-stable values
// show up as constant polynomials, which is how Leopoldt sums are read off.
// ---------------------------------------------------------------------------

std::vector<mpz_class> cyclotomic_polynomial(unsigned long f);

class CycloField;

/// Element of Z_p[zeta_f]: coefficient vector mod p^abs_prec.
class ExtElement {
public:
  ExtElement() = default;
  const std::vector<mpz_class>& coeffs() const { return c_; }
  long abs_prec() const { return abs_; }
  const CycloField* field() const { return fld_; }

private:
  friend class CycloField;
  const CycloField* fld_ = nullptr;
  std::vector<mpz_class> c_;
  long abs_ = 0;
};

class CycloField {
public:
  CycloField(unsigned long p, unsigned long f, long work_prec);

  unsigned long prime() const { return p_; }
  unsigned long conductor() const { return f_; }
  unsigned degree() const { return unsigned(modulus_.size() - 1); }
  unsigned residue_degree() const { return d_; }
  long work_prec() const { return w_; }

  ExtElement zero() const;
  ExtElement one() const { return from_long(1); }
  ExtElement zeta() const;                    // the class of T
  ExtElement zeta_pow(long e) const;          // zeta^e, e mod f
  ExtElement from_long(long n) const;
  ExtElement from_scalar(const Scalar& s) const;  // val >= 0

  ExtElement add(const ExtElement& a, const ExtElement& b) const;
  ExtElement sub(const ExtElement& a, const ExtElement& b) const;
  ExtElement mul(const ExtElement& a, const ExtElement& b) const;
  ExtElement neg(const ExtElement& a) const;
  ExtElement scalar_mul(const mpz_class& k, const ExtElement& a) const;
  ExtElement pow(const ExtElement& a, const mpz_class& e) const;
  bool is_unit(const ExtElement& a) const;
  ExtElement inverse(const ExtElement& a) const;

  /// Divide every coefficient by p^k (each must be known divisible); costs k
  /// digits of absolute precision.
  ExtElement div_exact_p(const ExtElement& a, unsigned long k) const;

  /// min coefficientwise valuation, or abs_prec when zero to precision.
  long min_val(const ExtElement& a) const;

  /// Iwasawa log of a unit: raise to (p^d-1)p to reach 1+p^2, run the series,
  /// divide the exponent back out. Torsion dies.
  ExtElement log(const ExtElement& a) const;

  Scalar trace(const ExtElement& a) const;
  /// Reads off a Galois-stable value: requires all non-constant coefficients
  /// to vanish at precision, returns the constant one.
  Scalar constant_value(const ExtElement& a) const;

  bool is_zero(const ExtElement& a) const;

private:
  unsigned long p_ = 0;
  unsigned long f_ = 0;
  unsigned d_ = 0;
  long w_ = 0;
  std::vector<mpz_class> modulus_;       // Phi_f, monic, ascending
  std::vector<mpz_class> power_traces_;  // Tr(zeta^j), j < deg
  mpz_class pw_;                         // p^w

  ExtElement make(std::vector<mpz_class> c, long abs) const;
  std::vector<mpz_class> reduce(std::vector<mpz_class> poly, const mpz_class& mod) const;
};

}  // namespace linv::padic
