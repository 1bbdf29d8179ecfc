#pragma once

#include <gmpxx.h>

#include <vector>

#include "linv/padic.hpp"

namespace linv::fields {

/// Fundamental discriminant of Q(sqrt(d)) for any nonsquare integer d != 0.
long fundamental_disc(long d);

/// Quadratic field of fundamental discriminant disc (> 0 real, < 0 imaginary).
class QuadField {
public:
  explicit QuadField(long disc);
  long disc() const { return disc_; }
  bool real() const { return disc_ > 0; }
  /// Roots of unity count: 6 for disc -3, 4 for -4, else 2.
  unsigned torsion_order() const;

private:
  long disc_ = 0;
};

/// a + b*sqrt(disc) with exact rational coordinates.
struct QuadElement {
  mpq_class a, b;
  long disc = 0;

  QuadElement() = default;
  QuadElement(mpq_class a_, mpq_class b_, long disc_) : a(a_), b(b_), disc(disc_) {}

  QuadElement conj() const { return {a, -b, disc}; }
  mpq_class norm() const { return a * a - mpq_class(disc) * b * b; }
  mpq_class trace() const { return 2 * a; }
  QuadElement operator*(const QuadElement& o) const;
  bool operator==(const QuadElement& o) const = default;

  /// Image under sqrt(disc) |-> s.
  padic::Scalar embed(const padic::Scalar& s) const;
};

/// Norm +-1 unit of smallest height > 1, by the continued fraction of
/// sqrt(disc). Coordinates are over sqrt(disc).
QuadElement fundamental_unit(const QuadField& F);

/// Number of reduced primitive forms of discriminant disc (< 0).
unsigned long class_number(const QuadField& K);

/// Analytic route: h = (w/2)|B_{1,chi_D}|, for cross-checking class_number.
unsigned long class_number_analytic(const QuadField& K);

struct SplitData {
  unsigned long p = 0;
  unsigned long seed = 0;  // smaller nonnegative residue with seed^2 = disc mod p
  padic::Scalar sqrt_disc; // Hensel lift of the seed
};

/// Splitting data for p in K; PrimeNotSplit unless kronecker(disc, p) = +1.
SplitData split_prime(const QuadField& K, unsigned long p, unsigned prec);

struct PUnit {
  QuadElement u;       // generates the m-th power of the chosen place
  unsigned long m = 0; // order of the place in the class group
};

/// Element generating p^m (m minimal <= h_K) for the place fixed by the
/// smaller-seed embedding convention: v(iota(u)) = m > 0.
PUnit p_unit(const QuadField& K, unsigned long p, unsigned prec);

/// Element of H = Q(sqrt(dK), sqrt(dF)) over basis {1, rK, rF, rK*rF}.
struct BiquadElement {
  mpq_class c[4];
  /// Galois action: g fixes K (flips rF), tau is complex conjugation (flips rK).
  BiquadElement apply_g() const;
  BiquadElement apply_tau() const;
  padic::Scalar embed(const padic::Scalar& sK, const padic::Scalar& sF) const;
};

/// Validated data for a quadratic anti-cyclotomic configuration: H = KF with
/// K imaginary, F real, K' the second imaginary quadratic subfield, p odd and
/// split in all of them (hence completely in H).
struct BiquadConfig {
  long dK = 0, dF = 0, dKprime = 0;
  unsigned long p = 0;
  unsigned prec = 0;
  unsigned long hK = 0, hKprime = 0;
  long c0 = 0;  // sqrt(dK*dF) = c0 * sqrt(dKprime)
  padic::Scalar sqrtK, sqrtF, sqrtKprime;  // sqrtKprime = sqrtK*sqrtF/c0
  QuadElement epsF;      // fundamental (Minkowski) unit of F, fixed by tau
  QuadElement uP;        // p-unit of K, ord at the fixed place = mK
  unsigned long mK = 0;
  QuadElement y0;        // p-unit of K', ord at v0 = mKprime
  unsigned long mKprime = 0;

  BiquadElement lift_from_K(const QuadElement& z) const;
  BiquadElement lift_from_F(const QuadElement& z) const;
  BiquadElement lift_from_Kprime(const QuadElement& z) const;
  padic::Scalar embed(const BiquadElement& z) const;
};

/// Assembles and checks a full configuration; PrimeNotSplitCompletely if p
/// fails to split in K or F.
BiquadConfig build_biquad(long dK, long dF, unsigned long p, unsigned prec);

}  // namespace linv::fields
