#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>
#include <vector>

#include "linv/padic.hpp"

namespace linv::lfun {

/// B_0 = 1, B_1 = -1/2, ... (cached).
const mpq_class& bernoulli(unsigned n);
/// Bernoulli polynomial B_n(x).
mpq_class bernoulli_poly(unsigned n, const mpq_class& x);

/// Characters of the shape (quadratic of fundamental discriminant d) times
/// omega^k, which is all the evaluator needs. d = 1 encodes a trivial
/// quadratic part.
class DirichletCharacter {
public:
  static DirichletCharacter trivial();
  static DirichletCharacter quadratic(long disc);
  DirichletCharacter twist_omega(long k, unsigned long p) const;
  /// chi * omega^{-n}, the twist appearing in the interpolation formula.
  DirichletCharacter omega_untwist(unsigned n, unsigned long p) const;

  long quad_disc() const { return d_; }
  unsigned omega_pow() const { return k_; }
  unsigned long omega_prime() const { return p_; }
  bool rational() const { return k_ == 0; }
  bool is_trivial() const { return d_ == 1 && k_ == 0; }
  bool even() const;
  unsigned long conductor() const;
  /// +-1/0 values; only for rational characters.
  int value_quadratic(const mpz_class& a) const;
  /// Value as a p-adic number at the given precision.
  padic::Scalar value(const mpz_class& a, unsigned long p, unsigned prec) const;
  std::string label() const;

private:
  long d_ = 1;        // fundamental discriminant, or 1
  unsigned k_ = 0;    // omega exponent, reduced mod p-1
  unsigned long p_ = 0;
};

/// Generalized Bernoulli number B_{n,chi} for a rational character, exactly.
mpq_class gen_bernoulli(const DirichletCharacter& chi, unsigned n);
/// Same for omega-twisted characters, as a p-adic value.
padic::Scalar gen_bernoulli_padic(const DirichletCharacter& chi, unsigned n, unsigned long p,
                                  unsigned prec);

/// L(chi, 1-n) = -B_{n,chi}/n; exact 0 on parity mismatch.
mpq_class classical_L_at_nonpos(const DirichletCharacter& chi, unsigned n);

/// Right side of the interpolation contract:
/// -(1 - chi*omega^{-n}(p) p^{n-1}) B_{n,chi*omega^{-n}} / n.
padic::Scalar interpolation_rhs(const DirichletCharacter& chi, unsigned n, unsigned long p,
                                unsigned prec);

/// Symmetric-difference derivative with Richardson checks at three step
/// sizes p^k; the measured agreement window caps the reported precision.
padic::Scalar central_derivative(const std::function<padic::Scalar(const padic::Scalar&)>& f,
                                 const padic::Scalar& s0, unsigned prec);

/// Kubota-Leopoldt L_p(chi, s) for even chi, by the <a>^(1-s) expansion over
/// a in [1, F], F = lcm(f, p), with an explicit binomial-tail truncation.
class PadicLSeries {
public:
  PadicLSeries(const DirichletCharacter& chi, unsigned long p, unsigned prec);

  const DirichletCharacter& character() const { return chi_; }
  unsigned long prime() const { return p_; }
  unsigned long expansion_modulus() const { return F_; }
  unsigned truncation() const { return M_; }
  unsigned work_prec() const { return work_; }

  padic::Scalar eval(const padic::Scalar& s) const;
  padic::Scalar eval_int(long s) const;
  padic::Scalar eval_with_truncation(const padic::Scalar& s, unsigned M) const;
  padic::Scalar derivative(const padic::Scalar& s0) const;
  padic::Scalar derivative_int(long s0) const;

private:
  DirichletCharacter chi_;
  unsigned long p_ = 0;
  unsigned prec_ = 0;
  unsigned work_ = 0;
  unsigned long F_ = 0;
  unsigned M_ = 0;
  struct Row {
    mpz_class a;
    padic::Scalar chi_a;        // chi(a)
    padic::Scalar bracket_log;  // log <a>
    padic::Scalar f_over_a;     // F/a as a p-adic value (valuation 1)
  };
  std::vector<Row> rows_;
  std::vector<padic::Scalar> bern_;  // B_j at working precision

  padic::Scalar eval_at_one(unsigned M) const;
  padic::Scalar eval_general(const padic::Scalar& s, unsigned M) const;
};

/// L_p(chi, 1) by the cyclotomic-unit formula
/// -(1 - chi(p)/p) (tau(chi)/f) sum_a chi(a) log(1 - zeta_f^a),
/// computed in the unramified cyclotomic algebra. Dual route to eval at 1.
padic::Scalar leopoldt_at_one(const DirichletCharacter& chi, unsigned long p, unsigned prec);

/// Parses "quad:<disc>[*omega^k]".
DirichletCharacter parse_character(const std::string& label, unsigned long p);

}  // namespace linv::lfun
