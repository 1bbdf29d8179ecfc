#include "linv/invariants.hpp"

namespace linv::invariants {

using fields::BiquadElement;
using fields::QuadField;
using lfun::DirichletCharacter;
using lfun::PadicLSeries;
using padic::iwasawa_log;

namespace {

Scalar embed_log(const BiquadConfig& cfg, const BiquadElement& z) {
  return iwasawa_log(cfg.embed(z));
}

}  // namespace

Scalar slope(const BiquadConfig& cfg) {
  // u_psi = sum_{g in C} g^{-1}(eps_F) (x) psi(g) with psi the quadratic
  // character of C = {1, g}; the denominator applies tau throughout.
  BiquadElement u = cfg.lift_from_F(cfg.epsF);
  Scalar l1 = embed_log(cfg, u);
  Scalar lg = embed_log(cfg, u.apply_g());
  Scalar lt = embed_log(cfg, u.apply_tau());
  Scalar lgt = embed_log(cfg, u.apply_g().apply_tau());
  Scalar num = l1 - lg;
  Scalar den = lt - lgt;
  if (den.is_zero_to_precision())
    fail(errc::denominator_vanishes_to_precision,
         "log of the conjugate unit orbit vanishes at this precision");
  return -(num / den);
}

Scalar ell_frak_p(const QuadField& K, unsigned long p, unsigned prec) {
  fields::PUnit pu = fields::p_unit(K, p, prec + 6);
  fields::SplitData sd = fields::split_prime(K, p, prec + 6);
  Scalar lu = iwasawa_log(pu.u.embed(sd.sqrt_disc));
  return -(lu / Scalar::from_long(long(pu.m), p, prec + 6));
}

Scalar ell_frak_p(const BiquadConfig& cfg) {
  Scalar lu = iwasawa_log(cfg.uP.embed(cfg.sqrtK));
  return -(lu / Scalar::from_long(long(cfg.mK), cfg.p, cfg.prec + 6));
}

Scalar general_regulator(const RegulatorTable& table) {
  if (table.rows.empty()) fail(errc::incomplete_table, "no rows");
  if (table.ord_v0.is_zero_to_precision())
    fail(errc::incomplete_table, "ord_v0 must be a nonzero integer");
  unsigned long p = table.ord_v0.prime();
  auto character_sum = [&](const std::vector<RegulatorRow>& rows, bool tau_side) {
    Scalar acc = Scalar::zero(p, rows.front().log_g.abs_prec());
    for (const auto& r : rows) acc = acc + r.psi_value * (tau_side ? r.log_tau_g : r.log_g);
    return acc;
  };
  Scalar s;
  if (table.slope_value) {
    s = *table.slope_value;
  } else if (!table.unit_rows.empty()) {
    Scalar un = character_sum(table.unit_rows, false);
    Scalar ut = character_sum(table.unit_rows, true);
    if (ut.is_zero_to_precision())
      fail(errc::denominator_vanishes_to_precision, "unit-row denominator vanishes");
    s = -(un / ut);
  } else {
    fail(errc::incomplete_table, "need either a slope or a unit orbit to derive it");
  }
  Scalar s1 = character_sum(table.rows, false);
  Scalar s2 = character_sum(table.rows, true);
  return -((s1 + s * s2) / table.ord_v0);
}

namespace {

// The route-B table synthesizes the log orbit of an element supported only
// at v0 from exact norm relations: the K-norm and K'-norm of such an element
// are p-units of K and K' (their logs are -ell * ord), and the Q-norm is a
// power of p (log 0). One free parameter t remains, spanning the unit
// direction, along which the regulator must not move.
RegulatorTable legal_table(const BiquadConfig& cfg, const Scalar& ell_p, const Scalar& ell_p_prime,
                           const Scalar& slope_value, long t_param) {
  unsigned long p = cfg.p;
  unsigned prec = cfg.prec + 6;
  Scalar one = Scalar::from_long(1, p, prec);
  Scalar t = Scalar::from_long(t_param, p, prec);
  Scalar l1 = t;
  Scalar lg = -ell_p - t;
  Scalar lgt = -ell_p_prime - t;
  Scalar ltau = t + ell_p + ell_p_prime;
  RegulatorTable table;
  table.rows = {{one, l1, ltau}, {-one, lg, lgt}};
  table.ord_v0 = one;
  table.slope_value = slope_value;
  return table;
}

}  // namespace

EllMinusResult ell_minus(const BiquadConfig& cfg) {
  unsigned long p = cfg.p;
  unsigned prec = cfg.prec;
  Scalar ell_p = ell_frak_p(cfg);
  Scalar two = Scalar::from_long(2, p, prec + 6);

  // Route A: conjugate quotient of the K' p-unit, one log, minus 2 ell_p
  BiquadElement y = cfg.lift_from_Kprime(cfg.y0);
  Scalar iy = cfg.embed(y);
  Scalar iyt = cfg.embed(y.apply_tau());
  Scalar ord = Scalar::from_long(long(cfg.mKprime), p, prec + 6);
  Scalar route_a = iwasawa_log(iyt / iy) / ord - two * ell_p;

  // Route B: the cocycle formula on the synthesized v0-supported orbit, with
  // the slope computed from the unit machinery
  Scalar ell_p_prime = -(iwasawa_log(iy) / ord);
  Scalar s = slope(cfg);
  Scalar reg0 = general_regulator(legal_table(cfg, ell_p, ell_p_prime, s, 0));
  Scalar reg1 = general_regulator(legal_table(cfg, ell_p, ell_p_prime, s, 1));
  long indep = reg0.agreement_digits(reg1);
  if (indep < long(prec) - 6)
    fail(errc::routes_disagree, "regulator moved along the unit direction");
  Scalar route_b = reg0 - two * ell_p;

  EllMinusResult out;
  out.route_a = route_a;
  out.route_b = route_b;
  out.agreement_digits = route_a.agreement_digits(route_b);
  out.value = route_a;
  if (out.agreement_digits < long(prec) - 6)
    fail(errc::routes_disagree,
         "routes agree to only " + std::to_string(out.agreement_digits) + " digits");
  return out;
}

CheckResult fg_check(long dKprime, unsigned long p, unsigned prec) {
  long d = fields::fundamental_disc(dKprime);
  if (d >= 0) fail(errc::invalid_discriminant, "dKprime must cut out an imaginary field");
  QuadField Kp(d);
  DirichletCharacter eps = DirichletCharacter::quadratic(d);
  DirichletCharacter chi = eps.twist_omega(1, p);
  PadicLSeries L(chi, p, prec);
  mpz_class dz(d);
  int kr = mpz_kronecker_ui(dz.get_mpz_t(), p);
  CheckResult out;
  if (kr == 0) fail(errc::prime_not_split, "p ramifies in K'");
  if (kr == 1) {
    // trivial zero: check the derivative against the Gross-Stark regulator
    out.trivial_zero = true;
    Scalar value = L.eval_int(0);
    if (!value.is_zero_to_precision())
      fail(errc::identity_fails, "expected a trivial zero at s=0");
    out.lhs = L.derivative_int(0);
    Scalar ell = ell_frak_p(Kp, p, prec + 4);
    Scalar L0 = Scalar::from_mpq(lfun::classical_L_at_nonpos(eps, 1), p, prec + 4);
    out.rhs = Scalar::from_long(2, p, prec + 4) * ell * L0;
  } else {
    // inert: no trivial zero; the value itself obeys the interpolation formula
    out.trivial_zero = false;
    out.lhs = L.eval_int(0);
    out.rhs = lfun::interpolation_rhs(chi, 1, p, prec);
  }
  out.agreement_digits = out.lhs.agreement_digits(out.rhs);
  return out;
}

Scalar gross_cyclotomic(const BiquadConfig& cfg, const Scalar& s) {
  DirichletCharacter chi1 = DirichletCharacter::quadratic(cfg.dKprime).twist_omega(1, cfg.p);
  DirichletCharacter chi2 = DirichletCharacter::quadratic(cfg.dF);
  PadicLSeries L1(chi1, cfg.p, cfg.prec);
  PadicLSeries L2(chi2, cfg.p, cfg.prec);
  Scalar one = Scalar::from_long(1, cfg.p, L2.work_prec());
  return L1.eval(s) * L2.eval(one - s);
}

SimpleZeroReport simple_zero_check(const BiquadConfig& cfg) {
  DirichletCharacter chi1 = DirichletCharacter::quadratic(cfg.dKprime).twist_omega(1, cfg.p);
  DirichletCharacter chi2 = DirichletCharacter::quadratic(cfg.dF);
  PadicLSeries L1(chi1, cfg.p, cfg.prec);
  PadicLSeries L2(chi2, cfg.p, cfg.prec);
  SimpleZeroReport rep;
  Scalar v0 = L1.eval_int(0);
  Scalar f1 = L2.eval_int(1);
  rep.eps_f_at_one = f1;
  Scalar product_value = v0 * f1;
  rep.value_vanishes = product_value.is_zero_to_precision();
  rep.value_bound = product_value.abs_prec();
  // product rule at the zero: only the first factor's derivative survives
  rep.derivative = L1.derivative_int(0) * f1;
  rep.simple = rep.value_vanishes && !rep.derivative.is_zero_to_precision() &&
               !f1.is_zero_to_precision();
  return rep;
}

LInvariantReport report(const BiquadConfig& cfg) {
  LInvariantReport rep;
  rep.config = cfg;
  rep.slope = slope(cfg);
  rep.ell_p = ell_frak_p(cfg);
  EllMinusResult em = ell_minus(cfg);
  rep.ell_minus = em.value;
  rep.route_agreement_digits = em.agreement_digits;
  Scalar two = Scalar::from_long(2, cfg.p, cfg.prec + 6);
  rep.ell_psi = em.value + two * rep.ell_p;
  // eta_pbar(Frob_p) = -ell_p, recomputed through the conjugate embedding:
  // ord * eta = -log(iota(conj(u_p)))
  Scalar l_conj = iwasawa_log(cfg.uP.conj().embed(cfg.sqrtK));
  rep.eta_pbar_at_frob_p = -(l_conj / Scalar::from_long(long(cfg.mK), cfg.p, cfg.prec + 6));
  // (eta - eta_p)(Frob_p) = L(psi^tau) - ell_p, recomputed from route B's
  // regulator value rather than copied
  rep.eta_minus_eta_p_at_frob_p = (em.route_b + two * rep.ell_p) - rep.ell_p;
  return rep;
}

}  // namespace linv::invariants
