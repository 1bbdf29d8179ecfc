#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "linv/invariants.hpp"

using namespace linv;
using namespace linv::invariants;
using fields::BiquadConfig;
using fields::build_biquad;
using padic::Scalar;

namespace {
const BiquadConfig& cfg29() {
  static BiquadConfig c = build_biquad(-4, 5, 29, 30);
  return c;
}
}  // namespace

TEST_CASE("slope is -1 for quadratic configurations") {
  for (const auto& cfg :
       {cfg29(), build_biquad(-4, 2, 17, 30), build_biquad(-8, 5, 11, 30)}) {
    Scalar s = slope(cfg);
    Scalar minus_one = Scalar::from_long(-1, cfg.p, cfg.prec);
    CHECK(s.agreement_digits(minus_one) >= long(cfg.prec) - 2);
  }
}

TEST_CASE("slope denominator is nonzero at precision") {
  const auto& cfg = cfg29();
  fields::BiquadElement u = cfg.lift_from_F(cfg.epsF);
  Scalar den = padic::iwasawa_log(cfg.embed(u.apply_tau())) -
               padic::iwasawa_log(cfg.embed(u.apply_g().apply_tau()));
  CHECK(!den.is_zero_to_precision());
  CHECK(den.val() < long(cfg.prec));
}

TEST_CASE("ell_p: hensel+log oracle and invariances") {
  // K=Q(i), p=5, u=2+i with iota(i) = 3 mod 5: the fixed branch
  fields::QuadField K(-4);
  auto sd = fields::split_prime(K, 5, 25);
  // sqrt(-4) = 2i lifts the seed 1, so iota(i) = lift(1)/2 = 3 mod 5
  Scalar i_img = sd.sqrt_disc / Scalar::from_long(2, 5, 25);
  CHECK(i_img.residue() % 5 == 3);

  Scalar ell = ell_frak_p(K, 5, 25);
  auto pu = fields::p_unit(K, 5, 30);
  CHECK(pu.m == 1);
  // two precisions agree
  Scalar ell_hi = ell_frak_p(K, 5, 40);
  CHECK(ell.agreement_digits(ell_hi) >= 24);

  // torsion rescaling: i*u has the same invariant (log kills torsion);
  // u^2 doubles both log and ord
  fields::QuadElement iu{-pu.u.b * 2, pu.u.a / 2, -4};  // multiply by i = sqrt(-4)/2
  CHECK(iu.norm() == pu.u.norm());
  Scalar l1 = padic::iwasawa_log(iu.embed(sd.sqrt_disc));
  Scalar l0 = padic::iwasawa_log(pu.u.embed(sd.sqrt_disc));
  CHECK((l1 - l0).is_zero_to_precision());
  fields::QuadElement usq = pu.u * pu.u;
  Scalar l2 = padic::iwasawa_log(usq.embed(sd.sqrt_disc));
  Scalar two = Scalar::from_long(2, 5, 25);
  CHECK((l2 - two * l0).is_zero_to_precision());
}

TEST_CASE("ell_minus: routes agree, nonzero, stable under rescaling") {
  for (const auto& cfg :
       {cfg29(), build_biquad(-4, 2, 17, 30), build_biquad(-8, 5, 11, 30)}) {
    auto em = ell_minus(cfg);
    CHECK(em.agreement_digits >= long(cfg.prec) - 4);
    CHECK(!em.value.is_zero_to_precision());
    CHECK(em.value.val() < long(cfg.prec));
  }

  // y0 -> y0^2: same invariant (ord and log both double)
  BiquadConfig cfg = cfg29();
  auto em1 = ell_minus(cfg);
  BiquadConfig cfg_sq = cfg;
  cfg_sq.y0 = cfg.y0 * cfg.y0;
  cfg_sq.mKprime = 2 * cfg.mKprime;
  auto em2 = ell_minus(cfg_sq);
  CHECK(em1.value.agreement_digits(em2.value) >= long(cfg.prec) - 4);

  // y0 -> -y0: torsion multiple does not move it
  BiquadConfig cfg_neg = cfg;
  cfg_neg.y0 = fields::QuadElement{-cfg.y0.a, -cfg.y0.b, cfg.y0.disc};
  auto em3 = ell_minus(cfg_neg);
  CHECK(em1.value.agreement_digits(em3.value) >= long(cfg.prec) - 4);
}

TEST_CASE("general regulator: degenerate and scaled tables") {
  unsigned long p = 29;
  Scalar one = Scalar::from_long(1, p, 25);
  Scalar zero = Scalar::zero(p, 25);
  RegulatorTable t;
  t.rows = {{one, zero, zero}, {-one, zero, zero}};
  t.ord_v0 = one;
  t.slope_value = -one;
  CHECK(general_regulator(t).is_zero_to_precision());

  // linearity: scaling all logs by 7 scales the value by 7
  Scalar a = Scalar::from_long(3, p, 25), b = Scalar::from_long(-11, p, 25);
  Scalar c = Scalar::from_long(5, p, 25), d = Scalar::from_long(2, p, 25);
  RegulatorTable t1;
  t1.rows = {{one, a, b}, {-one, c, d}};
  t1.ord_v0 = one;
  t1.slope_value = -one;
  Scalar v1 = general_regulator(t1);
  Scalar seven = Scalar::from_long(7, p, 25);
  RegulatorTable t7;
  t7.rows = {{one, seven * a, seven * b}, {-one, seven * c, seven * d}};
  t7.ord_v0 = one;
  t7.slope_value = -one;
  CHECK((general_regulator(t7) - seven * v1).is_zero_to_precision());

  // incomplete table
  RegulatorTable bad;
  bad.rows = t1.rows;
  bad.ord_v0 = one;
  CHECK_THROWS_WITH_AS((void)general_regulator(bad), doctest::Contains("IncompleteTable"),
                       error);

  // slope derived from unit rows instead of supplied
  RegulatorTable tu = t1;
  tu.slope_value.reset();
  tu.unit_rows = {{one, a, a}, {-one, -a, -a}};  // tau-fixed orbit: slope -1
  Scalar vu = general_regulator(tu);
  CHECK(vu.agreement_digits(v1) >= 20);
}

TEST_CASE("internal quadratic table matches route A after the 2 ell_p shift") {
  const auto& cfg = cfg29();
  auto em = ell_minus(cfg);
  CHECK(em.route_b.agreement_digits(em.route_a) >= long(cfg.prec) - 4);
}

TEST_CASE("fg_check: trivial-zero derivative identity") {
  auto r1 = fg_check(-4, 5, 30);
  CHECK(r1.trivial_zero);
  CHECK(r1.agreement_digits >= 25);
  auto r2 = fg_check(-8, 17, 30);
  CHECK(r2.agreement_digits >= 25);
  auto r3 = fg_check(-5, 29, 30);  // h of Q(sqrt-5) is 2
  CHECK(r3.agreement_digits >= 25);
}

TEST_CASE("fg_check: inert prime means no trivial zero") {
  auto r = fg_check(-4, 7, 25);  // 7 = 3 mod 4 is inert in Q(i)
  CHECK(!r.trivial_zero);
  CHECK(!r.lhs.is_zero_to_precision());
  CHECK(r.agreement_digits >= 23);
  // ramified prime is rejected
  CHECK_THROWS_WITH_AS((void)fg_check(-4, 2, 20), doctest::Contains("UnsupportedPrime"), error);
  CHECK_THROWS_WITH_AS((void)fg_check(-15, 3, 20), doctest::Contains("PrimeNotSplit"), error);
}

TEST_CASE("gross factorization: trivial zero and simple zero") {
  const auto& cfg = cfg29();
  Scalar zero_s = Scalar::zero(cfg.p, long(cfg.prec) + 10);
  Scalar at0 = gross_cyclotomic(cfg, zero_s);
  CHECK(at0.is_zero_to_precision());
  CHECK(at0.abs_prec() >= long(cfg.prec));

  auto rep = simple_zero_check(cfg);
  CHECK(rep.value_vanishes);
  CHECK(rep.simple);
  CHECK(!rep.derivative.is_zero_to_precision());
  CHECK(rep.derivative.val() < long(cfg.prec));
  CHECK(!rep.eps_f_at_one.is_zero_to_precision());
}

TEST_CASE("report: defining identities recomputed") {
  const auto& cfg = cfg29();
  auto rep = report(cfg);
  Scalar two = Scalar::from_long(2, cfg.p, cfg.prec);
  CHECK((rep.ell_psi - two * rep.ell_p).agreement_digits(rep.ell_minus) >=
        long(cfg.prec) - 4);
  CHECK(rep.eta_pbar_at_frob_p.agreement_digits(-rep.ell_p) >= long(cfg.prec) - 4);
  CHECK(rep.eta_minus_eta_p_at_frob_p.agreement_digits(rep.ell_psi - rep.ell_p) >=
        long(cfg.prec) - 6);
  CHECK(rep.route_agreement_digits >= long(cfg.prec) - 4);
  Scalar minus_one = Scalar::from_long(-1, cfg.p, cfg.prec);
  CHECK(rep.slope.agreement_digits(minus_one) >= long(cfg.prec) - 2);
}

TEST_CASE("report stability: prec N and 2N agree on N digits") {
  auto lo = report(build_biquad(-4, 5, 29, 16));
  auto hi = report(build_biquad(-4, 5, 29, 32));
  CHECK(lo.ell_p.agreement_digits(hi.ell_p) >= 14);
  CHECK(lo.ell_minus.agreement_digits(hi.ell_minus) >= 14);
  CHECK(lo.ell_psi.agreement_digits(hi.ell_psi) >= 14);
}
