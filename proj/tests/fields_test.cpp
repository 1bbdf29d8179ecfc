#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "linv/fields.hpp"

using namespace linv;
using namespace linv::fields;
using linv::padic::Scalar;

TEST_CASE("fundamental discriminants") {
  CHECK(fundamental_disc(5) == 5);
  CHECK(fundamental_disc(2) == 8);
  CHECK(fundamental_disc(3) == 12);
  CHECK(fundamental_disc(-1) == -4);
  CHECK(fundamental_disc(-5) == -20);
  CHECK(fundamental_disc(-2) == -8);
  CHECK(fundamental_disc(-23) == -23);
  CHECK(fundamental_disc(12) == 12);
  CHECK(fundamental_disc(-32) == -8);
  CHECK_THROWS_AS((void)fundamental_disc(4), error);
}

TEST_CASE("fundamental units via continued fractions") {
  // Q(sqrt 5): (1+sqrt5)/2, norm -1
  auto e5 = fundamental_unit(QuadField(5));
  CHECK(e5.a == mpq_class(1, 2));
  CHECK(e5.b == mpq_class(1, 2));
  CHECK(e5.norm() == -1);

  // Q(sqrt 2): 1+sqrt2 = 1 + (1/2) sqrt8, norm -1
  auto e8 = fundamental_unit(QuadField(8));
  CHECK(e8.a == 1);
  CHECK(e8.b == mpq_class(1, 2));
  CHECK(e8.norm() == -1);

  // Q(sqrt 3): 2+sqrt3 = 2 + (1/2) sqrt12, norm +1
  auto e12 = fundamental_unit(QuadField(12));
  CHECK(e12.a == 2);
  CHECK(e12.b == mpq_class(1, 2));
  CHECK(e12.norm() == 1);

  // harder case: disc 61, unit (39+5 sqrt61)/2
  auto e61 = fundamental_unit(QuadField(61));
  CHECK(e61.a == mpq_class(39, 2));
  CHECK(e61.b == mpq_class(5, 2));
  CHECK(e61.norm() == -1);
}

TEST_CASE("unit times conjugate is the norm, exactly") {
  for (long d : {5l, 8l, 12l, 13l, 61l, 40l}) {
    auto e = fundamental_unit(QuadField(d));
    auto prod = e * e.conj();
    CHECK(prod.b == 0);
    CHECK((prod.a == 1 || prod.a == -1));
  }
}

TEST_CASE("class numbers: reduced forms vs analytic formula") {
  CHECK(class_number(QuadField(-4)) == 1);
  CHECK(class_number(QuadField(-20)) == 2);
  CHECK(class_number(QuadField(-23)) == 3);
  CHECK(class_number(QuadField(-47)) == 5);
  CHECK(class_number(QuadField(-8)) == 1);
  for (long d = -3; d >= -200; --d) {
    long fd;
    try {
      fd = fundamental_disc(d);
    } catch (const error&) {
      continue;
    }
    if (fd != d) continue;
    QuadField K(d);
    CHECK(class_number(K) == class_number_analytic(K));
  }
}

TEST_CASE("split primes") {
  auto sd = split_prime(QuadField(-4), 5, 20);
  // smaller seed convention: sqrt(-4) = 2i with seed 1 (1^2 = -4 mod 5)
  CHECK(sd.seed == 1);
  mpz_class r = sd.sqrt_disc.residue();
  CHECK((r * r + 4) % padic::pow_p(5, 20) == 0);

  CHECK_THROWS_WITH_AS((void)split_prime(QuadField(-4), 7, 20),
                       doctest::Contains("PrimeNotSplit"), error);
  // ramified
  CHECK_THROWS_WITH_AS((void)split_prime(QuadField(-8), 2, 20),
                       doctest::Contains("UnsupportedPrime"), error);
  CHECK_THROWS_WITH_AS((void)split_prime(QuadField(-15), 3, 20),
                       doctest::Contains("PrimeNotSplit"), error);
  // Q(sqrt5), p=29: 29 = +-1 mod 5 so it splits
  CHECK_NOTHROW((void)split_prime(QuadField(5), 29, 20));
}

TEST_CASE("p-units of imaginary quadratic fields") {
  // Q(i), p=5: 2+i up to orientation, m=1
  auto u = p_unit(QuadField(-4), 5, 20);
  CHECK(u.m == 1);
  CHECK(u.u.norm() == 5);

  // Q(sqrt-5), p=29: 3+2sqrt(-5), m=1 (principal)
  auto v = p_unit(QuadField(-20), 29, 20);
  CHECK(v.m == 1);
  CHECK(v.u.norm() == 29);
  CHECK(abs(v.u.a) == 3);

  // Q(sqrt-5), p=3: the prime above 3 has order 2; norm 9 element not
  // divisible by 3, e.g. 2+sqrt(-5)
  auto w = p_unit(QuadField(-20), 3, 20);
  CHECK(w.m == 2);
  CHECK(w.u.norm() == 9);
  CHECK(abs(w.u.a) == 2);
}

TEST_CASE("embedding consistency: norm and trace") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> d(-30, 30);
  for (long disc : {-4l, -20l, -23l}) {
    auto sd = split_prime(QuadField(disc), disc == -23 ? 59ul : 29ul, 25);
    for (int i = 0; i < 25; ++i) {
      QuadElement z{mpq_class(d(rng)), mpq_class(d(rng), 2), disc};
      Scalar iz = z.embed(sd.sqrt_disc);
      Scalar izbar = z.conj().embed(sd.sqrt_disc);
      Scalar nrm = Scalar::from_mpq(z.norm(), sd.p, 22);
      Scalar tr = Scalar::from_mpq(z.trace(), sd.p, 22);
      CHECK((iz * izbar - nrm).is_zero_to_precision());
      CHECK((iz + izbar - tr).is_zero_to_precision());
    }
  }
}

TEST_CASE("biquadratic configuration (-4, 5, 29)") {
  auto cfg = build_biquad(-4, 5, 29, 30);
  CHECK(cfg.dKprime == -20);
  CHECK(cfg.hK == 1);
  CHECK(cfg.hKprime == 2);
  CHECK(cfg.c0 == 1);
  CHECK(cfg.mK == 1);
  CHECK(cfg.mKprime == 1);
  // y0 = 3 + 2 sqrt(-5) = 3 + sqrt(-20), up to conjugation/orientation
  CHECK(abs(cfg.y0.a) == 3);
  CHECK(abs(cfg.y0.b) == 1);
  // v0-consistency: sqrtKprime^2 = dKprime
  auto sq = cfg.sqrtKprime * cfg.sqrtKprime;
  CHECK((sq - Scalar::from_long(cfg.dKprime, 29, 30)).is_zero_to_precision());
  // epsF is the golden ratio unit
  CHECK(cfg.epsF.norm() == -1);
}

TEST_CASE("biquadratic configuration (-4, 2, 17) and (-8, 5, 11)") {
  auto cfg = build_biquad(-4, 2, 17, 25);
  CHECK(cfg.dF == 8);
  CHECK(cfg.dKprime == -8);
  CHECK(cfg.hKprime == 1);

  auto cfg2 = build_biquad(-8, 5, 11, 25);
  CHECK(cfg2.dKprime == -40);
  CHECK(cfg2.hKprime == 2);
  CHECK(cfg2.mKprime == 1);  // 11 = 1 + 10 is a norm, so the place is principal
}

TEST_CASE("biquadratic rejections") {
  CHECK_THROWS_WITH_AS((void)build_biquad(-4, 5, 7, 20),
                       doctest::Contains("PrimeNotSplitCompletely"), error);
  CHECK_THROWS_AS((void)build_biquad(5, 5, 29, 20), error);
  CHECK_THROWS_AS((void)build_biquad(-4, -5, 29, 20), error);
}

TEST_CASE("Galois action on H") {
  auto cfg = build_biquad(-4, 5, 29, 25);
  auto eF = cfg.lift_from_F(cfg.epsF);
  // tau fixes F pointwise; g conjugates it
  CHECK(eF.apply_tau().c[2] == eF.c[2]);
  CHECK(eF.apply_g().c[2] == -eF.c[2]);
  // embedding of eps * g(eps) = N(eps) = -1
  auto prod_img = cfg.embed(eF) * cfg.embed(eF.apply_g());
  CHECK((prod_img + Scalar::from_long(1, 29, 20)).is_zero_to_precision());
  // y0 in K' is fixed by g*tau
  auto y = cfg.lift_from_Kprime(cfg.y0);
  auto ygt = y.apply_g().apply_tau();
  CHECK(y.c[0] == ygt.c[0]);
  CHECK(y.c[3] == ygt.c[3]);
}
