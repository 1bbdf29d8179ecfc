#include "linv/fields.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

namespace linv::fields {

using padic::Scalar;

long fundamental_disc(long d) {
  if (d == 0) fail(errc::invalid_discriminant, "d = 0");
  mpz_class m(d);
  long core_sign = d < 0 ? -1 : 1;
  mpz_class n = abs(m);
  mpz_class core = 1;
  for (mpz_class q = 2; q * q <= n; ++q) {
    unsigned e = 0;
    while (n % q == 0) {
      n /= q;
      ++e;
    }
    if (e % 2) core *= q;
  }
  core *= n;
  long c = core_sign * core.get_si();
  if (c == 1) fail(errc::invalid_discriminant, "square input, not a quadratic field");
  long r = ((c % 4) + 4) % 4;
  return (r == 1) ? c : 4 * c;
}

QuadField::QuadField(long disc) : disc_(disc) {
  if (disc == 0 || disc == 1) fail(errc::invalid_discriminant, "degenerate discriminant");
  if (fundamental_disc(disc) != disc)
    fail(errc::invalid_discriminant, std::to_string(disc) + " is not fundamental");
}

unsigned QuadField::torsion_order() const {
  if (disc_ == -3) return 6;
  if (disc_ == -4) return 4;
  return 2;
}

QuadElement QuadElement::operator*(const QuadElement& o) const {
  return {a * o.a + mpq_class(disc) * b * o.b, a * o.b + b * o.a, disc};
}

Scalar QuadElement::embed(const Scalar& s) const {
  unsigned long p = s.prime();
  unsigned prec = s.rel_prec();
  Scalar av = Scalar::from_mpq(a, p, prec + 4);
  Scalar bv = Scalar::from_mpq(b, p, prec + 4);
  return av + bv * s;
}

// --- fundamental unit ---------------------------------------------------------

namespace {
// minimal solution of x^2 - N y^2 = +-1 via the continued fraction of sqrt(N)
void pell_minimal(const mpz_class& N, mpz_class& x, mpz_class& y) {
  mpz_class a0 = sqrt(N);
  if (a0 * a0 == N) fail(errc::invalid_discriminant, "square radicand");
  mpz_class P = 0, Q = 1, a = a0;
  mpz_class h0 = 1, h1 = a0, k0 = 0, k1 = 1;
  while (true) {
    P = a * Q - P;
    Q = (N - P * P) / Q;
    a = (a0 + P) / Q;
    if (Q == 1) {
      x = h1;
      y = k1;
      return;
    }
    mpz_class h2 = a * h1 + h0, k2 = a * k1 + k0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
  }
}
}  // namespace

QuadElement fundamental_unit(const QuadField& F) {
  if (!F.real()) fail(errc::invalid_discriminant, "fundamental unit needs a real field");
  long D = F.disc();
  mpz_class N = (D % 4 == 0) ? mpz_class(D / 4) : mpz_class(D);
  mpz_class px, py;
  pell_minimal(N, px, py);
  if (D % 4 == 0) {
    // O = Z[sqrt(N)]; coordinates over sqrt(D) = 2 sqrt(N)
    return {mpq_class(px), mpq_class(py) / 2, D};
  }
  // D = 1 mod 4: scan (x + y sqrt(D))/2 with x = y mod 2, minimal y; the Pell
  // solution bounds the search since the fundamental unit cubed lies in Z[sqrt(D)]
  for (mpz_class y = 1; y <= 2 * py + 2; ++y) {
    for (int s : {-4, 4}) {
      mpz_class x2 = mpz_class(D) * y * y + s;
      if (x2 <= 0) continue;
      mpz_class x = sqrt(x2);
      if (x * x != x2) continue;
      if ((x - y) % 2 != 0) continue;
      return {mpq_class(x) / 2, mpq_class(y) / 2, D};
    }
  }
  fail(errc::internal, "unit search failed");
}

// --- class numbers -------------------------------------------------------------

unsigned long class_number(const QuadField& K) {
  if (K.real()) fail(errc::invalid_discriminant, "class_number implemented for imaginary fields");
  long D = K.disc();
  unsigned long count = 0;
  for (long a = 1; 3 * a * a <= -D; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if (a == c && b < 0) continue;
      if (std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c)) != 1) continue;
      ++count;
    }
  }
  return count;
}

unsigned long class_number_analytic(const QuadField& K) {
  long D = K.disc();
  if (D >= 0) fail(errc::invalid_discriminant, "imaginary only");
  mpz_class disc(D);
  mpz_class s = 0;
  for (long a = 1; a < -D; ++a) {
    int chi = mpz_kronecker_ui(disc.get_mpz_t(), (unsigned long)a);
    s += mpz_class(chi) * a;
  }
  mpz_class h = abs(s) * K.torsion_order() / (2 * mpz_class(-D));
  return h.get_ui();
}

// --- splitting and p-units ------------------------------------------------------

SplitData split_prime(const QuadField& K, unsigned long p, unsigned prec) {
  padic::require_odd_prime(p);
  mpz_class disc(K.disc());
  int kr = mpz_kronecker_ui(disc.get_mpz_t(), p);
  if (kr != 1)
    fail(errc::prime_not_split,
         "p=" + std::to_string(p) + (kr == 0 ? " ramifies" : " is inert") + " in disc " +
             std::to_string(K.disc()));
  SplitData out;
  out.p = p;
  out.sqrt_disc = padic::hensel_sqrt(K.disc(), p, prec);
  mpz_class r = out.sqrt_disc.residue() % p;
  out.seed = r.get_ui();
  return out;
}

PUnit p_unit(const QuadField& K, unsigned long p, unsigned prec) {
  if (K.real()) fail(errc::invalid_discriminant, "p_unit implemented for imaginary fields");
  long D = K.disc();
  SplitData sp = split_prime(K, p, prec);
  unsigned long h = class_number(K);
  mpz_class pm = 1;
  for (unsigned long m = 1; m <= h; ++m) {
    pm *= p;
    std::vector<QuadElement> found;
    if (D % 4 == 0) {
      long N = D / 4;  // O = Z[sqrt(N)], norm u^2 - N v^2
      for (mpz_class v = 0; v * v * (-N) <= pm; ++v) {
        mpz_class x2 = pm + N * v * v;
        if (x2 < 0) continue;
        mpz_class u = sqrt(x2);
        if (u * u != x2) continue;
        found.push_back({mpq_class(u), mpq_class(v) / 2, D});
      }
    } else {
      // x^2 - D y^2 = 4 p^m with x = y mod 2; element (x + y sqrt(D))/2
      for (mpz_class y = 0; y * y * (-D) <= 4 * pm; ++y) {
        mpz_class x2 = 4 * pm + D * y * y;
        if (x2 < 0) continue;
        mpz_class x = sqrt(x2);
        if (x * x != x2) continue;
        if ((x - y) % 2 != 0) continue;
        found.push_back({mpq_class(x) / 2, mpq_class(y) / 2, D});
      }
    }
    for (const auto& w : found) {
      if (w.norm() != pm) continue;
      // primitive, so the support is one-sided: w/p must not be integral
      mpq_class wa = w.a / p, wb = w.b / p, wa2 = 2 * wa, wb2 = 2 * wb, wd = wa - wb;
      bool integral;
      if (D % 4 == 0)
        integral = (wa.get_den() == 1) && (wb2.get_den() == 1);
      else
        integral = (wa2.get_den() == 1) && (wb2.get_den() == 1) && (wd.get_den() == 1);
      if (integral) continue;
      PUnit out;
      out.m = m;
      Scalar img = w.embed(sp.sqrt_disc);
      if (!img.is_zero_to_precision() && img.val() == 0)
        out.u = w.conj();
      else
        out.u = w;
      Scalar check = out.u.embed(sp.sqrt_disc);
      if (check.is_zero_to_precision() || check.val() != long(m))
        fail(errc::p_unit_search_failed, "orientation check failed");
      return out;
    }
  }
  fail(errc::search_bound_exceeded,
       "no p-unit found through m = h = " + std::to_string(h) + " (bound reported)");
}

// --- biquadratic configurations ---------------------------------------------------

BiquadElement BiquadElement::apply_g() const { return {{c[0], c[1], -c[2], -c[3]}}; }
BiquadElement BiquadElement::apply_tau() const { return {{c[0], -c[1], c[2], -c[3]}}; }

Scalar BiquadElement::embed(const Scalar& sK, const Scalar& sF) const {
  unsigned long p = sK.prime();
  unsigned prec = std::min(sK.rel_prec(), sF.rel_prec());
  auto q = [&](const mpq_class& x) { return Scalar::from_mpq(x, p, prec + 4); };
  return q(c[0]) + q(c[1]) * sK + q(c[2]) * sF + q(c[3]) * sK * sF;
}

BiquadElement BiquadConfig::lift_from_K(const QuadElement& z) const {
  if (z.disc != dK) fail(errc::internal, "element not from K");
  return {{z.a, z.b, 0, 0}};
}
BiquadElement BiquadConfig::lift_from_F(const QuadElement& z) const {
  if (z.disc != dF) fail(errc::internal, "element not from F");
  return {{z.a, 0, z.b, 0}};
}
BiquadElement BiquadConfig::lift_from_Kprime(const QuadElement& z) const {
  if (z.disc != dKprime) fail(errc::internal, "element not from K'");
  return {{z.a, 0, 0, z.b / c0}};
}
Scalar BiquadConfig::embed(const BiquadElement& z) const { return z.embed(sqrtK, sqrtF); }

BiquadConfig build_biquad(long dK_in, long dF_in, unsigned long p, unsigned prec) {
  padic::require_odd_prime(p);
  BiquadConfig cfg;
  cfg.dK = fundamental_disc(dK_in);
  cfg.dF = fundamental_disc(dF_in);
  if (cfg.dK >= 0) fail(errc::invalid_discriminant, "dK must be negative");
  if (cfg.dF <= 0) fail(errc::invalid_discriminant, "dF must be positive");
  cfg.p = p;
  cfg.prec = prec;

  QuadField K(cfg.dK), F(cfg.dF);
  mpz_class zK(cfg.dK), zF(cfg.dF);
  if (mpz_kronecker_ui(zK.get_mpz_t(), p) != 1 || mpz_kronecker_ui(zF.get_mpz_t(), p) != 1)
    fail(errc::prime_not_split_completely,
         "p=" + std::to_string(p) + " does not split in both quadratic subfields");

  long prod = cfg.dK * cfg.dF;
  cfg.dKprime = fundamental_disc(-std::abs(prod));
  QuadField Kp(cfg.dKprime);
  mpz_class c0sq = mpz_class(prod) / cfg.dKprime;
  mpz_class c0 = sqrt(c0sq);
  if (c0 * c0 != c0sq) fail(errc::internal, "discriminant product relation broke");
  cfg.c0 = c0.get_si();

  cfg.hK = class_number(K);
  cfg.hKprime = class_number(Kp);

  cfg.sqrtK = padic::hensel_sqrt(cfg.dK, p, prec);
  cfg.sqrtF = padic::hensel_sqrt(cfg.dF, p, prec);
  cfg.sqrtKprime = cfg.sqrtK * cfg.sqrtF / Scalar::from_long(cfg.c0, p, prec);

  cfg.epsF = fundamental_unit(F);
  mpq_class nrm = cfg.epsF.norm();
  if (nrm != 1 && nrm != -1) fail(errc::internal, "fundamental unit norm check failed");

  PUnit pk = p_unit(K, p, prec);
  cfg.uP = pk.u;
  cfg.mK = pk.m;

  PUnit pk2 = p_unit(Kp, p, prec);
  cfg.y0 = pk2.u;
  cfg.mKprime = pk2.m;
  // The place v0 of H is fixed by (sqrtK, sqrtF); its restriction to K' sends
  // sqrt(dK') to sqrtK*sqrtF/c0, which may disagree with the standalone
  // smaller-seed convention for K'. Re-orient y0 against v0.
  {
    Scalar img = cfg.y0.embed(cfg.sqrtKprime);
    if (!img.is_zero_to_precision() && img.val() == 0) cfg.y0 = cfg.y0.conj();
    Scalar check = cfg.y0.embed(cfg.sqrtKprime);
    if (check.is_zero_to_precision() || check.val() != long(cfg.mKprime))
      fail(errc::p_unit_search_failed, "v0-orientation of y0 failed");
  }

  Scalar up_img = cfg.uP.embed(cfg.sqrtK);
  Scalar up_conj = cfg.uP.conj().embed(cfg.sqrtK);
  if (up_img.val() != long(cfg.mK) || up_conj.val() != 0)
    fail(errc::p_unit_search_failed, "uP place orientation inconsistent");
  return cfg;
}

}  // namespace linv::fields
