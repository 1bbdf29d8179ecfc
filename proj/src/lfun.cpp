#include "linv/lfun.hpp"

#include <mutex>
#include <numeric>

#include "linv/fields.hpp"

namespace linv::lfun {

using padic::CycloField;
using padic::ExtElement;
using padic::Scalar;

// --- Bernoulli ---------------------------------------------------------------

const mpq_class& bernoulli(unsigned n) {
  static std::vector<mpq_class> cache = {mpq_class(1), mpq_class(-1, 2)};
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  while (cache.size() <= n) {
    unsigned m = cache.size();
    if (m % 2 == 1) {
      cache.push_back(0);
      continue;
    }
    // B_m = -1/(m+1) * sum_{k<m} C(m+1,k) B_k
    mpq_class s = 0;
    for (unsigned k = 0; k < m; ++k) {
      mpz_class c;
      mpz_bin_uiui(c.get_mpz_t(), m + 1, k);
      s += mpq_class(c) * cache[k];
    }
    cache.push_back(-s / mpq_class(m + 1));
  }
  return cache[n];
}

mpq_class bernoulli_poly(unsigned n, const mpq_class& x) {
  mpq_class acc = 0, xp = 1;
  // sum C(n,k) B_{n-k} x^k
  for (unsigned k = 0; k <= n; ++k) {
    mpz_class c;
    mpz_bin_uiui(c.get_mpz_t(), n, n - k);
    acc += mpq_class(c) * bernoulli(n - k) * xp;
    xp *= x;
  }
  return acc;
}

// --- characters ----------------------------------------------------------------

DirichletCharacter DirichletCharacter::trivial() { return {}; }

DirichletCharacter DirichletCharacter::quadratic(long disc) {
  DirichletCharacter c;
  if (disc == 1) return c;
  if (fields::fundamental_disc(disc) != disc)
    fail(errc::invalid_discriminant, "character wants a fundamental discriminant");
  c.d_ = disc;
  return c;
}

DirichletCharacter DirichletCharacter::twist_omega(long k, unsigned long p) const {
  padic::require_odd_prime(p);
  if (p_ != 0 && p_ != p) fail(errc::invalid_parameters, "omega twist at a different prime");
  DirichletCharacter c = *this;
  long r = k % long(p - 1);
  if (r < 0) r += long(p - 1);
  r = (long(c.k_) + r) % long(p - 1);
  c.k_ = unsigned(r);
  c.p_ = c.k_ ? p : 0;
  return c;
}

DirichletCharacter DirichletCharacter::omega_untwist(unsigned n, unsigned long p) const {
  return twist_omega(-long(n), p);
}

bool DirichletCharacter::even() const {
  int sgn = (d_ < 0 ? -1 : 1) * (k_ % 2 ? -1 : 1);
  return sgn == 1;
}

unsigned long DirichletCharacter::conductor() const {
  unsigned long f = d_ == 1 ? 1 : (unsigned long)std::abs(d_);
  if (k_ != 0) f *= p_;
  return f;
}

int DirichletCharacter::value_quadratic(const mpz_class& a) const {
  if (!rational()) fail(errc::internal, "value_quadratic on an omega-twisted character");
  if (d_ == 1) return 1;
  mpz_class d(d_);
  return mpz_kronecker(d.get_mpz_t(), a.get_mpz_t());
}

Scalar DirichletCharacter::value(const mpz_class& a, unsigned long p, unsigned prec) const {
  if (k_ != 0 && p_ != p) fail(errc::invalid_parameters, "character lives at another prime");
  int q = 1;
  if (d_ != 1) {
    mpz_class d(d_);
    q = mpz_kronecker(d.get_mpz_t(), a.get_mpz_t());
  }
  if (q == 0) return Scalar::zero(p, long(prec));
  if (k_ != 0) {
    unsigned long r = mpz_fdiv_ui(a.get_mpz_t(), p);
    if (r == 0) return Scalar::zero(p, long(prec));
    Scalar t = padic::teichmuller(r, p, prec).pow(long(k_));
    return q == 1 ? t : -t;
  }
  return Scalar::from_long(q, p, prec);
}

std::string DirichletCharacter::label() const {
  std::string s = "quad:" + std::to_string(d_);
  if (k_) s += "*omega^" + std::to_string(k_);
  return s;
}

// --- generalized Bernoulli ------------------------------------------------------

mpq_class gen_bernoulli(const DirichletCharacter& chi, unsigned n) {
  if (!chi.rational()) fail(errc::internal, "gen_bernoulli needs a rational character");
  unsigned long f = chi.conductor();
  mpq_class acc = 0;
  for (unsigned long a = 1; a <= f; ++a) {
    int v = chi.value_quadratic(mpz_class((long)a));
    if (v == 0) continue;
    acc += mpq_class(v) * bernoulli_poly(n, mpq_class((long)a, (long)f));
  }
  mpq_class fp = 1;
  for (unsigned i = 1; i < n; ++i) fp *= (long)f;
  return fp * acc;
}

Scalar gen_bernoulli_padic(const DirichletCharacter& chi, unsigned n, unsigned long p,
                           unsigned prec) {
  if (chi.rational()) return Scalar::from_mpq(gen_bernoulli(chi, n), p, prec);
  unsigned long f = chi.conductor();
  Scalar acc = Scalar::zero(p, long(prec) + 4);
  for (unsigned long a = 1; a <= f; ++a) {
    Scalar v = chi.value(mpz_class((long)a), p, prec + 4);
    if (v.is_zero_to_precision()) continue;
    acc = acc + v * Scalar::from_mpq(bernoulli_poly(n, mpq_class((long)a, (long)f)), p, prec + 4);
  }
  mpz_class fp = 1;
  for (unsigned i = 1; i < n; ++i) fp *= (long)f;
  return (acc * Scalar::from_mpz(fp, p, prec + 4)).cap_rel(prec);
}

mpq_class classical_L_at_nonpos(const DirichletCharacter& chi, unsigned n) {
  if (n < 1) fail(errc::invalid_parameters, "want L(chi, 1-n) with n >= 1");
  bool chi_odd = !chi.even();
  if (chi_odd != (n % 2 == 1)) return 0;  // parity mismatch: the value vanishes
  return -gen_bernoulli(chi, n) / mpq_class(n);
}

Scalar interpolation_rhs(const DirichletCharacter& chi, unsigned n, unsigned long p,
                         unsigned prec) {
  DirichletCharacter tw = chi.omega_untwist(n, p);
  Scalar b = gen_bernoulli_padic(tw, n, p, prec + 4);
  Scalar chi_p = tw.value(mpz_class((long)p), p, prec + 4);
  Scalar pn = Scalar::from_long((long)p, p, prec + 4).pow(long(n) - 1);
  Scalar one = Scalar::from_long(1, p, prec + 4);
  Scalar euler = one - chi_p * pn;
  return (-(euler * b) / Scalar::from_long((long)n, p, prec + 4)).cap_rel(prec);
}

// --- derivative engine ------------------------------------------------------------

Scalar central_derivative(const std::function<Scalar(const Scalar&)>& f, const Scalar& s0,
                          unsigned prec) {
  unsigned long p = s0.prime();
  unsigned sprec = s0.is_zero_to_precision() ? unsigned(std::max<long>(s0.abs_prec(), 8))
                                             : s0.rel_prec();
  unsigned k = std::max<unsigned>(4, prec / 4 + 3);
  auto diff = [&](unsigned kk) {
    Scalar h = Scalar::from_mpz(padic::pow_p(p, kk), p, sprec + kk + 4);
    Scalar num = f(s0 + h) - f(s0 - h);
    return num / (h + h);
  };
  Scalar d0 = diff(k), d1 = diff(k + 1), d2 = diff(k + 2);
  Scalar psq = Scalar::from_long(long(p) * long(p), p, sprec + 8);
  Scalar one = Scalar::from_long(1, p, sprec + 8);
  // D(h) = L' + c h^2 + ...: the pair (k, k+1) eliminates the h^2 term
  Scalar r0 = (psq * d0 - d1) / (psq - one);
  Scalar r1 = (psq * d1 - d2) / (psq - one);
  if (r0.is_zero_to_precision() && r1.is_zero_to_precision())
    return Scalar::zero(p, std::min(r0.abs_prec(), r1.abs_prec()));
  long window = r0.agreement_digits(r1);
  if (window <= 0) fail(errc::precision_exhausted, "derivative steps do not agree");
  if (r0.is_zero_to_precision()) return r0;
  return r0.cap_rel(unsigned(std::min<long>(window, long(r0.rel_prec()))));
}

// --- PadicLSeries -------------------------------------------------------------------

PadicLSeries::PadicLSeries(const DirichletCharacter& chi, unsigned long p, unsigned prec)
    : chi_(chi), p_(p), prec_(prec) {
  padic::require_odd_prime(p);
  if (!chi.even()) fail(errc::odd_character, "evaluator requires an even character");
  if (chi.omega_pow() != 0 && chi.omega_prime() != p)
    fail(errc::invalid_parameters, "character omega-part lives at another prime");
  work_ = prec + prec / 4 + 12;  // headroom for the derivative's difference quotients
  unsigned long f = chi.conductor();
  F_ = std::lcm(f, p);
  // tail bound: term j has valuation >= j - 1 - v_p(j!) >= j(p-2)/(p-1) - 1
  unsigned M = 1;
  while (long(M) - 1 - long((M - 1) / (p - 1)) < long(work_) + 1) ++M;
  M_ = M;
  if (M_ > 20000) fail(errc::precision_exhausted, "truncation bound too large");

  bern_.reserve(M_ + 1);
  for (unsigned j = 0; j <= M_; ++j)
    bern_.push_back(Scalar::from_mpq(bernoulli(j), p, work_ + 4));

  rows_.reserve(F_);
  for (unsigned long a = 1; a <= F_; ++a) {
    if (a % p == 0) continue;
    Scalar chi_a = chi_.value(mpz_class((long)a), p, work_ + 4);
    if (chi_a.is_zero_to_precision()) continue;
    Row r;
    r.a = (long)a;
    r.chi_a = chi_a;
    Scalar av = Scalar::from_long((long)a, p, work_ + 4);
    r.bracket_log = padic::iwasawa_log(av);
    r.f_over_a = Scalar::from_mpq(mpq_class((long)F_, (long)a), p, work_ + 4);
    rows_.push_back(std::move(r));
  }
}

Scalar PadicLSeries::eval_at_one(unsigned M) const {
  if (chi_.is_trivial()) fail(errc::pole_at_one, "L_p(1, trivial) is a pole");
  // limit formula: (1/F) sum_a chi(a) [ -log<a> + sum_{j>=1} (-1)^j B_j (F/a)^j / j ]
  Scalar acc = Scalar::zero(p_, long(work_));
  for (const auto& r : rows_) {
    Scalar inner = Scalar::zero(p_, long(work_));
    Scalar fo = Scalar::from_long(1, p_, work_ + 4);
    for (unsigned j = 1; j <= M; ++j) {
      fo = fo * r.f_over_a;
      if (bernoulli(j) == 0) continue;
      Scalar t = bern_[j] * fo / Scalar::from_long((long)j, p_, work_ + 4);
      inner = (j % 2) ? inner - t : inner + t;
    }
    acc = acc + r.chi_a * (inner - r.bracket_log);
  }
  return (acc / Scalar::from_long((long)F_, p_, work_ + 4)).cap_rel(prec_);
}

Scalar PadicLSeries::eval_general(const Scalar& s, unsigned M) const {
  Scalar one = Scalar::from_long(1, p_, work_ + 6);
  Scalar oms = one - s;  // 1 - s
  Scalar acc = Scalar::zero(p_, long(work_));
  for (const auto& r : rows_) {
    Scalar pw = padic::padic_exp(oms * r.bracket_log);  // <a>^(1-s)
    // inner = sum_j binom(1-s, j) (F/a)^j B_j
    Scalar inner = bern_[0];
    Scalar binom = one;
    Scalar fo = one;
    for (unsigned j = 1; j <= M; ++j) {
      binom = binom * (oms - Scalar::from_long(long(j) - 1, p_, work_ + 6)) /
              Scalar::from_long((long)j, p_, work_ + 6);
      fo = fo * r.f_over_a;
      if (bernoulli(j) == 0) continue;
      inner = inner + binom * fo * bern_[j];
    }
    acc = acc + r.chi_a * pw * inner;
  }
  Scalar den = Scalar::from_long((long)F_, p_, work_ + 6) * (s - one);
  return (acc / den).cap_rel(prec_);
}

Scalar PadicLSeries::eval_with_truncation(const Scalar& s, unsigned M) const {
  Scalar one = Scalar::from_long(1, p_, work_ + 6);
  if ((s - one).is_zero_to_precision()) return eval_at_one(M);
  return eval_general(s, M);
}

Scalar PadicLSeries::eval(const Scalar& s) const { return eval_with_truncation(s, M_); }

Scalar PadicLSeries::eval_int(long s) const {
  return eval(Scalar::from_long(s, p_, work_ + 6));
}

Scalar PadicLSeries::derivative(const Scalar& s0) const {
  return central_derivative([this](const Scalar& s) { return eval(s); }, s0, prec_);
}

Scalar PadicLSeries::derivative_int(long s0) const {
  return derivative(Scalar::from_long(s0, p_, work_ + 6));
}

// --- Leopoldt at s = 1 ---------------------------------------------------------------

Scalar leopoldt_at_one(const DirichletCharacter& chi, unsigned long p, unsigned prec) {
  if (chi.is_trivial()) fail(errc::pole_at_one, "L_p(1, trivial) is a pole");
  if (!chi.rational())
    fail(errc::invalid_parameters, "cyclotomic route implemented for quadratic characters");
  if (!chi.even()) fail(errc::odd_character, "Leopoldt's formula wants an even character");
  unsigned long f = chi.conductor();
  if (std::gcd(f, p) != 1)
    fail(errc::root_of_unity_construction_failed, "p divides the conductor");
  long W = long(prec) + 8;
  CycloField E(p, f, W);
  ExtElement sum = E.zero();
  ExtElement tau = E.zero();
  for (unsigned long a = 1; a <= f; ++a) {
    int v = chi.value_quadratic(mpz_class((long)a));
    if (v == 0) continue;
    ExtElement za = E.zeta_pow((long)a);
    tau = E.add(tau, v == 1 ? za : E.neg(za));
    ExtElement lg = E.log(E.sub(E.one(), za));
    sum = E.add(sum, v == 1 ? lg : E.neg(lg));
  }
  ExtElement prod = E.mul(tau, sum);
  Scalar c0 = E.constant_value(prod);  // Galois-stable, hence constant
  int chi_p = chi.value_quadratic(mpz_class((long)p));
  Scalar euler = Scalar::from_mpq(mpq_class(long(p) - chi_p, (long)p), p, prec + 6);
  Scalar out = -(euler * c0) / Scalar::from_long((long)f, p, prec + 6);
  return out.cap_rel(prec);
}

DirichletCharacter parse_character(const std::string& label, unsigned long p) {
  const std::string quad = "quad:";
  if (label.rfind(quad, 0) != 0)
    fail(errc::invalid_parameters, "character label must look like quad:<disc>[*omega^k]");
  std::string rest = label.substr(quad.size());
  long k = 0;
  auto star = rest.find("*omega^");
  if (star != std::string::npos) {
    k = std::stol(rest.substr(star + 7));
    rest = rest.substr(0, star);
  }
  long d = std::stol(rest);
  DirichletCharacter c = DirichletCharacter::quadratic(d == 1 ? 1 : fields::fundamental_disc(d));
  if (k) c = c.twist_omega(k, p);
  return c;
}

}  // namespace linv::lfun
