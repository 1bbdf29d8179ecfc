#include "linv/padic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace linv::padic {

void require_odd_prime(unsigned long p) {
  if (p < 3) fail(errc::unsupported_prime, "p must be an odd prime, got " + std::to_string(p));
  mpz_class z(p);
  if (mpz_probab_prime_p(z.get_mpz_t(), 40) == 0)
    fail(errc::unsupported_prime, std::to_string(p) + " is not prime");
}

mpz_class pow_p(unsigned long p, unsigned long k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, k);
  return r;
}

unsigned long valuation(const mpz_class& n, unsigned long p) {
  if (n == 0) fail(errc::internal, "valuation of 0");
  mpz_class q = n, r;
  unsigned long v = 0;
  while (true) {
    mpz_class quo;
    r = q % p;
    if (r != 0) break;
    mpz_divexact_ui(quo.get_mpz_t(), q.get_mpz_t(), p);
    q = quo;
    ++v;
  }
  return v;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    fail(errc::not_a_unit, "no inverse modulo " + m.get_str());
  return r;
}

// --- Scalar -----------------------------------------------------------------

Scalar Scalar::zero(unsigned long p, long abs_prec) {
  require_odd_prime(p);
  Scalar s;
  s.p_ = p;
  s.zero_ = true;
  s.abs_ = abs_prec;
  return s;
}

Scalar Scalar::from_unit(unsigned long p, long val, const mpz_class& unit, unsigned prec) {
  require_odd_prime(p);
  if (prec == 0) return zero(p, val);
  mpz_class u = unit % pow_p(p, prec);
  if (u < 0) u += pow_p(p, prec);
  if (u == 0) return zero(p, val + long(prec));
  unsigned long t = valuation(u, p);
  if (t >= prec) return zero(p, val + long(prec));
  if (t > 0) {
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), u.get_mpz_t(), pow_p(p, t).get_mpz_t());
    u = q;
  }
  Scalar s;
  s.p_ = p;
  s.zero_ = false;
  s.val_ = val + long(t);
  s.prec_ = prec - unsigned(t);
  s.unit_ = u % pow_p(p, s.prec_);
  return s;
}

Scalar Scalar::from_residue(const mpz_class& residue, unsigned long p, long abs_prec) {
  if (abs_prec <= 0) return zero(p, abs_prec);
  return from_unit(p, 0, residue, unsigned(abs_prec));
}

Scalar Scalar::from_mpz(const mpz_class& n, unsigned long p, unsigned prec) {
  require_odd_prime(p);
  if (n == 0) return zero(p, long(prec));
  unsigned long v = valuation(n, p);
  mpz_class u;
  mpz_divexact(u.get_mpz_t(), n.get_mpz_t(), pow_p(p, v).get_mpz_t());
  return from_unit(p, long(v), u, prec);
}

Scalar Scalar::from_long(long n, unsigned long p, unsigned prec) {
  return from_mpz(mpz_class(n), p, prec);
}

Scalar Scalar::from_mpq(const mpq_class& q, unsigned long p, unsigned prec) {
  require_odd_prime(p);
  if (q == 0) return zero(p, long(prec));
  Scalar num = from_mpz(q.get_num(), p, prec + 2);
  Scalar den = from_mpz(q.get_den(), p, prec + 2);
  return (num / den).cap_rel(prec);
}

long Scalar::val() const {
  if (zero_) fail(errc::zero_to_precision_operand, "valuation of a zero-to-precision value");
  return val_;
}

std::optional<long> Scalar::val_if_known() const {
  if (zero_) return std::nullopt;
  return val_;
}

const mpz_class& Scalar::unit_part() const {
  if (zero_) fail(errc::zero_to_precision_operand, "unit part of a zero-to-precision value");
  return unit_;
}

mpz_class Scalar::residue() const {
  if (zero_) return 0;
  if (val_ < 0) fail(errc::internal, "residue of negative-valuation value");
  return unit_ * pow_p(p_, (unsigned long)val_);
}

std::vector<unsigned long> Scalar::digits() const {
  std::vector<unsigned long> out;
  if (zero_) return out;
  mpz_class u = unit_;
  for (unsigned i = 0; i < prec_; ++i) {
    out.push_back(mpz_fdiv_ui(u.get_mpz_t(), p_));
    mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), p_);
  }
  return out;
}

void Scalar::check_same_prime(const Scalar& a, const Scalar& b) {
  if (!a.valid() || !b.valid()) fail(errc::internal, "uninitialized p-adic value");
  if (a.p_ != b.p_)
    fail(errc::internal, "mixed primes " + std::to_string(a.p_) + " and " + std::to_string(b.p_));
}

Scalar Scalar::cap_abs(long a) const {
  if (zero_) return zero(p_, std::min(abs_, a));
  if (a >= abs_prec()) return *this;
  if (a <= val_) return zero(p_, a);
  return from_unit(p_, val_, unit_, unsigned(a - val_));
}

Scalar Scalar::cap_rel(unsigned n) const {
  if (zero_ || n >= prec_) return *this;
  return from_unit(p_, val_, unit_, n);
}

Scalar Scalar::operator-() const {
  if (zero_) return *this;
  return from_unit(p_, val_, pow_p(p_, prec_) - unit_, prec_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  Scalar::check_same_prime(a, b);
  long abs = std::min(a.abs_prec(), b.abs_prec());
  if (a.zero_ && b.zero_) return Scalar::zero(a.p_, abs);
  if (a.zero_) return b.cap_abs(abs);
  if (b.zero_) return a.cap_abs(abs);
  long v0 = std::min(a.val_, b.val_);
  if (abs <= v0) return Scalar::zero(a.p_, abs);
  mpz_class mod = pow_p(a.p_, (unsigned long)(abs - v0));
  mpz_class s = a.unit_ * pow_p(a.p_, (unsigned long)(a.val_ - v0)) +
                b.unit_ * pow_p(a.p_, (unsigned long)(b.val_ - v0));
  s %= mod;
  return Scalar::from_unit(a.p_, v0, s, unsigned(abs - v0));
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  Scalar::check_same_prime(a, b);
  if (a.zero_ && b.zero_) return Scalar::zero(a.p_, a.abs_ + b.abs_);
  if (a.zero_) return Scalar::zero(a.p_, a.abs_ + b.val_);
  if (b.zero_) return Scalar::zero(a.p_, b.abs_ + a.val_);
  unsigned prec = std::min(a.prec_, b.prec_);
  mpz_class u = (a.unit_ * b.unit_) % pow_p(a.p_, prec);
  return Scalar::from_unit(a.p_, a.val_ + b.val_, u, prec);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  Scalar::check_same_prime(a, b);
  if (b.zero_)
    fail(errc::division_by_imprecise_zero, "divisor has no known nonzero digit");
  if (a.zero_) return Scalar::zero(a.p_, a.abs_ - b.val_);
  unsigned prec = std::min(a.prec_, b.prec_);
  mpz_class m = pow_p(a.p_, prec);
  mpz_class u = (a.unit_ * inv_mod(b.unit_ % m, m)) % m;
  return Scalar::from_unit(a.p_, a.val_ - b.val_, u, prec);
}

Scalar Scalar::pow(long e) const {
  if (zero_) {
    if (e <= 0) fail(errc::division_by_imprecise_zero, "power of zero-to-precision");
    return zero(p_, abs_ * e);  // crude but sound lower bound when abs_ >= 0
  }
  if (e == 0) return from_long(1, p_, prec_);
  Scalar base = e < 0 ? this->inv() : *this;
  unsigned long n = (unsigned long)(e < 0 ? -e : e);
  Scalar acc = from_long(1, p_, prec_);
  while (n) {
    if (n & 1) acc = acc * base;
    base = base * base;
    n >>= 1;
  }
  return acc;
}

bool Scalar::same_to_precision(const Scalar& other) const {
  Scalar d = *this - other;
  return d.is_zero_to_precision();
}

long Scalar::agreement_digits(const Scalar& other) const {
  Scalar d = *this - other;
  long ref = 0;
  if (!zero_ && !other.zero_)
    ref = std::min(val_, other.val_);
  else if (!zero_)
    ref = val_;
  else if (!other.zero_)
    ref = other.val_;
  long bound = d.zero_ ? d.abs_ : d.val();
  return bound - ref;
}

bool Scalar::operator==(const Scalar& o) const {
  if (p_ != o.p_ || zero_ != o.zero_) return false;
  if (zero_) return abs_ == o.abs_;
  return val_ == o.val_ && prec_ == o.prec_ && unit_ == o.unit_;
}

std::string Scalar::str() const {
  std::ostringstream os;
  if (!valid()) return "<invalid>";
  if (zero_) {
    os << "O(" << p_ << "^" << abs_ << ")";
    return os.str();
  }
  os << unit_.get_str() << "*" << p_ << "^" << val_ << " + O(" << p_ << "^" << abs_prec() << ")";
  return os.str();
}

// --- Teichmueller, log, exp --------------------------------------------------

Scalar teichmuller(unsigned long a, unsigned long p, unsigned prec) {
  require_odd_prime(p);
  if (a % p == 0) fail(errc::not_a_unit, "residue divisible by p");
  if (prec == 0) prec = 1;
  mpz_class m = pow_p(p, prec);
  mpz_class x(a % p);
  // x -> x^p gains one digit per step.
  for (unsigned i = 0; i + 1 < prec; ++i) {
    mpz_class y;
    mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), p, m.get_mpz_t());
    if (y == x) break;
    x = y;
  }
  return Scalar::from_unit(p, 0, x, prec);
}

Scalar teichmuller(const Scalar& a) {
  if (a.is_zero_to_precision() || a.val() != 0)
    fail(errc::not_a_unit, "teichmuller lift needs a unit");
  unsigned long r = mpz_fdiv_ui(a.unit_part().get_mpz_t(), a.prime());
  return teichmuller(r, a.prime(), a.rel_prec());
}

Scalar principal_unit(const Scalar& a) {
  if (a.is_zero_to_precision() || a.val() != 0) fail(errc::not_a_unit, "<a> needs a unit");
  return a / teichmuller(a);
}

namespace {

// floor(log_p(j)) for j >= 1; v_p(j) never exceeds it
unsigned long floor_log_p(unsigned long j, unsigned long p) {
  unsigned long g = 0, q = j;
  while (q >= p) {
    q /= p;
    ++g;
  }
  return g;
}

// log of 1 + z for an integer residue z ~ 0 mod p^t (t >= 1), z known mod
// p^labs; returns the series sum known mod p^labs. Guard digits keep the
// divisions by j from contaminating claimed digits; the truncation uses the
// monotone bound j*t - floor(log_p j) for the tail.
mpz_class log_one_plus(const mpz_class& z, unsigned long p, long labs, unsigned long t) {
  if (z == 0 || labs <= 0) return 0;
  unsigned long need = (unsigned long)labs;
  unsigned long jcap = 2 * need / t + 4;
  unsigned long guard = floor_log_p(jcap, p) + 2;
  mpz_class big = pow_p(p, need + guard);
  mpz_class zp = z % big, acc = 0, zpow = 1;
  for (unsigned long j = 1;; ++j) {
    if (j * t >= need + guard) break;
    if (j * t - floor_log_p(j, p) >= need && j > 1) break;
    zpow = (zpow * zp) % big;
    unsigned long vj = valuation(mpz_class((long)j), p);
    mpz_class num = zpow;
    if (vj) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), num.get_mpz_t(), pow_p(p, vj).get_mpz_t());
      num = q;
    }
    mpz_class junit = mpz_class((long)j) / pow_p(p, vj);
    num = (num * inv_mod(junit, big)) % big;
    if (j % 2 == 0) num = -num;
    acc = (acc + num) % big;
  }
  acc %= pow_p(p, need);
  if (acc < 0) acc += pow_p(p, need);
  return acc;
}

}  // namespace

Scalar iwasawa_log(const Scalar& x) {
  if (x.is_zero_to_precision())
    fail(errc::zero_to_precision_operand, "log of zero-to-precision value");
  unsigned long p = x.prime();
  unsigned N = x.rel_prec();
  if (N < 2) return Scalar::zero(p, 1);
  // strip p^val and the Teichmueller part: both die under this branch of log
  Scalar w = principal_unit(Scalar::from_unit(p, 0, x.unit_part(), N));
  if (w.is_zero_to_precision() || w.val() != 0) fail(errc::internal, "principal unit broke");
  // w = 1 mod p known mod p^N; y = w^p = 1 mod p^2 known mod p^(N+1)
  mpz_class mod_hi = pow_p(p, N + 1);
  mpz_class wrep = w.unit_part() % mod_hi;
  mpz_class y;
  mpz_powm_ui(y.get_mpz_t(), wrep.get_mpz_t(), p, mod_hi.get_mpz_t());
  mpz_class z = (y - 1) % mod_hi;
  if (z < 0) z += mod_hi;
  if (z == 0) return Scalar::zero(p, N);
  mpz_class series = log_one_plus(z, p, long(N) + 1, 2);
  // divide the exponent p back out: exact, costs one absolute digit
  mpz_class out;
  if (series == 0) return Scalar::zero(p, N);
  mpz_divexact_ui(out.get_mpz_t(), series.get_mpz_t(), p);
  return Scalar::from_residue(out, p, long(N));
}

Scalar padic_exp(const Scalar& x) {
  unsigned long p = x.prime();
  if (x.is_zero_to_precision()) {
    long a = x.abs_prec();
    if (a < 1) fail(errc::outside_convergence_domain, "exp needs valuation >= 1");
    return Scalar::from_unit(p, 0, 1, unsigned(a));
  }
  if (x.val() < 1) fail(errc::outside_convergence_domain, "exp needs valuation >= 1");
  long A = x.abs_prec();  // absolute target
  long v = x.val();
  if (A <= 0) return Scalar::zero(p, A);
  // term k has valuation k*v - v_p(k!) >= k*v - (k-1)/(p-1), increasing in k
  unsigned long kmax = 1;
  while (long(kmax) * v - long((kmax - 1) / (p - 1)) < A) ++kmax;
  unsigned long guard = kmax / (p - 1) + 2;  // total digits the k! divisions may consume
  mpz_class big = pow_p(p, (unsigned long)(A + long(guard)));
  mpz_class xrep = (x.unit_part() * pow_p(p, (unsigned long)v)) % big;
  mpz_class acc = 1, term = 1;
  for (unsigned long k = 1; k < kmax; ++k) {
    term = (term * xrep) % big;
    unsigned long vk = valuation(mpz_class((long)k), p);
    if (vk) {
      mpz_class q;
      mpz_divexact(q.get_mpz_t(), term.get_mpz_t(), pow_p(p, vk).get_mpz_t());
      term = q;
    }
    mpz_class kunit = mpz_class((long)k) / pow_p(p, vk);
    term = (term * inv_mod(kunit, big)) % big;
    acc = (acc + term) % big;
  }
  acc %= pow_p(p, (unsigned long)A);
  return Scalar::from_residue(acc, p, A);
}

// --- Hensel -----------------------------------------------------------------

namespace {
mpz_class poly_eval_mod(const std::vector<mpz_class>& f, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (auto it = f.rbegin(); it != f.rend(); ++it) acc = (acc * x + *it) % m;
  if (acc < 0) acc += m;
  return acc;
}
std::vector<mpz_class> poly_derivative(const std::vector<mpz_class>& f) {
  std::vector<mpz_class> d;
  for (size_t i = 1; i < f.size(); ++i) d.push_back(mpz_class(long(i)) * f[i]);
  if (d.empty()) d.push_back(0);
  return d;
}
}  // namespace

Scalar hensel_root(const std::vector<mpz_class>& f, const mpz_class& a0, unsigned long p,
                   unsigned prec) {
  require_odd_prime(p);
  if (f.empty()) fail(errc::root_seed_invalid, "empty polynomial");
  mpz_class pm(p);
  if (poly_eval_mod(f, a0, pm) != 0)
    fail(errc::root_seed_invalid, "f(a0) != 0 mod p");
  auto df = poly_derivative(f);
  if (poly_eval_mod(df, a0, pm) == 0)
    fail(errc::not_simple_root, "f'(a0) = 0 mod p");
  mpz_class x = a0 % pm;
  if (x < 0) x += pm;
  unsigned long k = 1;
  while (k < prec) {
    unsigned long k2 = std::min<unsigned long>(2 * k, prec);
    mpz_class m = pow_p(p, k2);
    mpz_class fx = poly_eval_mod(f, x, m);
    mpz_class dfx = poly_eval_mod(df, x, m);
    x = (x - fx * inv_mod(dfx, m)) % m;
    if (x < 0) x += m;
    k = k2;
  }
  return Scalar::from_residue(x, p, long(prec));
}

Scalar hensel_sqrt(long n, unsigned long p, unsigned prec) {
  require_odd_prime(p);
  mpz_class nn(n);
  if (mpz_kronecker_ui(nn.get_mpz_t(), p) != 1)
    fail(errc::prime_not_split, "not a nonzero square mod " + std::to_string(p));
  // smaller nonnegative seed
  mpz_class seed = 0;
  for (unsigned long r = 0; r < p; ++r) {
    if (((mpz_class(r) * r - nn) % p) == 0) {
      seed = r;
      break;
    }
  }
  std::vector<mpz_class> f = {-nn, 0, 1};
  return hensel_root(f, seed, p, prec);
}

// --- cyclotomic polynomial ---------------------------------------------------

namespace {
// exact division of integer polynomials (ascending coefficients)
std::vector<mpz_class> poly_div_exact(std::vector<mpz_class> num,
                                      const std::vector<mpz_class>& den) {
  std::vector<mpz_class> q(num.size() >= den.size() ? num.size() - den.size() + 1 : 0, 0);
  for (long i = long(q.size()) - 1; i >= 0; --i) {
    mpz_class c = num[i + den.size() - 1] / den.back();
    q[i] = c;
    for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
  }
  for (auto& c : num)
    if (c != 0) fail(errc::internal, "inexact cyclotomic division");
  return q;
}
}  // namespace

std::vector<mpz_class> cyclotomic_polynomial(unsigned long f) {
  if (f == 0) fail(errc::invalid_parameters, "conductor 0");
  if (f == 1) return {-1, 1};
  std::vector<mpz_class> num(f + 1, 0);
  num[0] = -1;
  num[f] = 1;  // T^f - 1
  std::vector<mpz_class> acc = num;
  for (unsigned long d = 1; d < f; ++d) {
    if (f % d) continue;
    acc = poly_div_exact(acc, cyclotomic_polynomial(d));
  }
  return acc;
}

// --- CycloField ---------------------------------------------------------------

CycloField::CycloField(unsigned long p, unsigned long f, long work_prec)
    : p_(p), f_(f), w_(work_prec) {
  require_odd_prime(p);
  if (f < 1 || std::gcd(p, f) != 1)
    fail(errc::root_of_unity_construction_failed,
         "conductor must be coprime to p, got f=" + std::to_string(f));
  if (w_ < 4) w_ = 4;
  modulus_ = cyclotomic_polynomial(f);
  d_ = 1;
  unsigned long r = p % f;
  while (r != 1 % f) {
    r = (r * (p % f)) % f;
    ++d_;
    if (d_ > f) fail(errc::internal, "order computation diverged");
  }
  pw_ = pow_p(p_, (unsigned long)w_);
  // power sums of Phi_f roots via Newton's identities
  unsigned n = degree();
  power_traces_.assign(n, 0);
  power_traces_[0] = long(n);
  // e_k = (-1)^k * coeff of T^(n-k)
  std::vector<mpz_class> e(n + 1, 0);
  e[0] = 1;
  for (unsigned k = 1; k <= n; ++k) {
    e[k] = modulus_[n - k];
    if (k % 2 == 1) e[k] = -e[k];
  }
  for (unsigned k = 1; k < n; ++k) {
    // p_k = sum_{i=1..k-1} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k
    mpz_class s = 0;
    for (unsigned i = 1; i < k; ++i) {
      mpz_class t = e[i] * power_traces_[k - i];
      s += (i % 2 == 1) ? t : -t;
    }
    mpz_class t = mpz_class(long(k)) * e[k];
    s += (k % 2 == 1) ? t : -t;
    power_traces_[k] = s;
  }
}

ExtElement CycloField::make(std::vector<mpz_class> c, long abs) const {
  ExtElement e;
  e.fld_ = this;
  e.abs_ = abs;
  mpz_class m = pow_p(p_, (unsigned long)std::max<long>(abs, 0));
  c.resize(degree(), 0);
  if (abs > 0)
    for (auto& x : c) {
      x %= m;
      if (x < 0) x += m;
    }
  else
    for (auto& x : c) x = 0;
  e.c_ = std::move(c);
  return e;
}

std::vector<mpz_class> CycloField::reduce(std::vector<mpz_class> poly, const mpz_class& mod) const {
  unsigned n = degree();
  for (long i = long(poly.size()) - 1; i >= long(n); --i) {
    mpz_class c = poly[i] % mod;
    if (c == 0) continue;
    // subtract c * T^(i-n) * Phi_f  (monic)
    for (unsigned j = 0; j <= n; ++j) {
      poly[i - n + j] = (poly[i - n + j] - c * modulus_[j]) % mod;
    }
  }
  poly.resize(n);
  for (auto& x : poly) {
    x %= mod;
    if (x < 0) x += mod;
  }
  return poly;
}

ExtElement CycloField::zero() const { return make({}, w_); }

ExtElement CycloField::zeta() const { return zeta_pow(1); }

ExtElement CycloField::zeta_pow(long e) const {
  long r = e % long(f_);
  if (r < 0) r += long(f_);
  std::vector<mpz_class> c((unsigned long)r + 1, 0);
  c[(unsigned long)r] = 1;
  return make(reduce(std::move(c), pw_), w_);
}

ExtElement CycloField::from_long(long n) const { return make({mpz_class(n)}, w_); }

ExtElement CycloField::from_scalar(const Scalar& s) const {
  if (s.is_zero_to_precision()) return make({}, std::min<long>(w_, s.abs_prec()));
  if (s.val() < 0) fail(errc::internal, "from_scalar needs val >= 0");
  return make({s.residue()}, std::min<long>(w_, s.abs_prec()));
}

ExtElement CycloField::add(const ExtElement& a, const ExtElement& b) const {
  long abs = std::min(a.abs_, b.abs_);
  std::vector<mpz_class> c(degree());
  for (unsigned i = 0; i < degree(); ++i) c[i] = a.c_[i] + b.c_[i];
  return make(std::move(c), abs);
}

ExtElement CycloField::neg(const ExtElement& a) const {
  std::vector<mpz_class> c(degree());
  for (unsigned i = 0; i < degree(); ++i) c[i] = -a.c_[i];
  return make(std::move(c), a.abs_);
}

ExtElement CycloField::sub(const ExtElement& a, const ExtElement& b) const {
  return add(a, neg(b));
}

ExtElement CycloField::scalar_mul(const mpz_class& k, const ExtElement& a) const {
  std::vector<mpz_class> c(degree());
  for (unsigned i = 0; i < degree(); ++i) c[i] = k * a.c_[i];
  return make(std::move(c), a.abs_);
}

ExtElement CycloField::mul(const ExtElement& a, const ExtElement& b) const {
  long abs = std::min(a.abs_, b.abs_);  // unit-safe bound; fine for our integral uses
  unsigned n = degree();
  std::vector<mpz_class> c(2 * n - 1, 0);
  for (unsigned i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) c[i + j] += a.c_[i] * b.c_[j];
  }
  return make(reduce(std::move(c), pw_), abs);
}

ExtElement CycloField::pow(const ExtElement& a, const mpz_class& e) const {
  if (e < 0) return pow(inverse(a), -e);
  ExtElement acc = one(), base = a;
  mpz_class n = e;
  while (n != 0) {
    if (mpz_odd_p(n.get_mpz_t())) acc = mul(acc, base);
    base = mul(base, base);
    n >>= 1;
  }
  return acc;
}

namespace {
// polynomial arithmetic over F_p for unit tests / inversion seeds
using FpPoly = std::vector<mpz_class>;

void fp_trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, const mpz_class& p) {
  fp_trim(a);
  mpz_class lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size() && !a.empty()) {
    mpz_class c = (a.back() * lead_inv) % p;
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) {
      a[off + i] = (a[off + i] - c * b[i]) % p;
      if (a[off + i] < 0) a[off + i] += p;
    }
    fp_trim(a);
  }
  return a;
}

// extended euclid: returns g, u with u*a = g mod m (only u needed)
std::pair<FpPoly, FpPoly> fp_half_gcd(FpPoly a, FpPoly m, const mpz_class& p) {
  FpPoly r0 = m, r1 = a, u0 = {}, u1 = {mpz_class(1)};
  auto mul_poly = [&](const FpPoly& x, const FpPoly& y) {
    if (x.empty() || y.empty()) return FpPoly{};
    FpPoly z(x.size() + y.size() - 1, 0);
    for (size_t i = 0; i < x.size(); ++i)
      for (size_t j = 0; j < y.size(); ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p;
    fp_trim(z);
    return z;
  };
  auto sub_poly = [&](FpPoly x, const FpPoly& y) {
    if (x.size() < y.size()) x.resize(y.size(), 0);
    for (size_t i = 0; i < y.size(); ++i) {
      x[i] = (x[i] - y[i]) % p;
      if (x[i] < 0) x[i] += p;
    }
    fp_trim(x);
    return x;
  };
  while (!r1.empty()) {
    // divide r0 by r1
    FpPoly q;
    FpPoly rem = r0;
    fp_trim(rem);
    mpz_class lead_inv = inv_mod(r1.back(), p);
    q.assign(rem.size() >= r1.size() ? rem.size() - r1.size() + 1 : 0, 0);
    while (rem.size() >= r1.size() && !rem.empty()) {
      mpz_class c = (rem.back() * lead_inv) % p;
      size_t off = rem.size() - r1.size();
      q[off] = c;
      for (size_t i = 0; i < r1.size(); ++i) {
        rem[off + i] = (rem[off + i] - c * r1[i]) % p;
        if (rem[off + i] < 0) rem[off + i] += p;
      }
      fp_trim(rem);
    }
    FpPoly u2 = sub_poly(u0, mul_poly(q, u1));
    r0 = r1;
    r1 = rem;
    u0 = u1;
    u1 = u2;
  }
  return {r0, u0};
}
}  // namespace

bool CycloField::is_unit(const ExtElement& a) const {
  mpz_class p(p_);
  FpPoly ap(a.c_.begin(), a.c_.end());
  for (auto& c : ap) {
    c %= p;
    if (c < 0) c += p;
  }
  fp_trim(ap);
  if (ap.empty()) return false;
  FpPoly m(modulus_.begin(), modulus_.end());
  auto [g, u] = fp_half_gcd(ap, m, p);
  return g.size() == 1;
}

ExtElement CycloField::inverse(const ExtElement& a) const {
  mpz_class p(p_);
  FpPoly ap(a.c_.begin(), a.c_.end());
  for (auto& c : ap) {
    c %= p;
    if (c < 0) c += p;
  }
  fp_trim(ap);
  if (ap.empty()) fail(errc::not_a_unit_in_extension, "not a unit at p");
  FpPoly m(modulus_.begin(), modulus_.end());
  auto [g, u] = fp_half_gcd(ap, m, p);
  if (g.size() != 1) fail(errc::not_a_unit_in_extension, "shares a factor with the modulus");
  // scale so u*a = 1 mod p, then Newton-lift x -> x(2 - a x) to mod p^w
  mpz_class ginv = inv_mod(g[0], p);
  std::vector<mpz_class> x(u.begin(), u.end());
  for (auto& c : x) c = (c * ginv) % p;
  ExtElement inv = make(std::move(x), w_);
  ExtElement two = from_long(2);
  long k = 1;
  while (k < w_) {
    inv = mul(inv, sub(two, mul(a, inv)));
    k *= 2;
  }
  return make(inv.c_, std::min(a.abs_, w_));
}

ExtElement CycloField::div_exact_p(const ExtElement& a, unsigned long k) const {
  if (k == 0) return a;
  mpz_class pk = pow_p(p_, k);
  std::vector<mpz_class> c(degree());
  for (unsigned i = 0; i < degree(); ++i) {
    if (a.c_[i] % pk != 0) fail(errc::internal, "inexact division by p^k in extension");
    mpz_divexact(c[i].get_mpz_t(), a.c_[i].get_mpz_t(), pk.get_mpz_t());
  }
  return make(std::move(c), a.abs_ - long(k));
}

long CycloField::min_val(const ExtElement& a) const {
  long best = a.abs_;
  for (const auto& c : a.c_) {
    if (c == 0) continue;
    best = std::min(best, long(valuation(c, p_)));
  }
  return best;
}

bool CycloField::is_zero(const ExtElement& a) const {
  for (const auto& c : a.c_)
    if (c != 0) return false;
  return true;
}

ExtElement CycloField::log(const ExtElement& a) const {
  if (!is_unit(a)) fail(errc::not_a_unit_in_extension, "log needs a unit");
  unsigned long need = (unsigned long)w_;
  unsigned long guard = floor_log_p(need + 4, p_) + 2;
  mpz_class big = pow_p(p_, need + guard);
  unsigned n = degree();
  auto raw_mul = [&](const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
    std::vector<mpz_class> c(2 * n - 1, 0);
    for (unsigned i = 0; i < n; ++i) {
      if (x[i] == 0) continue;
      for (unsigned j = 0; j < n; ++j) c[i + j] += x[i] * y[j];
    }
    return reduce(std::move(c), big);
  };
  auto raw_pow = [&](std::vector<mpz_class> base, mpz_class e) {
    std::vector<mpz_class> acc(n, 0);
    acc[0] = 1;
    while (e != 0) {
      if (mpz_odd_p(e.get_mpz_t())) acc = raw_mul(acc, base);
      base = raw_mul(base, base);
      e >>= 1;
    }
    return acc;
  };
  // kill torsion: w = a^(p^d - 1) = 1 mod p, then y = w^p = 1 mod p^2
  mpz_class m = pow_p(p_, d_) - 1;
  std::vector<mpz_class> arep = a.c_;
  arep.resize(n, 0);
  auto w = raw_pow(arep, m);
  auto y = raw_pow(w, mpz_class((long)p_));
  auto z = y;
  z[0] -= 1;
  for (auto& c : z) {
    c %= big;
    if (c < 0) c += big;
    if (c != 0 && valuation(c, p_) < 2) fail(errc::internal, "series seed not in 1+p^2");
  }
  // series sum (-1)^(j+1) z^j / j with coefficientwise tail bound 2j - log_p(j)
  std::vector<mpz_class> acc(n, 0), zpow(n, 0);
  zpow[0] = 1;
  for (unsigned long j = 1;; ++j) {
    if (2 * j >= need + guard) break;
    if (2 * j - floor_log_p(j, p_) >= need && j > 1) break;
    zpow = raw_mul(zpow, z);
    unsigned long vj = valuation(mpz_class((long)j), p_);
    mpz_class junit_inv = inv_mod(mpz_class((long)j) / pow_p(p_, vj), big);
    mpz_class pv = pow_p(p_, vj);
    for (unsigned i = 0; i < n; ++i) {
      mpz_class t = zpow[i];
      if (vj) {
        mpz_class q;
        mpz_divexact(q.get_mpz_t(), t.get_mpz_t(), pv.get_mpz_t());
        t = q;
      }
      t = (t * junit_inv) % big;
      acc[i] = (acc[i] + ((j % 2 == 0) ? -t : t)) % big;
    }
  }
  // log(a) = log(y) / ((p^d - 1) * p); dividing by p costs one digit
  mpz_class m_inv = inv_mod(m, big);
  for (auto& c : acc) {
    c = (c * m_inv) % big;
    if (c < 0) c += big;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), mpz_class((long)p_).get_mpz_t());
    c = q;
  }
  long out_abs = std::min<long>(a.abs_, w_) - 1;
  return make(std::move(acc), out_abs);
}

Scalar CycloField::trace(const ExtElement& a) const {
  mpz_class t = 0;
  for (unsigned i = 0; i < degree(); ++i) t += a.c_[i] * power_traces_[i];
  return Scalar::from_residue(t, p_, a.abs_);
}

Scalar CycloField::constant_value(const ExtElement& a) const {
  long slack = 2;
  for (unsigned i = 1; i < degree(); ++i) {
    if (a.c_[i] == 0) continue;
    if (long(valuation(a.c_[i], p_)) < a.abs_ - slack)
      fail(errc::precision_exhausted, "value is not Galois-stable at working precision");
  }
  return Scalar::from_residue(a.c_[0], p_, a.abs_);
}

}  // namespace linv::padic
