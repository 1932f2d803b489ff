#include "rosen/algebraic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

#include "rosen/error.hpp"

namespace rosen {

namespace {

using IntPoly = std::vector<Integer>;   // constant term first
using RatPoly = std::vector<Rational>;

void trim(IntPoly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

void trim(RatPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  IntPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Exact division by a monic divisor; the remainder must vanish.
IntPoly divide_exact(IntPoly num, const IntPoly& den) {
  const std::size_t dd = den.size() - 1;
  if (num.size() - 1 < dd) return IntPoly{0};
  IntPoly quot(num.size() - dd, 0);
  for (std::size_t k = num.size(); k-- > dd;) {
    Integer c = num[k];
    quot[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
  }
  trim(num);
  if (!(num.size() == 1 && num[0] == 0))
    throw InternalError("cyclotomic division left a remainder");
  return quot;
}

IntPoly cyclotomic(int n, std::map<int, IntPoly>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  IntPoly p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d == 0) p = divide_exact(std::move(p), cyclotomic(d, memo));
  }
  memo.emplace(n, p);
  return p;
}

RatPoly to_rational(const IntPoly& p) {
  RatPoly out(p.begin(), p.end());
  trim(out);
  return out;
}

Rational evaluate(const RatPoly& p, const Rational& x) {
  Rational acc = 0;
  for (std::size_t k = p.size(); k-- > 0;) acc = acc * x + p[k];
  return acc;
}

// Remainder of a modulo b (b nonzero, trimmed).
RatPoly remainder(RatPoly a, const RatPoly& b) {
  const std::size_t db = b.size() - 1;
  while (!a.empty() && a.size() - 1 >= db) {
    Rational c = a.back() / b.back();
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= c * b[j];
    a.pop_back();
    trim(a);
  }
  return a;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq{p};
  RatPoly deriv;
  for (std::size_t i = 1; i < p.size(); ++i) deriv.push_back(p[i] * static_cast<long>(i));
  trim(deriv);
  seq.push_back(deriv);
  while (!seq.back().empty() && seq.back().size() > 1) {
    RatPoly r = remainder(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(std::move(r));
  }
  return seq;
}

int sign_changes(const std::vector<RatPoly>& seq, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : seq) {
    const int s = sgn(evaluate(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

// Number of distinct roots in (lo, hi].
int roots_in(const std::vector<RatPoly>& seq, const Rational& lo, const Rational& hi) {
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

// Sign of p(n / 2^e) for integer n, computed as sign of sum p_i n^i 2^(e(d-i)).
int sign_at_dyadic(const IntPoly& p, const Integer& n, unsigned e) {
  const std::size_t d = p.size() - 1;
  Integer acc = 0;
  Integer npow = 1;
  for (std::size_t i = 0; i <= d; ++i) {
    Integer term = p[i] * npow;
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), e * (d - i));
    acc += term;
    npow *= n;
  }
  return sgn(acc);
}

void fill_powers(LambdaEnclosure& enc, std::size_t degree) {
  enc.lo_powers.assign(degree, 0);
  enc.hi_powers.assign(degree, 0);
  Integer lp = 1;
  Integer hp = 1;
  for (std::size_t i = 0; i < degree; ++i) {
    const unsigned long shift = static_cast<unsigned long>(enc.exponent) * (degree - 1 - i);
    mpz_mul_2exp(enc.lo_powers[i].get_mpz_t(), lp.get_mpz_t(), shift);
    mpz_mul_2exp(enc.hi_powers[i].get_mpz_t(), hp.get_mpz_t(), shift);
    lp *= enc.lo;
    hp *= enc.hi;
  }
}

// Bisect until the width is at most 2^-target_bits.
void bisect_to(LambdaEnclosure& enc, const IntPoly& p, unsigned target_bits) {
  const int sign_hi = sign_at_dyadic(p, enc.hi, enc.exponent);
  // width = (hi - lo) / 2^e; stop once (hi - lo) * 2^target <= 2^e.
  auto narrow_enough = [&] {
    Integer w = enc.hi - enc.lo;
    return mpz_sizeinbase(w.get_mpz_t(), 2) + target_bits <= enc.exponent ||
           (w == 0);
  };
  while (!narrow_enough()) {
    enc.lo *= 2;
    enc.hi *= 2;
    enc.exponent += 1;
    Integer mid = (enc.lo + enc.hi) / 2;
    if (sign_at_dyadic(p, mid, enc.exponent) == sign_hi) {
      enc.hi = mid;
    } else {
      enc.lo = mid;
    }
  }
}

}  // namespace

std::vector<Integer> cosine_minimal_polynomial(int q) {
  if (q < 3) throw InvalidParameter("q must be at least 3, got " + std::to_string(q));
  std::map<int, IntPoly> memo;
  const IntPoly phi = cyclotomic(2 * q, memo);
  const std::size_t k = (phi.size() - 1) / 2;
  // Chebyshev-like P_j(x) = z^j + z^-j with x = z + 1/z.
  std::vector<IntPoly> cheb;
  cheb.push_back(IntPoly{2});
  cheb.push_back(IntPoly{0, 1});
  for (std::size_t j = 2; j <= k; ++j) {
    IntPoly next = multiply(IntPoly{0, 1}, cheb[j - 1]);
    const IntPoly& prev = cheb[j - 2];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    trim(next);
    cheb.push_back(std::move(next));
  }
  IntPoly out(k + 1, 0);
  out[0] = phi[k];
  for (std::size_t j = 1; j <= k; ++j) {
    const Integer& c = phi[k + j];
    for (std::size_t i = 0; i < cheb[j].size(); ++i) out[i] += c * cheb[j][i];
  }
  trim(out);
  return out;
}

double Interval::midpoint() const {
  Rational m = (lo + hi) / 2;
  return m.get_d();
}

int QContext::q() const {
  if (is_theta()) throw Unsupported("the theta group has no finite q");
  return q_;
}

std::string QContext::name() const {
  return is_theta() ? std::string("inf") : std::to_string(q_);
}

void QContext::initialise() {
  const std::size_t d = degree();
  if (d == 1) {
    rational_lambda_ = Rational(-min_poly_[0]);
    lambda_inverse_ = {1 / *rational_lambda_};
    return;
  }

  // x^(d+k) expressed in the power basis.
  std::vector<Integer> cur(d, 0);
  for (std::size_t j = 0; j < d; ++j) cur[j] = -min_poly_[j];
  reduction_.push_back(cur);
  for (std::size_t k = 1; k + 1 < d; ++k) {
    std::vector<Integer> next(d, 0);
    const Integer top = cur[d - 1];
    for (std::size_t j = d - 1; j > 0; --j) next[j] = cur[j - 1];
    for (std::size_t j = 0; j < d; ++j) next[j] -= top * min_poly_[j];
    reduction_.push_back(next);
    cur = std::move(next);
  }

  // 1/lambda from lambda * (lambda^(d-1) + m_{d-1} lambda^(d-2) + ... + m_1) = -m_0.
  lambda_inverse_.assign(d, 0);
  for (std::size_t j = 0; j < d; ++j) {
    lambda_inverse_[j] = Rational(min_poly_[j + 1]) / Rational(-min_poly_[0]);
  }

  // Isolate the largest root in (0, 2] by Sturm counting, then bisect.
  const auto seq = sturm_sequence(to_rational(min_poly_));
  Rational lo = 0;
  Rational hi = 2;
  unsigned exponent = 0;
  while (roots_in(seq, lo, hi) != 1) {
    Rational mid = (lo + hi) / 2;
    if (roots_in(seq, mid, hi) >= 1) {
      lo = mid;
    } else {
      hi = mid;
    }
    ++exponent;
    if (exponent > 4096) throw InternalError("failed to isolate 2cos(pi/q)");
  }
  LambdaEnclosure enc;
  enc.exponent = exponent;
  {
    Rational scale = 1;
    mpz_mul_2exp(scale.get_num_mpz_t(), scale.get_num_mpz_t(), exponent);
    Rational l = lo * scale;
    Rational h = hi * scale;
    enc.lo = l.get_num();
    enc.hi = h.get_num();
  }
  for (std::size_t level = 0; level < kStoredLevels; ++level) {
    bisect_to(enc, min_poly_, 64u << level);
    LambdaEnclosure copy = enc;
    fill_powers(copy, d);
    enclosures_.push_back(std::move(copy));
  }
}

LambdaEnclosure QContext::enclosure(std::size_t level) const {
  if (level < enclosures_.size()) return enclosures_[level];
  LambdaEnclosure enc = enclosures_.back();
  bisect_to(enc, min_poly_, static_cast<unsigned>(64u << std::min<std::size_t>(level, 20)));
  fill_powers(enc, degree());
  return enc;
}

Interval QContext::lambda_interval(unsigned bits) const {
  if (rational_lambda_) return {*rational_lambda_, *rational_lambda_};
  std::size_t level = 0;
  while ((64u << level) < bits) ++level;
  const LambdaEnclosure enc = enclosure(level);
  Rational lo(enc.lo);
  Rational hi(enc.hi);
  Rational denom = 1;
  mpz_mul_2exp(denom.get_num_mpz_t(), denom.get_num_mpz_t(), enc.exponent);
  return {lo / denom, hi / denom};
}

Context make_context(int q) {
  if (q < 3) throw InvalidParameter("q must be at least 3, got " + std::to_string(q));
  auto ctx = std::shared_ptr<QContext>(new QContext());
  ctx->q_ = q;
  ctx->min_poly_ = cosine_minimal_polynomial(q);
  ctx->initialise();
  return ctx;
}

Context make_theta_context() {
  auto ctx = std::shared_ptr<QContext>(new QContext());
  ctx->q_ = 0;
  ctx->min_poly_ = {Integer(-2), Integer(1)};
  ctx->initialise();
  return ctx;
}

bool same_context(const Context& a, const Context& b) {
  return a == b || (a && b && *a == *b);
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(Context ctx)
    : ctx_(std::move(ctx)), num_(ctx_->degree(), 0), den_(1) {}

FieldElement::FieldElement(Context ctx, const Rational& value) : FieldElement(std::move(ctx)) {
  num_[0] = value.get_num();
  den_ = value.get_den();
}

FieldElement::FieldElement(Context ctx, std::span<const Rational> coeffs)
    : FieldElement(std::move(ctx)) {
  Integer common = 1;
  for (const auto& c : coeffs) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  const std::size_t d = ctx_->degree();
  std::vector<Integer> wide(std::max(coeffs.size(), d), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    wide[i] = coeffs[i].get_num() * (common / coeffs[i].get_den());
  }
  // Reduce x^k for k >= d using the monic minimal polynomial.
  const auto& m = ctx_->min_poly();
  for (std::size_t k = wide.size(); k-- > d;) {
    const Integer c = wide[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j < d; ++j) wide[k - d + j] -= c * m[j];
    wide[k] = 0;
  }
  for (std::size_t i = 0; i < d; ++i) num_[i] = wide[i];
  den_ = common;
  normalise();
}

FieldElement::FieldElement(Context ctx, std::vector<Integer> num, Integer den)
    : ctx_(std::move(ctx)), num_(std::move(num)), den_(std::move(den)) {
  normalise();
}

FieldElement FieldElement::lambda(Context ctx) {
  if (ctx->rational_lambda()) return FieldElement(ctx, *ctx->rational_lambda());
  FieldElement out(std::move(ctx));
  out.num_[1] = 1;
  return out;
}

FieldElement FieldElement::lambda_multiple(Context ctx, const Integer& k) {
  if (ctx->rational_lambda()) return FieldElement(ctx, *ctx->rational_lambda() * Rational(k));
  FieldElement out(std::move(ctx));
  out.num_[1] = k;
  return out;
}

void FieldElement::normalise() {
  if (den_ < 0) {
    den_ = -den_;
    for (auto& n : num_) n = -n;
  }
  Integer g = den_;
  for (const auto& n : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (g != 1) {
    for (auto& n : num_) mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(den_.get_mpz_t(), den_.get_mpz_t(), g.get_mpz_t());
  }
}

void FieldElement::check_context(const FieldElement& other) const {
  if (!same_context(ctx_, other.ctx_)) {
    throw ContextMismatch("field elements from q=" + ctx_->name() + " and q=" +
                          other.ctx_->name());
  }
}

std::vector<Rational> FieldElement::coeffs() const {
  std::vector<Rational> out;
  out.reserve(num_.size());
  for (const auto& n : num_) {
    Rational r(n, den_);
    r.canonicalize();
    out.push_back(r);
  }
  return out;
}

Rational FieldElement::coeff(std::size_t i) const {
  Rational r(num_.at(i), den_);
  r.canonicalize();
  return r;
}

bool FieldElement::is_zero() const {
  return std::all_of(num_.begin(), num_.end(), [](const Integer& n) { return n == 0; });
}

std::optional<Rational> FieldElement::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (num_[i] != 0) return std::nullopt;
  }
  Rational r(num_[0], den_);
  r.canonicalize();
  return r;
}

std::optional<Integer> FieldElement::as_integer() const {
  if (den_ != 1) return std::nullopt;
  for (std::size_t i = 1; i < num_.size(); ++i) {
    if (num_[i] != 0) return std::nullopt;
  }
  return num_[0];
}

std::pair<Integer, Integer> FieldElement::scaled_bounds(const LambdaEnclosure& enc) const {
  Integer lower = 0;
  Integer upper = 0;
  for (std::size_t i = 0; i < num_.size(); ++i) {
    const Integer& n = num_[i];
    if (n == 0) continue;
    if (n > 0) {
      lower += n * enc.lo_powers[i];
      upper += n * enc.hi_powers[i];
    } else {
      lower += n * enc.hi_powers[i];
      upper += n * enc.lo_powers[i];
    }
  }
  return {lower, upper};
}

int FieldElement::sign() const {
  if (ctx_->degree() == 1) return sgn(num_[0]);
  if (is_zero()) return 0;
  for (std::size_t level = 0;; ++level) {
    if (level < QContext::kStoredLevels) {
      const auto [lower, upper] = scaled_bounds(ctx_->stored_enclosure(level));
      if (lower > 0) return 1;
      if (upper < 0) return -1;
    } else {
      const auto [lower, upper] = scaled_bounds(ctx_->enclosure(level));
      if (lower > 0) return 1;
      if (upper < 0) return -1;
    }
    if (level > 24) throw InternalError("sign determination did not terminate");
  }
}

Interval FieldElement::approximate(unsigned precision_bits) const {
  if (ctx_->degree() == 1) {
    Rational r(num_[0], den_);
    r.canonicalize();
    return {r, r};
  }
  Rational target = 1;
  mpz_mul_2exp(target.get_den_mpz_t(), target.get_den_mpz_t(), precision_bits);
  target.canonicalize();
  for (std::size_t level = 0; level < 32; ++level) {
    const LambdaEnclosure enc = ctx_->enclosure(level);
    const auto [lower, upper] = scaled_bounds(enc);
    Rational scale = 1;
    mpz_mul_2exp(scale.get_num_mpz_t(), scale.get_num_mpz_t(),
                 static_cast<unsigned long>(enc.exponent) * (ctx_->degree() - 1));
    scale *= Rational(den_);
    Interval out{Rational(lower) / scale, Rational(upper) / scale};
    if (out.width() <= target) return out;
  }
  throw InternalError("approximation precision not reached");
}

double FieldElement::to_double() const { return approximate(64).midpoint(); }

FieldElement FieldElement::operator-() const {
  FieldElement out = *this;
  for (auto& n : out.num_) n = -n;
  return out;
}

FieldElement& FieldElement::operator+=(const FieldElement& other) {
  check_context(other);
  if (den_ == other.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += other.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) {
      num_[i] = num_[i] * other.den_ + other.num_[i] * den_;
    }
    den_ *= other.den_;
  }
  normalise();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& other) {
  return *this += -other;
}

FieldElement& FieldElement::operator*=(const FieldElement& other) {
  check_context(other);
  const std::size_t d = num_.size();
  if (d == 1) {
    num_[0] *= other.num_[0];
    den_ *= other.den_;
    normalise();
    return *this;
  }
  std::vector<Integer> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (other.num_[j] != 0) prod[i + j] += num_[i] * other.num_[j];
    }
  }
  const auto& table = ctx_->reduction_table();
  for (std::size_t k = d; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    const auto& row = table[k - d];
    for (std::size_t j = 0; j < d; ++j) prod[j] += prod[k] * row[j];
  }
  for (std::size_t i = 0; i < d; ++i) num_[i] = std::move(prod[i]);
  den_ *= other.den_;
  normalise();
  return *this;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero in Q(lambda_" + ctx_->name() + ")");
  const std::size_t d = num_.size();
  if (d == 1) return FieldElement(ctx_, std::vector<Integer>{den_}, num_[0]);

  // Extended Euclid over Q[x]: track s with s*a = r (mod m).
  RatPoly r0 = to_rational(ctx_->min_poly());
  RatPoly r1;
  for (std::size_t i = 0; i < d; ++i) r1.push_back(Rational(num_[i], den_));
  for (auto& c : r1) c.canonicalize();
  trim(r1);
  RatPoly s0;  // coefficient of a in r0 (zero)
  RatPoly s1{Rational(1)};
  while (r1.size() > 1) {
    // r0 = qt * r1 + rem
    RatPoly rem = r0;
    RatPoly qt(r0.size() >= r1.size() ? r0.size() - r1.size() + 1 : 1, 0);
    while (!rem.empty() && rem.size() >= r1.size()) {
      Rational c = rem.back() / r1.back();
      const std::size_t shift = rem.size() - r1.size();
      qt[shift] = c;
      for (std::size_t j = 0; j < r1.size(); ++j) rem[shift + j] -= c * r1[j];
      rem.pop_back();
      trim(rem);
    }
    // s_next = s0 - qt * s1
    RatPoly s2(std::max(s0.size(), qt.size() + s1.size()), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < qt.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= qt[i] * s1[j];
    }
    trim(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant c, s1 * a = c.
  const Rational c = r1.at(0);
  for (auto& coef : s1) coef /= c;
  return FieldElement(ctx_, std::span<const Rational>(s1));
}

bool FieldElement::operator==(const FieldElement& other) const {
  return same_context(ctx_, other.ctx_) && den_ == other.den_ && num_ == other.num_;
}

std::size_t FieldElement::hash() const {
  std::size_t h = std::hash<std::string>{}(den_.get_str(16));
  for (const auto& n : num_) {
    h ^= std::hash<std::string>{}(n.get_str(16)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string FieldElement::to_string() const {
  std::ostringstream out;
  out << '[';
  const auto cs = coeffs();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out << ',';
    out << cs[i].get_str();
  }
  out << ']';
  return out.str();
}

// ---------------------------------------------------------------------------

Integer floor(const FieldElement& x) {
  if (auto r = x.as_rational()) {
    Integer out;
    mpz_fdiv_q(out.get_mpz_t(), r->get_num_mpz_t(), r->get_den_mpz_t());
    return out;
  }
  const Interval box = x.approximate(4);
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), box.lo.get_num_mpz_t(), box.lo.get_den_mpz_t());
  const Integer next = f + 1;
  if (box.hi < Rational(next)) return f;
  // The width is below 1, so the only candidate boundary is f + 1.
  return (x - FieldElement(x.context(), Rational(next))).sign() >= 0 ? next : f;
}

Integer ceil(const FieldElement& x) { return -floor(-x); }

Integer nearest_lambda_multiple(const FieldElement& x) {
  const Context& ctx = x.context();
  FieldElement t = x * FieldElement(ctx, std::span<const Rational>(ctx->lambda_inverse()));
  // Nearest integer to t with ties to the lesser: ceil(t - 1/2).
  return ceil(t - FieldElement(ctx, Rational(1, 2)));
}

}  // namespace rosen
