#pragma once

// Exact arithmetic in the real field Q(lambda_q), lambda_q = 2cos(pi/q).
//
// Elements live in the power basis 1, lambda, ..., lambda^(d-1) reduced
// modulo the minimal polynomial of lambda_q, so two elements are equal
// exactly when their coefficient vectors are. Signs are decided by interval
// evaluation against a dyadic enclosure of lambda_q that is refined on
// demand; a nonzero element always has a decidable sign.
//
// The theta group (q = infinity) uses the same code path with lambda = 2,
// i.e. plain rational arithmetic.

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rosen {

using Integer = mpz_class;
using Rational = mpq_class;

struct Interval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  double midpoint() const;
};

// lambda_q lies in [lo, hi] * 2^-exponent. The power tables hold
// lo^i * 2^(exponent*(d-1-i)) (and likewise for hi), which lets the sign of
// an integer combination be bounded with integer arithmetic only.
struct LambdaEnclosure {
  unsigned exponent = 0;
  Integer lo;
  Integer hi;
  std::vector<Integer> lo_powers;
  std::vector<Integer> hi_powers;
};

class QContext;
using Context = std::shared_ptr<const QContext>;

class QContext {
 public:
  // q >= 3 for a Hecke group; use make_theta_context() for q = infinity.
  friend Context make_context(int q);
  friend Context make_theta_context();

  bool is_theta() const { return q_ == 0; }
  // Finite q; throws Unsupported for the theta group.
  int q() const;
  // "5" or "inf".
  std::string name() const;
  std::size_t degree() const { return min_poly_.size() - 1; }
  // Monic, coefficients from the constant term upwards.
  const std::vector<Integer>& min_poly() const { return min_poly_; }
  // lambda itself when it is rational (q = 3 and q = infinity).
  const std::optional<Rational>& rational_lambda() const {
    return rational_lambda_;
  }
  // Power-basis coordinates of lambda^(d + k), k = 0..d-2.
  const std::vector<std::vector<Integer>>& reduction_table() const {
    return reduction_;
  }
  const std::vector<Rational>& lambda_inverse() const {
    return lambda_inverse_;
  }

  // Enclosure of width at most 2^-(64 << level). Levels up to
  // kStoredLevels - 1 are precomputed; deeper ones are computed per call.
  static constexpr std::size_t kStoredLevels = 5;
  const LambdaEnclosure& stored_enclosure(std::size_t level) const {
    return enclosures_.at(level);
  }
  LambdaEnclosure enclosure(std::size_t level) const;

  // Interval of width <= 2^-bits around lambda_q.
  Interval lambda_interval(unsigned bits) const;

  bool operator==(const QContext& other) const { return q_ == other.q_; }

 private:
  QContext() = default;
  void initialise();

  int q_ = 0;
  std::vector<Integer> min_poly_;
  std::optional<Rational> rational_lambda_;
  std::vector<std::vector<Integer>> reduction_;
  std::vector<Rational> lambda_inverse_;
  std::vector<LambdaEnclosure> enclosures_;
};

Context make_context(int q);
Context make_theta_context();

// Minimal polynomial of 2cos(pi/q) from the 2q-th cyclotomic polynomial via
// z^j + z^-j = P_j(z + 1/z). Exposed for tests.
std::vector<Integer> cosine_minimal_polynomial(int q);

class FieldElement {
 public:
  explicit FieldElement(Context ctx);
  FieldElement(Context ctx, const Rational& value);
  FieldElement(Context ctx, long value) : FieldElement(std::move(ctx), Rational(value)) {}
  // Coefficients of any length; reduced modulo the minimal polynomial.
  FieldElement(Context ctx, std::span<const Rational> coeffs);

  static FieldElement lambda(Context ctx);
  static FieldElement lambda_multiple(Context ctx, const Integer& k);

  const Context& context() const { return ctx_; }
  std::vector<Rational> coeffs() const;
  Rational coeff(std::size_t i) const;

  bool is_zero() const;
  std::optional<Rational> as_rational() const;
  std::optional<Integer> as_integer() const;

  int sign() const;
  Interval approximate(unsigned precision_bits) const;
  double to_double() const;

  FieldElement inverse() const;

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& other);
  FieldElement& operator-=(const FieldElement& other);
  FieldElement& operator*=(const FieldElement& other);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inverse();
  }

  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

  std::size_t hash() const;
  // Canonical text: coefficient list "[c0,c1,...]" with c_i in lowest terms.
  std::string to_string() const;

 private:
  FieldElement(Context ctx, std::vector<Integer> num, Integer den);
  void check_context(const FieldElement& other) const;
  void normalise();
  // Bounds (numerators) of the value times den * 2^(e(d-1)) at an enclosure.
  std::pair<Integer, Integer> scaled_bounds(const LambdaEnclosure& enc) const;

  Context ctx_;
  std::vector<Integer> num_;  // length degree(); value = sum num_[i] lambda^i / den_
  Integer den_;               // > 0, gcd(num_..., den_) == 1
};

inline int sign(const FieldElement& a) { return a.sign(); }
inline FieldElement invert(const FieldElement& a) { return a.inverse(); }
inline Interval approximate(const FieldElement& a, unsigned precision_bits) {
  return a.approximate(precision_bits);
}

Integer floor(const FieldElement& x);
Integer ceil(const FieldElement& x);

// Integer b minimising |x - b lambda|; an exact tie goes to the lesser b.
Integer nearest_lambda_multiple(const FieldElement& x);

bool same_context(const Context& a, const Context& b);

}  // namespace rosen

template <>
struct std::hash<rosen::FieldElement> {
  std::size_t operator()(const rosen::FieldElement& x) const noexcept { return x.hash(); }
};
