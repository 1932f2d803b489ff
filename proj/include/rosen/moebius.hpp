#pragma once

// Hecke group elements as unimodular 2x2 matrices over Z[lambda_q] and their
// action on the boundary R u {infinity}.

#include <optional>
#include <span>
#include <string>

#include "rosen/algebraic.hpp"

namespace rosen {

class BoundaryPoint {
 public:
  static BoundaryPoint infinity(Context ctx);
  explicit BoundaryPoint(FieldElement value);
  BoundaryPoint(Context ctx, const Rational& value);

  bool is_infinity() const { return !value_.has_value(); }
  // Throws DomainError for infinity.
  const FieldElement& value() const;
  const Context& context() const { return ctx_; }

  // kappa(z) = -conj(z) restricted to the boundary.
  BoundaryPoint reflected() const;

  bool operator==(const BoundaryPoint& other) const;
  bool operator!=(const BoundaryPoint& other) const { return !(*this == other); }

  std::size_t hash() const;
  // "inf" or the coefficient list of the value.
  std::string to_string() const;

 private:
  explicit BoundaryPoint(Context ctx) : ctx_(std::move(ctx)) {}
  Context ctx_;
  std::optional<FieldElement> value_;
};

class GroupElement {
 public:
  GroupElement(FieldElement a, FieldElement b, FieldElement c, FieldElement d);

  static GroupElement identity(Context ctx);
  static GroupElement sigma(Context ctx);
  static GroupElement tau(Context ctx);
  static GroupElement rho(Context ctx);
  // tau^k
  static GroupElement translation(Context ctx, const Integer& k);
  // T_b = tau^b sigma, z -> b lambda - 1/z.
  static GroupElement t(Context ctx, const Integer& b);

  const FieldElement& a() const { return a_; }
  const FieldElement& b() const { return b_; }
  const FieldElement& c() const { return c_; }
  const FieldElement& d() const { return d_; }
  const Context& context() const { return a_.context(); }

  FieldElement determinant() const { return a_ * d_ - b_ * c_; }

  GroupElement inverse() const;
  GroupElement power(long n) const;
  BoundaryPoint apply(const BoundaryPoint& p) const;

  friend GroupElement operator*(const GroupElement& g, const GroupElement& h);
  bool operator==(const GroupElement& other) const;

 private:
  FieldElement a_, b_, c_, d_;
};

inline GroupElement compose(const GroupElement& g, const GroupElement& h) { return g * h; }
inline GroupElement inverse(const GroupElement& g) { return g.inverse(); }
inline BoundaryPoint apply(const GroupElement& g, const BoundaryPoint& p) { return g.apply(p); }

enum class Generator { sigma, tau, rho };
GroupElement generator(Context ctx, Generator name);

// Equality as Moebius maps: g == h or g == -h entrywise.
bool projectively_equal(const GroupElement& g, const GroupElement& h);

// T_{b_1} T_{b_2} ... T_{b_n}; throws DomainError on an empty sequence.
GroupElement from_cf(Context ctx, std::span<const long> coeffs);

enum class Orientation { clockwise, anticlockwise, degenerate };

// Orientation of (a, b, c) on the circle R u {infinity}, with increasing
// reals running anticlockwise (the orientation induced by the Cayley-type
// map of the upper half plane onto the disc).
Orientation cyclic_order(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c);

// Strict comparison on R u {infinity} with infinity placed above every real.
// Used to linearise the circle; not a group-invariant notion.
bool boundary_less(const BoundaryPoint& x, const BoundaryPoint& y);

}  // namespace rosen

template <>
struct std::hash<rosen::BoundaryPoint> {
  std::size_t operator()(const rosen::BoundaryPoint& x) const noexcept { return x.hash(); }
};
