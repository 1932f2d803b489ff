#include "rosen/moebius.hpp"

#include "rosen/error.hpp"

namespace rosen {

BoundaryPoint BoundaryPoint::infinity(Context ctx) { return BoundaryPoint(std::move(ctx)); }

BoundaryPoint::BoundaryPoint(FieldElement value)
    : ctx_(value.context()), value_(std::move(value)) {}

BoundaryPoint::BoundaryPoint(Context ctx, const Rational& value)
    : ctx_(ctx), value_(FieldElement(ctx, value)) {}

const FieldElement& BoundaryPoint::value() const {
  if (!value_) throw DomainError("the point at infinity has no finite value");
  return *value_;
}

BoundaryPoint BoundaryPoint::reflected() const {
  if (!value_) return *this;
  return BoundaryPoint(-*value_);
}

bool BoundaryPoint::operator==(const BoundaryPoint& other) const {
  if (!same_context(ctx_, other.ctx_)) return false;
  if (is_infinity() || other.is_infinity()) return is_infinity() && other.is_infinity();
  return *value_ == *other.value_;
}

std::size_t BoundaryPoint::hash() const { return value_ ? value_->hash() : 0x5bd1e995u; }

std::string BoundaryPoint::to_string() const { return value_ ? value_->to_string() : "inf"; }

// ---------------------------------------------------------------------------

GroupElement::GroupElement(FieldElement a, FieldElement b, FieldElement c, FieldElement d)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {
  if (!same_context(a_.context(), b_.context()) || !same_context(a_.context(), c_.context()) ||
      !same_context(a_.context(), d_.context())) {
    throw ContextMismatch("matrix entries from different contexts");
  }
}

GroupElement GroupElement::identity(Context ctx) {
  return {FieldElement(ctx, 1L), FieldElement(ctx), FieldElement(ctx), FieldElement(ctx, 1L)};
}

GroupElement GroupElement::sigma(Context ctx) {
  return {FieldElement(ctx), FieldElement(ctx, -1L), FieldElement(ctx, 1L), FieldElement(ctx)};
}

GroupElement GroupElement::tau(Context ctx) { return translation(std::move(ctx), 1); }

GroupElement GroupElement::rho(Context ctx) { return tau(ctx) * sigma(ctx); }

GroupElement GroupElement::translation(Context ctx, const Integer& k) {
  return {FieldElement(ctx, 1L), FieldElement::lambda_multiple(ctx, k), FieldElement(ctx),
          FieldElement(ctx, 1L)};
}

GroupElement GroupElement::t(Context ctx, const Integer& b) {
  return {FieldElement::lambda_multiple(ctx, b), FieldElement(ctx, -1L), FieldElement(ctx, 1L),
          FieldElement(ctx)};
}

GroupElement GroupElement::inverse() const { return {d_, -b_, -c_, a_}; }

GroupElement GroupElement::power(long n) const {
  GroupElement base = n < 0 ? inverse() : *this;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  GroupElement out = identity(context());
  while (e) {
    if (e & 1u) out = out * base;
    base = base * base;
    e >>= 1u;
  }
  return out;
}

BoundaryPoint GroupElement::apply(const BoundaryPoint& p) const {
  if (!same_context(context(), p.context())) throw ContextMismatch("apply across contexts");
  if (p.is_infinity()) {
    if (c_.is_zero()) return BoundaryPoint::infinity(context());
    return BoundaryPoint(a_ / c_);
  }
  const FieldElement& z = p.value();
  FieldElement den = c_ * z + d_;
  if (den.is_zero()) return BoundaryPoint::infinity(context());
  return BoundaryPoint((a_ * z + b_) / den);
}

GroupElement operator*(const GroupElement& g, const GroupElement& h) {
  return {g.a_ * h.a_ + g.b_ * h.c_, g.a_ * h.b_ + g.b_ * h.d_, g.c_ * h.a_ + g.d_ * h.c_,
          g.c_ * h.b_ + g.d_ * h.d_};
}

bool GroupElement::operator==(const GroupElement& other) const {
  return a_ == other.a_ && b_ == other.b_ && c_ == other.c_ && d_ == other.d_;
}

GroupElement generator(Context ctx, Generator name) {
  switch (name) {
    case Generator::sigma:
      return GroupElement::sigma(std::move(ctx));
    case Generator::tau:
      return GroupElement::tau(std::move(ctx));
    case Generator::rho:
      return GroupElement::rho(std::move(ctx));
  }
  throw InvalidParameter("unknown generator");
}

bool projectively_equal(const GroupElement& g, const GroupElement& h) {
  if (!same_context(g.context(), h.context())) throw ContextMismatch("comparing across contexts");
  if (g == h) return true;
  return g.a() == -h.a() && g.b() == -h.b() && g.c() == -h.c() && g.d() == -h.d();
}

GroupElement from_cf(Context ctx, std::span<const long> coeffs) {
  if (coeffs.empty()) throw DomainError("continued fraction needs at least one coefficient");
  GroupElement out = GroupElement::t(ctx, coeffs[0]);
  for (std::size_t i = 1; i < coeffs.size(); ++i) out = out * GroupElement::t(ctx, coeffs[i]);
  return out;
}

bool boundary_less(const BoundaryPoint& x, const BoundaryPoint& y) {
  if (x.is_infinity()) return false;
  if (y.is_infinity()) return true;
  return (y.value() - x.value()).sign() > 0;
}

Orientation cyclic_order(const BoundaryPoint& a, const BoundaryPoint& b, const BoundaryPoint& c) {
  if (a == b || b == c || a == c) return Orientation::degenerate;
  // Cyclically increasing along R u {infinity} is anticlockwise.
  const bool ab = boundary_less(a, b);
  const bool bc = boundary_less(b, c);
  const bool ca = boundary_less(c, a);
  // Exactly one of the three "steps" wraps around for an increasing triple.
  const int ascents = int(ab) + int(bc) + int(ca);
  return ascents == 2 ? Orientation::anticlockwise : Orientation::clockwise;
}

}  // namespace rosen
