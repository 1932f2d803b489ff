#include "rosen/farey.hpp"

#include <algorithm>

#include "rosen/error.hpp"

namespace rosen::farey {

namespace {

long to_long(const Integer& n) {
  if (!n.fits_slong_p()) throw DomainError("coefficient " + n.get_str() + " out of range");
  return n.get_si();
}

FieldElement divide_by_lambda(const FieldElement& x) {
  const Context& ctx = x.context();
  return x * FieldElement(ctx, std::span<const Rational>(ctx->lambda_inverse()));
}

// Reduced numerator/denominator of a rational point; infinity is 1/0.
std::pair<Integer, Integer> theta_fraction(const BoundaryPoint& p) {
  if (p.is_infinity()) return {Integer(1), Integer(0)};
  const auto r = p.value().as_rational();
  if (!r) throw DomainError("theta-group points must be rational");
  return {r->get_num(), r->get_den()};
}

void require_finite_q(const Context& ctx, const char* what) {
  if (ctx->is_theta()) {
    throw Unsupported(std::string(what) + " is not defined for the theta group (F_inf is a tree)");
  }
}

}  // namespace

Face::Face(std::vector<Vertex> anticlockwise) : vertices_(std::move(anticlockwise)) {
  if (vertices_.empty()) throw DomainError("empty face");
  std::size_t best = 0;
  std::string best_key = vertices_[0].to_string();
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    std::string key = vertices_[i].to_string();
    if (key < best_key) {
      best_key = std::move(key);
      best = i;
    }
  }
  std::rotate(vertices_.begin(), vertices_.begin() + static_cast<std::ptrdiff_t>(best),
              vertices_.end());
}

bool Face::contains(const Vertex& v) const { return index_of(v) != vertices_.size(); }

std::size_t Face::index_of(const Vertex& v) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] == v) return i;
  }
  return vertices_.size();
}

std::vector<Edge> Face::edges() const {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    out.push_back({vertices_[i], vertices_[(i + 1) % vertices_.size()]});
  }
  return out;
}

Face Face::mapped(const GroupElement& g) const {
  std::vector<Vertex> image;
  image.reserve(vertices_.size());
  for (const auto& v : vertices_) image.push_back(g.apply(v));
  return Face(std::move(image));
}

// ---------------------------------------------------------------------------

std::vector<long> nearest_integer_coefficients(const BoundaryPoint& y, std::size_t cap) {
  if (y.is_infinity()) throw DomainError("infinity has no nearest-integer expansion");
  const Context& ctx = y.context();
  std::vector<long> out;
  FieldElement z = y.value();
  while (true) {
    if (out.size() >= cap) {
      throw DomainError("nearest-integer expansion of " + y.to_string() +
                        " did not terminate within " + std::to_string(cap) +
                        " steps; not a vertex of F_" + ctx->name());
    }
    const Integer b = nearest_lambda_multiple(z);
    out.push_back(to_long(b));
    FieldElement rest = z - FieldElement::lambda_multiple(ctx, b);
    if (rest.is_zero()) return out;
    z = -rest.inverse();
  }
}

bool is_vertex(const BoundaryPoint& p) {
  if (p.is_infinity()) return true;
  const Context& ctx = p.context();
  if (ctx->is_theta()) {
    const auto r = p.value().as_rational();
    if (!r) return false;
    const bool num_odd = mpz_odd_p(r->get_num_mpz_t()) != 0;
    const bool den_odd = mpz_odd_p(r->get_den_mpz_t()) != 0;
    return num_odd != den_odd;
  }
  if (ctx->degree() == 1) return true;  // q = 3: every rational
  try {
    nearest_integer_coefficients(p);
    return true;
  } catch (const DomainError&) {
    return false;
  }
}

GroupElement map_to_infinity(const Vertex& x) {
  const Context& ctx = x.context();
  if (x.is_infinity()) return GroupElement::identity(ctx);
  const auto coeffs = nearest_integer_coefficients(x);
  return from_cf(ctx, coeffs).inverse();
}

bool adjacent(const Vertex& u, const Vertex& v) {
  if (!same_context(u.context(), v.context())) throw ContextMismatch("adjacency across contexts");
  if (u == v) return false;
  if (u.context()->is_theta()) {
    const auto [a, b] = theta_fraction(u);
    const auto [c, d] = theta_fraction(v);
    return abs(a * d - b * c) == 1;
  }
  const BoundaryPoint image = map_to_infinity(u).apply(v);
  if (image.is_infinity()) return false;
  return divide_by_lambda(image.value()).as_integer().has_value();
}

Face face_of_fundamental(const Context& ctx, long b) {
  require_finite_q(ctx, "face_of_fundamental");
  const int q = ctx->q();
  const GroupElement rho = GroupElement::rho(ctx);
  std::vector<Vertex> orbit{BoundaryPoint::infinity(ctx)};
  for (int j = 1; j < q; ++j) orbit.push_back(rho.apply(orbit.back()));
  // rho turns clockwise; list infinity, rho^{q-1}(inf) = 0, ..., rho(inf) = lambda.
  const GroupElement shift = GroupElement::translation(ctx, b);
  std::vector<Vertex> anticlockwise{orbit[0]};
  for (int j = q - 1; j >= 1; --j) anticlockwise.push_back(shift.apply(orbit[j]));
  return Face(std::move(anticlockwise));
}

Face face_P(const Vertex& x, const Vertex& y) {
  require_finite_q(x.context(), "face_P");
  if (x == y || adjacent(x, y)) {
    throw DomainError("face_P: y-parents undefined for equal or adjacent vertices");
  }
  const GroupElement g = map_to_infinity(x);
  const BoundaryPoint image = g.apply(y);
  const Integer b = floor(divide_by_lambda(image.value()));
  return face_of_fundamental(x.context(), to_long(b)).mapped(g.inverse());
}

Face face_across(const Face& face, const Edge& edge) {
  const Context& ctx = edge.a.context();
  require_finite_q(ctx, "face_across");
  if (!face.contains(edge.a) || !face.contains(edge.b)) {
    throw DomainError("face_across: edge is not on the face");
  }
  GroupElement g = map_to_infinity(edge.a);
  const BoundaryPoint gb = g.apply(edge.b);
  const auto k = divide_by_lambda(gb.value()).as_integer();
  if (!k) throw DomainError("face_across: endpoints are not adjacent");
  // h sends the edge to {infinity, 0}.
  const GroupElement h = GroupElement::translation(ctx, -*k) * g;
  const Vertex* witness = nullptr;
  for (const auto& v : face.vertices()) {
    if (v != edge.a && v != edge.b) {
      witness = &v;
      break;
    }
  }
  const int side = h.apply(*witness).value().sign();
  const Face other = face_of_fundamental(ctx, side > 0 ? -1 : 0);
  return other.mapped(h.inverse());
}

Parents parents(const Vertex& x, const Vertex& y) {
  if (x == y || adjacent(x, y)) return {y, y};
  const Context& ctx = x.context();
  const GroupElement g = map_to_infinity(x);
  const GroupElement back = g.inverse();
  const FieldElement image = g.apply(y).value();
  const Integer nearest = nearest_lambda_multiple(image);
  const Integer lower = floor(divide_by_lambda(image));
  const Integer other = (nearest == lower) ? Integer(lower + 1) : lower;
  return {back.apply(BoundaryPoint(FieldElement::lambda_multiple(ctx, nearest))),
          back.apply(BoundaryPoint(FieldElement::lambda_multiple(ctx, other)))};
}

long phi(const Vertex& a, const Vertex& b, const Vertex& c) {
  if (!adjacent(a, b) || !adjacent(b, c)) throw DomainError("phi needs a ~ b and b ~ c");
  const GroupElement g = map_to_infinity(b);
  const FieldElement turn = divide_by_lambda(g.apply(c).value() - g.apply(a).value());
  const auto k = turn.as_integer();
  if (!k) throw InternalError("turn between adjacent edges is not an integer");
  return to_long(*k);
}

QChain q_chain(const Vertex& x, const Vertex& y) {
  require_finite_q(x.context(), "q_chain");
  if (x == y || adjacent(x, y)) {
    throw DomainError("q_chain: the chain between equal or adjacent vertices is empty");
  }
  QChain chain{x, y, {face_P(x, y)}, {}};
  while (!chain.faces.back().contains(y)) {
    if (chain.faces.size() >= kChainCap) {
      throw InternalError("q-chain construction exceeded " + std::to_string(kChainCap) +
                          " faces");
    }
    const Face& current = chain.faces.back();
    const auto& vs = current.vertices();
    std::optional<Edge> bridge;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const Vertex& a = vs[i];
      const Vertex& b = vs[(i + 1) % vs.size()];
      if (cyclic_order(a, y, b) == Orientation::anticlockwise) {
        bridge = Edge{a, b};
        break;
      }
    }
    if (!bridge) throw InternalError("q-chain: no edge of the face separates y");
    chain.faces.push_back(face_across(current, *bridge));
    chain.bridges.push_back(*bridge);
  }
  return chain;
}

std::size_t chain_length_D(const Vertex& x, const Vertex& y) {
  if (x == y) return 0;
  if (adjacent(x, y)) return 1;
  return q_chain(x, y).faces.size();
}

}  // namespace rosen::farey
