#pragma once

// The Farey graph F_q: vertices are the G_q-orbit of infinity, faces are the
// images of the ideal q-gon with vertices infinity, 0, ..., lambda. Nothing is
// stored globally; every face is generated by the group action on demand.

#include <cstddef>
#include <vector>

#include "rosen/moebius.hpp"

namespace rosen::farey {

using Vertex = BoundaryPoint;

// Cap on nearest-integer steps before a point is declared "not a vertex".
inline constexpr std::size_t kExpansionCap = 4096;
// Cap on faces in a q-chain; the construction provably terminates, the cap
// only turns a bug into a diagnostic.
inline constexpr std::size_t kChainCap = 100000;

struct Edge {
  Vertex a;
  Vertex b;
  bool operator==(const Edge& other) const {
    return (a == other.a && b == other.b) || (a == other.b && b == other.a);
  }
};

class Face {
 public:
  // Vertices in anticlockwise order; rotated into canonical form.
  explicit Face(std::vector<Vertex> anticlockwise);

  const std::vector<Vertex>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool contains(const Vertex& v) const;
  // Index of v, or size() when absent.
  std::size_t index_of(const Vertex& v) const;
  std::vector<Edge> edges() const;
  Face mapped(const GroupElement& g) const;

  bool operator==(const Face& other) const { return vertices_ == other.vertices_; }

 private:
  std::vector<Vertex> vertices_;
};

struct QChain {
  Vertex x;
  Vertex y;
  std::vector<Face> faces;
  // bridges[i] is the edge shared by faces[i] and faces[i+1].
  std::vector<Edge> bridges;
};

struct Parents {
  Vertex alpha;
  Vertex beta;
};

// Nearest-integer coefficients b_1..b_m with T_{b_1}...T_{b_m}(infinity) = y.
// Throws DomainError for y = infinity or when y is not a vertex of F_q.
std::vector<long> nearest_integer_coefficients(const BoundaryPoint& y,
                                               std::size_t cap = kExpansionCap);

bool is_vertex(const BoundaryPoint& p);
GroupElement map_to_infinity(const Vertex& x);
bool adjacent(const Vertex& u, const Vertex& v);

Face face_of_fundamental(const Context& ctx, long b);
Face face_P(const Vertex& x, const Vertex& y);
// The face other than `face` that contains `edge`.
Face face_across(const Face& face, const Edge& edge);

Parents parents(const Vertex& x, const Vertex& y);
long phi(const Vertex& a, const Vertex& b, const Vertex& c);

QChain q_chain(const Vertex& x, const Vertex& y);
std::size_t chain_length_D(const Vertex& x, const Vertex& y);

}  // namespace rosen::farey
