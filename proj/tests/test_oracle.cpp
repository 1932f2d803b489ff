#include "rosen/oracle.hpp"

#include <random>

#include "doctest.h"
#include "rosen/error.hpp"
#include "support.hpp"

using namespace rosen;
using namespace rosen::oracle;
using rosen::testing::ctx_of;
using rosen::testing::inf;
using rosen::testing::value_of;

TEST_CASE("distance") {
  auto c3 = ctx_of(3);
  CHECK(distance(inf(c3), inf(c3)) == 0);
  CHECK(distance(inf(c3), BoundaryPoint(c3, Rational(4))) == 1);
  CHECK(distance(inf(c3), BoundaryPoint(c3, Rational(5, 7))) == 3);
  auto c5 = ctx_of(5);
  CHECK(distance(inf(c5), value_of(c5, {1, 2, 1, 1, 1, 2, -1})) == 3);
}

TEST_CASE("distance is a metric on samples and alpha steps decrease it") {
  std::mt19937_64 rng(51);
  for (int q : {3, 4, 5, 6, 0}) {
    auto ctx = ctx_of(q);
    for (int t = 0; t < 20; ++t) {
      auto x = testing::random_vertex(rng, ctx, 4, 3);
      auto y = testing::random_vertex(rng, ctx, 4, 3);
      auto z = testing::random_vertex(rng, ctx, 4, 3);
      const auto dxy = distance(x, y);
      CHECK(dxy == distance(y, x));
      CHECK(distance(x, z) <= dxy + distance(y, z));
      CHECK((dxy == 0) == (x == y));
      if (dxy > 0) CHECK(distance(farey::parents(x, y).alpha, y) == dxy - 1);
    }
  }
}

TEST_CASE("chain graphs") {
  auto c4 = ctx_of(4);
  // One face: y opposite infinity on the fundamental square.
  const auto& sq = farey::face_of_fundamental(c4, 0);
  const auto opposite = sq.vertices()[(sq.index_of(inf(c4)) + 2) % 4];
  const ChainGraph one = chain_graph(farey::q_chain(inf(c4), opposite));
  CHECK(one.vertices.size() == 4);
  CHECK(one.edges.size() == 4);
  // Two squares sharing an edge.
  const ChainGraph two = chain_graph(farey::q_chain(inf(c4), value_of(c4, {0, 2})));
  CHECK(two.vertices.size() == 6);
  CHECK(two.edges.size() == 7);
  auto c5 = ctx_of(5);
  const auto chain = farey::q_chain(inf(c5), value_of(c5, {0, 3}));
  CHECK(chain.faces.size() == 3);
  const ChainGraph three = chain_graph(chain);
  CHECK(three.vertices.size() <= 3 * (5 - 2) + 2);
  CHECK(three.vertices[three.x] == inf(c5));
  CHECK(three.vertices[three.y] == value_of(c5, {0, 3}));
}

TEST_CASE("all geodesic paths") {
  for (int q : {4, 5}) {
    auto ctx = ctx_of(q);
    for (long n = 2; n <= 5; ++n) {
      const auto paths = all_geodesic_paths(inf(ctx), value_of(ctx, {0, n}));
      REQUIRE(paths.size() == 1);
      CHECK(paths[0].size() == 3);
      CHECK(paths[0][1] == BoundaryPoint(ctx, Rational(0)));
    }
  }
  for (int q : {4, 6}) {
    auto ctx = ctx_of(q);
    const auto& f = farey::face_of_fundamental(ctx, 3);
    const auto opposite = f.vertices()[(f.index_of(inf(ctx)) + q / 2) % q];
    CHECK(all_geodesic_paths(inf(ctx), opposite).size() == 2);
  }
  std::mt19937_64 rng(52);
  for (int q : {3, 4, 5}) {
    auto ctx = ctx_of(q);
    for (int t = 0; t < 15; ++t) {
      auto x = testing::random_vertex(rng, ctx, 3, 3);
      auto y = testing::random_vertex(rng, ctx, 5, 3);
      if (x == y) continue;
      const auto d = distance(x, y);
      const auto paths = all_geodesic_paths(x, y);
      REQUIRE_FALSE(paths.empty());
      for (const auto& p : paths) {
        CHECK(p.size() == d + 1);
        CHECK(p.front() == x);
        CHECK(p.back() == y);
        for (std::size_t i = 1; i < p.size(); ++i) CHECK(farey::adjacent(p[i - 1], p[i]));
      }
      if (!farey::adjacent(x, y)) {
        const auto D = farey::chain_length_D(x, y);
        CHECK(paths.size() <= cf::fibonacci(D));
      }
    }
  }
}

TEST_CASE("geodesic oracle") {
  CHECK_FALSE(is_geodesic_oracle(cf::RosenCF(ctx_of(4), {2, 1, 1})));
  CHECK(is_geodesic_oracle(cf::RosenCF(ctx_of(4), {7})));
  CHECK(is_geodesic_oracle(cf::RosenCF(ctx_of(4), {5, -2, 3})));
  CHECK_FALSE(is_geodesic_oracle(cf::RosenCF(ctx_of(4), {1, 0})));  // value infinity
}

// Each block family member, embedded between large coefficients, is exactly
// non-geodesic; shortening any run of 1s by one breaks the pattern and the
// automaton and the oracle must then agree again.
TEST_CASE("pattern families against the oracle") {
  for (int q : {4, 5, 6, 7, 8, 9, 10}) {
    auto ctx = ctx_of(q);
    const long r = q / 2;
    for (int k = 0; k <= 2; ++k) {
      cf::Coefficients block;
      auto ones = [&](long n) { block.insert(block.end(), static_cast<std::size_t>(n), 1L); };
      ones(r - 1);
      block.push_back(2);
      if (q % 2) {
        ones(r - 1);
        block.push_back(2);
      }
      for (int j = 0; j < k; ++j) {
        ones(r - 2);
        block.push_back(2);
        if (q % 2) {
          ones(r - 1);
          block.push_back(2);
        }
      }
      ones(r - 1);
      for (long sign : {1L, -1L}) {
        cf::Coefficients c{3};
        for (long b : block) c.push_back(sign * b);
        c.push_back(3);
        const cf::RosenCF f(ctx, c);
        CHECK_FALSE(is_geodesic_oracle(f));
        CHECK_FALSE(cf::is_geodesic(f));
        for (std::size_t drop = 1; drop + 1 < c.size(); ++drop) {
          cf::Coefficients v = c;
          if (v[drop] != sign) continue;
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(drop));
          const cf::RosenCF g(ctx, v);
          if (cf::evaluate(g).is_infinity()) continue;
          CHECK(cf::is_geodesic(g) == is_geodesic_oracle(g));
        }
      }
    }
  }
}
