#pragma once

#include <random>
#include <vector>

#include "rosen/cf.hpp"

namespace rosen::testing {

inline Context ctx_of(int q) { return q == 0 ? make_theta_context() : make_context(q); }

inline BoundaryPoint inf(const Context& ctx) { return BoundaryPoint::infinity(ctx); }

inline BoundaryPoint value_of(const Context& ctx, std::vector<long> coeffs) {
  return cf::evaluate(cf::RosenCF(ctx, std::move(coeffs)));
}

inline std::vector<long> random_coeffs(std::mt19937_64& rng, std::size_t max_len, long bound) {
  std::uniform_int_distribution<std::size_t> len(1, max_len);
  std::uniform_int_distribution<long> b(-bound, bound);
  std::vector<long> out(len(rng));
  for (auto& c : out) c = b(rng);
  return out;
}

// A random finite vertex: the value of a random CF, retried until finite.
inline BoundaryPoint random_vertex(std::mt19937_64& rng, const Context& ctx, std::size_t max_len,
                                   long bound) {
  while (true) {
    BoundaryPoint y = value_of(ctx, random_coeffs(rng, max_len, bound));
    if (!y.is_infinity()) return y;
  }
}

}  // namespace rosen::testing
