#pragma once

// Brute-force ground truth. Nothing here uses the forbidden-pattern
// machinery; distances come from iterating alpha_y, paths from an exhaustive
// search inside the q-chain.

#include <cstddef>
#include <utility>
#include <vector>

#include "rosen/cf.hpp"
#include "rosen/farey.hpp"

namespace rosen::oracle {

inline constexpr std::size_t kIterationCap = 100000;

struct ChainGraph {
  std::vector<farey::Vertex> vertices;
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // i < j
  std::vector<std::vector<std::size_t>> adjacency;
  std::size_t x = 0;
  std::size_t y = 0;
};

// Length of <x, alpha_y(x), alpha_y^2(x), ..., y>.
std::size_t distance(const farey::Vertex& x, const farey::Vertex& y);

ChainGraph chain_graph(const farey::QChain& chain);

// Every minimum-length path from x to y. Finite q only.
std::vector<cf::Path> all_geodesic_paths(const farey::Vertex& x, const farey::Vertex& y);

// length(cf) == distance(infinity, value). False for value infinity.
bool is_geodesic_oracle(const cf::RosenCF& cf);

}  // namespace rosen::oracle
