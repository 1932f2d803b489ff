#include "rosen/oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>

#include "rosen/error.hpp"

namespace rosen::oracle {

std::size_t distance(const farey::Vertex& x, const farey::Vertex& y) {
  if (!same_context(x.context(), y.context())) throw ContextMismatch("distance across contexts");
  farey::Vertex v = x;
  std::size_t m = 0;
  while (v != y) {
    if (++m > kIterationCap) {
      throw InternalError("alpha-iteration from " + x.to_string() + " to " + y.to_string() +
                          " exceeded " + std::to_string(kIterationCap) + " steps");
    }
    v = farey::parents(v, y).alpha;
  }
  return m;
}

ChainGraph chain_graph(const farey::QChain& chain) {
  ChainGraph g;
  std::unordered_map<BoundaryPoint, std::size_t> index;
  auto intern = [&](const farey::Vertex& v) {
    auto [it, inserted] = index.emplace(v, g.vertices.size());
    if (inserted) g.vertices.push_back(v);
    return it->second;
  };
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& face : chain.faces) {
    for (const auto& e : face.edges()) {
      const std::size_t a = intern(e.a);
      const std::size_t b = intern(e.b);
      edges.insert({std::min(a, b), std::max(a, b)});
    }
  }
  g.x = intern(chain.x);
  g.y = intern(chain.y);
  g.edges.assign(edges.begin(), edges.end());
  g.adjacency.resize(g.vertices.size());
  for (const auto& [a, b] : g.edges) {
    g.adjacency[a].push_back(b);
    g.adjacency[b].push_back(a);
  }
  return g;
}

std::vector<cf::Path> all_geodesic_paths(const farey::Vertex& x, const farey::Vertex& y) {
  if (x == y) return {{x}};
  if (farey::adjacent(x, y)) return {{x, y}};
  const ChainGraph g = chain_graph(farey::q_chain(x, y));
  const std::size_t budget = distance(x, y);
  std::unordered_map<std::size_t, std::size_t> memo;
  auto to_target = [&](std::size_t v) {
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    const std::size_t d = distance(g.vertices[v], y);
    memo.emplace(v, d);
    return d;
  };
  std::vector<cf::Path> out;
  std::vector<std::size_t> stack{g.x};
  std::function<void(std::size_t, std::size_t)> dfs = [&](std::size_t v, std::size_t left) {
    if (v == g.y) {
      cf::Path path;
      for (std::size_t k : stack) path.push_back(g.vertices[k]);
      out.push_back(std::move(path));
      return;
    }
    if (left == 0) return;
    for (std::size_t u : g.adjacency[v]) {
      if (to_target(u) > left - 1) continue;
      stack.push_back(u);
      dfs(u, left - 1);
      stack.pop_back();
    }
  };
  dfs(g.x, budget);
  return out;
}

bool is_geodesic_oracle(const cf::RosenCF& cf) {
  const BoundaryPoint value = cf::evaluate(cf);
  if (value.is_infinity()) return false;
  return cf.size() == distance(BoundaryPoint::infinity(cf.context()), value);
}

}  // namespace rosen::oracle
