#include "rosen/cf.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "rosen/error.hpp"
#include "rosen/oracle.hpp"

namespace rosen::cf {

namespace {

std::string join(const Coefficients& coeffs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (i) out << ',';
    out << coeffs[i];
  }
  return out.str();
}

void require_pattern_context(const Context& ctx, const char* what) {
  if (!ctx->is_theta() && ctx->q() == 3) {
    throw Unsupported(std::string(what) + " has no pattern characterisation for q = 3");
  }
}

int half_q(const Context& ctx) { return ctx->q() / 2; }

Coefficients negate(Coefficients c) {
  for (auto& b : c) b = -b;
  return c;
}

// The positive interleaved block of length `len`, or nullopt if no member of
// the family has that length. Also returns its repeat count.
std::optional<std::pair<Coefficients, std::size_t>> interleaved_block(int q, std::size_t len) {
  const int r = q / 2;
  Coefficients block;
  auto ones = [&block](int n) { block.insert(block.end(), static_cast<std::size_t>(n), 1L); };
  if (q % 2 == 0) {
    // 1^[r-1] 2 (1^[r-2] 2)^t 1^[r-1]
    const std::size_t base = static_cast<std::size_t>(2 * r - 1);
    const std::size_t body = static_cast<std::size_t>(r - 1);
    if (len < base || (len - base) % body != 0) return std::nullopt;
    const std::size_t t = (len - base) / body;
    ones(r - 1);
    block.push_back(2);
    for (std::size_t k = 0; k < t; ++k) {
      ones(r - 2);
      block.push_back(2);
    }
    ones(r - 1);
    return std::make_pair(block, t);
  }
  // 1^[r-1] 2 1^[r-1] 2 (1^[r-2] 2 1^[r-1] 2)^t 1^[r-1]
  const std::size_t base = static_cast<std::size_t>(3 * r - 1);
  const std::size_t body = static_cast<std::size_t>(2 * r - 1);
  if (len < base || (len - base) % body != 0) return std::nullopt;
  const std::size_t t = (len - base) / body;
  ones(r - 1);
  block.push_back(2);
  ones(r - 1);
  block.push_back(2);
  for (std::size_t k = 0; k < t; ++k) {
    ones(r - 2);
    block.push_back(2);
    ones(r - 1);
    block.push_back(2);
  }
  ones(r - 1);
  return std::make_pair(block, t);
}

// [.., b_i - 1, replacement, b_{j+1} - 1, b_{j+2}, ..]; the b_{j+1} term is
// dropped when j = n.
Coefficients splice(const Coefficients& c, std::size_t i, std::size_t j,
                    const Coefficients& replacement) {
  Coefficients out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i));
  out.back() -= 1;
  out.insert(out.end(), replacement.begin(), replacement.end());
  if (j < c.size()) {
    out.push_back(c[j] - 1);
    out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(j + 1), c.end());
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

RosenCF::RosenCF(Context ctx, Coefficients coeffs) : ctx_(std::move(ctx)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("a Rosen continued fraction needs at least one term");
}

RosenCF RosenCF::negated() const { return RosenCF(ctx_, negate(coeffs_)); }

bool RosenCF::operator==(const RosenCF& other) const {
  return same_context(ctx_, other.ctx_) && coeffs_ == other.coeffs_;
}

std::string RosenCF::to_string() const { return "q=" + ctx_->name() + " [" + join(coeffs_) + "]"; }

InfiniteCF::InfiniteCF(Context ctx, Coefficients preperiod, Coefficients period)
    : ctx_(std::move(ctx)), preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) throw DomainError("a periodic continued fraction needs a nonempty period");
}

InfiniteCF::InfiniteCF(Context ctx, std::function<long(std::size_t)> generator, std::string label)
    : ctx_(std::move(ctx)), generator_(std::move(generator)), label_(std::move(label)) {
  if (!generator_) throw DomainError("empty coefficient generator");
}

long InfiniteCF::coefficient(std::size_t k) const {
  if (k == 0) throw DomainError("coefficients are indexed from 1");
  if (generator_) return generator_(k);
  if (k <= preperiod_.size()) return preperiod_[k - 1];
  return period_[(k - 1 - preperiod_.size()) % period_.size()];
}

Coefficients InfiniteCF::prefix(std::size_t n) const {
  Coefficients out;
  out.reserve(n);
  for (std::size_t k = 1; k <= n; ++k) out.push_back(coefficient(k));
  return out;
}

std::string InfiniteCF::to_string() const {
  if (generator_) return "q=" + ctx_->name() + " " + label_;
  const std::string head = preperiod_.empty() ? "" : join(preperiod_) + ";";
  return "q=" + ctx_->name() + " [" + head + "(" + join(period_) + ")]";
}

// ---------------------------------------------------------------------------

BoundaryPoint evaluate(const RosenCF& cf) {
  return from_cf(cf.context(), cf.coeffs()).apply(BoundaryPoint::infinity(cf.context()));
}

Path convergents(const RosenCF& cf) {
  const Context& ctx = cf.context();
  const BoundaryPoint inf = BoundaryPoint::infinity(ctx);
  Path path{inf};
  GroupElement m = GroupElement::identity(ctx);
  for (long b : cf.coeffs()) {
    m = m * GroupElement::t(ctx, b);
    path.push_back(m.apply(inf));
  }
  return path;
}

RosenCF path_to_cf(const Path& path) {
  if (path.size() < 2) throw DomainError("a path of convergents needs at least two vertices");
  if (!path.front().is_infinity()) throw DomainError("a path of convergents starts at infinity");
  const Context& ctx = path.front().context();
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (!farey::adjacent(path[i - 1], path[i])) {
      throw DomainError("vertices " + std::to_string(i - 1) + " and " + std::to_string(i) +
                        " of the path are not adjacent");
    }
  }
  Coefficients coeffs;
  const auto b1 = (path[1].value() * FieldElement(ctx, std::span<const Rational>(ctx->lambda_inverse())))
                      .as_integer();
  if (!b1 || !b1->fits_slong_p()) throw InternalError("first convergent is not a lambda multiple");
  coeffs.push_back(b1->get_si());
  for (std::size_t i = 2; i < path.size(); ++i) {
    coeffs.push_back(farey::phi(path[i - 2], path[i - 1], path[i]));
  }
  return RosenCF(ctx, std::move(coeffs));
}

RosenCF nearest_integer_expansion(const farey::Vertex& y) {
  return RosenCF(y.context(), farey::nearest_integer_coefficients(y));
}

// ---------------------------------------------------------------------------

std::string PatternMatch::describe() const {
  return "pattern (" + join(window) + ") at index " + std::to_string(first);
}

std::optional<PatternMatch> find_forbidden_pattern(const RosenCF& cf) {
  require_pattern_context(cf.context(), "find_forbidden_pattern");
  return find_forbidden_pattern(cf, build_pattern_automaton(cf.context()));
}

std::optional<PatternMatch> find_forbidden_pattern(const RosenCF& cf,
                                                   const PatternAutomaton& dfa) {
  const Coefficients& c = cf.coeffs();
  if (c.size() < 2) return std::nullopt;
  const std::span<const long> tail(c.data() + 1, c.size() - 1);
  const auto end = dfa.first_match_end(tail);
  if (!end) return std::nullopt;
  for (std::size_t s = *end + 1; s-- > 0;) {
    const auto window = tail.subspan(s, *end - s + 1);
    if (!dfa.matches_exactly(window)) continue;
    PatternMatch m;
    m.first = s + 2;
    m.last = *end + 2;
    m.window.assign(window.begin(), window.end());
    if (window.size() == 1 && window[0] == 0) {
      m.kind = PatternKind::zero;
      m.sign = 1;
    } else {
      m.sign = window[0] > 0 ? 1 : -1;
      const bool ones = std::all_of(window.begin(), window.end(),
                                    [](long b) { return b == 1 || b == -1; });
      m.kind = ones ? PatternKind::ones_block : PatternKind::interleaved;
    }
    return m;
  }
  throw InternalError("automaton accepted but no anchored match was found");
}

bool is_geodesic(const RosenCF& cf) {
  const Context& ctx = cf.context();
  if (!ctx->is_theta() && ctx->q() == 3) return oracle::is_geodesic_oracle(cf);
  const Coefficients& c = cf.coeffs();
  if (c.size() < 2) return true;
  const PatternAutomaton dfa = build_pattern_automaton(ctx);
  return !dfa.first_match_end(std::span<const long>(c.data() + 1, c.size() - 1));
}

// ---------------------------------------------------------------------------

Coefficients remove_zero(const Coefficients& c, std::size_t i) {
  const std::size_t n = c.size();
  if (i < 2 || i > n) {
    throw DomainError("remove_zero: index " + std::to_string(i) + " outside 2.." +
                      std::to_string(n));
  }
  if (c[i - 1] != 0) throw DomainError("remove_zero: b_" + std::to_string(i) + " is not 0");
  if (i == n) {
    if (n < 3) throw DomainError("remove_zero: the continued fraction evaluates to infinity");
    return Coefficients(c.begin(), c.end() - 2);
  }
  Coefficients out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i - 1));
  out.back() += c[i];
  out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(i + 1), c.end());
  return out;
}

Coefficients insert_zero(const Coefficients& c, std::size_t i, long split) {
  if (i < 1 || i > c.size()) {
    throw DomainError("insert_zero: index " + std::to_string(i) + " outside 1.." +
                      std::to_string(c.size()));
  }
  Coefficients out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i - 1));
  out.push_back(split);
  out.push_back(0);
  out.push_back(c[i - 1] - split);
  out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(i), c.end());
  return out;
}

Coefficients insert_circuit(const Context& ctx, const Coefficients& c, std::size_t i, int sign) {
  if (ctx->is_theta()) throw Unsupported("insert_circuit: faces of F_inf are not finite");
  if (i > c.size()) throw DomainError("insert_circuit: index out of range");
  if (sign != 1 && sign != -1) throw DomainError("insert_circuit: sign must be +1 or -1");
  Coefficients out(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(i));
  out.insert(out.end(), static_cast<std::size_t>(ctx->q()), static_cast<long>(sign));
  out.insert(out.end(), c.begin() + static_cast<std::ptrdiff_t>(i), c.end());
  return out;
}

Coefficients rewrite_ones_block(const Context& ctx, const Coefficients& c, std::size_t i,
                                int sign) {
  if (ctx->is_theta()) throw Unsupported("rewrite_ones_block: no such block for q = inf");
  if (sign == -1) return negate(rewrite_ones_block(ctx, negate(c), i, 1));
  if (sign != 1) throw DomainError("rewrite_ones_block: sign must be +1 or -1");
  const int q = ctx->q();
  const std::size_t r = static_cast<std::size_t>(half_q(ctx));
  if (i < 1 || i + r > c.size()) throw DomainError("rewrite_ones_block: block out of range");
  for (std::size_t k = i; k < i + r; ++k) {
    if (c[k] != 1) {
      throw DomainError("rewrite_ones_block: no 1^[" + std::to_string(r) + "] at index " +
                        std::to_string(i + 1));
    }
  }
  const std::size_t minus_ones = q % 2 == 0 ? r - 2 : r - 1;
  return splice(c, i, i + r, Coefficients(minus_ones, -1L));
}

Coefficients rewrite_interleaved_block(const Context& ctx, const Coefficients& c, std::size_t i,
                                       std::size_t j, int sign) {
  if (ctx->is_theta()) throw Unsupported("rewrite_interleaved_block: no such block for q = inf");
  if (sign == -1) return negate(rewrite_interleaved_block(ctx, negate(c), i, j, 1));
  if (sign != 1) throw DomainError("rewrite_interleaved_block: sign must be +1 or -1");
  const int q = ctx->q();
  if (q < 4) throw Unsupported("rewrite_interleaved_block: q = 3 has no interleaved block");
  if (i < 1 || j <= i || j > c.size()) {
    throw DomainError("rewrite_interleaved_block: block out of range");
  }
  const auto expected = interleaved_block(q, j - i);
  if (!expected ||
      !std::equal(expected->first.begin(), expected->first.end(),
                  c.begin() + static_cast<std::ptrdiff_t>(i))) {
    throw DomainError("rewrite_interleaved_block: positions " + std::to_string(i + 1) + ".." +
                      std::to_string(j) + " do not hold an interleaved block");
  }
  const std::size_t reps = expected->second + 1;
  const int r = half_q(ctx);
  Coefficients star;
  auto minus_ones = [&star](int n) { star.insert(star.end(), static_cast<std::size_t>(n), -1L); };
  for (std::size_t k = 0; k < reps; ++k) {
    if (q % 2 == 0) {
      minus_ones(r - 2);
      star.push_back(-2);
    } else {
      minus_ones(r - 1);
      star.push_back(-2);
      minus_ones(r - 2);
      star.push_back(-2);
    }
  }
  minus_ones(q % 2 == 0 ? r - 2 : r - 1);
  return splice(c, i, j, star);
}

RosenCF reduce_to_geodesic(const RosenCF& cf, std::vector<RewriteStep>* trace) {
  const Context& ctx = cf.context();
  require_pattern_context(ctx, "reduce_to_geodesic");
  const PatternAutomaton dfa = build_pattern_automaton(ctx);
  Coefficients c = cf.coeffs();
  while (auto m = find_forbidden_pattern(RosenCF(ctx, c), dfa)) {
    Coefficients next;
    switch (m->kind) {
      case PatternKind::zero:
        next = remove_zero(c, m->first);
        break;
      case PatternKind::ones_block:
        next = rewrite_ones_block(ctx, c, m->first - 1, m->sign);
        break;
      case PatternKind::interleaved:
        next = rewrite_interleaved_block(ctx, c, m->first - 1, m->last, m->sign);
        break;
    }
    if (next.empty() || next.size() >= c.size()) {
      throw InternalError("rewrite did not shorten " + RosenCF(ctx, c).to_string());
    }
    if (trace) trace->push_back({*m, c, next});
    c = std::move(next);
  }
  return RosenCF(ctx, std::move(c));
}

// ---------------------------------------------------------------------------

namespace {

std::vector<RosenCF> enumerate_finite_q(const farey::Vertex& y) {
  const Context& ctx = y.context();
  const BoundaryPoint inf = BoundaryPoint::infinity(ctx);
  const oracle::ChainGraph g = oracle::chain_graph(farey::q_chain(inf, y));
  constexpr std::size_t kUnseen = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> dist(g.vertices.size(), kUnseen);
  std::deque<std::size_t> queue{g.y};
  dist[g.y] = 0;
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t u : g.adjacency[v]) {
      if (dist[u] == kUnseen) {
        dist[u] = dist[v] + 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<RosenCF> out;
  std::vector<std::size_t> stack{g.x};
  std::function<void(std::size_t)> walk = [&](std::size_t v) {
    if (v == g.y) {
      Path path;
      for (std::size_t k : stack) path.push_back(g.vertices[k]);
      out.push_back(path_to_cf(path));
      return;
    }
    for (std::size_t u : g.adjacency[v]) {
      if (dist[u] + 1 != dist[v]) continue;
      stack.push_back(u);
      walk(u);
      stack.pop_back();
    }
  };
  walk(g.x);
  return out;
}

// F_inf has infinite faces, so no chain is built: the second vertex of any
// geodesic from x is one of the two y-parents of x.
std::vector<RosenCF> enumerate_theta(const farey::Vertex& y) {
  const Context& ctx = y.context();
  std::unordered_map<BoundaryPoint, std::size_t> memo;
  auto dist = [&](const BoundaryPoint& v) {
    if (v == y) return std::size_t{0};
    auto it = memo.find(v);
    if (it != memo.end()) return it->second;
    const GroupElement g = farey::map_to_infinity(v);
    const std::size_t d = farey::nearest_integer_coefficients(g.apply(y)).size();
    memo.emplace(v, d);
    return d;
  };
  std::vector<RosenCF> out;
  Path stack{BoundaryPoint::infinity(ctx)};
  std::function<void()> walk = [&]() {
    const BoundaryPoint v = stack.back();
    if (v == y) {
      out.push_back(path_to_cf(stack));
      return;
    }
    const std::size_t d = dist(v);
    const farey::Parents p = farey::parents(v, y);
    std::vector<BoundaryPoint> next{p.alpha};
    if (p.beta != p.alpha) next.push_back(p.beta);
    for (const BoundaryPoint& u : next) {
      if (dist(u) + 1 != d) continue;
      stack.push_back(u);
      walk();
      stack.pop_back();
    }
  };
  walk();
  return out;
}

}  // namespace

std::vector<RosenCF> enumerate_geodesic_expansions(const farey::Vertex& y) {
  if (y.is_infinity()) throw DomainError("infinity has no finite expansion");
  const Context& ctx = y.context();
  if (!farey::is_vertex(y)) throw DomainError(y.to_string() + " is not a vertex of F_" + ctx->name());
  std::vector<RosenCF> out;
  if (farey::adjacent(BoundaryPoint::infinity(ctx), y)) {
    out.push_back(path_to_cf({BoundaryPoint::infinity(ctx), y}));
  } else if (ctx->is_theta()) {
    out = enumerate_theta(y);
  } else {
    out = enumerate_finite_q(y);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t fibonacci(std::size_t n) {
  std::uint64_t a = 1;
  std::uint64_t b = 2;
  for (std::size_t k = 0; k < n; ++k) {
    if (b > std::numeric_limits<std::uint64_t>::max() - a) {
      throw DomainError("fibonacci(" + std::to_string(n) + ") exceeds 64 bits");
    }
    const std::uint64_t c = a + b;
    a = b;
    b = c;
  }
  return a;
}

std::uint64_t geodesic_count_bound(const Context& ctx, std::size_t D) {
  std::uint64_t bound = fibonacci(D);
  if (ctx->is_theta() || ctx->q() % 2 == 0 || D <= 1) return bound;
  std::uint64_t odd;
  if (D % 2 == 0) {
    odd = fibonacci(D / 2);
  } else if (ctx->q() == 3) {
    odd = fibonacci((D - 1) / 2);
  } else {
    odd = D >= 3 ? 2 * fibonacci((D - 3) / 2) : bound;
  }
  return std::min(bound, odd);
}

// ---------------------------------------------------------------------------

std::vector<BoundaryPoint> infinite_convergents(const InfiniteCF& cf, std::size_t n) {
  const Context& ctx = cf.context();
  const BoundaryPoint inf = BoundaryPoint::infinity(ctx);
  std::vector<BoundaryPoint> out;
  out.reserve(n);
  GroupElement m = GroupElement::identity(ctx);
  for (std::size_t k = 1; k <= n; ++k) {
    m = m * GroupElement::t(ctx, cf.coefficient(k));
    out.push_back(m.apply(inf));
  }
  return out;
}

bool is_geodesic_infinite_prefix(const InfiniteCF& cf, std::size_t n) {
  require_pattern_context(cf.context(), "is_geodesic_infinite_prefix");
  const PatternAutomaton dfa = build_pattern_automaton(cf.context());
  auto s = dfa.start();
  for (std::size_t k = 2; k <= n; ++k) {
    s = dfa.next(s, classify(cf.coefficient(k)));
    if (dfa.is_accepting(s)) return false;
  }
  return true;
}

ConvergenceReport convergence_estimate(const InfiniteCF& cf, double tol, std::size_t max_n,
                                       unsigned precision_bits) {
  if (!(tol > 0)) throw DomainError("convergence_estimate: tolerance must be positive");
  const Context& ctx = cf.context();
  const BoundaryPoint inf = BoundaryPoint::infinity(ctx);
  const Rational tolerance(tol);
  ConvergenceReport report;
  std::unordered_set<BoundaryPoint> seen;
  std::optional<Interval> previous;
  GroupElement m = GroupElement::identity(ctx);
  for (std::size_t k = 1; k <= max_n; ++k) {
    m = m * GroupElement::t(ctx, cf.coefficient(k));
    BoundaryPoint c = m.apply(inf);
    report.terms = k;
    if (!seen.insert(c).second && !report.repeated) {
      report.repeated = true;
      report.repeated_value = c;
    }
    report.last = c;
    if (c.is_infinity()) {
      previous.reset();
      continue;
    }
    const Interval current = c.value().approximate(precision_bits);
    if (previous) {
      Interval hull{std::min(previous->lo, current.lo), std::max(previous->hi, current.hi)};
      report.limit = hull;
      if (hull.width() <= tolerance) {
        report.converged = true;
        return report;
      }
    } else {
      report.limit = current;
    }
    previous = current;
  }
  return report;
}

}  // namespace rosen::cf
