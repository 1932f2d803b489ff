#pragma once

// Rosen continued fractions [b_1, ..., b_n]_q = b_1 lambda - 1/(b_2 lambda - ...).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rosen/farey.hpp"
#include "rosen/pattern.hpp"

namespace rosen::cf {

using Coefficients = std::vector<long>;
// <infinity, v_1, ..., v_n>
using Path = std::vector<farey::Vertex>;

class RosenCF {
 public:
  RosenCF(Context ctx, Coefficients coeffs);

  const Context& context() const { return ctx_; }
  const Coefficients& coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  long operator[](std::size_t i) const { return coeffs_[i]; }

  RosenCF negated() const;
  bool operator==(const RosenCF& other) const;
  bool operator<(const RosenCF& other) const { return coeffs_ < other.coeffs_; }

  // "q=5 [1,2,-1]"
  std::string to_string() const;

 private:
  Context ctx_;
  Coefficients coeffs_;
};

// An infinite coefficient stream: either eventually periodic (the only form
// with a text syntax) or driven by an arbitrary generator.
class InfiniteCF {
 public:
  InfiniteCF(Context ctx, Coefficients preperiod, Coefficients period);
  // generator(k) returns b_k for k >= 1.
  InfiniteCF(Context ctx, std::function<long(std::size_t)> generator, std::string label);

  const Context& context() const { return ctx_; }
  bool periodic() const { return !generator_; }
  const Coefficients& preperiod() const { return preperiod_; }
  const Coefficients& period() const { return period_; }

  // b_k, 1-based.
  long coefficient(std::size_t k) const;
  Coefficients prefix(std::size_t n) const;
  RosenCF truncated(std::size_t n) const { return RosenCF(ctx_, prefix(n)); }

  // "q=4 [2;(2)]", or the generator label.
  std::string to_string() const;

 private:
  Context ctx_;
  Coefficients preperiod_;
  Coefficients period_;
  std::function<long(std::size_t)> generator_;
  std::string label_;
};

// ---------------------------------------------------------------------------
// Values and paths

BoundaryPoint evaluate(const RosenCF& cf);
Path convergents(const RosenCF& cf);
// Throws DomainError unless the path starts at infinity and is a path.
RosenCF path_to_cf(const Path& path);
RosenCF nearest_integer_expansion(const farey::Vertex& y);

// ---------------------------------------------------------------------------
// Geodesic tests

enum class PatternKind { zero, ones_block, interleaved };

struct PatternMatch {
  PatternKind kind;
  // 1-based positions of the first and last coefficient of the block.
  std::size_t first;
  std::size_t last;
  int sign;  // +1 or -1; +1 for a zero
  Coefficients window;

  // "pattern (1,2,1) at index 2"
  std::string describe() const;
};

// The forbidden block that ends earliest in b_2..b_n (shortest one at that
// end). Throws Unsupported for q = 3.
std::optional<PatternMatch> find_forbidden_pattern(const RosenCF& cf);
std::optional<PatternMatch> find_forbidden_pattern(const RosenCF& cf,
                                                   const PatternAutomaton& dfa);

// q = 3 falls back to the distance oracle.
bool is_geodesic(const RosenCF& cf);

// ---------------------------------------------------------------------------
// Homotopy rewrites. Indices are 1-based, as in b_1..b_n.

// (..., a, 0, c, ...) -> (..., a + c, ...) with b_i = 0, 2 <= i <= n - 1.
// A trailing zero (i = n >= 3) drops b_{n-1} and b_n.
Coefficients remove_zero(const Coefficients& coeffs, std::size_t i);
// Splits b_i into (split, 0, b_i - split).
Coefficients insert_zero(const Coefficients& coeffs, std::size_t i, long split);
// Inserts q copies of sign*1 after position i (0 <= i <= n); T_1^q = +-I.
Coefficients insert_circuit(const Context& ctx, const Coefficients& coeffs, std::size_t i,
                            int sign);

// sign * 1^[r] at positions i+1..i+r. Shortens by 2 (even q) or 1 (odd q).
Coefficients rewrite_ones_block(const Context& ctx, const Coefficients& coeffs, std::size_t i,
                                int sign);
// The interleaved block of 1s and 2s at positions i+1..j. Shortens by 2
// (even q) or 1 (odd q).
Coefficients rewrite_interleaved_block(const Context& ctx, const Coefficients& coeffs,
                                       std::size_t i, std::size_t j, int sign);

struct RewriteStep {
  PatternMatch match;
  Coefficients before;
  Coefficients after;
};

// Leftmost-first removal of forbidden blocks until none is left.
// Unsupported for q = 3.
RosenCF reduce_to_geodesic(const RosenCF& cf, std::vector<RewriteStep>* trace = nullptr);

// ---------------------------------------------------------------------------
// Enumeration and counting

// All geodesic expansions of y, sorted lexicographically by coefficients.
std::vector<RosenCF> enumerate_geodesic_expansions(const farey::Vertex& y);

// F_0 = 1, F_1 = 2, F_n = F_{n-1} + F_{n-2}. Throws past 64-bit range.
std::uint64_t fibonacci(std::size_t n);

// Upper bound on the number of geodesics from infinity to a vertex whose
// q-chain has D faces: F_D in general, sharpened for odd q.
std::uint64_t geodesic_count_bound(const Context& ctx, std::size_t D);

// ---------------------------------------------------------------------------
// Infinite continued fractions

std::vector<BoundaryPoint> infinite_convergents(const InfiniteCF& cf, std::size_t n);
bool is_geodesic_infinite_prefix(const InfiniteCF& cf, std::size_t n);

struct ConvergenceReport {
  bool converged = false;
  std::size_t terms = 0;
  // Hull of the enclosures of the last two finite convergents.
  std::optional<Interval> limit;
  std::optional<BoundaryPoint> last;
  // Some convergent value occurred twice within the window.
  bool repeated = false;
  std::optional<BoundaryPoint> repeated_value;
};

ConvergenceReport convergence_estimate(const InfiniteCF& cf, double tol, std::size_t max_n,
                                       unsigned precision_bits = 96);

}  // namespace rosen::cf
