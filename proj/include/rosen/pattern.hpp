#pragma once

// Forbidden-subsequence automaton for geodesic Rosen continued fractions.
//
// A coefficient tail b_2..b_n is scanned over the alphabet
// {0, +1, -1, +2, -2, OTHER}. The automaton accepts (and stays accepting)
// as soon as the scanned prefix ends with a forbidden block:
//
//   any q:      0
//   q = 2r:     +-1^[r],  +-(1^[r-1], 2, (1^[r-2], 2)*, 1^[r-1])
//   q = 2r + 1: +-1^[r],  +-(1^[r-1], 2, 1^[r-1], 2, (1^[r-2], 2, 1^[r-1], 2)*, 1^[r-1])
//   q = inf:    0 only
//
// The families with a starred group are regular but unbounded, which is why
// they are compiled to a DFA instead of being matched literally.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rosen/algebraic.hpp"

namespace rosen::cf {

enum class Symbol : std::uint8_t { zero, plus_one, minus_one, plus_two, minus_two, other };
inline constexpr std::size_t kAlphabetSize = 6;

Symbol classify(long b);

class PatternAutomaton {
 public:
  using State = std::uint32_t;

  State start() const { return 0; }
  State next(State s, Symbol a) const { return table_[s][static_cast<std::size_t>(a)]; }
  bool is_accepting(State s) const { return accepting_[s]; }
  std::size_t state_count() const { return table_.size(); }

  // Index (into `tail`) of the first position at which a forbidden block
  // ends, if any.
  std::optional<std::size_t> first_match_end(std::span<const long> tail) const;

  // True iff the whole window is one forbidden block (no leading slack).
  bool matches_exactly(std::span<const long> window) const;

 private:
  friend PatternAutomaton build_pattern_automaton(const Context& ctx);

  struct NfaEdge {
    Symbol symbol;
    std::uint32_t target;
  };
  // NFA kept for anchored matching; state 0 is the start, nfa_accept_ the sink.
  std::vector<std::vector<NfaEdge>> nfa_;
  std::uint32_t nfa_accept_ = 0;

  std::vector<std::array<State, kAlphabetSize>> table_;
  std::vector<bool> accepting_;
};

// Throws Unsupported for q = 3.
PatternAutomaton build_pattern_automaton(const Context& ctx);

}  // namespace rosen::cf
