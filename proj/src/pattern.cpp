#include "rosen/pattern.hpp"

#include <map>
#include <set>

#include "rosen/error.hpp"

namespace rosen::cf {

namespace {

// A forbidden block shaped prefix (body)* suffix; body may be empty.
struct Shape {
  std::vector<Symbol> prefix;
  std::vector<Symbol> body;
  std::vector<Symbol> suffix;
};

void append_ones(std::vector<Symbol>& out, int count, Symbol one) {
  for (int i = 0; i < count; ++i) out.push_back(one);
}

std::vector<Shape> shapes_for(const Context& ctx) {
  std::vector<Shape> shapes{{{Symbol::zero}, {}, {}}};
  if (ctx->is_theta()) return shapes;
  const int q = ctx->q();
  const int r = q / 2;
  for (int s : {+1, -1}) {
    const Symbol one = s > 0 ? Symbol::plus_one : Symbol::minus_one;
    const Symbol two = s > 0 ? Symbol::plus_two : Symbol::minus_two;
    Shape ones;
    append_ones(ones.prefix, r, one);
    shapes.push_back(ones);

    Shape inter;
    if (q % 2 == 0) {
      append_ones(inter.prefix, r - 1, one);
      inter.prefix.push_back(two);
      append_ones(inter.body, r - 2, one);
      inter.body.push_back(two);
      append_ones(inter.suffix, r - 1, one);
    } else {
      append_ones(inter.prefix, r - 1, one);
      inter.prefix.push_back(two);
      append_ones(inter.prefix, r - 1, one);
      inter.prefix.push_back(two);
      append_ones(inter.body, r - 2, one);
      inter.body.push_back(two);
      append_ones(inter.body, r - 1, one);
      inter.body.push_back(two);
      append_ones(inter.suffix, r - 1, one);
    }
    shapes.push_back(inter);
  }
  return shapes;
}

}  // namespace

Symbol classify(long b) {
  switch (b) {
    case 0:
      return Symbol::zero;
    case 1:
      return Symbol::plus_one;
    case -1:
      return Symbol::minus_one;
    case 2:
      return Symbol::plus_two;
    case -2:
      return Symbol::minus_two;
    default:
      return Symbol::other;
  }
}

PatternAutomaton build_pattern_automaton(const Context& ctx) {
  if (!ctx->is_theta() && ctx->q() == 3) {
    throw Unsupported("no forbidden-pattern automaton for q = 3; use the distance oracle");
  }
  PatternAutomaton out;
  auto& nfa = out.nfa_;
  nfa.emplace_back();  // 0: start
  nfa.emplace_back();  // 1: accept
  out.nfa_accept_ = 1;

  auto new_state = [&nfa]() {
    nfa.emplace_back();
    return static_cast<std::uint32_t>(nfa.size() - 1);
  };
  // Chain `symbols` from `from`; the last edge goes to `to` if given.
  auto chain = [&](std::uint32_t from, const std::vector<Symbol>& symbols,
                   std::optional<std::uint32_t> to) {
    std::uint32_t cur = from;
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      const bool last = i + 1 == symbols.size();
      const std::uint32_t next = (last && to) ? *to : new_state();
      nfa[cur].push_back({symbols[i], next});
      cur = next;
    }
    return cur;
  };

  for (const auto& shape : shapes_for(ctx)) {
    const bool tail_empty = shape.body.empty() && shape.suffix.empty();
    const std::uint32_t hub =
        chain(0, shape.prefix, tail_empty ? std::optional<std::uint32_t>(1) : std::nullopt);
    if (!shape.body.empty()) chain(hub, shape.body, hub);
    if (!shape.suffix.empty()) chain(hub, shape.suffix, 1u);
  }

  // Subset construction for Sigma* L, with acceptance made absorbing.
  std::map<std::set<std::uint32_t>, PatternAutomaton::State> index;
  std::vector<std::set<std::uint32_t>> subsets;
  auto intern = [&](std::set<std::uint32_t> s) {
    s.insert(0);  // the start state loops on every symbol
    auto [it, inserted] = index.emplace(s, static_cast<PatternAutomaton::State>(subsets.size()));
    if (inserted) subsets.push_back(s);
    return it->second;
  };
  intern({});
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    const std::set<std::uint32_t> current = subsets[k];
    const bool accepting = current.count(out.nfa_accept_) > 0;
    std::array<PatternAutomaton::State, kAlphabetSize> row{};
    for (std::size_t a = 0; a < kAlphabetSize; ++a) {
      if (accepting) {
        row[a] = static_cast<PatternAutomaton::State>(k);
        continue;
      }
      std::set<std::uint32_t> next;
      for (std::uint32_t s : current) {
        for (const auto& e : nfa[s]) {
          if (static_cast<std::size_t>(e.symbol) == a) next.insert(e.target);
        }
      }
      row[a] = intern(std::move(next));
    }
    out.table_.push_back(row);
    out.accepting_.push_back(accepting);
  }
  return out;
}

std::optional<std::size_t> PatternAutomaton::first_match_end(std::span<const long> tail) const {
  State s = start();
  for (std::size_t i = 0; i < tail.size(); ++i) {
    s = next(s, classify(tail[i]));
    if (is_accepting(s)) return i;
  }
  return std::nullopt;
}

bool PatternAutomaton::matches_exactly(std::span<const long> window) const {
  std::set<std::uint32_t> current{0};
  for (long b : window) {
    const Symbol a = classify(b);
    std::set<std::uint32_t> next;
    for (std::uint32_t s : current) {
      for (const auto& e : nfa_[s]) {
        if (e.symbol == a) next.insert(e.target);
      }
    }
    if (next.empty()) return false;
    current = std::move(next);
  }
  return current.count(nfa_accept_) > 0;
}

}  // namespace rosen::cf
