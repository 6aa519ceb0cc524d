#pragma once

/**
 * @file farey.hpp
 * @brief Exact arithmetic on the Farey graph restricted to [0, 1].
 *
 * Slopes in [0, 1] form a binary tree rooted at 1/2: each interior slope is
 * the mediant of its two immediate precedents, and its children are the
 * mediants with each precedent in turn. The endpoints 0/1 and 1/1 are leaves
 * whose triples use the virtual neighbours -1/1 and 1/0.
 */

#include "markov_twist/core.hpp"

#include <set>
#include <utility>
#include <vector>

namespace markov_twist {

/// Three Farey neighbours left < center < right with center their mediant.
struct FareyTriple {
  Slope left;
  Slope center;
  Slope right;

  friend bool operator==(const FareyTriple&, const FareyTriple&) = default;
};

/// |a.p * b.q - a.q * b.p| == 1.
inline bool is_farey_neighbor(const Slope& a, const Slope& b) {
  Integer det = a.p() * b.q() - a.q() * b.p();
  return abs(det) == 1;
}

/// Mediant of two Farey neighbours.
inline Slope mediant(const Slope& a, const Slope& b) {
  if (!is_farey_neighbor(a, b)) {
    throw RangeError("mediant: " + a.to_string() + " and " + b.to_string() + " are not Farey neighbours");
  }
  return Slope(Integer(a.p() + b.p()), Integer(a.q() + b.q()));
}

/// The three Farey-triple invariants, checked exactly.
inline bool is_valid_triple(const FareyTriple& t) {
  return t.left < t.center && t.center < t.right &&
         t.center.p() == t.left.p() + t.right.p() &&
         t.center.q() == t.left.q() + t.right.q() &&
         is_farey_neighbor(t.left, t.right);
}

/// The pair (a/b, c/d) with a/b < s < c/d and s their mediant.
///
/// Endpoints use virtual neighbours: 0/1 -> (-1/1, 1/1), 1/1 -> (0/1, 1/0).
inline std::pair<Slope, Slope> immediate_precedents(const Slope& s) {
  if (!s.in_unit_interval()) {
    throw RangeError("immediate_precedents: slope outside [0,1]: " + s.to_string());
  }
  if (s.p() == 0) return {Slope(-1, 1), Slope(1, 1)};
  if (s.p() == s.q()) return {Slope(0, 1), Slope(1, 0)};

  // Left neighbour a/b satisfies p*b - q*a = 1, i.e. b = p^{-1} mod q.
  Integer b;
  mpz_invert(b.get_mpz_t(), s.p().get_mpz_t(), s.q().get_mpz_t());
  Integer a = (s.p() * b - 1) / s.q();
  Integer c = s.p() - a;
  Integer d = s.q() - b;
  return {Slope(std::move(a), std::move(b)), Slope(std::move(c), std::move(d))};
}

inline FareyTriple farey_triple_of(const Slope& s) {
  auto [left, right] = immediate_precedents(s);
  return {std::move(left), s, std::move(right)};
}

/// Left and right children of an interior slope.
inline std::pair<Slope, Slope> immediate_successors(const Slope& s) {
  if (!s.is_interior()) {
    throw RangeError("immediate_successors: endpoints have no successors: " + s.to_string());
  }
  auto [left, right] = immediate_precedents(s);
  return {Slope(Integer(left.p() + s.p()), Integer(left.q() + s.q())),
          Slope(Integer(s.p() + right.p()), Integer(s.q() + right.q()))};
}

/// Denominator of the left precedent divided by q.
inline Rational farey_twist(const Slope& s) {
  if (!s.is_interior()) {
    throw RangeError("farey_twist: defined on interior slopes only: " + s.to_string());
  }
  auto [left, right] = immediate_precedents(s);
  Rational out(left.q(), s.q());
  out.canonicalize();
  return out;
}

/// Child of a triple's center in the given direction.
inline FareyTriple child(const FareyTriple& t, Turn turn) {
  if (turn == Turn::L) {
    Slope m(Integer(t.left.p() + t.center.p()), Integer(t.left.q() + t.center.q()));
    return {t.left, std::move(m), t.center};
  }
  Slope m(Integer(t.center.p() + t.right.p()), Integer(t.center.q() + t.right.q()));
  return {t.center, std::move(m), t.right};
}

/// Result of j >= 1 consecutive moves in the same direction, in O(1).
///
/// j left moves keep the left vertex a and give center j*a (+) m, where (+)
/// adds numerators and denominators; right moves are symmetric.
inline FareyTriple child_run(const FareyTriple& t, Turn turn, unsigned long j) {
  if (j == 0) return t;
  auto combo = [](const Slope& base, unsigned long k, const Slope& m) {
    return Slope(Integer(base.p() * k + m.p()), Integer(base.q() * k + m.q()));
  };
  if (turn == Turn::L) return {t.left, combo(t.left, j, t.center), combo(t.left, j - 1, t.center)};
  return {combo(t.right, j - 1, t.center), combo(t.right, j, t.center), t.right};
}

inline FareyTriple root_triple() { return {Slope(0, 1), Slope(1, 2), Slope(1, 1)}; }

/// True iff x precedes y in the Farey order.
///
/// The order is generated by edges directed toward larger denominators, so
/// the set of predecessors of y is its upward closure under immediate
/// precedents. That set is finite; this walks it.
inline bool precedes(const Slope& x, const Slope& y) {
  if (!x.in_unit_interval() || !y.in_unit_interval()) {
    throw RangeError("precedes: slopes must lie in [0,1]");
  }
  if (y.q() == 1 || x.q() >= y.q()) return false;

  std::set<Slope> seen;
  std::vector<Slope> frontier{y};
  while (!frontier.empty()) {
    Slope s = std::move(frontier.back());
    frontier.pop_back();
    if (s.q() == 1) continue;
    auto [a, c] = immediate_precedents(s);
    for (Slope* up : {&a, &c}) {
      if (*up == x) return true;
      if (up->q() > x.q() && seen.insert(*up).second) frontier.push_back(*up);
    }
  }
  return false;
}

/// Descent word from the root 1/2 to an interior slope.
inline LRWord path_from_root(const Slope& s) {
  if (!s.is_interior()) {
    throw RangeError("path_from_root: endpoints are not tree nodes: " + s.to_string());
  }
  LRWord word;
  FareyTriple t = root_triple();
  while (t.center != s) {
    Turn turn = s < t.center ? Turn::L : Turn::R;
    word.push_back(turn);
    t = child(t, turn);
  }
  return word;
}

/// Farey triple reached by following a descent word from the root.
inline FareyTriple triple_at(const LRWord& word) {
  FareyTriple t = root_triple();
  for (Turn turn : word) t = child(t, turn);
  return t;
}

inline Slope node_at(const LRWord& word) { return triple_at(word).center; }

/// Visits every reduced p/q in [0,1] with q <= q_max in ascending order.
///
/// In-order walk of the tree with the endpoints emitted first and last.
template <class Visitor>
void enumerate_farey(unsigned long q_max, Visitor&& visit) {
  if (q_max < 1) throw RangeError("enumerate_farey: q_max must be positive");
  visit(Slope(0, 1));
  // Explicit stack; the left spine of the tree has depth q_max - 1.
  std::vector<FareyTriple> stack;
  FareyTriple t = root_triple();
  bool have = q_max >= 2;
  while (have || !stack.empty()) {
    while (have) {
      stack.push_back(t);
      Integer lq = t.left.q() + t.center.q();
      have = lq <= q_max;
      if (have) t = child(t, Turn::L);
    }
    FareyTriple top = std::move(stack.back());
    stack.pop_back();
    visit(top.center);
    Integer rq = top.center.q() + top.right.q();
    have = rq <= q_max;
    if (have) t = child(top, Turn::R);
  }
  visit(Slope(1, 1));
}

}  // namespace markov_twist
