#pragma once

/**
 * @file markov.hpp
 * @brief Markov and fractional Markov labellings of the Farey tree.
 *
 * Each tree node carries an ordered Markov triple (left precedent, node,
 * right precedent) and the matching triple of fractional labels k/n. Both
 * are propagated down the tree per path, so enumeration keeps three big
 * integers of state per level rather than a table of every label.
 */

#include "markov_twist/core.hpp"
#include "markov_twist/farey.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace markov_twist {

/// Markov numbers (n1, n, n2) of a node and its left and right precedents.
struct MarkovTriple {
  Integer left;
  Integer center;
  Integer right;

  /// n1^2 + n^2 + n2^2 == 3 n1 n n2.
  bool satisfies_markov_equation() const {
    Integer lhs = left * left + center * center + right * right;
    Integer rhs = 3 * left * center * right;
    return lhs == rhs;
  }

  friend bool operator==(const MarkovTriple&, const MarkovTriple&) = default;
};

/// Fractional labels (k1/n1, k/n, k2/n2) of a node and its precedents.
struct FractionalTriple {
  Rational left;
  Rational center;
  Rational right;

  friend bool operator==(const FractionalTriple&, const FractionalTriple&) = default;
};

/// Complete label record of one node.
struct NodeLabels {
  Slope slope;
  FareyTriple farey;
  Integer markov;
  Rational fractional;
  MarkovTriple triple;
  FractionalTriple fractional_triple;

  bool is_endpoint() const { return !slope.is_interior(); }
};

/// Vieta move toward the left or right child.
inline MarkovTriple vieta_child(const MarkovTriple& t, Turn turn) {
  if (turn == Turn::L) {
    Integer n = 3 * t.left * t.center - t.right;
    return {t.left, std::move(n), t.center};
  }
  Integer n = 3 * t.center * t.right - t.left;
  return {t.center, std::move(n), t.right};
}

/// k2*n1 - k1*n2 for labels k1/n1 < k2/n2.
inline Integer lambda_length(const Rational& u, const Rational& v) {
  return v.get_num() * u.get_den() - u.get_num() * v.get_den();
}

/// Fractional label of the node whose immediate precedents carry u and v.
inline Rational fractional_from_precedents(const Rational& u, const Rational& v) {
  Integer lam = lambda_length(u, v);
  if (lam <= 0) {
    throw std::logic_error("fractional label: precedents out of order (" + to_string(u) + ", " + to_string(v) + ")");
  }
  const Integer& k1 = u.get_num();
  const Integer& n1 = u.get_den();
  const Integer& k2 = v.get_num();
  const Integer& n2 = v.get_den();
  Integer num = k1 * n1 + k2 * n2;
  Integer rem;
  mpz_tdiv_r(rem.get_mpz_t(), num.get_mpz_t(), lam.get_mpz_t());
  if (rem != 0) {
    throw std::logic_error("fractional label: numerator not divisible by the lambda-length");
  }
  mpz_divexact(num.get_mpz_t(), num.get_mpz_t(), lam.get_mpz_t());
  Integer den = 3 * n1 * n2 - lam;
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// Fractional-label triple of the left or right child.
inline FractionalTriple fractional_child(const FractionalTriple& t, Turn turn) {
  if (turn == Turn::L) {
    Rational c = fractional_from_precedents(t.left, t.center);
    return {t.left, std::move(c), t.center};
  }
  Rational c = fractional_from_precedents(t.center, t.right);
  return {t.center, std::move(c), t.right};
}

/// Per-path state of the labelling recursion.
struct TreeState {
  FareyTriple farey;
  MarkovTriple markov;
  FractionalTriple fractional;

  TreeState child(Turn turn) const {
    return {markov_twist::child(farey, turn), vieta_child(markov, turn), fractional_child(fractional, turn)};
  }

  /// Denominator of the child's slope, without building the child.
  Integer child_q(Turn turn) const {
    return turn == Turn::L ? Integer(farey.left.q() + farey.center.q())
                           : Integer(farey.center.q() + farey.right.q());
  }

  NodeLabels labels() const {
    return {farey.center, farey, markov.center, fractional.center, markov, fractional};
  }
};

/// State at the root slope 1/2: Markov (1, 5, 2), fractional (0/1, 2/5, 1/2).
inline TreeState root_state() {
  return {root_triple(),
          {Integer(1), Integer(5), Integer(2)},
          {Rational(0, 1), Rational(2, 5), Rational(1, 2)}};
}

/// Leaf state at 0/1 with virtual neighbours -1/1 and 1/1.
///
/// The virtual fractional label -2/1 is the one for which the lambda-length
/// recursion and the Weierstrass seed formula hold at this leaf.
inline TreeState lower_endpoint_state() {
  return {{Slope(-1, 1), Slope(0, 1), Slope(1, 1)},
          {Integer(1), Integer(1), Integer(2)},
          {Rational(-2, 1), Rational(0, 1), Rational(1, 2)}};
}

/// Leaf state at 1/1 with virtual neighbours 0/1 and 1/0.
inline TreeState upper_endpoint_state() {
  return {{Slope(0, 1), Slope(1, 1), Slope(1, 0)},
          {Integer(1), Integer(2), Integer(1)},
          {Rational(0, 1), Rational(1, 2), Rational(1, 1)}};
}

inline TreeState state_at(const Slope& s) {
  if (!s.in_unit_interval()) throw RangeError("labels_at: slope outside [0,1]: " + s.to_string());
  if (s.p() == 0) return lower_endpoint_state();
  if (s.p() == s.q()) return upper_endpoint_state();
  TreeState state = root_state();
  while (state.farey.center != s) {
    state = state.child(s < state.farey.center ? Turn::L : Turn::R);
  }
  return state;
}

inline NodeLabels labels_at(const Slope& s) { return state_at(s).labels(); }

inline TreeState state_at(const LRWord& word) {
  TreeState state = root_state();
  for (Turn t : word) state = state.child(t);
  return state;
}

/// In-order walk of the subtree at `state`, pruned at denominators > q_max.
template <class Visitor>
void walk_subtree(const TreeState& state, unsigned long q_max, Visitor& visit) {
  if (state.farey.center.q() > q_max) return;
  if (state.child_q(Turn::L) <= q_max) walk_subtree(state.child(Turn::L), q_max, visit);
  visit(state);
  if (state.child_q(Turn::R) <= q_max) walk_subtree(state.child(Turn::R), q_max, visit);
}

/// Visits the label record of every slope with q <= q_max in ascending order.
template <class Visitor>
void enumerate_labels(unsigned long q_max, Visitor&& visit) {
  if (q_max < 1) throw RangeError("enumerate_labels: q_max must be positive");
  auto on_state = [&](const TreeState& s) { visit(s.labels()); };
  on_state(lower_endpoint_state());
  walk_subtree(root_state(), q_max, on_state);
  on_state(upper_endpoint_state());
}

/// Coefficients of A a^2 + B a c + C c^2.
struct MarkovForm {
  Integer A;
  Integer B;
  Integer C;

  Integer evaluate(const Integer& a, const Integer& c) const { return A * a * a + B * a * c + C * c * c; }
  Integer discriminant() const { return B * B - 4 * A * C; }

  friend bool operator==(const MarkovForm&, const MarkovForm&) = default;
};

/// (n, -(3n + 2k), 3k + (1 + k^2)/n) for the node's label k/n.
inline MarkovForm markov_form(const NodeLabels& node) {
  const Integer& k = node.fractional.get_num();
  const Integer& n = node.fractional.get_den();
  Integer kk = 1 + k * k;
  if (kk % n != 0) {
    throw std::logic_error("markov_form: k^2 + 1 is not divisible by n at " + node.slope.to_string());
  }
  Integer c = 3 * k + kk / n;
  return {n, Integer(-(3 * n + 2 * k)), std::move(c)};
}

/// Deck transformation [[3n + k, -3k - (1 + k^2)/n], [n, -k]] of the lift.
inline IntMatrix2 deck_matrix(const Rational& fractional) {
  const Integer& k = fractional.get_num();
  const Integer& n = fractional.get_den();
  Integer kk = 1 + k * k;
  if (kk % n != 0) {
    throw std::logic_error("deck_matrix: non-integral entry, k^2 + 1 not divisible by n");
  }
  return {Integer(3 * n + k), Integer(-3 * k - kk / n), n, Integer(-k)};
}

inline IntMatrix2 deck_matrix(const NodeLabels& node) { return deck_matrix(node.fractional); }

/// Integer solution (a, c) of the Markov-form equation.
struct FormSolution {
  Integer a;
  Integer c;

  Rational ratio() const { return Rational(a, c); }
  friend bool operator==(const FormSolution&, const FormSolution&) = default;
};

/// The two solution sequences locating lifted Weierstrass points.
struct WeierstrassSequences {
  std::vector<FormSolution> ascending;   // from 3 + k1/n1, images under g
  std::vector<FormSolution> descending;  // from k2/n2, images under g^{-1}
};

/// First Weierstrass seed (3 n1 + (k n1 - n2)/n, n1).
inline FormSolution first_weierstrass_seed(const NodeLabels& node) {
  const Integer& k = node.fractional.get_num();
  const Integer& n = node.fractional.get_den();
  const Integer& n1 = node.triple.left;
  const Integer& n2 = node.triple.right;
  Integer num = k * n1 - n2;
  if (num % n != 0) {
    throw std::logic_error("weierstrass: k n1 - n2 not divisible by n at " + node.slope.to_string());
  }
  return {Integer(3 * n1 + num / n), n1};
}

/// First `count` terms of both Weierstrass sequences.
inline WeierstrassSequences weierstrass_solutions(const NodeLabels& node, std::size_t count) {
  if (count < 1) throw RangeError("weierstrass_solutions: count must be positive");
  IntMatrix2 g = deck_matrix(node);
  IntMatrix2 g_inv = g.unimodular_inverse();
  WeierstrassSequences out;
  out.ascending.reserve(count);
  out.descending.reserve(count);
  out.ascending.push_back(first_weierstrass_seed(node));
  out.descending.push_back({node.fractional_triple.right.get_num(), node.fractional_triple.right.get_den()});
  for (std::size_t i = 1; i < count; ++i) {
    auto [a, c] = g.apply(out.ascending.back().a, out.ascending.back().c);
    out.ascending.push_back({std::move(a), std::move(c)});
    auto [a2, c2] = g_inv.apply(out.descending.back().a, out.descending.back().c);
    out.descending.push_back({std::move(a2), std::move(c2)});
  }
  return out;
}

/// Terms of both sequences with c <= c_max.
inline WeierstrassSequences weierstrass_solutions_bounded(const NodeLabels& node, const Integer& c_max) {
  IntMatrix2 g = deck_matrix(node);
  IntMatrix2 g_inv = g.unimodular_inverse();
  WeierstrassSequences out;
  FormSolution s = first_weierstrass_seed(node);
  while (s.c <= c_max) {
    out.ascending.push_back(s);
    auto [a, c] = g.apply(s.a, s.c);
    s = {std::move(a), std::move(c)};
  }
  s = {node.fractional_triple.right.get_num(), node.fractional_triple.right.get_den()};
  while (s.c <= c_max) {
    out.descending.push_back(s);
    auto [a, c] = g_inv.apply(s.a, s.c);
    s = {std::move(a), std::move(c)};
  }
  return out;
}

struct Check {
  std::string name;
  bool passed;
};

/// Outcome of the exact per-node consistency checks.
struct NodeReport {
  Slope slope;
  std::vector<Check> checks;

  bool all_passed() const {
    for (const auto& c : checks) {
      if (!c.passed) return false;
    }
    return true;
  }
};

/// Runs the exact label identities on one node; failures are reported, not thrown.
inline NodeReport verify_node(const NodeLabels& node) {
  NodeReport report{node.slope, {}};
  const Integer& k = node.fractional.get_num();
  const Integer& n = node.fractional.get_den();
  report.checks.push_back({"markov-equation", node.triple.satisfies_markov_equation()});
  report.checks.push_back({"residue k^2 = -1 mod n", (k * k + 1) % n == 0});
  report.checks.push_back({"denominator equals markov", n == node.markov && node.triple.center == node.markov});
  const auto& ft = node.fractional_triple;
  report.checks.push_back({"fractional triple increasing",
                           ft.left < ft.center && ft.center < ft.right && ft.center == node.fractional});
  // lambda-length of the precedent pair equals the Markov number of their common precedent,
  // which is the other root of the Markov equation in the center slot.
  Integer common = 3 * node.triple.left * node.triple.right - node.triple.center;
  report.checks.push_back({"lambda-length of precedents", lambda_length(ft.left, ft.right) == common});
  return report;
}

}  // namespace markov_twist
