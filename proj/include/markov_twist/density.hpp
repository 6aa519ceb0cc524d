#pragma once

/**
 * @file density.hpp
 * @brief The semigroup generated by L(z) = z/(z+1) and R(z) = 1/(2-z), and
 *        constructive witnesses for the density of the Farey twist graph.
 *
 * Descending from a tree node by L (resp. R) maps its Farey twist z to L(z)
 * (resp. R(z)). A descent word (w1, ..., wm) therefore acts on twists as
 * wm o ... o w1, which is one integer matrix product.
 */

#include "markov_twist/core.hpp"
#include "markov_twist/farey.hpp"

#include <algorithm>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace markov_twist {

/// Integer Moebius map acting on rationals by linear fractional transformation.
using MoebiusInt = IntMatrix2;

inline MoebiusInt moebius_L() { return {Integer(1), Integer(0), Integer(1), Integer(1)}; }
inline MoebiusInt moebius_R() { return {Integer(0), Integer(1), Integer(-1), Integer(2)}; }
inline MoebiusInt moebius_of(Turn t) { return t == Turn::L ? moebius_L() : moebius_R(); }

inline Rational apply_map(const MoebiusInt& m, const Rational& z) {
  Integer num = m.a * z.get_num() + m.b * z.get_den();
  Integer den = m.c * z.get_num() + m.d * z.get_den();
  if (den == 0) throw RangeError("apply_map: pole at " + to_string(z));
  Rational out(num, den);
  out.canonicalize();
  return out;
}

/// Closed interval [lo, hi] with exact rational endpoints.
struct RationalInterval {
  Rational lo;
  Rational hi;

  Rational width() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool contains(const RationalInterval& other) const { return lo <= other.lo && other.hi <= hi; }
  friend bool operator==(const RationalInterval&, const RationalInterval&) = default;
};

/// Matrix of wm o ... o w1 for the descent word (w1, ..., wm).
inline MoebiusInt word_matrix(const LRWord& word) {
  MoebiusInt g = MoebiusInt::identity();
  for (Turn t : word) g = moebius_of(t) * g;
  return g;
}

inline RationalInterval image_of_unit_interval(const MoebiusInt& g) {
  return {apply_map(g, Rational(0)), apply_map(g, Rational(1))};
}

/// [G(0), G(1)] for G the map induced by the descent word.
inline RationalInterval word_image(const LRWord& word) { return image_of_unit_interval(word_matrix(word)); }

/// Hard cap on the length of a target word.
inline constexpr std::size_t kMaxWordLetters = 10'000'000;

/// M(t)^j for a single letter: L^j = [[1, 0], [j, 1]], R^j = [[1-j, j], [-j, 1+j]].
inline MoebiusInt moebius_power(Turn t, unsigned long j) {
  Integer k(j);
  if (t == Turn::L) return {Integer(1), Integer(0), k, Integer(1)};
  return {Integer(1 - k), k, Integer(-k), Integer(1 + k)};
}

namespace detail {

/// Smallest j >= 1 with done(j), for a predicate that stays true once true.
/// Throws once j would exceed `limit`.
template <class Done>
unsigned long first_true(Done done, unsigned long limit, const char* what) {
  unsigned long lo = 0, hi = 1;
  while (!done(hi)) {
    if (hi > limit) throw ResourceCapError(std::string(what) + ": exceeded " + std::to_string(limit) + " letters");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    unsigned long mid = lo + (hi - lo) / 2;
    (done(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace detail

/// A descent word whose image of [0,1] contains y and has width <= eps.
///
/// Bisects outermost-first: with G the map built so far, the image
/// [G(0), G(1)] splits at G(1/2) into G(L[0,1]) and G(R[0,1]); the half that
/// holds y (the lower one on a tie) is kept and its letter becomes the new
/// first-applied letter of the word. Runs of equal letters are found by
/// galloping, so near the parabolic points 0 and 1 the cost stays
/// logarithmic even though the word itself is long.
inline LRWord target_word(const Rational& y, const Rational& eps, std::size_t max_letters = kMaxWordLetters) {
  if (y < 0 || y > 1) throw RangeError("target_word: y must lie in [0,1]");
  if (eps <= 0) throw RangeError("target_word: eps must be positive");
  auto decide = [&](const MoebiusInt& g) { return y <= apply_map(g, Rational(1, 2)) ? Turn::L : Turn::R; };
  auto width = [](const MoebiusInt& g) { return image_of_unit_interval(g).width(); };

  MoebiusInt g = MoebiusInt::identity();
  std::vector<std::pair<Turn, unsigned long>> runs;  // outermost first
  std::size_t letters = 0;
  while (width(g) > eps) {
    Turn t = decide(g);
    auto done = [&](unsigned long j) {
      MoebiusInt h = g * moebius_power(t, j);
      return width(h) <= eps || decide(h) != t;
    };
    unsigned long j = detail::first_true(done, max_letters - letters, "target_word");
    if (letters + j > max_letters) {
      throw ResourceCapError("target_word: exceeded " + std::to_string(max_letters) + " letters");
    }
    g = g * moebius_power(t, j);
    runs.emplace_back(t, j);
    letters += j;
  }
  LRWord word;
  word.reserve(letters);
  for (auto it = runs.rbegin(); it != runs.rend(); ++it) word.insert(word.end(), it->second, it->first);
  return word;
}

/// A Farey triple whose vertices lie strictly inside (lo, hi).
///
/// Stern-Brocot descent toward the midpoint; the center's precedents are the
/// triple's outer vertices, so every descendant of the center also lies inside.
/// Runs of equal moves are taken in one step.
inline FareyTriple farey_triple_in_interval(const Rational& lo, const Rational& hi) {
  if (!(0 <= lo && lo < hi && hi <= 1)) throw RangeError("farey_triple_in_interval: need 0 <= lo < hi <= 1");
  const Rational mid = (lo + hi) / 2;
  auto inside = [&](const FareyTriple& t) { return lo < t.left.value() && t.right.value() < hi; };
  auto decide = [&](const FareyTriple& t) { return mid <= t.center.value() ? Turn::L : Turn::R; };
  FareyTriple t = root_triple();
  while (!inside(t)) {
    Turn turn = decide(t);
    auto done = [&](unsigned long j) {
      FareyTriple u = child_run(t, turn, j);
      return inside(u) || decide(u) != turn;
    };
    t = child_run(t, turn, detail::first_true(done, ~0UL / 4, "farey_triple_in_interval"));
  }
  return t;
}

/// A slope near x whose Farey twist is near y, with exact error certificates.
struct DensityWitness {
  Slope slope;
  Rational tau_f;
  Rational slope_error;  // |p'/q' - x|
  Rational twist_error;  // |tau_F(p'/q') - y|
  FareyTriple anchor;    // triple whose center starts the descent
  LRWord word;           // descent from the anchor's center
};

inline DensityWitness dense_witness(const Rational& x, const Rational& y, const Rational& eps,
                                    std::size_t max_letters = kMaxWordLetters) {
  if (x < 0 || x > 1 || y < 0 || y > 1) throw RangeError("dense_witness: x and y must lie in [0,1]");
  if (eps <= 0) throw RangeError("dense_witness: eps must be positive");

  auto certify = [&](DensityWitness w) {
    w.tau_f = farey_twist(w.slope);
    w.slope_error = abs(w.slope.value() - x);
    w.twist_error = abs(w.tau_f - y);
    if (w.slope_error > eps || w.twist_error > eps) {
      throw std::logic_error("dense_witness: certificate failed for " + w.slope.to_string());
    }
    return w;
  };

  // x itself may already qualify.
  if (0 < x && x < 1 && abs(farey_twist(Slope(x)) - y) <= eps) {
    Slope s(x);
    return certify({s, {}, {}, {}, farey_triple_of(s), {}});
  }

  Rational lo = std::max(Rational(0), Rational(x - eps));
  Rational hi = std::min(Rational(1), Rational(x + eps));
  FareyTriple anchor = farey_triple_in_interval(lo, hi);
  LRWord word = target_word(y, eps, max_letters);
  FareyTriple t = anchor;
  for (Turn turn : word) t = child(t, turn);
  return certify({t.center, {}, {}, {}, std::move(anchor), std::move(word)});
}

inline constexpr unsigned kMaxOrbitDepth = 24;

/// All images w(z0) over nonempty words of length <= depth, ascending.
inline std::vector<Rational> orbit_sample(const Rational& z0, unsigned depth) {
  if (depth > kMaxOrbitDepth) throw ResourceCapError("orbit_sample: depth above 24");
  if (z0 < 0 || z0 > 1) throw RangeError("orbit_sample: z0 must lie in [0,1]");
  std::set<Rational> seen;
  std::vector<Rational> level{z0};
  const MoebiusInt l = moebius_L();
  const MoebiusInt r = moebius_R();
  for (unsigned d = 0; d < depth; ++d) {
    std::vector<Rational> next;
    next.reserve(level.size() * 2);
    for (const Rational& z : level) {
      next.push_back(apply_map(l, z));
      next.push_back(apply_map(r, z));
    }
    for (const Rational& z : next) seen.insert(z);
    level = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

/// Largest gap between consecutive sorted values.
inline Rational max_gap(const std::vector<Rational>& sorted) {
  Rational best(0);
  for (std::size_t i = 1; i < sorted.size(); ++i) best = std::max(best, Rational(sorted[i] - sorted[i - 1]));
  return best;
}

}  // namespace markov_twist
