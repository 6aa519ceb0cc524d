#pragma once

/**
 * @file verify.hpp
 * @brief Invariant suite over every node up to a denominator bound.
 *
 * Each invariant is scanned independently and reports its node count and,
 * where meaningful, the worst residual seen. Failures never throw; they are
 * collected so a caller can print a full report.
 */

#include "markov_twist/density.hpp"
#include "markov_twist/enumerate.hpp"
#include "markov_twist/hyperbolic.hpp"
#include "markov_twist/markov.hpp"
#include "markov_twist/scan.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace markov_twist {

struct InvariantResult {
  std::string name;
  bool passed = true;
  std::size_t checked = 0;
  std::string worst;               // description of the worst residual, if any
  std::optional<Slope> first_failure;

  void fail(const Slope& s) {
    if (passed) first_failure = s;
    passed = false;
  }
};

struct VerifyReport {
  unsigned long q_max;
  long precision_bits;
  std::vector<InvariantResult> invariants;
  std::string fock_direction;  // "increasing", "decreasing" or "" when undetermined

  bool all_passed() const {
    return std::all_of(invariants.begin(), invariants.end(), [](const auto& r) { return r.passed; });
  }
};

/// Solutions (a, c) with 1 <= c <= c_max of n a^2 - (3n + 2k) a c + C c^2 = -n
/// inside the window k/n <= a/c <= 3 + k/n, by exhaustive search over c.
inline std::set<std::pair<Integer, Integer>> brute_force_form_solutions(const NodeLabels& node, long c_max) {
  MarkovForm f = markov_form(node);
  const Integer& k = node.fractional.get_num();
  const Integer& n = node.fractional.get_den();
  std::set<std::pair<Integer, Integer>> out;
  for (long ci = 1; ci <= c_max; ++ci) {
    Integer c(ci);
    // A a^2 + B c a + (C c^2 + n) = 0 in a.
    Integer disc = f.B * f.B * c * c - 4 * f.A * (f.C * c * c + n);
    if (disc < 0) continue;
    Integer root = sqrt(disc);
    if (root * root != disc) continue;
    for (int sign : {-1, 1}) {
      Integer num = -f.B * c + sign * root;
      if (num % (2 * f.A) != 0) continue;
      Integer a = num / (2 * f.A);
      if (f.evaluate(a, c) != -n) continue;
      if (a * n >= k * c && a * n <= (3 * n + k) * c) out.insert({a, c});
    }
  }
  return out;
}

namespace detail {

inline std::string describe(const HReal& v, const Slope& s) { return v.to_string(12) + " at " + s.to_string(); }

}  // namespace detail

/// Runs every invariant on the nodes with q <= q_max. q_max = 0 gives empty scans.
inline VerifyReport verify_all(unsigned long q_max, long precision_bits, const EnumerationOptions& options = {}) {
  if (precision_bits < kMinPrecisionBits) throw RangeError("verify: precision below 64 bits");
  VerifyReport report{q_max, precision_bits, {}, ""};
  auto& inv = report.invariants;
  inv.reserve(16);  // references below must stay valid
  auto add = [&](std::string name) -> InvariantResult& {
    inv.push_back(InvariantResult{std::move(name), true, 0, {}, {}});
    return inv.back();
  };
  InvariantResult& count = add("node count = 1 + sum phi(q)");
  InvariantResult& order = add("ascending slope order");
  InvariantResult& labels = add("label identities (Markov equation, k^2 = -1 mod n, lambda-lengths)");
  InvariantResult& twist_f = add("Farey twist child relations");
  InvariantResult& semigroup = add("descent word maps tau_F(1/2) to tau_F (q <= 200)");
  InvariantResult& weier = add("Weierstrass sequences = brute force, c <= 10^4 (q <= 20)");
  InvariantResult& forms = add("closed / right-triangle / log twist agree (q <= 100)");
  InvariantResult& positive = add("tw >= arccosh(3/2) and 0 < tau_X < 1");
  InvariantResult& lift = add("lift: det g = 1, tr g = 3n, fixed-point residual");
  InvariantResult& triangle = add("strict triangle inequality of half-lengths");
  InvariantResult& fock_mono = add("Fock function strictly monotone");
  InvariantResult& tau_gap = add("q^2 |tau_X - tau_F| finite");
  InvariantResult& twist_gap = add("e^{2l} |x - l1| finite");

  if (q_max == 0) return report;

  const long prec = precision_bits;
  const HReal form_tol = pow2(40 - prec, prec);
  const HReal lift_tol = pow2(30 - prec, prec);
  const HReal min_twist = half_length(Integer(1), prec) - pow2(20 - prec, prec);

  // Count oracle from a totient sieve, independent of the tree.
  std::size_t expected = 1;
  {
    std::vector<unsigned long> phi(q_max + 1);
    for (unsigned long i = 0; i <= q_max; ++i) phi[i] = i;
    for (unsigned long i = 2; i <= q_max; ++i) {
      if (phi[i] != i) continue;
      for (unsigned long j = i; j <= q_max; j += i) phi[j] -= phi[j] / i;
    }
    for (unsigned long q = 1; q <= q_max; ++q) expected += phi[q];
  }

  std::optional<Slope> prev_slope;
  std::optional<HReal> prev_fock;
  int direction = 0;
  std::optional<ScanMax> worst_tau, worst_twist;
  HReal worst_form(0L, prec), worst_lift(0L, prec);
  std::optional<Slope> worst_form_at, worst_lift_at;

  auto visit = [&](const NodeLabels& n) {
    const Slope& s = n.slope;
    ++count.checked;

    ++order.checked;
    if (prev_slope && !(*prev_slope < s)) order.fail(s);
    prev_slope = s;

    ++labels.checked;
    if (!verify_node(n).all_passed()) labels.fail(s);

    ++fock_mono.checked;
    HReal psi = fock(n, prec);
    if (prev_fock) {
      int d = psi > *prev_fock ? 1 : (psi < *prev_fock ? -1 : 0);
      if (d == 0 || (direction != 0 && d != direction)) fock_mono.fail(s);
      if (direction == 0) direction = d;
    }
    prev_fock = psi;

    ++lift.checked;
    LiftData ld = lift_data(n, prec);
    if (ld.g.determinant() != 1 || ld.g.trace() != 3 * n.markov || !(ld.fixed_point_residual < lift_tol)) {
      lift.fail(s);
    }
    if (!worst_lift_at || ld.fixed_point_residual > worst_lift) {
      worst_lift = ld.fixed_point_residual;
      worst_lift_at = s;
    }

    if (n.is_endpoint()) return;

    ++twist_f.checked;
    {
      Rational z = farey_twist(s);
      auto [lc, rc] = immediate_successors(s);
      if (lc.q() <= q_max && farey_twist(lc) != z / (z + 1)) twist_f.fail(s);
      if (rc.q() <= q_max && farey_twist(rc) != 1 / (2 - z)) twist_f.fail(s);
    }

    if (s.q() <= 200) {
      ++semigroup.checked;
      LRWord w = path_from_root(s);
      if (apply_map(word_matrix(w), Rational(1, 2)) != farey_twist(s)) semigroup.fail(s);
    }

    ++triangle.checked;
    if (!half_length_triangle_strict(n.triple)) triangle.fail(s);

    TwistResult tr = relative_twist(n, prec);
    ++positive.checked;
    if (tr.tw_abs < min_twist || !(tr.tau > 0L) || !(tr.tau < 1L)) positive.fail(s);

    if (s.q() <= 100) {
      ++forms.checked;
      HReal closed = twist_closed_form(n.triple, prec);
      HReal right =
          twist_via_right_triangle(half_length(n.triple.center, prec + kGuardBits),
                                   half_length(n.triple.left, prec + kGuardBits))
              .at_precision(prec);
      HReal logf = twist_log_form(n.triple, prec);
      HReal err = max(abs(closed - right), abs(closed - logf));
      if (!(err < form_tol)) forms.fail(s);
      if (!worst_form_at || err > worst_form) {
        worst_form = err;
        worst_form_at = s;
      }
    }

    GapResiduals g = gap_scan(n, prec);
    ++tau_gap.checked;
    ++twist_gap.checked;
    if (!g.tau_gap.is_finite()) tau_gap.fail(s);
    if (!g.twist_gap.is_finite()) twist_gap.fail(s);
    if (!worst_tau) worst_tau = ScanMax{g.tau_gap, s};
    else worst_tau->offer(g.tau_gap, s);
    if (!worst_twist) worst_twist = ScanMax{g.twist_gap, s};
    else worst_twist->offer(g.twist_gap, s);
  };
  enumerate_labels(q_max, options, visit);

  if (count.checked != expected) count.fail(Slope(0, 1));
  count.worst = std::to_string(count.checked) + " nodes, expected " + std::to_string(expected);

  // Weierstrass brute force on the small nodes, endpoints included.
  const unsigned long w_max = std::min<unsigned long>(q_max, 20);
  enumerate_labels(w_max, [&](const NodeLabels& n) {
    ++weier.checked;
    const long c_max = 10000;
    WeierstrassSequences w = weierstrass_solutions_bounded(n, Integer(c_max));
    std::set<std::pair<Integer, Integer>> got;
    for (const auto* seq : {&w.ascending, &w.descending}) {
      for (const FormSolution& f : *seq) got.insert({f.a, f.c});
    }
    if (got.size() != w.ascending.size() + w.descending.size() || got != brute_force_form_solutions(n, c_max)) {
      weier.fail(n.slope);
    }
  });

  if (worst_form_at) forms.worst = detail::describe(worst_form, *worst_form_at);
  if (worst_lift_at) lift.worst = detail::describe(worst_lift, *worst_lift_at);
  if (worst_tau) tau_gap.worst = detail::describe(worst_tau->value, *worst_tau->at);
  if (worst_twist) twist_gap.worst = detail::describe(worst_twist->value, *worst_twist->at);
  report.fock_direction = direction > 0 ? "increasing" : (direction < 0 ? "decreasing" : "");
  fock_mono.worst = report.fock_direction.empty() ? "direction undetermined" : "direction: " + report.fock_direction;
  return report;
}

}  // namespace markov_twist
