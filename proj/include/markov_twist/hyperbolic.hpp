#pragma once

/**
 * @file hyperbolic.hpp
 * @brief Lengths and twists of simple closed geodesics, modular torus and one-holed tori.
 *
 * On the modular torus the geodesic with Markov number n has trace 3n, so
 * its half-length is arccosh(3n/2). The absolute twist of the center curve
 * of an ordered triple (n1, n, n2) is available in three algebraically
 * equivalent forms (closed form, right-triangle form, log form); all three
 * are provided so they can be checked against one another.
 *
 * Precision is always an explicit argument. Internal evaluations carry guard
 * bits and round to the requested precision on return.
 */

#include "markov_twist/core.hpp"
#include "markov_twist/farey.hpp"
#include "markov_twist/hreal.hpp"
#include "markov_twist/markov.hpp"

#include <cstddef>
#include <utility>

namespace markov_twist {

inline constexpr long kGuardBits = 32;

inline long bit_length(const Integer& n) {
  return n == 0 ? 0 : static_cast<long>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

/// arccosh(trace / 2).
inline HReal half_length(const HReal& trace) {
  if (trace <= 2L) throw RangeError("half_length: trace must exceed 2, got " + trace.to_string());
  return acosh(trace / 2L);
}

/// arccosh(3n / 2) for a Markov number n, evaluated in the log domain:
/// ln(3n) + ln(1/2 + 1/2 sqrt(1 - 4/(9 n^2))).
inline HReal half_length(const Integer& markov, long precision_bits) {
  if (markov < 1) throw RangeError("half_length: Markov numbers are positive");
  const long w = precision_bits + kGuardBits;
  HReal three_n(Integer(3 * markov), w);
  HReal u = HReal(4L, w) / square(three_n);
  // ln(1/2 + 1/2 sqrt(1 - u)) = log1p(-u / (2 (1 + sqrt(1 - u))))
  HReal root = sqrt(1L - u);
  HReal correction = log1p(-(u / ((root + 1L) * 2L)));
  return (log(three_n) + correction).at_precision(precision_bits);
}

/// Lagrange number sqrt(9 - 4/n^2).
inline HReal lagrange_number(const Integer& markov, long precision_bits) {
  const long w = precision_bits + kGuardBits;
  HReal n(markov, w);
  return sqrt(9L - HReal(4L, w) / square(n)).at_precision(precision_bits);
}

/// Full length of the node's geodesic divided by its denominator.
inline HReal fock(const NodeLabels& node, long precision_bits) {
  HReal len = half_length(node.markov, precision_bits + kGuardBits) * 2L;
  return (len / HReal(node.slope.q(), precision_bits + kGuardBits)).at_precision(precision_bits);
}

inline HReal fock(const Slope& s, long precision_bits) {
  if (!s.in_unit_interval()) throw RangeError("fock: slope outside [0,1]: " + s.to_string());
  return fock(labels_at(s), precision_bits);
}

/// 2 arccosh((n1 / 2) sqrt(9 - 4/n^2)).
inline HReal twist_closed_form(const MarkovTriple& t, long precision_bits) {
  const long w = precision_bits + kGuardBits;
  HReal n(t.center, w);
  HReal arg = HReal(t.left, w) / 2L * sqrt(9L - HReal(4L, w) / square(n));
  return (acosh(arg) * 2L).at_precision(precision_bits);
}

/// 2 arccosh(tanh(l) cosh(l1)).
inline HReal twist_via_right_triangle(const HReal& l, const HReal& l1) {
  if (l <= 0L || l1 <= 0L) throw RangeError("twist_via_right_triangle: lengths must be positive");
  HReal arg = tanh(l) * cosh(l1);
  if (arg < 1L) throw RangeError("twist_via_right_triangle: tanh(l) cosh(l1) < 1");
  return acosh(arg) * 2L;
}

/// 2x with x = 1/2 ln((n1 n L + 3 n1 n - 2 n2) / (n1 n L - 3 n1 n + 2 n2)).
///
/// The denominator cancels to roughly 2 n2 out of n1 n L, so the evaluation
/// runs with enough extra bits to absorb that cancellation.
inline HReal twist_log_form(const MarkovTriple& t, long precision_bits) {
  const long w = precision_bits + kGuardBits + 2 * (bit_length(t.left) + bit_length(t.center)) + 64;
  HReal n(t.center, w);
  HReal L = sqrt(9L - HReal(4L, w) / square(n));
  HReal scale = HReal(Integer(t.left * t.center), w) * L;
  HReal offset(Integer(3 * t.left * t.center - 2 * t.right), w);
  HReal sin_theta = offset / scale;
  if (sin_theta <= 0L || sin_theta >= 1L) {
    throw RangeError("twist_log_form: sin(theta) outside (0,1) for this triple");
  }
  HReal x = log((scale + offset) / (scale - offset)) / 2L;
  return (x * 2L).at_precision(precision_bits);
}

/// Twist with a geodesic boundary: 2x where
/// cosh x = tanh(l) cosh(l1) / sqrt(tanh^2 l + cosh^2(beta/2) sech^2 l).
///
/// The radicand is evaluated as 1 + (cosh^2(beta/2) - 1) sech^2 l, which is the
/// same quantity and is exactly 1 when cosh(beta/2) is 1.
inline HReal twist_boundary(const HReal& l, const HReal& l1, const HReal& cosh_b2) {
  if (l <= 0L || l1 <= 0L) throw RangeError("twist_boundary: lengths must be positive");
  if (cosh_b2 < 1L) throw RangeError("twist_boundary: cosh(beta/2) must be at least 1");
  HReal radicand = (square(cosh_b2) - 1L) * square(sech(l)) + 1L;
  HReal arg = tanh(l) * cosh(l1) / sqrt(radicand);
  if (arg < 1L) throw RangeError("twist_boundary: cosh x < 1");
  return acosh(arg) * 2L;
}

enum class StructureKind { ModularCusped, General };

/// Hyperbolic structure on a one-holed torus, given by the traces at 0/1, 1/2, 1/1.
struct Structure {
  StructureKind kind;
  HReal trace_lower;   // slope 0/1
  HReal trace_root;    // slope 1/2
  HReal trace_upper;   // slope 1/1
  HReal cosh_half_boundary;

  long precision() const { return trace_root.precision(); }

  /// X^2 + Y^2 + Z^2 - XYZ - (2 - 2 cosh(beta/2)).
  HReal fricke_residual() const {
    const HReal& x = trace_lower;
    const HReal& y = trace_root;
    const HReal& z = trace_upper;
    return square(x) + square(y) + square(z) - x * y * z - (2L - cosh_half_boundary * 2L);
  }

  static Structure modular_cusped(long precision_bits) {
    return {StructureKind::ModularCusped, HReal(3L, precision_bits), HReal(15L, precision_bits),
            HReal(6L, precision_bits), HReal(1L, precision_bits)};
  }

  /// General structure from three traces; cosh(beta/2) = (XYZ + 2 - X^2 - Y^2 - Z^2) / 2.
  static Structure general(const HReal& x, const HReal& y, const HReal& z) {
    if (x <= 2L || y <= 2L || z <= 2L) throw RangeError("Structure: traces must exceed 2");
    HReal c = (x * y * z + 2L - square(x) - square(y) - square(z)) / 2L;
    HReal tol = pow2(20 - c.precision(), c.precision()) * max(HReal(1L, c.precision()), x * y * z);
    if (c < HReal(1L, c.precision()) - tol) {
      throw RangeError("Structure: traces give cosh(beta/2) < 1 (" + c.to_string() + ")");
    }
    if (c < 1L) c = HReal(1L, c.precision());
    return {StructureKind::General, x, y, z, c};
  }

  /// General structure with an explicit boundary, checked against the Fricke relation.
  static Structure general(const HReal& x, const HReal& y, const HReal& z, const HReal& cosh_b2) {
    Structure s = general(x, y, z);
    HReal tol = pow2(20 - s.precision(), s.precision()) * max(HReal(1L, s.precision()), x * y * z);
    if (abs(s.cosh_half_boundary - cosh_b2) > tol) {
      throw RangeError("Structure: traces inconsistent with cosh(beta/2) = " + cosh_b2.to_string());
    }
    s.cosh_half_boundary = cosh_b2;
    return s;
  }
};

/// Traces of a node and its left and right precedents.
struct TraceTriple {
  HReal left;
  HReal center;
  HReal right;
};

inline TraceTriple trace_child(const TraceTriple& t, Turn turn) {
  if (turn == Turn::L) return {t.left, t.left * t.center - t.right, t.center};
  return {t.center, t.center * t.right - t.left, t.right};
}

/// Ordered trace triple at a slope, by the trace form of the Vieta move.
inline TraceTriple trace_labels(const Structure& st, const Slope& s) {
  if (!s.in_unit_interval()) throw RangeError("trace_labels: slope outside [0,1]: " + s.to_string());
  const HReal& x = st.trace_lower;
  const HReal& y = st.trace_root;
  const HReal& z = st.trace_upper;
  auto check = [](const TraceTriple& t) {
    if (t.left <= 2L || t.center <= 2L || t.right <= 2L) {
      throw RangeError("trace_labels: trace <= 2 reached, invalid structure");
    }
    return t;
  };
  HReal at_infinity = x * z - y;
  if (s.p() == 0) return check({x * at_infinity - z, x, z});
  if (s.p() == s.q()) return check({x, z, at_infinity});
  TraceTriple t = check({x, y, z});
  FareyTriple f = root_triple();
  while (f.center != s) {
    Turn turn = s < f.center ? Turn::L : Turn::R;
    f = child(f, turn);
    t = check(trace_child(t, turn));
  }
  return t;
}

/// Absolute and relative twist of one curve.
struct TwistResult {
  HReal tw_abs;
  HReal length_full;
  HReal tau;
  HReal half_length;        // l
  HReal half_length_left;   // l1
  HReal half_length_right;  // l2
};

/// Relative twist on the modular torus from a node's Markov triple.
inline TwistResult relative_twist(const NodeLabels& node, long precision_bits) {
  const long w = precision_bits + kGuardBits;
  HReal l = half_length(node.triple.center, w);
  HReal l1 = half_length(node.triple.left, w);
  HReal l2 = half_length(node.triple.right, w);
  HReal tw = twist_closed_form(node.triple, w);
  HReal full = l * 2L;
  HReal tau = tw / full;
  return {tw.at_precision(precision_bits), full.at_precision(precision_bits), tau.at_precision(precision_bits),
          l.at_precision(precision_bits), l1.at_precision(precision_bits), l2.at_precision(precision_bits)};
}

/// Relative twist of the slope's curve for the given structure.
///
/// The twist uses the left Farey precedent as the neighbouring curve.
inline TwistResult relative_twist(const Slope& s, const Structure& st) {
  const long prec = st.precision();
  if (st.kind == StructureKind::ModularCusped) return relative_twist(labels_at(s), prec);
  TraceTriple t = trace_labels(st, s);
  HReal l = half_length(t.center);
  HReal l1 = half_length(t.left);
  HReal l2 = half_length(t.right);
  HReal tw = twist_boundary(l, l1, st.cosh_half_boundary);
  HReal full = l * 2L;
  HReal tau = tw / full;
  return {tw, full, tau, l, l1, l2};
}

/// Geometry of the lift of a node's geodesic to the upper half-plane.
struct LiftData {
  IntMatrix2 g;
  HReal endpoint_lower;  // (3 - L)/2 + k/n
  HReal endpoint_upper;  // (3 + L)/2 + k/n
  HReal foot_real;       // 3/2 + k/n
  HReal foot_imag;       // L/2
  HReal lagrange;
  HReal fixed_point_residual;  // max relative |g.e - e| / |e| over both endpoints
};

inline LiftData lift_data(const NodeLabels& node, long precision_bits) {
  IntMatrix2 g = deck_matrix(node);
  const Integer& n = node.fractional.get_den();
  if (g.determinant() != 1) throw std::logic_error("lift_data: det g != 1");
  if (g.trace() != 3 * n) throw std::logic_error("lift_data: trace g != 3n");

  // Applying g to its own fixed point cancels about 2 log2(n) bits.
  const long w = precision_bits + kGuardBits + 2 * bit_length(n) + 64;
  HReal L = sqrt(9L - HReal(4L, w) / square(HReal(n, w)));
  HReal center = HReal(Rational(3, 2), w) + HReal(node.fractional, w);
  HReal lower = center - L / 2L;
  HReal upper = center + L / 2L;
  auto residual = [&](const HReal& e) {
    HReal image = (HReal(g.a, w) * e + HReal(g.b, w)) / (HReal(g.c, w) * e + HReal(g.d, w));
    return abs(image - e) / abs(e);
  };
  HReal res = max(residual(lower), residual(upper));
  return {std::move(g),
          lower.at_precision(precision_bits),
          upper.at_precision(precision_bits),
          center.at_precision(precision_bits),
          (L / 2L).at_precision(precision_bits),
          L.at_precision(precision_bits),
          res.at_precision(precision_bits)};
}

/// |x - l1| where cosh x = tanh(l) cosh(l1), evaluated without cancellation.
///
/// With c = cosh l1 = 3 n1 / 2 and u = 4 / (9 n^2), cosh x = c (1 - delta) for
/// delta = u / (1 + sqrt(1 - u)); the difference of the two arccosh values is
/// rewritten as a log1p of a quantity of size about delta.
inline HReal half_twist_defect(const MarkovTriple& t, long precision_bits) {
  const long w = precision_bits + kGuardBits;
  HReal c = HReal(Integer(3 * t.left), w) / 2L;
  HReal u = HReal(4L, w) / square(HReal(Integer(3 * t.center), w));
  HReal delta = u / (sqrt(1L - u) + 1L);
  HReal h = c * delta;
  HReal s0 = sqrt(square(c) - 1L);
  HReal s1 = sqrt(square(c - h) - 1L);
  HReal inner = h * (1L + (c * 2L - h) / (s1 + s0));
  return abs(log1p(-(inner / (c + s0)))).at_precision(precision_bits);
}

/// e^{2l} for l = arccosh(3n/2).
inline HReal exp_twice_half_length(const Integer& markov, long precision_bits) {
  const long w = precision_bits + kGuardBits;
  HReal half_trace = HReal(Integer(3 * markov), w) / 2L;
  HReal e = half_trace + sqrt(square(half_trace) - 1L);
  return square(e).at_precision(precision_bits);
}

/// Exact test of l < l1 + l2 for the half-lengths of an ordered triple.
///
/// With cosh l = 3n/2 this is 6n - 9 n1 n2 < sqrt((9 n1^2 - 4)(9 n2^2 - 4)),
/// decided in integers. The margin shrinks like 1/n^2 along the spines, far
/// below any fixed working precision.
inline bool half_length_triangle_strict(const MarkovTriple& t) {
  Integer lhs = 6 * t.center - 9 * t.left * t.right;
  if (lhs < 0) return true;
  Integer rhs = (9 * t.left * t.left - 4) * (9 * t.right * t.right - 4);
  return lhs * lhs < rhs;
}

/// l1 + l2 - l, evaluated with enough bits to resolve the spine margins.
inline HReal half_length_triangle_margin(const MarkovTriple& t, long precision_bits) {
  const long w = precision_bits + kGuardBits + 4 * bit_length(t.center);
  HReal m = half_length(t.left, w) + half_length(t.right, w) - half_length(t.center, w);
  return m.at_precision(precision_bits);
}

/// Normalized residuals of the two twist estimates at one node.
struct GapResiduals {
  HReal twist_gap;  // e^{2l} |x - l1|, x = tw / 2
  HReal tau_gap;    // q^2 |tau_X - tau_F|
};

inline GapResiduals gap_scan(const NodeLabels& node, long precision_bits) {
  if (node.is_endpoint()) throw RangeError("gap_scan: interior nodes only");
  const long w = precision_bits + kGuardBits;
  HReal gap = half_twist_defect(node.triple, w) * exp_twice_half_length(node.markov, w);
  TwistResult tr = relative_twist(node, w);
  HReal tau_f(farey_twist(node.slope), w);
  HReal q(node.slope.q(), w);
  HReal tau_gap = square(q) * abs(tr.tau - tau_f);
  return {gap.at_precision(precision_bits), tau_gap.at_precision(precision_bits)};
}

}  // namespace markov_twist
