#pragma once

/**
 * @file cli.hpp
 * @brief Command implementations behind the markov-twist executable.
 *
 * Every command writes to caller-supplied streams and returns an exit code,
 * so the same code paths run under the executable and under the tests.
 *
 * Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 range error,
 * 4 resource cap, 5 I/O or other runtime failure.
 */

#include "markov_twist/core.hpp"
#include "markov_twist/density.hpp"
#include "markov_twist/enumerate.hpp"
#include "markov_twist/farey.hpp"
#include "markov_twist/hyperbolic.hpp"
#include "markov_twist/markov.hpp"
#include "markov_twist/scan.hpp"
#include "markov_twist/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace markov_twist::cli {

enum ExitCode : int { kOk = 0, kVerifyFailed = 1, kParse = 2, kRange = 3, kResourceCap = 4, kFailure = 5 };

inline constexpr long kFigurePrecision = 128;
inline constexpr long kVerifyPrecision = 256;
inline constexpr int kDecimalDigits = 17;

// ---------------------------------------------------------------------------
// CSV rows

struct CsvRow {
  Integer p;
  Integer q;
  Integer markov;
  Integer k;
  Integer tau_f_num;
  Integer tau_f_den;
  std::string tau_f;  // 17 significant digits
  std::string tau_x;  // 17 significant digits
  bool adj0;
  bool adj1;
  bool adjhalf;
};

inline constexpr const char* kCsvHeader = "p,q,markov,k,tau_f_num,tau_f_den,tau_f,tau_x,adj0,adj1,adjhalf";

/// First line of every CSV: how the two endpoints are treated.
inline constexpr const char* kCsvConvention =
    "# rows: every slope p/q in [0,1] with q <= qmax, both endpoints 0/1 and 1/1 included "
    "(count = 1 + sum phi(q)); endpoint tau_f is set to 1/2 and endpoint tau_x is the twist "
    "of the virtual-neighbour triple, which equals 1/2";

/// tau_F with the endpoint convention tau_F(0/1) = tau_F(1/1) = 1/2.
inline Rational tau_f_with_endpoints(const Slope& s) {
  return s.is_interior() ? farey_twist(s) : Rational(1, 2);
}

inline std::string decimal(const Rational& r, int digits = kDecimalDigits) {
  return HReal(r, 128).to_string(digits);
}

inline CsvRow make_row(const NodeLabels& n, long precision_bits) {
  Rational tf = tau_f_with_endpoints(n.slope);
  TwistResult tr = relative_twist(n, precision_bits);
  const Integer& p = n.slope.p();
  const Integer& q = n.slope.q();
  return {p,
          q,
          n.markov,
          n.fractional.get_num(),
          tf.get_num(),
          tf.get_den(),
          decimal(tf),
          tr.tau.to_string(kDecimalDigits),
          is_farey_neighbor(n.slope, Slope(0, 1)),
          is_farey_neighbor(n.slope, Slope(1, 1)),
          is_farey_neighbor(n.slope, Slope(1, 2))};
}

inline void write_row(std::ostream& os, const CsvRow& r) {
  os << r.p << ',' << r.q << ',' << r.markov << ',' << r.k << ',' << r.tau_f_num << ',' << r.tau_f_den << ','
     << r.tau_f << ',' << r.tau_x << ',' << (r.adj0 ? "true" : "false") << ',' << (r.adj1 ? "true" : "false") << ','
     << (r.adjhalf ? "true" : "false") << '\n';
}

/// Streams the CSV for q <= q_max; returns the number of data rows.
///
/// Workers build the text of whole subtrees; the writer appends the chunks in
/// slope order, so the bytes do not depend on the thread count.
inline std::size_t write_enumeration(std::ostream& os, unsigned long q_max, long precision_bits, unsigned threads) {
  if (q_max < 1) throw RangeError("enumerate: --qmax must be at least 1");
  os << kCsvConvention << '\n' << kCsvHeader << '\n';
  std::vector<WalkTask> tasks = decompose_tree(q_max, EnumerationOptions{}.split_depth);
  struct Chunk {
    std::string text;
    std::size_t rows = 0;
  };
  auto produce = [&](const WalkTask& task) {
    Chunk c;
    std::ostringstream buf;
    auto emit = [&](const TreeState& st) {
      write_row(buf, make_row(st.labels(), precision_bits));
      ++c.rows;
    };
    run_task(task, q_max, emit);
    c.text = std::move(buf).str();
    return c;
  };
  std::size_t rows = 0;
  for_each_task_ordered(tasks, threads, produce, [&](Chunk&& c) {
    os << c.text;
    rows += c.rows;
  });
  if (!os) throw std::runtime_error("enumerate: write failed");
  return rows;
}

// ---------------------------------------------------------------------------
// Figures

struct FigureStyle {
  double size_base = 2.2;        // px
  double size_floor = 0.25;      // px
  double decay_rate = 1.0 / 120; // per unit q, radius
  double opacity_base = 1.0;
  double opacity_floor = 0.05;
  double opacity_decay = 1.0 / 400;
  int canvas = 1200;
  int margin = 40;

  double radius(double q) const { return std::max(size_floor, size_base * std::exp(-decay_rate * q)); }
  double opacity(double q) const { return std::max(opacity_floor, opacity_base * std::exp(-opacity_decay * q)); }
};

enum class Which { Geom, Farey };

inline Which parse_which(const std::string& s) {
  if (s == "geom") return Which::Geom;
  if (s == "farey") return Which::Farey;
  throw ParseError("--which must be geom or farey, got '" + s + "'");
}

/// Colour class of a point: Farey-adjacent to 0/1, 1/1, 1/2, or none.
inline const char* point_colour(const Slope& s) {
  if (is_farey_neighbor(s, Slope(0, 1))) return "#cc2222";
  if (is_farey_neighbor(s, Slope(1, 1))) return "#2222cc";
  if (is_farey_neighbor(s, Slope(1, 2))) return "#7a22aa";
  return "#777777";
}

struct FigurePoint {
  unsigned long q;
  double x;
  double y;
  const char* colour;
};

struct FigureCounts {
  std::size_t points = 0;
};

/// Scatter CSV (p,q,x,y,y_num,y_den,colour) and SVG for the graph of tau_X or tau_F.
inline FigureCounts write_figure(std::ostream* csv, std::ostream* svg, Which which, unsigned long q_max,
                                 long precision_bits, unsigned threads, const FigureStyle& style) {
  if (q_max < 1) throw RangeError("figure: --qmax must be at least 1");
  std::vector<FigurePoint> points;
  std::vector<WalkTask> tasks = decompose_tree(q_max, EnumerationOptions{}.split_depth);
  struct Chunk {
    std::vector<FigurePoint> pts;
    std::string text;
  };
  auto produce = [&](const WalkTask& task) {
    Chunk c;
    std::ostringstream buf;
    auto emit = [&](const TreeState& st) {
      NodeLabels n = st.labels();
      double x = n.slope.value().get_d();
      std::string y_text, y_num, y_den;
      double y;
      if (which == Which::Farey) {
        Rational tf = tau_f_with_endpoints(n.slope);
        y = tf.get_d();
        y_text = decimal(tf);
        y_num = tf.get_num().get_str();
        y_den = tf.get_den().get_str();
      } else {
        HReal tau = relative_twist(n, precision_bits).tau;
        y = tau.to_double();
        y_text = tau.to_string(kDecimalDigits);
      }
      if (csv) {
        buf << n.slope.p() << ',' << n.slope.q() << ',' << decimal(n.slope.value()) << ',' << y_text << ','
            << y_num << ',' << y_den << ',' << point_colour(n.slope) << '\n';
      }
      c.pts.push_back({n.slope.q().get_ui(), x, y, point_colour(n.slope)});
    };
    run_task(task, q_max, emit);
    c.text = std::move(buf).str();
    return c;
  };
  if (csv) *csv << "p,q,x,y,y_num,y_den,colour\n";
  for_each_task_ordered(tasks, threads, produce, [&](Chunk&& c) {
    if (csv) *csv << c.text;
    for (auto& p : c.pts) points.push_back(std::move(p));
  });
  FigureCounts counts{points.size()};
  if (csv && !*csv) throw std::runtime_error("figure: CSV write failed");
  if (!svg) return counts;

  // Small denominators are drawn last so they sit on top.
  std::stable_sort(points.begin(), points.end(),
                   [](const FigurePoint& a, const FigurePoint& b) { return a.q > b.q; });
  const double side = style.canvas - 2.0 * style.margin;
  auto px = [&](double x) { return style.margin + x * side; };
  auto py = [&](double y) { return style.margin + (1.0 - y) * side; };
  char line[256];
  std::ostream& out = *svg;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << style.canvas << "\" height=\"" << style.canvas
      << "\" viewBox=\"0 0 " << style.canvas << ' ' << style.canvas << "\">\n";
  out << "<title>" << (which == Which::Farey ? "Farey twist" : "geometric relative twist") << ", q &lt;= " << q_max
      << "</title>\n";
  out << "<rect x=\"0\" y=\"0\" width=\"" << style.canvas << "\" height=\"" << style.canvas
      << "\" fill=\"#ffffff\"/>\n";
  std::snprintf(line, sizeof line,
                "<rect x=\"%d\" y=\"%d\" width=\"%.1f\" height=\"%.1f\" fill=\"none\" stroke=\"#999999\"/>\n",
                style.margin, style.margin, side, side);
  out << line;
  out << "<g class=\"points\" stroke=\"none\">\n";
  for (const FigurePoint& p : points) {
    std::snprintf(line, sizeof line,
                  "<circle class=\"pt\" cx=\"%.3f\" cy=\"%.3f\" r=\"%.3f\" fill=\"%s\" fill-opacity=\"%.4f\"/>\n",
                  px(p.x), py(p.y), style.radius(p.q), p.colour, style.opacity(p.q));
    out << line;
  }
  out << "</g>\n<g class=\"marks\" fill=\"none\" stroke=\"#000000\" stroke-width=\"1.5\">\n";
  for (const FigurePoint& p : points) {
    if (p.q > 2) continue;
    std::snprintf(line, sizeof line, "<circle class=\"mark\" cx=\"%.3f\" cy=\"%.3f\" r=\"7\"/>\n", px(p.x), py(p.y));
    out << line;
  }
  out << "</g>\n</svg>\n";
  if (!out) throw std::runtime_error("figure: SVG write failed");
  return counts;
}

// ---------------------------------------------------------------------------
// labels

inline void print_labels(std::ostream& os, const Slope& s, long precision_bits) {
  if (!s.in_unit_interval()) throw RangeError("labels: slope must lie in [0,1], got " + s.to_string());
  NodeLabels n = labels_at(s);
  const int digits = std::max(17, static_cast<int>(precision_bits * 0.30103) - 2);
  TwistResult tr = relative_twist(n, precision_bits);
  LiftData lift = lift_data(n, precision_bits);
  Rational tf = tau_f_with_endpoints(s);
  os << "slope (Farey label)      " << s.to_string() << '\n';
  os << "markov                   " << n.markov << '\n';
  os << "fractional markov        " << to_string(n.fractional) << '\n';
  os << "markov triple            (" << n.triple.left << ", " << n.triple.center << ", " << n.triple.right << ")\n";
  os << "fractional triple        (" << to_string(n.fractional_triple.left) << ", "
     << to_string(n.fractional_triple.center) << ", " << to_string(n.fractional_triple.right) << ")\n";
  os << "farey triple             (" << n.farey.left.to_string() << ", " << n.farey.center.to_string() << ", "
     << n.farey.right.to_string() << ")\n";
  os << "lagrange number          " << lagrange_number(n.markov, precision_bits).to_string(digits) << '\n';
  os << "half-length              " << tr.half_length.to_string(digits) << '\n';
  os << "twist tw                 " << tr.tw_abs.to_string(digits) << '\n';
  os << "tau_F                    " << to_string(tf) << (s.is_interior() ? "" : "  (endpoint convention)") << '\n';
  os << "tau_X                    " << tr.tau.to_string(digits) << '\n';
  os << "lift endpoints           " << lift.endpoint_lower.to_string(digits) << ", "
     << lift.endpoint_upper.to_string(digits) << '\n';
  os << "deck matrix g            [[" << lift.g.a << ", " << lift.g.b << "], [" << lift.g.c << ", " << lift.g.d
     << "]]\n";
}

// ---------------------------------------------------------------------------
// verify

inline int print_verify(std::ostream& os, unsigned long q_max, long precision_bits, unsigned threads) {
  VerifyReport r = verify_all(q_max, precision_bits, EnumerationOptions{threads, 8});
  os << "verify: q <= " << q_max << ", " << precision_bits << " bits\n";
  for (const InvariantResult& inv : r.invariants) {
    os << (inv.passed ? "PASS  " : "FAIL  ") << inv.name << "  [" << inv.checked << " checked";
    if (!inv.worst.empty()) os << "; " << inv.worst;
    if (inv.first_failure) os << "; first failure at " << inv.first_failure->to_string();
    os << "]\n";
  }
  os << (r.all_passed() ? "all invariants passed\n" : "some invariants FAILED\n");
  return r.all_passed() ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------------------
// bound-scan

inline BoundScan print_bound_scan(std::ostream& os, unsigned long q_max, long precision_bits, unsigned threads) {
  std::vector<unsigned long> scales = default_scales(q_max);
  if (scales.empty()) throw RangeError("bound-scan: --qmax must be at least 2");
  BoundScan b = bound_scan(scales, precision_bits, EnumerationOptions{threads, 8});
  auto cell = [](const ScanMax& m) {
    return m.at ? m.value.to_string(10) + " at " + m.at->to_string() : std::string("-");
  };
  os << "bound-scan: " << precision_bits << " bits\n";
  for (const ScaleReport& s : b.scales) {
    os << "Q = " << s.scale << "  (" << s.band_nodes << " nodes with Q/2 < q <= Q)\n";
    os << "  max q^2 |tau_X - tau_F|, band     " << cell(s.tau_band) << '\n';
    os << "  max q^2 |tau_X - tau_F|, q <= Q   " << cell(s.tau_upto) << '\n';
    os << "  max e^{2l} |x - l1|, band         " << cell(s.twist_band) << '\n';
    os << "  max e^{2l} |x - l1|, q <= Q       " << cell(s.twist_upto) << '\n';
  }
  os << "spread of band maxima (tau)      " << b.tau_band_spread().to_string(6) << '\n';
  os << "spread of maxima (half-twist)    " << b.twist_upto_spread().to_string(6) << '\n';
  os << "C_est                            " << b.c_est().to_string(kDecimalDigits) << '\n';
  return b;
}

// ---------------------------------------------------------------------------
// witness

struct WitnessReport {
  DensityWitness witness;
  HReal tau_x;
  HReal geom_error;  // |tau_X - y|
  HReal c_est;
  HReal bound;       // eps + C_est / q'^2
  bool within_bound;
};

inline WitnessReport make_witness(const Rational& x, const Rational& y, const Rational& eps, const HReal& c_est,
                                  long precision_bits) {
  DensityWitness w = dense_witness(x, y, eps);
  TwistResult tr = relative_twist(labels_at(w.slope), precision_bits);
  HReal err = abs(tr.tau - HReal(y, precision_bits));
  HReal q(w.slope.q(), precision_bits);
  HReal bound = HReal(eps, precision_bits) + c_est / square(q);
  bool ok = err <= bound;
  return {std::move(w), tr.tau, std::move(err), c_est, std::move(bound), ok};
}

inline void print_witness(std::ostream& os, const WitnessReport& r) {
  const DensityWitness& w = r.witness;
  os << "witness slope            " << w.slope.to_string() << '\n';
  os << "anchor triple            (" << w.anchor.left.to_string() << ", " << w.anchor.center.to_string() << ", "
     << w.anchor.right.to_string() << ")\n";
  os << "descent word             " << (w.word.empty() ? "(empty)" : to_string(w.word)) << '\n';
  os << "tau_F                    " << to_string(w.tau_f) << '\n';
  os << "|p'/q' - x|              " << to_string(w.slope_error) << "  (exact)\n";
  os << "|tau_F - y|              " << to_string(w.twist_error) << "  (exact)\n";
  os << "tau_X                    " << r.tau_x.to_string(30) << '\n';
  os << "|tau_X - y|              " << r.geom_error.to_string(30) << '\n';
  os << "C_est                    " << r.c_est.to_string(kDecimalDigits) << '\n';
  os << "eps + C_est / q'^2       " << r.bound.to_string(30) << (r.within_bound ? "  (holds)" : "  (VIOLATED)")
     << '\n';
}

}  // namespace markov_twist::cli
