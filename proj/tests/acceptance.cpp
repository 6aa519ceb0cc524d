// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
//
// Tolerances are fixed here and nowhere else.

#include "markov_twist/cli.hpp"
#include "markov_twist/density.hpp"
#include "markov_twist/hyperbolic.hpp"
#include "markov_twist/markov.hpp"
#include "markov_twist/scan.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <streambuf>
#include <string>
#include <thread>
#include <vector>

using namespace markov_twist;

namespace {

constexpr long kPrec = 256;
constexpr std::size_t kCount2000 = 1'216'589;
const char* const kFormTol = "1e-30";       // criterion 5 and 10
const char* const kTwistFloorSlack = "1e-20";  // criterion 8
const char* const kNearBoundary = "1e-16";    // criterion 10
const char* const kNearTol = "1e-12";         // criterion 10
constexpr double kMaxSpread = 0.05;           // criteria 6 and 7

HReal dec(const char* s, long prec = kPrec) { return HReal(std::string(s), prec); }

unsigned threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Discards bytes, counting them and the newlines among them.
class CountingBuf : public std::streambuf {
 public:
  std::size_t bytes = 0;
  std::size_t lines = 0;

 protected:
  int_type overflow(int_type c) override {
    if (c != traits_type::eof()) {
      ++bytes;
      if (c == '\n') ++lines;
    }
    return traits_type::not_eof(c);
  }
  std::streamsize xsputn(const char* s, std::streamsize n) override {
    bytes += static_cast<std::size_t>(n);
    for (std::streamsize i = 0; i < n; ++i) lines += s[i] == '\n';
    return n;
  }
};

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void run(int id, const std::string& title, const std::function<Outcome()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!o.pass) ++failures;
  char time[32];
  std::snprintf(time, sizeof time, "%.1fs", secs);
  std::cout << (o.pass ? "PASS" : "FAIL") << "  " << id << ". " << title << "  [" << o.detail << ", " << time
            << "]" << std::endl;
}

std::vector<NodeLabels> all_labels(unsigned long q_max) {
  std::vector<NodeLabels> out;
  enumerate_labels(q_max, [&](const NodeLabels& n) { out.push_back(n); });
  return out;
}

}  // namespace

int main() {
  std::optional<HReal> c_est;

  run(1, "enumeration count at q <= 2000", [] {
    CountingBuf buf;
    std::ostream os(&buf);
    std::size_t rows = cli::write_enumeration(os, 2000, cli::kFigurePrecision, threads());
    const std::size_t oracle = oracle::farey_count(2000);
    bool ok = rows == kCount2000 && oracle == kCount2000 && buf.lines == rows + 2;
    return Outcome{ok, std::to_string(rows) + " rows, sieve " + std::to_string(oracle) + ", " +
                           std::to_string(buf.bytes) + " bytes streamed"};
  });

  run(2, "label fixtures", [] {
    struct Fixture {
      long p, q, markov, k;
    };
    const Fixture fx[] = {{0, 1, 1, 0}, {1, 1, 2, 1}, {1, 2, 5, 2}, {1, 3, 13, 5},
                          {2, 3, 29, 12}, {2, 5, 194, 75}, {3, 5, 433, 179}};
    int bad = 0;
    for (const Fixture& f : fx) {
      NodeLabels n = labels_at(Slope(f.p, f.q));
      Rational want(f.k, f.markov);
      if (n.markov != f.markov || n.fractional != want) ++bad;
    }
    return Outcome{bad == 0, std::to_string(std::size(fx) - bad) + "/7 slopes match"};
  });

  run(3, "residue law k^2 = -1 mod n, q <= 300", [] {
    std::size_t nodes = 0, bad = 0;
    enumerate_labels(300, [&](const NodeLabels& n) {
      ++nodes;
      const Integer& k = n.fractional.get_num();
      const Integer& m = n.fractional.get_den();
      if (m != n.markov || (k * k + 1) % m != 0) ++bad;
    });
    return Outcome{bad == 0 && nodes == oracle::farey_count(300), std::to_string(nodes) + " nodes, " +
                                                                      std::to_string(bad) + " violations"};
  });

  run(4, "Vieta moves preserve the Markov equation, q <= 300", [] {
    std::size_t moves = 0, bad = 0;
    enumerate_labels(300, [&](const NodeLabels& n) {
      if (!n.triple.satisfies_markov_equation()) ++bad;
      if (n.is_endpoint()) return;
      for (Turn t : {Turn::L, Turn::R}) {
        ++moves;
        MarkovTriple c = vieta_child(n.triple, t);
        if (!c.satisfies_markov_equation()) ++bad;
      }
    });
    return Outcome{bad == 0, std::to_string(moves) + " moves, " + std::to_string(bad) + " violations"};
  });

  run(5, "closed, right-triangle and log twist forms agree within 1e-30, q <= 100", [] {
    const HReal tol = dec(kFormTol);
    HReal worst(0L, kPrec);
    std::size_t nodes = 0;
    bool ok = true;
    enumerate_labels(100, [&](const NodeLabels& n) {
      if (n.is_endpoint()) return;
      ++nodes;
      HReal closed = twist_closed_form(n.triple, kPrec);
      HReal right = twist_via_right_triangle(half_length(n.triple.center, kPrec + kGuardBits),
                                             half_length(n.triple.left, kPrec + kGuardBits))
                        .at_precision(kPrec);
      HReal logf = twist_log_form(n.triple, kPrec);
      HReal err = max(abs(closed - right), abs(closed - logf));
      worst = max(worst, err);
      if (!(err < tol)) ok = false;
    });
    return Outcome{ok, std::to_string(nodes) + " nodes, worst " + worst.to_string(6)};
  });

  run(6, "q^2 |tau_X - tau_F| band maxima at Q = 125, 250, 500 vary by < 5%", [&] {
    BoundScan b = bound_scan({125, 250, 500}, kPrec, EnumerationOptions{threads(), 8});
    std::ostringstream d;
    bool ok = true;
    for (const ScaleReport& r : b.scales) {
      if (!r.tau_band.at || !r.tau_band.value.is_finite()) ok = false;
      d << "Q=" << r.scale << ": " << r.tau_band.value.to_string(6) << " at "
        << (r.tau_band.at ? r.tau_band.at->to_string() : "-") << "; ";
    }
    HReal spread = b.tau_band_spread();
    ok = ok && spread < HReal(kMaxSpread, kPrec);
    c_est = b.c_est();
    d << "spread " << spread.to_string(4) << ", C_est " << c_est->to_string(8);
    return Outcome{ok, d.str()};
  });

  run(7, "e^{2l} |x - l1| maxima finite and stable at q <= 125, 250, 500", [] {
    BoundScan b = bound_scan({125, 250, 500}, kPrec, EnumerationOptions{threads(), 8});
    std::ostringstream d;
    bool ok = true;
    for (const ScaleReport& r : b.scales) {
      if (!r.twist_upto.at || !r.twist_upto.value.is_finite()) ok = false;
      d << "q<=" << r.scale << ": " << r.twist_upto.value.to_string(8) << " at "
        << (r.twist_upto.at ? r.twist_upto.at->to_string() : "-") << "; ";
    }
    HReal spread = b.twist_upto_spread();
    ok = ok && spread < HReal(kMaxSpread, kPrec);
    d << "spread " << spread.to_string(4);
    return Outcome{ok, d.str()};
  });

  run(8, "min absolute twist over q <= 500 >= 2 arccosh(sqrt5/2) - 1e-20", [] {
    const HReal floor = acosh(sqrt(HReal(5L, kPrec)) / 2L) * 2L - dec(kTwistFloorSlack);
    std::optional<HReal> lowest;
    std::optional<Slope> at;
    std::size_t nodes = 0;
    enumerate_labels(500, EnumerationOptions{threads(), 8}, [&](const NodeLabels& n) {
      if (n.is_endpoint()) return;
      ++nodes;
      HReal tw = relative_twist(n, kPrec).tw_abs;
      if (!lowest || tw < *lowest) {
        lowest = tw;
        at = n.slope;
      }
    });
    bool ok = lowest && *lowest >= floor;
    return Outcome{ok, std::to_string(nodes) + " nodes, min " + lowest->to_string(12) + " at " + at->to_string() +
                           ", floor " + floor.to_string(12)};
  });

  run(9, "density witnesses on the 19x19 grid, eps = 1/10, 1/100, 1/1000", [&] {
    if (!c_est) return Outcome{false, "no C_est (criterion 6 did not run)"};
    std::size_t witnesses = 0, cert_bad = 0, bound_bad = 0;
    unsigned long max_q = 0;
    for (long eps_den : {10L, 100L, 1000L}) {
      Rational eps(1, eps_den);
      for (long i = 1; i <= 19; ++i) {
        for (long j = 1; j <= 19; ++j) {
          Rational x(i, 20), y(j, 20);
          x.canonicalize();
          y.canonicalize();
          cli::WitnessReport r = cli::make_witness(x, y, eps, *c_est, kPrec);
          ++witnesses;
          if (r.witness.slope_error > eps || r.witness.twist_error > eps) ++cert_bad;
          if (!r.within_bound) ++bound_bad;
          max_q = std::max(max_q, r.witness.slope.q().get_ui());
        }
      }
    }
    return Outcome{cert_bad == 0 && bound_bad == 0,
                   std::to_string(witnesses) + " witnesses, " + std::to_string(cert_bad) +
                       " certificate failures, " + std::to_string(bound_bad) + " tau_X bound failures, max q' " +
                       std::to_string(max_q)};
  });

  run(10, "boundary reduction and General (3,15,6) structure", [] {
    const HReal tol = dec(kFormTol);
    const HReal near_tol = dec(kNearTol);
    const HReal one(1L, kPrec);
    const HReal near = one + dec(kNearBoundary);
    Structure cusped = Structure::modular_cusped(kPrec);
    Structure general = Structure::general(HReal(3L, kPrec), HReal(15L, kPrec), HReal(6L, kPrec));
    std::size_t nodes = 0, bad = 0;
    for (const NodeLabels& n : all_labels(100)) {
      ++nodes;
      TraceTriple t = trace_labels(general, n.slope);
      if (!(abs(t.center - HReal(Integer(3 * n.triple.center), kPrec)) < tol) ||
          !(abs(t.left - HReal(Integer(3 * n.triple.left), kPrec)) < tol) ||
          !(abs(t.right - HReal(Integer(3 * n.triple.right), kPrec)) < tol)) {
        ++bad;
      }
      if (n.is_endpoint()) continue;
      HReal l = half_length(n.triple.center, kPrec);
      HReal l1 = half_length(n.triple.left, kPrec);
      HReal c = twist_via_right_triangle(l, l1);
      if (mpfr_cmp(c.get(), twist_boundary(l, l1, one).get()) != 0) ++bad;
      if (!(abs(twist_boundary(l, l1, near) - c) < near_tol)) ++bad;
      TwistResult a = relative_twist(n.slope, cusped);
      TwistResult b = relative_twist(n.slope, general);
      if (!(abs(a.tw_abs - b.tw_abs) < tol) || !(abs(a.tau - b.tau) < tol)) ++bad;
    }
    return Outcome{bad == 0, std::to_string(nodes) + " nodes, " + std::to_string(bad) + " mismatches"};
  });

  run(11, "Weierstrass sequences = brute force over c <= 10^4, q <= 20", [] {
    const long c_max = 10000;
    std::size_t nodes = 0, bad = 0, solutions = 0;
    for (const NodeLabels& n : all_labels(20)) {
      ++nodes;
      const Integer& k = n.fractional.get_num();
      const Integer& m = n.markov;
      // First solution (3 n1 + (k n1 - n2)/n, n1).
      FormSolution seed{3 * n.triple.left + (k * n.triple.left - n.triple.right) / m, n.triple.left};
      WeierstrassSequences w = weierstrass_solutions_bounded(n, Integer(c_max));
      std::set<std::pair<Integer, Integer>> got;
      for (const auto* seq : {&w.ascending, &w.descending}) {
        for (const FormSolution& s : *seq) got.insert({s.a, s.c});
      }
      auto expected = oracle::form_solutions(k, m, c_max);
      solutions += expected.size();
      // The seed solves the form even when it lies beyond the search bound.
      bool seed_ok = markov_form(n).evaluate(seed.a, seed.c) == -m &&
                     (seed.c > c_max ? w.ascending.empty() : !w.ascending.empty() && w.ascending.front() == seed);
      if (!seed_ok || got.size() != w.ascending.size() + w.descending.size() || got != expected) ++bad;
    }
    return Outcome{bad == 0, std::to_string(nodes) + " nodes, " + std::to_string(solutions) + " solutions, " +
                                 std::to_string(bad) + " mismatches"};
  });

  run(12, "descent word maps tau_F(1/2) to tau_F, q <= 200", [] {
    std::size_t nodes = 0, bad = 0;
    enumerate_labels(200, [&](const NodeLabels& n) {
      if (n.is_endpoint()) return;
      ++nodes;
      LRWord w = path_from_root(n.slope);
      Rational z(1, 2);
      for (Turn t : w) z = apply_map(moebius_of(t), z);
      if (z != farey_twist(n.slope) || apply_map(word_matrix(w), Rational(1, 2)) != z) ++bad;
    });
    return Outcome{bad == 0, std::to_string(nodes) + " nodes, " + std::to_string(bad) + " mismatches"};
  });

  run(13, "strict half-length triangle inequality and monotone Fock function, q <= 300", [] {
    std::size_t triples = 0, bad_triangle = 0, bad_fock = 0;
    std::optional<HReal> prev;
    int direction = 0;
    enumerate_labels(300, [&](const NodeLabels& n) {
      HReal psi = fock(n, kPrec);
      if (prev) {
        int d = psi > *prev ? 1 : (psi < *prev ? -1 : 0);
        if (d == 0 || (direction != 0 && d != direction)) ++bad_fock;
        if (direction == 0) direction = d;
      }
      prev = psi;
      if (n.is_endpoint()) return;
      ++triples;
      if (!half_length_triangle_strict(n.triple)) ++bad_triangle;
    });
    std::string dir = direction > 0 ? "increasing" : (direction < 0 ? "decreasing" : "undetermined");
    return Outcome{bad_triangle == 0 && bad_fock == 0 && direction != 0,
                   std::to_string(triples) + " triples, " + std::to_string(bad_triangle) +
                       " triangle failures, Fock " + dir + ", " + std::to_string(bad_fock) + " order breaks"};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
