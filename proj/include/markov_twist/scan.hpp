#pragma once

/**
 * @file scan.hpp
 * @brief Empirical estimates of the constants bounding |tau_X - tau_F| and
 *        the half-twist defect, measured over nested denominator scales.
 */

#include "markov_twist/enumerate.hpp"
#include "markov_twist/hyperbolic.hpp"

#include <algorithm>
#include <optional>
#include <vector>

namespace markov_twist {

/// Worst residual observed in one range of denominators.
struct ScanMax {
  HReal value;
  std::optional<Slope> at;  // empty when the range holds no interior node

  void offer(const HReal& v, const Slope& s) {
    if (!at || v > value) {
      value = v;
      at = s;
    }
  }
};

struct ScaleReport {
  unsigned long scale;
  ScanMax tau_band;       // q^2 |tau_X - tau_F| over q in (scale/2, scale]
  ScanMax tau_upto;       // same over q <= scale
  ScanMax twist_band;     // e^{2l} |x - l1| over q in (scale/2, scale]
  ScanMax twist_upto;     // same over q <= scale
  std::size_t band_nodes = 0;
};

struct BoundScan {
  long precision_bits;
  std::vector<ScaleReport> scales;  // ascending

  /// Largest q^2 |tau_X - tau_F| seen at any scale; the working estimate of C.
  HReal c_est() const {
    HReal best(0L, precision_bits);
    for (const auto& s : scales) {
      if (s.tau_upto.at) best = max(best, s.tau_upto.value);
    }
    return best;
  }

  /// max/min - 1 over the band maxima of q^2 |tau_X - tau_F|.
  HReal tau_band_spread() const { return spread([](const ScaleReport& s) { return &s.tau_band; }); }
  /// max/min - 1 over the cumulative maxima of e^{2l} |x - l1|.
  HReal twist_upto_spread() const { return spread([](const ScaleReport& s) { return &s.twist_upto; }); }

 private:
  template <class Pick>
  HReal spread(Pick pick) const {
    std::optional<HReal> lo, hi;
    for (const auto& s : scales) {
      const ScanMax* m = pick(s);
      if (!m->at) continue;
      if (!lo || m->value < *lo) lo = m->value;
      if (!hi || m->value > *hi) hi = m->value;
    }
    if (!lo || lo->is_zero()) return HReal(0L, precision_bits);
    return *hi / *lo - 1L;
  }
};

/// Default scales for a scan up to q_max: q_max/4, q_max/2, q_max.
inline std::vector<unsigned long> default_scales(unsigned long q_max) {
  std::vector<unsigned long> out;
  for (unsigned long s : {q_max / 4, q_max / 2, q_max}) {
    if (s >= 2 && (out.empty() || out.back() != s)) out.push_back(s);
  }
  return out;
}

/// One pass over every interior node with q <= max(scales).
inline BoundScan bound_scan(std::vector<unsigned long> scales, long precision_bits,
                            const EnumerationOptions& options = {}) {
  if (scales.empty()) throw RangeError("bound_scan: no scales given");
  std::sort(scales.begin(), scales.end());
  scales.erase(std::unique(scales.begin(), scales.end()), scales.end());
  if (scales.front() < 2) throw RangeError("bound_scan: scales must be at least 2");

  BoundScan out{precision_bits, {}};
  for (unsigned long s : scales) {
    HReal zero(0L, precision_bits);
    out.scales.push_back({s, {zero, {}}, {zero, {}}, {zero, {}}, {zero, {}}, 0});
  }

  struct Sample {
    Slope slope;
    GapResiduals gaps;
  };
  const unsigned long q_max = scales.back();
  std::vector<WalkTask> tasks = decompose_tree(q_max, options.split_depth);
  auto produce = [&](const WalkTask& task) {
    std::vector<Sample> samples;
    auto collect = [&](const TreeState& st) {
      if (!st.farey.center.is_interior()) return;
      NodeLabels n = st.labels();
      samples.push_back({n.slope, gap_scan(n, precision_bits)});
    };
    run_task(task, q_max, collect);
    return samples;
  };
  for_each_task_ordered(tasks, options.threads, produce, [&](std::vector<Sample>&& samples) {
    for (const Sample& smp : samples) {
      const Integer& q = smp.slope.q();
      for (ScaleReport& r : out.scales) {
        if (q > r.scale) continue;
        r.tau_upto.offer(smp.gaps.tau_gap, smp.slope);
        r.twist_upto.offer(smp.gaps.twist_gap, smp.slope);
        if (2 * q > r.scale) {
          r.tau_band.offer(smp.gaps.tau_gap, smp.slope);
          r.twist_band.offer(smp.gaps.twist_gap, smp.slope);
          ++r.band_nodes;
        }
      }
    }
  });
  return out;
}

}  // namespace markov_twist
