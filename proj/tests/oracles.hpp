#pragma once

// Independent reference computations used by the test suites. Nothing here
// calls into the library's tree recursions.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

/// 1 + sum_{q <= n} phi(q), by a totient sieve.
inline std::uint64_t farey_count(std::uint64_t n) {
  std::vector<std::uint64_t> phi(n + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (phi[i] == i) {
      for (std::uint64_t j = i; j <= n; j += i) phi[j] -= phi[j] / i;
    }
  }
  std::uint64_t total = 1;
  for (std::uint64_t q = 1; q <= n; ++q) total += phi[q];
  return total;
}

struct Frac {
  long p;
  long q;
  friend bool operator<(const Frac& a, const Frac& b) { return a.p * b.q < b.p * a.q; }
  friend bool operator==(const Frac& a, const Frac& b) { return a.p == b.p && a.q == b.q; }
};

/// All reduced p/q in [0,1] with q <= n, by exhaustive gcd filtering.
inline std::vector<Frac> reduced_fractions(long n) {
  std::vector<Frac> out;
  for (long q = 1; q <= n; ++q) {
    for (long p = 0; p <= q; ++p) {
      if (std::gcd(p, q) == 1) out.push_back({p, q});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool neighbors(const Frac& a, const Frac& b) { return std::labs(a.p * b.q - a.q * b.p) == 1; }

/// Precedents of an interior p/q by searching every smaller denominator.
inline std::pair<Frac, Frac> precedents_by_search(const Frac& s) {
  Frac left{-1, 0}, right{-1, 0};
  for (long b = 1; b < s.q; ++b) {
    for (long a = 0; a <= b; ++a) {
      if (std::gcd(a, b) != 1) continue;
      Frac f{a, b};
      if (!neighbors(f, s)) continue;
      if (f < s) left = f;
      else right = f;
    }
  }
  return {left, right};
}

/// x < y in the Farey order: transitive closure over edges toward larger denominators.
class FareyOrder {
 public:
  explicit FareyOrder(long n) : nodes_(reduced_fractions(n)) {
    const std::size_t m = nodes_.size();
    reach_.assign(m, std::vector<bool>(m, false));
    // Process targets in increasing denominator so predecessors are complete.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return nodes_[i].q < nodes_[j].q; });
    for (std::size_t t : order) {
      for (std::size_t s = 0; s < m; ++s) {
        if (nodes_[s].q < nodes_[t].q && neighbors(nodes_[s], nodes_[t])) {
          reach_[s][t] = true;
          for (std::size_t u = 0; u < m; ++u) {
            if (reach_[u][s]) reach_[u][t] = true;
          }
        }
      }
    }
  }

  const std::vector<Frac>& nodes() const { return nodes_; }
  bool precedes(std::size_t i, std::size_t j) const { return reach_[i][j]; }

 private:
  std::vector<Frac> nodes_;
  std::vector<std::vector<bool>> reach_;
};

/// Every Markov number <= bound, by breadth-first search over all three
/// Vieta moves starting at (1, 1, 1).
inline std::set<mpz_class> markov_numbers_up_to(const mpz_class& bound) {
  using Triple = std::tuple<mpz_class, mpz_class, mpz_class>;
  auto sorted = [](mpz_class a, mpz_class b, mpz_class c) {
    if (a > b) std::swap(a, b);
    if (b > c) std::swap(b, c);
    if (a > b) std::swap(a, b);
    return Triple{a, b, c};
  };
  std::set<Triple> seen;
  std::vector<Triple> frontier{Triple{1, 1, 1}};
  std::set<mpz_class> numbers;
  while (!frontier.empty()) {
    auto [x, y, z] = frontier.back();
    frontier.pop_back();
    if (!seen.insert(Triple{x, y, z}).second) continue;
    numbers.insert(x);
    numbers.insert(y);
    numbers.insert(z);
    mpz_class moves[3][3] = {{3 * y * z - x, y, z}, {x, 3 * x * z - y, z}, {x, y, 3 * x * y - z}};
    for (auto& m : moves) {
      Triple t = sorted(m[0], m[1], m[2]);
      if (std::get<2>(t) <= bound) frontier.push_back(t);
    }
  }
  return numbers;
}

/// Integer solutions (a, c), 1 <= c <= c_max, of
/// n a^2 - (3n + 2k) a c + C c^2 = -n with k/n <= a/c <= 3 + k/n.
inline std::set<std::pair<mpz_class, mpz_class>> form_solutions(const mpz_class& k, const mpz_class& n,
                                                                 long c_max) {
  std::set<std::pair<mpz_class, mpz_class>> out;
  mpz_class B = 3 * n + 2 * k;
  mpz_class C = 3 * k + (1 + k * k) / n;
  for (long ci = 1; ci <= c_max; ++ci) {
    mpz_class c = ci;
    mpz_class disc = B * B * c * c - 4 * n * (C * c * c + n);
    if (disc < 0) continue;
    mpz_class root = sqrt(disc);
    if (root * root != disc) continue;
    for (int sgn : {-1, 1}) {
      mpz_class num = B * c + sgn * root;
      if (num % (2 * n) != 0) continue;
      mpz_class a = num / (2 * n);
      if (n * a * a - B * a * c + C * c * c != -n) continue;
      // window k/n <= a/c <= 3 + k/n
      if (a * n >= k * c && a * n <= (3 * n + k) * c) out.insert({a, c});
    }
  }
  return out;
}

}  // namespace oracle
