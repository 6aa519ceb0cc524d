#pragma once

/**
 * @file core.hpp
 * @brief Shared value types: big integers, rationals, slopes, L/R words,
 *        and the error hierarchy used throughout the library.
 */

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace markov_twist {

using Integer = mpz_class;
using Rational = mpq_class;

// Errors. The CLI maps each kind onto its own exit code.

/// Malformed textual input.
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Well-formed input outside the domain of an operation.
class RangeError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A hard resource cap (word length, orbit size) was hit.
class ResourceCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reduced fraction p/q with q > 0; also admits the virtual slope 1/0.
class Slope {
 public:
  Slope() : p_(0), q_(1) {}

  /// Reduces p/q and normalizes the sign onto the numerator.
  Slope(Integer p, Integer q) : p_(std::move(p)), q_(std::move(q)) {
    if (q_ == 0) {
      if (p_ == 0) throw RangeError("Slope: 0/0 is not a slope");
      p_ = 1;
      return;
    }
    if (q_ < 0) {
      p_ = -p_;
      q_ = -q_;
    }
    Integer g = gcd(p_, q_);
    if (g != 1) {
      p_ /= g;
      q_ /= g;
    }
  }

  Slope(long p, long q) : Slope(Integer(p), Integer(q)) {}

  explicit Slope(const Rational& r) : p_(r.get_num()), q_(r.get_den()) {}

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }

  bool is_infinite() const { return q_ == 0; }

  /// Exact value; undefined for 1/0.
  Rational value() const { return Rational(p_, q_); }

  /// 0 <= p/q <= 1.
  bool in_unit_interval() const { return q_ > 0 && p_ >= 0 && p_ <= q_; }

  /// 0 < p/q < 1.
  bool is_interior() const { return q_ > 0 && p_ > 0 && p_ < q_; }

  std::string to_string() const { return p_.get_str() + "/" + q_.get_str(); }

  friend bool operator==(const Slope& a, const Slope& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

  /// Orders by value; 1/0 compares above every finite slope.
  friend std::strong_ordering operator<=>(const Slope& a, const Slope& b) {
    Integer lhs = a.p_ * b.q_;
    Integer rhs = b.p_ * a.q_;
    if (a.is_infinite() || b.is_infinite()) {
      lhs = a.is_infinite() ? 1 : 0;
      rhs = b.is_infinite() ? 1 : 0;
    }
    int c = cmp(lhs, rhs);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  Integer p_;
  Integer q_;
};

/// Parses "p/q" (or a bare integer "p") into a reduced slope.
inline Slope parse_slope(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    if (part.empty()) throw ParseError("empty integer in slope: " + std::string(text));
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) throw ParseError("bad integer in slope: " + std::string(text));
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw ParseError("bad integer in slope: " + std::string(text));
    }
    std::string digits(part[0] == '+' ? part.substr(1) : part);
    return Integer(digits, 10);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Slope(parse_int(text), Integer(1));
  Integer q = parse_int(text.substr(slash + 1));
  if (q == 0) throw ParseError("zero denominator: " + std::string(text));
  return Slope(parse_int(text.substr(0, slash)), std::move(q));
}

/// Parses "p/q", an integer, or a finite decimal such as "0.05" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  auto dot = text.find('.');
  if (dot == std::string_view::npos) return parse_slope(text).value();
  std::string whole(text.substr(0, dot));
  std::string frac(text.substr(dot + 1));
  bool negative = !whole.empty() && whole[0] == '-';
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) whole.erase(0, 1);
  std::string digits = whole + frac;
  if (digits.empty()) throw ParseError("bad decimal: " + std::string(text));
  for (char c : digits) {
    if (c < '0' || c > '9') throw ParseError("bad decimal: " + std::string(text));
  }
  Integer num(digits, 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational out(negative ? Integer(-num) : num, den);
  out.canonicalize();
  return out;
}

inline std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

/// One descent direction in the Farey tree (also a generator of the semigroup).
enum class Turn : char { L = 'L', R = 'R' };

using LRWord = std::vector<Turn>;

inline std::string to_string(const LRWord& word) {
  std::string out;
  out.reserve(word.size());
  for (Turn t : word) out.push_back(static_cast<char>(t));
  return out;
}

inline LRWord parse_word(std::string_view text) {
  LRWord out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == 'L' || c == 'l') {
      out.push_back(Turn::L);
    } else if (c == 'R' || c == 'r') {
      out.push_back(Turn::R);
    } else {
      throw ParseError("word letters must be L or R: " + std::string(text));
    }
  }
  return out;
}

/// 2x2 integer matrix [[a, b], [c, d]].
struct IntMatrix2 {
  Integer a{1}, b{0}, c{0}, d{1};

  static IntMatrix2 identity() { return {}; }

  Integer determinant() const { return a * d - b * c; }
  Integer trace() const { return a + d; }

  friend IntMatrix2 operator*(const IntMatrix2& x, const IntMatrix2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }

  friend bool operator==(const IntMatrix2&, const IntMatrix2&) = default;

  /// Inverse of a determinant-one matrix.
  IntMatrix2 unimodular_inverse() const { return {d, -b, -c, a}; }

  /// Linear action on a column vector (x, y).
  std::pair<Integer, Integer> apply(const Integer& x, const Integer& y) const {
    return {a * x + b * y, c * x + d * y};
  }
};

}  // namespace markov_twist
