#include "markov_twist/farey.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace markov_twist;

namespace {

std::vector<Slope> interior_slopes(long q_max) {
  std::vector<Slope> out;
  enumerate_farey(q_max, [&](const Slope& s) {
    if (s.is_interior()) out.push_back(s);
  });
  return out;
}

}  // namespace

TEST(Farey, NeighborTest) {
  EXPECT_TRUE(is_farey_neighbor(Slope(1, 3), Slope(2, 5)));
  EXPECT_TRUE(is_farey_neighbor(Slope(0, 1), Slope(1, 1)));
  EXPECT_FALSE(is_farey_neighbor(Slope(1, 3), Slope(3, 5)));
}

TEST(Farey, Mediant) {
  EXPECT_EQ(mediant(Slope(0, 1), Slope(1, 1)), Slope(1, 2));
  EXPECT_EQ(mediant(Slope(1, 3), Slope(1, 2)), Slope(2, 5));
  EXPECT_EQ(mediant(Slope(1, 2), Slope(1, 1)), Slope(2, 3));
  EXPECT_THROW(mediant(Slope(1, 3), Slope(3, 5)), RangeError);
}

TEST(Farey, SlopeReducesAndOrders) {
  Slope s(Integer(6), Integer(-4));
  EXPECT_EQ(s, Slope(-3, 2));
  EXPECT_LT(Slope(1, 3), Slope(2, 5));
  EXPECT_LT(Slope(1, 1), Slope(1, 0));
  EXPECT_EQ(parse_slope("4/10"), Slope(2, 5));
  EXPECT_THROW(parse_slope("a/3"), ParseError);
  EXPECT_THROW(parse_slope("1/0"), ParseError);
  EXPECT_EQ(parse_rational("0.05"), Rational(1, 20));
  EXPECT_EQ(parse_rational("3/10"), Rational(3, 10));
}

TEST(Farey, ImmediatePrecedents) {
  EXPECT_EQ(immediate_precedents(Slope(1, 2)), std::make_pair(Slope(0, 1), Slope(1, 1)));
  EXPECT_EQ(immediate_precedents(Slope(2, 5)), std::make_pair(Slope(1, 3), Slope(1, 2)));
  EXPECT_EQ(immediate_precedents(Slope(1, 3)), std::make_pair(Slope(0, 1), Slope(1, 2)));
  // Endpoint convention.
  EXPECT_EQ(immediate_precedents(Slope(0, 1)), std::make_pair(Slope(-1, 1), Slope(1, 1)));
  EXPECT_EQ(immediate_precedents(Slope(1, 1)), std::make_pair(Slope(0, 1), Slope(1, 0)));
  EXPECT_THROW(immediate_precedents(Slope(5, 3)), RangeError);
}

TEST(Farey, PrecedentsMatchExhaustiveSearch) {
  for (const auto& f : oracle::reduced_fractions(60)) {
    if (f.p == 0 || f.p == f.q) continue;
    auto [left, right] = oracle::precedents_by_search(f);
    auto [a, c] = immediate_precedents(Slope(f.p, f.q));
    EXPECT_EQ(a, Slope(left.p, left.q)) << f.p << "/" << f.q;
    EXPECT_EQ(c, Slope(right.p, right.q)) << f.p << "/" << f.q;
  }
}

TEST(Farey, ImmediateSuccessors) {
  EXPECT_EQ(immediate_successors(Slope(1, 2)), std::make_pair(Slope(1, 3), Slope(2, 3)));
  EXPECT_EQ(immediate_successors(Slope(1, 3)), std::make_pair(Slope(1, 4), Slope(2, 5)));
  EXPECT_EQ(immediate_successors(Slope(2, 3)), std::make_pair(Slope(3, 5), Slope(3, 4)));
  EXPECT_THROW(immediate_successors(Slope(0, 1)), RangeError);
  EXPECT_THROW(immediate_successors(Slope(1, 1)), RangeError);
}

TEST(Farey, FareyTwist) {
  EXPECT_EQ(farey_twist(Slope(1, 5)), Rational(1, 5));
  EXPECT_EQ(farey_twist(Slope(4, 5)), Rational(4, 5));
  EXPECT_EQ(farey_twist(Slope(2, 5)), Rational(3, 5));
  EXPECT_THROW(farey_twist(Slope(0, 1)), RangeError);
  EXPECT_THROW(farey_twist(Slope(1, 1)), RangeError);
}

TEST(Farey, Precedes) {
  EXPECT_TRUE(precedes(Slope(1, 3), Slope(2, 5)));
  EXPECT_FALSE(precedes(Slope(1, 3), Slope(3, 5)));
  EXPECT_FALSE(precedes(Slope(3, 5), Slope(1, 3)));
  EXPECT_FALSE(precedes(Slope(1, 2), Slope(1, 2)));
  EXPECT_TRUE(precedes(Slope(0, 1), Slope(1, 2)));
  EXPECT_FALSE(precedes(Slope(0, 1), Slope(1, 1)));
}

TEST(Farey, PrecedesMatchesTransitiveClosure) {
  oracle::FareyOrder order(30);
  const auto& nodes = order.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      ASSERT_EQ(precedes(Slope(nodes[i].p, nodes[i].q), Slope(nodes[j].p, nodes[j].q)), order.precedes(i, j))
          << nodes[i].p << "/" << nodes[i].q << " vs " << nodes[j].p << "/" << nodes[j].q;
    }
  }
}

TEST(Farey, SuccessorsLieBetweenPrecedents) {
  oracle::FareyOrder order(50);
  const auto& nodes = order.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Slope s(nodes[i].p, nodes[i].q);
    auto [a, c] = immediate_precedents(s);
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (!order.precedes(i, j)) continue;
      Slope t(nodes[j].p, nodes[j].q);
      ASSERT_TRUE(a < t && t < c) << s.to_string() << " < " << t.to_string();
    }
  }
}

TEST(Farey, TripleInvariantsUpTo300) {
  for (const Slope& s : interior_slopes(300)) {
    FareyTriple t = farey_triple_of(s);
    ASSERT_TRUE(is_valid_triple(t)) << s.to_string();
    ASSERT_TRUE(precedes(t.left, s) || t.left.q() == 1);
    ASSERT_TRUE(precedes(t.right, s) || t.right.q() == 1);
  }
}

TEST(Farey, PathRoundTrip) {
  EXPECT_EQ(node_at({}), Slope(1, 2));
  EXPECT_EQ(node_at({Turn::L}), Slope(1, 3));
  EXPECT_EQ(node_at({Turn::R}), Slope(2, 3));
  EXPECT_EQ(node_at({Turn::L, Turn::R}), Slope(2, 5));
  EXPECT_THROW(path_from_root(Slope(0, 1)), RangeError);
  for (const Slope& s : interior_slopes(300)) {
    ASSERT_EQ(node_at(path_from_root(s)), s);
  }
}

TEST(Farey, TwistChildRelation) {
  for (const Slope& s : interior_slopes(300)) {
    Rational z = farey_twist(s);
    auto [lc, rc] = immediate_successors(s);
    if (lc.q() <= 300) {
      Rational expect = z / (z + 1);
      ASSERT_EQ(farey_twist(lc), expect) << s.to_string();
    }
    if (rc.q() <= 300) {
      Rational expect = 1 / (2 - z);
      ASSERT_EQ(farey_twist(rc), expect) << s.to_string();
    }
  }
}

TEST(Farey, EnumerationCountsAndOrder) {
  std::vector<Slope> two;
  enumerate_farey(2, [&](const Slope& s) { two.push_back(s); });
  EXPECT_EQ(two, (std::vector<Slope>{Slope(0, 1), Slope(1, 2), Slope(1, 1)}));

  for (long n : {1L, 5L, 17L, 120L}) {
    std::vector<Slope> got;
    enumerate_farey(n, [&](const Slope& s) { got.push_back(s); });
    EXPECT_EQ(got.size(), oracle::farey_count(n)) << n;
    auto expect = oracle::reduced_fractions(n);
    ASSERT_EQ(got.size(), expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) ASSERT_EQ(got[i], Slope(expect[i].p, expect[i].q));
  }
  EXPECT_THROW(enumerate_farey(0, [](const Slope&) {}), RangeError);
}
