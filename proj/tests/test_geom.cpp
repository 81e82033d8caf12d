#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>

#include "sicmap/geom.hpp"
#include "support/oracles.hpp"

using namespace sicmap;
namespace ref = sicmap::testing;

namespace {

CancellationOrdering ord(std::vector<std::size_t> s) {
  CancellationOrdering o;
  o.stations = std::move(s);
  return o;
}

Network line013() { return Network(1, {Point{0.0}, Point{1.0}, Point{3.0}}, 0.01, 2.0, 2.0); }

}  // namespace

TEST(CompareDistance, ExactNearTies) {
  EXPECT_EQ(compare_distance(Point{0.5, 7}, Point{0, 0}, Point{1, 0}), 0);
  EXPECT_LT(compare_distance(Point{0.1, 0}, Point{0, 0}, Point{1, 0}), 0);
  EXPECT_GT(compare_distance(Point{0.9, 0}, Point{0, 0}, Point{1, 0}), 0);
  // One ulp off the bisector of 0.1 and 0.3 (not representable midpoint).
  const double m = 0.2;
  const Point a{0.1}, b{0.3};
  const int here = compare_distance(Point{m}, a, b);
  const int left = compare_distance(Point{std::nextafter(m, 0.0)}, a, b);
  const int right = compare_distance(Point{std::nextafter(m, 1.0)}, a, b);
  EXPECT_LE(left, here);
  EXPECT_LE(here, right);
  EXPECT_LT(left, right);
}

TEST(Side, Examples) {
  std::mt19937_64 rng(1);
  const Network net = ref::random_network(rng, 2, 4, 0.01, 2.0);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i + 1; j < 4; ++j) {
      const Bisector b = make_bisector(net, i, j);
      EXPECT_EQ(side(b, net.station(i)), Side::NearerI);
      EXPECT_EQ(side(b, net.station(j)), Side::NearerJ);
    }
  }
  const Network grid(2, {Point{0, 0}, Point{2, 0}}, 0.01, 2.0, 2.0);
  EXPECT_EQ(side(make_bisector(grid, 0, 1), Point{1, 0}), Side::On);
  EXPECT_EQ(side(make_bisector(grid, 0, 1), Point{1, -5}), Side::On);
}

TEST(Side, AgreesWithDistances) {
  std::mt19937_64 rng(2);
  const Network net = ref::random_network(rng, 2, 5, 0.01, 2.0);
  for (int k = 0; k < 5000; ++k) {
    const Point p = ref::random_point(rng, net, 3.0);
    for (std::size_t i = 0; i < 5; ++i) {
      for (std::size_t j = i + 1; j < 5; ++j) {
        const auto di = ref::ref_dist2(net.station(i), p), dj = ref::ref_dist2(net.station(j), p);
        const Side want = di < dj ? Side::NearerI : di > dj ? Side::NearerJ : Side::On;
        EXPECT_EQ(side(make_bisector(net, i, j), p), want);
      }
    }
  }
}

TEST(LabelOf, LineExamples) {
  const Network net = line013();
  EXPECT_EQ(label_of(net, Point{0.4}).order, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(label_of(net, Point{2.2}).order, (std::vector<std::size_t>{2, 1, 0}));
  EXPECT_EQ(label_of(net, Point{0.4}).truncated(1), (std::vector<std::size_t>{0, 1}));
  EXPECT_FALSE(label_of(net, Point{0.4}).degenerate);
  EXPECT_TRUE(label_of(net, Point{0.5}).degenerate);
}

TEST(LabelOf, MatchesReferenceSort) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 10; ++t) {
    const Network net = ref::random_network(rng, 1 + t % 2, 6, 0.01, 2.0);
    for (int k = 0; k < 1000; ++k) {
      const Point p = ref::random_point(rng, net, 2.0);
      EXPECT_EQ(label_of(net, p).order, ref::ref_label(net, p));
    }
  }
}

TEST(Voronoi, Examples) {
  const Network net(2, {Point{0, 0}, Point{4, 0}}, 0.01, 2.0, 2.0);
  EXPECT_TRUE(in_voronoi(net, 0, Point{0, 0}));
  EXPECT_FALSE(in_voronoi(net, 0, Point{3, 1}));
  EXPECT_TRUE(in_voronoi(net, 1, Point{3, 1}));
}

TEST(Voronoi, SubsetMatchesRestrictedLabel) {
  std::mt19937_64 rng(4);
  const Network net = ref::random_network(rng, 2, 6, 0.01, 2.0);
  const StationSubset sub({0, 2, 3, 5}, false);
  for (int k = 0; k < 3000; ++k) {
    const Point p = ref::random_point(rng, net, 2.0);
    const auto label = ref::ref_label(net, p);
    std::size_t first = 0;
    for (std::size_t s : label) {
      if (sub.contains(s)) {
        first = s;
        break;
      }
    }
    for (std::size_t i : sub.indices()) EXPECT_EQ(in_voronoi(net, i, p, sub), i == first);
  }
}

TEST(OrderedVoronoi, FullLabelAndViolations) {
  std::mt19937_64 rng(5);
  const Network net = ref::random_network(rng, 2, 5, 0.01, 2.0);
  for (int k = 0; k < 2000; ++k) {
    const Point p = ref::random_point(rng, net, 2.0);
    auto label = ref::ref_label(net, p);
    EXPECT_TRUE(in_ordered_voronoi(net, ord(label), p));
    std::swap(label[0], label[1]);
    EXPECT_FALSE(in_ordered_voronoi(net, ord(label), p));
    EXPECT_FALSE(in_ordered_voronoi(net, ord({label[0]}), p));
  }
}

TEST(OrderedVoronoi, IntersectionFormAgrees) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    const Network net = ref::random_network(rng, 1 + t % 2, 5, 0.01, 2.0);
    const auto all = enumerate_orderings(5, t % 5);
    for (int k = 0; k < 300; ++k) {
      const Point p = ref::random_point(rng, net, 2.0);
      for (const auto& o : all) {
        EXPECT_EQ(in_ordered_voronoi(net, o, p), in_ordered_voronoi_intersection(net, o, p));
      }
    }
  }
}

TEST(OrderK, MembersCloserThanOthers) {
  const Network net = line013();
  EXPECT_TRUE(in_order_k_voronoi(net, StationSubset({0, 1}, false), Point{0.4}));
  EXPECT_FALSE(in_order_k_voronoi(net, StationSubset({0, 2}, false), Point{0.4}));
}

TEST(SeparatingBisector, Examples) {
  std::mt19937_64 rng(7);
  const Network net = ref::random_network(rng, 2, 4, 0.01, 2.0);
  const auto b = separating_bisector(net, ord({0, 2, 3}), ord({1, 3}));
  ASSERT_TRUE(b.has_value());
  EXPECT_EQ(b->i, 0u);
  EXPECT_EQ(b->j, 1u);
  const auto c = separating_bisector(net, ord({2, 0, 3}), ord({2, 1, 3}));
  ASSERT_TRUE(c.has_value());
  EXPECT_EQ(c->i, 0u);
  EXPECT_EQ(c->j, 1u);
  EXPECT_FALSE(separating_bisector(net, ord({0, 3}), ord({0, 3})).has_value());
}

TEST(SeparatingBisector, SplitsSampledRegions) {
  std::mt19937_64 rng(8);
  const Network net = ref::random_network(rng, 2, 4, 0.01, 2.0);
  std::map<std::vector<std::size_t>, std::vector<Point>> regions;
  for (int k = 0; k < 4000; ++k) {
    const Point p = ref::random_point(rng, net, 2.0);
    auto label = ref::ref_label(net, p);
    label.resize(2);
    regions[label].push_back(p);
  }
  for (const auto& [la, pa] : regions) {
    for (const auto& [lb, pb] : regions) {
      if (la == lb) continue;
      const auto b = separating_bisector(net, ord(la), ord(lb));
      ASSERT_TRUE(b.has_value());
      const Side sa = side(*b, pa.front());
      for (const auto& p : pa) EXPECT_EQ(side(*b, p), sa);
      for (const auto& p : pb) EXPECT_NE(side(*b, p), sa);
    }
  }
}
