#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "sicmap/errors.hpp"
#include "sicmap/geom.hpp"
#include "sicmap/sic.hpp"
#include "support/oracles.hpp"

using namespace sicmap;
namespace ref = sicmap::testing;

namespace {

Network exp_chain(std::size_t n, double alpha, double noise) {
  std::vector<Point> s;
  for (std::size_t k = 1; k <= n; ++k) s.push_back(Point{std::pow(2.0, k / alpha)});
  return Network(1, std::move(s), noise, 1.0, alpha);
}

CancellationOrdering ord(std::vector<std::size_t> s) {
  CancellationOrdering o;
  o.stations = std::move(s);
  return o;
}

}  // namespace

TEST(DecodeOrder, Examples) {
  const Network net(2, {Point{0, 0}, Point{3, 0}}, 0.01, 2.0, 2.0);
  EXPECT_EQ(decode_order(net, 0, Point{2, 0}).stations, (std::vector<std::size_t>{1, 0}));
  EXPECT_EQ(decode_order(net, 1, Point{2, 0}).stations, (std::vector<std::size_t>{1}));
  const Network chain = exp_chain(5, 2.0, 1.0 / 32);
  EXPECT_EQ(decode_order(chain, 4, Point{0.0}).stations,
            (std::vector<std::size_t>{0, 1, 2, 3, 4}));
}

TEST(DecodeOrder, FlagsTies) {
  const Network net(2, {Point{0, 0}, Point{2, 0}, Point{5, 5}}, 0.01, 2.0, 2.0);
  bool degenerate = false;
  const auto o = decode_order(net, 0, Point{1, 3}, &degenerate);
  EXPECT_TRUE(degenerate);
  EXPECT_EQ(o.stations, (std::vector<std::size_t>{0}));
}

TEST(ReceivesWithSic, ExponentialChain) {
  const Network chain = exp_chain(3, 2.0, 0.125);
  const SicDecodeResult r = receives_with_sic(chain, 2, Point{0.0});
  EXPECT_TRUE(r.success);
  EXPECT_EQ(r.chain.stations, (std::vector<std::size_t>{0, 1, 2}));
  for (double v : r.stage_sinr) EXPECT_GE(v, 1.0 - 1e-9);
}

TEST(ReceivesWithSic, HandEvaluatedStages) {
  // s1 at 2, s2 at 1; stations are zero-based here.
  const Network ok(1, {Point{2.0}, Point{1.0}}, 0.1, 2.0, 2.0);
  const SicDecodeResult r = receives_with_sic(ok, 0, Point{0.0});
  ASSERT_TRUE(r.success);
  EXPECT_EQ(r.chain.stations, (std::vector<std::size_t>{1, 0}));
  ASSERT_EQ(r.stage_sinr.size(), 2u);
  EXPECT_NEAR(r.stage_sinr[0], 1.0 / 0.35, 1e-12);
  EXPECT_NEAR(r.stage_sinr[1], 2.5, 1e-12);

  const Network noisy(1, {Point{2.0}, Point{1.0}}, 0.2, 2.0, 2.0);
  const SicDecodeResult f = receives_with_sic(noisy, 0, Point{0.0});
  EXPECT_FALSE(f.success);
  ASSERT_TRUE(f.failed_at.has_value());
  EXPECT_EQ(*f.failed_at, 2u);
  EXPECT_NEAR(f.stage_sinr[1], 1.25, 1e-12);
}

TEST(ReceivesWithSic, MatchesReferenceDecoder) {
  std::mt19937_64 rng(21);
  std::size_t compared = 0;
  for (int t = 0; t < 30; ++t) {
    const Network net = ref::random_network(rng, 1 + t % 2, 2 + t % 6, 0.005, 1.2 + 0.3 * (t % 5),
                                            t % 4 == 0 ? 2.5 : 2.0);
    for (int k = 0; k < 300; ++k) {
      const Point p = ref::random_point(rng, net, 3.0);
      for (std::size_t i = 0; i < net.size(); ++i) {
        const ref::RefDecode want = ref::ref_decode(net, i, p);
        if (want.margin < 1e-9) continue;
        const SicDecodeResult got = receives_with_sic(net, i, p);
        EXPECT_EQ(got.success, want.success);
        EXPECT_EQ(got.chain.stations, want.chain);
        ++compared;
      }
    }
  }
  EXPECT_GT(compared, 10000u);
}

TEST(InSicZone, Examples) {
  const Network net(2, {Point{0, 0}, Point{3, 0}}, 0.05, 2.0, 2.0);
  EXPECT_TRUE(in_sic_zone(net, 0, Point{0, 0}));
  EXPECT_THROW(in_sic_zone(net, 0, Point{3, 0}), DomainError);
  EXPECT_FALSE(in_sic_zone(net, 0, Point{100, 100}));
  EXPECT_FALSE(in_sic_zone(net, 1, Point{100, 100}));
}

TEST(InSicZone, NestedLinks) {
  // s1 far, s2 near the receiver at the origin: s1 is heard only after s2
  // is canceled.
  const Network net(1, {Point{3.0}, Point{1.0}}, 0.01, 2.0, 2.0);
  EXPECT_FALSE(received(net, 0, Point{0.0}));
  EXPECT_TRUE(in_sic_zone(net, 0, Point{0.0}));
}

TEST(CellMember, SingletonIsReception) {
  std::mt19937_64 rng(3);
  const Network net = ref::random_network(rng, 2, 5, 0.01, 1.5);
  for (int k = 0; k < 2000; ++k) {
    const Point p = ref::random_point(rng, net, 2.0);
    for (std::size_t i = 0; i < net.size(); ++i) {
      EXPECT_EQ(cell_member(net, ord({i}), p), received(net, i, p));
    }
  }
}

TEST(CellMember, SuccessfulChainsAreMembers) {
  std::mt19937_64 rng(4);
  std::size_t hits = 0;
  for (int t = 0; t < 10; ++t) {
    const Network net = ref::random_network(rng, 2, 5, 0.002, 1.5);
    for (int k = 0; k < 2000; ++k) {
      const Point p = ref::random_point(rng, net, 1.0);
      for (std::size_t i = 0; i < net.size(); ++i) {
        const SicDecodeResult r = receives_with_sic(net, i, p);
        if (!r.success) continue;
        ++hits;
        EXPECT_TRUE(cell_member(net, r.chain, p));
      }
    }
  }
  EXPECT_GT(hits, 1000u);
}

TEST(CellMember, FirstStageMustBeNearest) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 10; ++t) {
    const Network net = ref::random_network(rng, 2, 4, 0.01, 1.5);
    for (int k = 0; k < 2000; ++k) {
      const Point p = ref::random_point(rng, net, 2.0);
      const auto label = ref::ref_label(net, p);
      for (std::size_t i = 0; i < net.size(); ++i) {
        for (std::size_t j = 0; j < net.size(); ++j) {
          if (j == i || j == label[0]) continue;
          EXPECT_FALSE(cell_member(net, ord({j, i}), p));
        }
      }
    }
  }
}

TEST(Orderings, Enumeration) {
  const auto two = enumerate_orderings(2, 0);
  ASSERT_EQ(two.size(), 2u);
  const auto three = enumerate_orderings(3, 0);
  ASSERT_EQ(three.size(), 5u);
  std::set<std::vector<std::size_t>> seen;
  for (const auto& o : three) {
    EXPECT_EQ(o.target(), 0u);
    seen.insert(o.stations);
  }
  EXPECT_TRUE(seen.count({0}));
  EXPECT_TRUE(seen.count({1, 0}));
  EXPECT_TRUE(seen.count({2, 0}));
  EXPECT_TRUE(seen.count({1, 2, 0}));
  EXPECT_TRUE(seen.count({2, 1, 0}));
  EXPECT_EQ(enumerate_orderings(5, 2).size(), 1u + 4 + 12 + 24 + 24);
}

TEST(Ordering, Validation) {
  EXPECT_THROW(ord({}).validate(3), ValidationError);
  EXPECT_THROW(ord({0, 0}).validate(3), ValidationError);
  EXPECT_THROW(ord({0, 3}).validate(3), ValidationError);
  EXPECT_NO_THROW(ord({2, 0}).validate(3));
  EXPECT_EQ(ord({1, 0}).to_string(), "(s2,s1)");
}

TEST(Decomposition, AgreesOnRandomNets) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 8; ++t) {
    const Network net = ref::random_network(rng, 1 + t % 2, 3 + t % 3, 0.01, 1.5 + 0.5 * (t % 4));
    for (int k = 0; k < 300; ++k) {
      const Point p = ref::random_point(rng, net, 2.0);
      for (std::size_t i = 0; i < net.size(); ++i) {
        const DecompositionReport r = sic_zone_decomposition_check(net, i, p);
        EXPECT_TRUE(r.agreement);
        EXPECT_EQ(r.orderings_checked, enumerate_orderings(net.size(), i).size());
      }
    }
  }
}

TEST(Decomposition, RejectsLargeNets) {
  std::mt19937_64 rng(9);
  const Network net = ref::random_network(rng, 2, 9, 0.01, 2.0);
  EXPECT_THROW(sic_zone_decomposition_check(net, 0, Point{0.5, 0.5}), PreconditionError);
}
