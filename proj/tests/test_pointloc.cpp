#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "sicmap/errors.hpp"
#include "sicmap/io.hpp"
#include "sicmap/pointloc.hpp"
#include "sicmap/tasks.hpp"
#include "support/oracles.hpp"

using namespace sicmap;
namespace ref = sicmap::testing;

namespace {

GridZone one_column(Run lower, Run upper) {
  GridZone g;
  g.frame = GridFrame{0, 0, 1};
  g.col_begin = 5;
  GridColumn c;
  c.empty = false;
  c.lower = lower;
  c.upper = upper;
  g.cols.push_back(c);
  return g;
}

bool inside_polygon(const std::vector<std::array<double, 2>>& poly, double x, double y) {
  bool in = false;
  for (std::size_t a = 0, b = poly.size() - 1; a < poly.size(); b = a++) {
    const auto& p = poly[a];
    const auto& q = poly[b];
    if ((p[1] > y) != (q[1] > y) && x < (q[0] - p[0]) * (y - p[1]) / (q[1] - p[1]) + p[0]) {
      in = !in;
    }
  }
  return in;
}

Network small_net() {
  return Network(2, {Point{0, 0}, Point{1, 0}, Point{2.5, 0.3}, Point{4, 1}}, 0.01, 1.5, 2.0);
}

// Unknown-square area divided by the zone area, both by fine grid sampling.
double square_fraction(const SicLocator& loc, const Network& net) {
  const double r = noise_limited_radius(net);
  const Point& c = net.station(loc.station);
  const int g = 1500;
  std::size_t unknown = 0, zone = 0;
  for (int a = 0; a < g; ++a) {
    for (int b = 0; b < g; ++b) {
      const Point p{c[0] - r + 2 * r * (a + 0.5) / g, c[1] - r + 2 * r * (b + 0.5) / g};
      if (net.station_at(p) < net.size()) continue;
      unknown += loc.locate(p) == LocResult::Unknown;
      zone += receives_with_sic(net, loc.station, p).success;
    }
  }
  return static_cast<double>(unknown) / zone;
}

}  // namespace

TEST(IntersectGrids, ColumnExample) {
  const GridZone a = one_column({2, 3}, {10, 11});
  const GridZone b = one_column({4, 5}, {8, 9});
  const GridZone r = intersect_grids(a, b);
  ASSERT_EQ(r.cols.size(), 1u);
  EXPECT_EQ(r.cols[0].upper, (sicmap::Run{8, 9}));
  EXPECT_EQ(r.cols[0].lower, (sicmap::Run{4, 5}));
  EXPECT_EQ(r.classify(5, 6), Square::Plus);
  EXPECT_EQ(r.classify(5, 3), Square::Minus);
  EXPECT_EQ(r.classify(5, 4), Square::Unknown);
}

TEST(IntersectGrids, IdentityAndEmpty) {
  const GridZone a = one_column({2, 3}, {10, 11});
  EXPECT_EQ(intersect_grids(a, a), a);
  EXPECT_EQ(intersect_grids(std::vector<GridZone>{a, a, a}), a);
  GridZone none;
  none.frame = a.frame;
  EXPECT_TRUE(intersect_grids(a, none).empty());
  const GridZone below = one_column({-9, -8}, {-6, -4});
  EXPECT_TRUE(intersect_grids(a, below).empty());
}

TEST(IntersectGrids, TouchingRunsBecomeUnknown) {
  const GridZone a = one_column({2, 3}, {6, 7});
  const GridZone b = one_column({5, 6}, {12, 13});
  const GridZone r = intersect_grids(a, b);
  ASSERT_EQ(r.cols.size(), 1u);
  for (int row = 5; row <= 7; ++row) EXPECT_EQ(r.classify(5, row), Square::Unknown);
  EXPECT_EQ(r.classify(5, 4), Square::Minus);
}

TEST(IntersectGrids, FrameMismatch) {
  GridZone a = one_column({2, 3}, {10, 11});
  GridZone b = a;
  b.frame.h = 0.5;
  EXPECT_THROW(intersect_grids(a, b), ValidationError);
}

TEST(ZoneEnvelope, SandwichesTheZone) {
  const Network net = small_net();
  std::mt19937_64 rng(1);
  for (std::size_t j = 0; j < net.size(); ++j) {
    const ZoneEnvelope e = zone_envelope(net, j, StationSubset::all(4), 1e-3);
    EXPECT_LE(e.gap, 1e-3);
    EXPECT_GT(e.area, 0);
    const double r = noise_limited_radius(net);
    std::uniform_real_distribution<double> u(-r, r);
    for (int k = 0; k < 20000; ++k) {
      const double x = net.station(j)[0] + u(rng), y = net.station(j)[1] + u(rng);
      const Point p{x, y};
      if (net.station_at(p) < 4) continue;
      const bool in = received(net, j, p);
      if (inside_polygon(e.inner, x, y)) {
        EXPECT_TRUE(in);
      }
      if (in) {
        EXPECT_TRUE(inside_polygon(e.outer, x, y));
      }
    }
  }
}

TEST(ZoneGrid, SingleStationDisk) {
  const Network net(2, {Point{0, 0}, Point{50, 0}}, 0.04, 2.0, 2.0);
  const StationSubset solo({0}, false);
  const double eps_tilde = 0.05;
  const GridZone g = build_zone_grid(net, 0, solo, eps_tilde);
  const double r = noise_limited_radius(net);
  const GridFrame& f = g.frame;
  std::size_t unknown = 0;
  for (std::int64_t c = g.col_begin - 2; c < g.col_end() + 2; ++c) {
    for (std::int64_t row = f.row_of(-r) - 2; row <= f.row_of(r) + 2; ++row) {
      const double x0 = f.x0 + c * f.h, x1 = x0 + f.h, y0 = f.y0 + row * f.h, y1 = y0 + f.h;
      const double far = std::hypot(std::max(std::abs(x0), std::abs(x1)),
                                    std::max(std::abs(y0), std::abs(y1)));
      const double nx = std::clamp(0.0, x0, x1), ny = std::clamp(0.0, y0, y1);
      const double near = std::hypot(nx, ny);
      switch (g.classify(c, row)) {
        case Square::Plus: EXPECT_LE(far, r); break;
        case Square::Minus: EXPECT_GE(near, r); break;
        case Square::Unknown: ++unknown; break;
      }
    }
  }
  EXPECT_LE(unknown * f.h * f.h, eps_tilde * M_PI * r * r);
  EXPECT_EQ(g.classify(f.col_of(0.0), f.row_of(0.0)), Square::Plus);
}

TEST(Locator, TwoStations) {
  const Network net(2, {Point{0, 0}, Point{1, 0.5}}, 0.02, 2.0, 2.0);
  for (std::size_t i = 0; i < 2; ++i) {
    const SicLocator loc = build_locator(net, i, 0.5, {1e-4});
    EXPECT_EQ(loc.zones.size() + loc.empty_orderings, 2u);
    EXPECT_EQ(loc.zones.size(), 2u);
    EXPECT_EQ(loc.locate(Point{net.station(i)[0] + 1e-3, net.station(i)[1]}), LocResult::Plus);
    EXPECT_EQ(loc.locate(Point{100, 100}), LocResult::Minus);
  }
}

TEST(Locator, Preconditions) {
  const Network net = small_net();
  EXPECT_THROW(build_locator(net, 0, 0.0), PreconditionError);
  EXPECT_THROW(build_locator(net, 0, 1.0), PreconditionError);
  const Network cubic(2, {Point{0, 0}, Point{1, 0}}, 0.01, 2.0, 3.0);
  EXPECT_THROW(build_locator(cubic, 0, 0.1), PreconditionError);
  const Network flat(2, {Point{0, 0}, Point{1, 0}}, 0.01, 1.0, 2.0);
  EXPECT_THROW(build_locator(flat, 0, 0.1), PreconditionError);
  const Network line(1, {Point{0.0}, Point{1.0}}, 0.01, 2.0, 2.0);
  EXPECT_THROW(build_locator(line, 0, 0.1), PreconditionError);
  EXPECT_THROW(build_locator(net, 7, 0.1), ValidationError);
}

TEST(Locator, EffectiveEps) {
  const Network net = small_net();
  const double kappa = 1.0;
  EXPECT_NEAR(effective_eps(net, 0.1, 1.0), 0.1 * 0.01 * 1.5 * kappa * kappa / 1024, 1e-18);
  EXPECT_NEAR(effective_eps(net, 0.1, 2.0), effective_eps(net, 0.1, 1.0) / 2, 1e-18);
}

TEST(Locator, SoundOnRandomQueries) {
  const Network net = small_net();
  for (std::size_t i = 0; i < net.size(); ++i) {
    const SicLocator loc = build_locator(net, i, 0.2, {1e-3});
    const SoundnessReport s = locator_soundness(loc, net, 20000, 20000, 3 + i);
    EXPECT_EQ(s.plus_violations, 0u);
    EXPECT_EQ(s.minus_violations, 0u);
    EXPECT_GT(s.plus_checked, 0u);
    EXPECT_EQ(s.minus_checked, 20000u);
  }
}

TEST(Locator, QueriesAgreeWithDecoder) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 3; ++t) {
    const Network net = ref::random_network(rng, 2, 4, 0.02, 1.5);
    const SicLocator loc = build_locator(net, t % 4, 0.3, {1e-3});
    for (int k = 0; k < 20000; ++k) {
      const Point p = ref::random_point(rng, net, 3.0);
      if (net.station_at(p) < net.size()) continue;
      const LocResult r = loc.locate(p);
      if (r == LocResult::Unknown) continue;
      EXPECT_EQ(r == LocResult::Plus, receives_with_sic(net, t % 4, p).success);
    }
  }
}

TEST(Locator, FractionBelowEps) {
  const Network net = small_net();
  const SicLocator loc = build_locator(net, 1, 0.3, {1.0});
  const AreaFraction a = unknown_area_fraction(loc, net, 200000, 5);
  EXPECT_LE(a.upper95, 0.3);
  EXPECT_LE(a.ci_low, a.fraction);
  EXPECT_GE(a.ci_high, a.fraction);
}

TEST(Locator, FractionScalesWithEps) {
  const Network net = small_net();
  const SicLocator coarse = build_locator(net, 0, 0.4, {1e-5});
  const SicLocator fine = build_locator(net, 0, 0.1, {1e-5});
  EXPECT_NEAR(coarse.frame.h / fine.frame.h, 4.0, 1e-9);
  const double fc = square_fraction(coarse, net), ff = square_fraction(fine, net);
  ASSERT_GT(ff, 0.0);
  EXPECT_GT(fc / ff, 3.0);
  EXPECT_LT(fc / ff, 5.0);
}

TEST(Locator, IsolatedStationsActLikeDisks) {
  const Network net(2, {Point{0, 0}, Point{100, 0}}, 0.05, 2.0, 2.0);
  const SicLocator loc = build_locator(net, 0, 0.1, {1e-6});
  EXPECT_EQ(loc.zones.size(), 1u);
  EXPECT_EQ(loc.empty_orderings, 1u);
  const AreaFraction a = unknown_area_fraction(loc, net, 100000, 6);
  EXPECT_LE(a.upper95, 0.1);
}

TEST(LocatorIo, RoundTrip) {
  const Network net = small_net();
  const SicLocator loc = build_locator(net, 2, 0.3, {1e-3});
  std::stringstream buf;
  write_locator(loc, buf);
  const std::string bytes = buf.str();
  EXPECT_EQ(bytes.substr(0, 4), "SICL");
  EXPECT_EQ(static_cast<unsigned char>(bytes[4]), kLocatorVersion);
  EXPECT_EQ(static_cast<unsigned char>(bytes[5]), 0);
  std::stringstream in(bytes);
  const SicLocator back = read_locator(in);
  ASSERT_EQ(back.zones.size(), loc.zones.size());
  for (std::size_t k = 0; k < loc.zones.size(); ++k) {
    EXPECT_EQ(back.zones[k].ordering, loc.zones[k].ordering);
    EXPECT_EQ(back.zones[k].grid, loc.zones[k].grid);
  }
  EXPECT_EQ(back.frame, loc.frame);
  EXPECT_EQ(back.eps_tilde, loc.eps_tilde);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 5000; ++k) {
    const Point p = ref::random_point(rng, net, 2.0);
    EXPECT_EQ(back.locate(p), loc.locate(p));
  }
}

TEST(LocatorIo, RejectsDamage) {
  const Network net = small_net();
  const SicLocator loc = build_locator(net, 0, 0.3, {1e-3});
  std::stringstream buf;
  write_locator(loc, buf);
  const std::string good = buf.str();
  auto load = [](std::string s) {
    std::stringstream in(s);
    return read_locator(in);
  };
  EXPECT_THROW(load(good.substr(0, good.size() - 3)), ValidationError);
  std::string magic = good;
  magic[0] = 'X';
  EXPECT_THROW(load(magic), ValidationError);
  std::string version = good;
  version[4] = 9;
  EXPECT_THROW(load(version), ValidationError);
  EXPECT_THROW(load(good + "z"), ValidationError);
}

TEST(LocatorAudit, DetectsWidenedPlusBand) {
  const Network net = small_net();
  SicLocator loc = build_locator(net, 0, 0.3, {1e-3});
  EXPECT_TRUE(run_locate_audit(net, loc, 1, 30000).passed());
  for (auto& z : loc.zones) {
    for (auto& c : z.grid.cols) {
      if (c.empty) continue;
      c.upper.lo += 40;
      c.upper.hi += 40;
    }
  }
  loc.build_index();
  const AuditReport rep = run_locate_audit(net, loc, 1, 30000);
  EXPECT_FALSE(rep.passed());
}
