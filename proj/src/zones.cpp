#include "sicmap/zones.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>

#include "sicmap/errors.hpp"
#include "sicmap/geom.hpp"
#include "sicmap/parallel.hpp"

namespace sicmap {

namespace {

void require_zone_regime(const Network& net) {
  if (!(net.beta() > 1.0)) throw PreconditionError("zone structure requires beta > 1");
  if (!(net.noise() > 0.0)) throw PreconditionError("zone structure requires N > 0");
  if (net.dim() != 1 && net.dim() != 2) throw PreconditionError("zones support d = 1 or d = 2");
}

struct Box {
  double lo[2] = {0, 0};
  double hi[2] = {0, 0};
};

Box ball_box(const Network& net, std::size_t i) {
  const double r = noise_limited_radius(net);
  Box b;
  for (std::size_t k = 0; k < net.dim(); ++k) {
    b.lo[k] = net.station(i)[k] - r;
    b.hi[k] = net.station(i)[k] + r;
  }
  return b;
}

struct Hit {
  std::uint32_t cell;
  double x;
  double y;
};

// Member points per ordering, merged in scan order so the result does not
// depend on the thread count.
class Collector {
 public:
  Collector(SicZone& zone, std::size_t dim) : zone_(zone), dim_(dim), seen_(zone.cells.size(), 0) {}

  void add(const Hit& h) {
    SicCell& c = zone_.cells[h.cell];
    const Point p = dim_ == 1 ? Point{h.x} : Point{h.x, h.y};
    if (!c.witness) {
      c.witness = p;
      c.status = CellStatus::NonemptyVerified;
    }
    const std::size_t k = seen_[h.cell]++;
    if (c.samples.size() < kMaxCellSamples) {
      c.samples.push_back(p);
    } else {
      const std::size_t slot = std::uniform_int_distribution<std::size_t>(0, k)(rng_);
      if (slot < kMaxCellSamples) c.samples[slot] = p;
    }
  }

 private:
  SicZone& zone_;
  std::size_t dim_;
  std::vector<std::size_t> seen_;
  std::mt19937_64 rng_{0};
};

// Grid of nx by ny cell-center samples over box.  `test` returns the
// ordering index a sample belongs to, -1 for none and -2 for a sample whose
// label prefix is unknown; the -2 count is returned.
template <class Test>
std::size_t scan(const Box& box, std::size_t nx, std::size_t ny, std::size_t dim, std::size_t cells,
          Test&& test, Collector& out) {
  std::vector<std::vector<Hit>> rows(ny);
  std::vector<std::size_t> unknown(ny, 0);
  const double sx = (box.hi[0] - box.lo[0]) / nx;
  const double sy = dim == 2 ? (box.hi[1] - box.lo[1]) / ny : 0.0;
  parallel_for(ny, [&](std::size_t r) {
    std::vector<std::uint16_t> per_cell(cells, 0);
    const double y = dim == 2 ? box.lo[1] + (r + 0.5) * sy : 0.0;
    for (std::size_t c = 0; c < nx; ++c) {
      const double x = box.lo[0] + (c + 0.5) * sx;
      const long k = test(x, y);
      if (k == -2) ++unknown[r];
      if (k < 0) continue;
      if (per_cell[k] >= kMaxCellSamples) {
        // Keep the witness-bearing first hits only; later rows fill the rest.
        continue;
      }
      ++per_cell[k];
      rows[r].push_back({static_cast<std::uint32_t>(k), x, y});
    }
  });
  std::size_t total = 0;
  for (std::size_t r = 0; r < ny; ++r) {
    for (const Hit& h : rows[r]) out.add(h);
    total += unknown[r];
  }
  return total;
}

// True when some stage of `ordering` fails everywhere in box: the best case
// signal (nearest box point) loses to the worst case interference (farthest
// box point) plus noise.
bool stage_impossible(const Network& net, const std::vector<std::size_t>& ordering,
                      const Box& box) {
  const std::size_t n = net.size();
  const std::size_t dim = net.dim();
  std::vector<double> weakest(n), strongest(n);
  for (std::size_t t = 0; t < n; ++t) {
    double near2 = 0.0, far2 = 0.0;
    for (std::size_t a = 0; a < dim; ++a) {
      const double c = net.station(t)[a];
      const double dn = std::max({box.lo[a] - c, 0.0, c - box.hi[a]});
      const double df = std::max(c - box.lo[a], box.hi[a] - c);
      near2 += dn * dn;
      far2 += df * df;
    }
    strongest[t] = near2 > 0.0 ? std::pow(near2, -net.alpha() / 2) : INFINITY;
    weakest[t] = std::pow(far2, -net.alpha() / 2);
  }
  std::vector<bool> active(n, true);
  for (std::size_t s : ordering) {
    double interference = net.noise();
    for (std::size_t t = 0; t < n; ++t) {
      if (t != s && active[t]) interference += weakest[t];
    }
    if (strongest[s] < net.beta() * interference) return true;
    active[s] = false;
  }
  return false;
}

}  // namespace

SicZone build_sic_zone(const Network& net, std::size_t i, std::size_t resolution) {
  require_zone_regime(net);
  return build_sic_zone(net, i, resolution, build_hds(net));
}

SicZone build_sic_zone(const Network& net, std::size_t i, std::size_t resolution,
                       const Hds& hds) {
  require_zone_regime(net);
  if (i >= net.size()) throw ValidationError("station index out of range");
  if (resolution < 2) throw ValidationError("resolution must be at least 2");
  const NcoSet nco = extract_nco(hds, i);
  const std::size_t n = net.size();
  const std::size_t dim = net.dim();

  SicZone zone;
  zone.station = i;
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (const auto& e : nco.entries) {
    index.emplace(e.ordering.stations, zone.cells.size());
    zone.cells.push_back(SicCell{e.ordering, CellStatus::EmptyUndetected, std::nullopt, {}});
  }

  Collector collect(zone, dim);
  const Box ball = ball_box(net, i);
  zone.unmatched_samples = scan(
      ball, resolution, dim == 2 ? resolution : 1, dim, zone.cells.size(),
      [&](double x, double y) -> long {
        const Point p = dim == 1 ? Point{x} : Point{x, y};
        if (net.station_at(p) < n) return -1;
        const auto prefix = label_of(net, p).truncated(i);
        const auto it = index.find(prefix);
        if (it == index.end()) return -2;
        std::vector<double> e(n);
        net.signal_strengths(p, e);
        if (!cell_member_from_strengths(e, prefix, net.noise(), net.beta())) return -1;
        return static_cast<long>(it->second);
      },
      collect);

  // Refinement inside each undetected ordering's own arrangement cells.
  constexpr std::size_t kRefineCap = 1u << 20;
  for (std::size_t k = 0; k < zone.cells.size(); ++k) {
    if (zone.cells[k].status == CellStatus::NonemptyVerified) continue;
    Box region;
    region.lo[0] = region.lo[1] = INFINITY;
    region.hi[0] = region.hi[1] = -INFINITY;
    for (std::uint32_t c : nco.entries[k].cells) {
      const ArrCell& cell = hds.arr.cells[c];
      if (cell.unbounded) {
        region = ball;
        break;
      }
      for (const Point& v : cell.polygon) {
        for (std::size_t a = 0; a < dim; ++a) {
          region.lo[a] = std::min(region.lo[a], v[a]);
          region.hi[a] = std::max(region.hi[a], v[a]);
        }
      }
    }
    // Every station of the ordering has to be heard, so each ball bounds the cell.
    const double radius = noise_limited_radius(net);
    bool empty = false;
    for (std::size_t a = 0; a < dim; ++a) {
      region.lo[a] = std::max(region.lo[a], ball.lo[a]);
      region.hi[a] = std::min(region.hi[a], ball.hi[a]);
      for (std::size_t s : zone.cells[k].ordering.stations) {
        region.lo[a] = std::max(region.lo[a], net.station(s)[a] - radius);
        region.hi[a] = std::min(region.hi[a], net.station(s)[a] + radius);
      }
      if (!(region.lo[a] < region.hi[a])) empty = true;
    }
    if (empty) continue;
    const auto& ordering = zone.cells[k].ordering.stations;
    for (int doubling = 1; doubling <= 3 && zone.cells[k].status != CellStatus::NonemptyVerified;
         ++doubling) {
      const double step = (ball.hi[0] - ball.lo[0]) / (resolution << doubling);
      std::size_t nx = std::max<std::size_t>(2, std::ceil((region.hi[0] - region.lo[0]) / step));
      std::size_t ny = dim == 2
                           ? std::max<std::size_t>(2, std::ceil((region.hi[1] - region.lo[1]) / step))
                           : 1;
      while (nx * ny > kRefineCap) {
        nx = std::max<std::size_t>(2, nx / 2);
        if (dim == 2) ny = std::max<std::size_t>(2, ny / 2);
      }
      // Tiles of the sample grid that no stage can decode in are skipped.
      const std::size_t tiles = 8;
      const double sx = (region.hi[0] - region.lo[0]) / nx;
      const double sy = (region.hi[1] - region.lo[1]) / ny;
      for (std::size_t tr = 0; tr < (dim == 2 ? tiles : 1); ++tr) {
        const std::size_t r0 = dim == 2 ? ny * tr / tiles : 0;
        const std::size_t r1 = dim == 2 ? ny * (tr + 1) / tiles : 1;
        for (std::size_t tc = 0; tc < tiles; ++tc) {
          const std::size_t c0 = nx * tc / tiles, c1 = nx * (tc + 1) / tiles;
          if (c0 == c1 || r0 == r1) continue;
          Box tile = region;
          tile.lo[0] = region.lo[0] + c0 * sx;
          tile.hi[0] = region.lo[0] + c1 * sx;
          if (dim == 2) {
            tile.lo[1] = region.lo[1] + r0 * sy;
            tile.hi[1] = region.lo[1] + r1 * sy;
          }
          if (stage_impossible(net, ordering, tile)) continue;
          scan(tile, c1 - c0, r1 - r0, dim, zone.cells.size(),
               [&](double x, double y) -> long {
                 const Point p = dim == 1 ? Point{x} : Point{x, y};
                 if (net.station_at(p) < n) return -1;
                 std::vector<double> e(n);
                 net.signal_strengths(p, e);
                 if (!cell_member_from_strengths(e, ordering, net.noise(), net.beta())) return -1;
                 return static_cast<long>(k);
               },
               collect);
        }
      }
    }
  }

  for (const auto& c : zone.cells) {
    if (c.status == CellStatus::NonemptyVerified) ++zone.nonempty;
  }
  return zone;
}

ContributorReport compactness_contributor_check(const Network& net, std::size_t i,
                                                std::size_t samples, std::uint64_t seed,
                                                double threshold) {
  require_zone_regime(net);
  if (!is_compact(net, threshold)) {
    throw PreconditionError("contributor check requires a compact network");
  }
  if (i >= net.size()) throw ValidationError("station index out of range");
  const double r = noise_limited_radius(net);
  const Point& c = net.station(i);
  const std::size_t dim = net.dim();

  std::vector<Point> pts;
  pts.reserve(samples);
  const std::size_t grid_budget = samples / 2;
  const std::size_t g = dim == 2 ? static_cast<std::size_t>(std::sqrt(grid_budget)) : grid_budget;
  for (std::size_t a = 0; a < (dim == 2 ? g : 1); ++a) {
    for (std::size_t b = 0; b < g; ++b) {
      const double x = c[0] - r + 2 * r * (b + 0.5) / g;
      if (dim == 1) {
        pts.push_back(Point{x});
      } else {
        const double y = c[1] - r + 2 * r * (a + 0.5) / g;
        if ((x - c[0]) * (x - c[0]) + (y - c[1]) * (y - c[1]) <= r * r) pts.push_back(Point{x, y});
      }
    }
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-r, r);
  while (pts.size() < samples) {
    const double dx = u(rng);
    const double dy = dim == 2 ? u(rng) : 0.0;
    if (dx * dx + dy * dy > r * r) continue;
    pts.push_back(dim == 1 ? Point{c[0] + dx} : Point{c[0] + dx, c[1] + dy});
  }

  ContributorReport rep;
  rep.station = i;
  std::vector<std::optional<CancellationOrdering>> chain(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) {
    if (net.station_at(pts[k]) < net.size()) return;
    SicDecodeResult d = receives_with_sic(net, i, pts[k]);
    if (d.success) chain[k] = std::move(d.chain);
  });
  for (std::size_t k = 0; k < pts.size(); ++k) {
    ++rep.samples;
    if (!chain[k]) continue;
    ++rep.successes;
    auto& list = rep.chains_by_first[chain[k]->stations.front()];
    if (std::find(list.begin(), list.end(), *chain[k]) == list.end()) list.push_back(*chain[k]);
  }
  rep.contributors = rep.chains_by_first.size();
  for (auto& [first, list] : rep.chains_by_first) {
    std::sort(list.begin(), list.end());
    if (list.size() > 1) ++rep.violations;
  }
  return rep;
}

std::size_t Scene::count_owner(std::int32_t s) const {
  return static_cast<std::size_t>(std::count(owner.begin(), owner.end(), s));
}

std::size_t Scene::count_owner_depth(std::int32_t s, std::size_t max_depth) const {
  std::size_t total = 0;
  for (std::size_t k = 0; k < owner.size(); ++k) {
    if (owner[k] == s && depth[k] <= max_depth) ++total;
  }
  return total;
}

namespace {

std::vector<std::array<double, 4>> voronoi_edges(const Network& net, const double box[4]) {
  std::vector<std::array<double, 4>> out;
  const std::size_t n = net.size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const Point& p = net.station(a);
      const Point& q = net.station(b);
      // Bisector through the midpoint with direction perpendicular to pq.
      const double mx = 0.5 * (p[0] + q[0]), my = 0.5 * (p[1] + q[1]);
      const double dx = -(q[1] - p[1]), dy = q[0] - p[0];
      double t0 = -INFINITY, t1 = INFINITY;
      auto clip = [&](double coef, double rhs) {
        // Keep coef * t <= rhs.
        if (coef == 0.0) {
          if (rhs < 0.0) t0 = INFINITY;
          return;
        }
        const double t = rhs / coef;
        if (coef > 0) t1 = std::min(t1, t);
        else t0 = std::max(t0, t);
      };
      clip(dx, box[2] - mx);
      clip(-dx, mx - box[0]);
      clip(dy, box[3] - my);
      clip(-dy, my - box[1]);
      for (std::size_t c = 0; c < n && t0 < t1; ++c) {
        if (c == a || c == b) continue;
        // d(x, p)^2 <= d(x, s_c)^2 is linear in x: 2 x.(s_c - p) <= |s_c|^2 - |p|^2.
        const Point& s = net.station(c);
        const double nx = 2 * (s[0] - p[0]), ny = 2 * (s[1] - p[1]);
        const double rhs = s[0] * s[0] + s[1] * s[1] - p[0] * p[0] - p[1] * p[1];
        clip(nx * dx + ny * dy, rhs - nx * mx - ny * my);
      }
      if (t0 < t1) out.push_back({mx + t0 * dx, my + t0 * dy, mx + t1 * dx, my + t1 * dy});
    }
  }
  return out;
}

}  // namespace

Scene render_map(const Network& net, const RenderOptions& opts) {
  if (net.dim() != 1 && net.dim() != 2) throw PreconditionError("maps support d = 1 or d = 2");
  if (!(net.noise() > 0.0)) throw PreconditionError("maps require N > 0");
  if (opts.mode == MapMode::SicStation && opts.station >= net.size()) {
    throw ValidationError("station index out of range");
  }
  const std::size_t res = opts.resolution ? opts.resolution : (net.dim() == 2 ? 1024 : 4096);
  if (res < 2 || res > kMaxResolution) {
    throw ValidationError("resolution must be in [2, " + std::to_string(kMaxResolution) + "]");
  }
  const double r = noise_limited_radius(net);
  Scene sc;
  sc.dim = net.dim();
  sc.stations = net.stations();
  double lo[2] = {INFINITY, INFINITY}, hi[2] = {-INFINITY, -INFINITY};
  for (const auto& s : net.stations()) {
    for (std::size_t k = 0; k < net.dim(); ++k) {
      lo[k] = std::min(lo[k], s[k] - r);
      hi[k] = std::max(hi[k], s[k] + r);
    }
  }
  if (net.dim() == 2) {
    const double side = std::max(hi[0] - lo[0], hi[1] - lo[1]);
    const double cx = 0.5 * (lo[0] + hi[0]), cy = 0.5 * (lo[1] + hi[1]);
    sc.box[0] = cx - side / 2;
    sc.box[1] = cy - side / 2;
    sc.box[2] = cx + side / 2;
    sc.box[3] = cy + side / 2;
    sc.width = sc.height = res;
  } else {
    sc.box[0] = lo[0];
    sc.box[2] = hi[0];
    sc.width = res;
    sc.height = 1;
  }
  sc.owner.assign(sc.width * sc.height, -1);
  sc.depth.assign(sc.width * sc.height, 0);
  const double px = (sc.box[2] - sc.box[0]) / sc.width;
  const double py = net.dim() == 2 ? (sc.box[3] - sc.box[1]) / sc.height : 0.0;
  const std::size_t n = net.size();

  parallel_for(sc.height, [&](std::size_t row) {
    for (std::size_t col = 0; col < sc.width; ++col) {
      const double x = sc.box[0] + (col + 0.5) * px;
      const double y = sc.box[3] - (row + 0.5) * py;
      const Point p = net.dim() == 1 ? Point{x} : Point{x, y};
      const std::size_t idx = row * sc.width + col;
      const std::size_t at = net.station_at(p);
      if (at < n) {
        if (opts.mode != MapMode::SicStation || at == opts.station) {
          sc.owner[idx] = static_cast<std::int32_t>(at);
        }
        continue;
      }
      switch (opts.mode) {
        case MapMode::NoSic:
          for (std::size_t j = 0; j < n; ++j) {
            if (received(net, j, p)) {
              sc.owner[idx] = static_cast<std::int32_t>(j);
              break;
            }
          }
          break;
        case MapMode::SicStation: {
          const SicDecodeResult d = receives_with_sic(net, opts.station, p);
          if (d.success && d.chain.size() - 1 <= opts.max_depth) {
            sc.owner[idx] = static_cast<std::int32_t>(opts.station);
            sc.depth[idx] = static_cast<std::uint8_t>(std::min<std::size_t>(255, d.chain.size() - 1));
          }
          break;
        }
        case MapMode::SicAll: {
          // Decode as far as the greedy walk gets; color by the last success.
          const DistanceLabel l = label_of(net, p);
          const SicDecodeResult d = receives_with_sic(net, l.order.back(), p);
          const std::size_t ok = d.success ? d.chain.size() : d.chain.size() - 1;
          if (ok > 0) {
            sc.owner[idx] = static_cast<std::int32_t>(d.chain.stations[ok - 1]);
            sc.depth[idx] = static_cast<std::uint8_t>(std::min<std::size_t>(255, ok - 1));
          }
          break;
        }
      }
    }
  });
  if (opts.voronoi_overlay && net.dim() == 2) sc.voronoi = voronoi_edges(net, sc.box);
  return sc;
}

std::string scene_to_svg(const Scene& sc) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                  "#8c564b", "#e377c2", "#17becf", "#bcbd22", "#7f7f7f"};
  const std::size_t strip = 40;
  const std::size_t w = sc.width;
  const std::size_t h = sc.dim == 2 ? sc.height : 2 * strip + 10;
  std::ostringstream os;
  os << std::setprecision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\" shape-rendering=\"crispEdges\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";
  auto color = [&](std::int32_t s) { return palette[s % 10]; };
  auto opacity = [](std::uint8_t d) { return std::max(0.3, 1.0 - 0.25 * d); };
  auto emit_row = [&](std::size_t row, double y, double height, bool deep_only) {
    std::size_t c = 0;
    while (c < w) {
      const std::size_t idx = row * w + c;
      const std::int32_t o = sc.owner[idx];
      const std::uint8_t d = sc.depth[idx];
      std::size_t e = c + 1;
      while (e < w && sc.owner[row * w + e] == o && sc.depth[row * w + e] == d) ++e;
      if (o >= 0 && (!deep_only || d > 0)) {
        os << "<rect x=\"" << c << "\" y=\"" << y << "\" width=\"" << e - c << "\" height=\""
           << height << "\" fill=\"" << color(o) << "\" fill-opacity=\"" << opacity(d)
           << "\"/>\n";
      }
      c = e;
    }
  };
  const double sx = w / (sc.box[2] - sc.box[0]);
  if (sc.dim == 2) {
    const double sy = sc.height / (sc.box[3] - sc.box[1]);
    for (std::size_t row = 0; row < sc.height; ++row) emit_row(row, row, 1, false);
    for (const auto& e : sc.voronoi) {
      os << "<line x1=\"" << (e[0] - sc.box[0]) * sx << "\" y1=\"" << (sc.box[3] - e[1]) * sy
         << "\" x2=\"" << (e[2] - sc.box[0]) * sx << "\" y2=\"" << (sc.box[3] - e[3]) * sy
         << "\" stroke=\"#444444\" stroke-width=\"1\" fill=\"none\"/>\n";
    }
    for (std::size_t k = 0; k < sc.stations.size(); ++k) {
      const double x = (sc.stations[k][0] - sc.box[0]) * sx;
      const double y = (sc.box[3] - sc.stations[k][1]) * sy;
      os << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"#000000\"/>\n";
      os << "<text x=\"" << x + 5 << "\" y=\"" << y - 5 << "\" font-size=\"12\">s" << k + 1
         << "</text>\n";
    }
  } else {
    // Upper strip: every decoded pixel; lower strip: pixels needing cancellation.
    emit_row(0, 0, strip, false);
    emit_row(0, strip + 10, strip, true);
    for (std::size_t k = 0; k < sc.stations.size(); ++k) {
      const double x = (sc.stations[k][0] - sc.box[0]) * sx;
      os << "<line x1=\"" << x << "\" y1=\"0\" x2=\"" << x << "\" y2=\"" << h
         << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
      os << "<text x=\"" << x + 3 << "\" y=\"12\" font-size=\"12\">s" << k + 1 << "</text>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sicmap
