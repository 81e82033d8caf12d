#include "sicmap/pointloc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <optional>
#include <random>

#include "sicmap/arrangement.hpp"
#include "sicmap/errors.hpp"
#include "sicmap/parallel.hpp"

namespace sicmap {

using Vec2 = std::array<double, 2>;

std::int64_t GridFrame::col_of(double x) const {
  return static_cast<std::int64_t>(std::floor((x - x0) / h));
}

std::int64_t GridFrame::row_of(double y) const {
  return static_cast<std::int64_t>(std::floor((y - y0) / h));
}

const GridColumn* GridZone::column(std::int64_t c) const {
  if (c < col_begin || c >= col_end()) return nullptr;
  return &cols[static_cast<std::size_t>(c - col_begin)];
}

Square GridZone::classify(std::int64_t col, std::int64_t row) const {
  const GridColumn* c = column(col);
  if (!c || c->empty) return Square::Minus;
  if (row < c->lower.lo || row > c->upper.hi) return Square::Minus;
  if (row > c->lower.hi && row < c->upper.lo) return Square::Plus;
  return Square::Unknown;
}

void GridZone::trim() {
  std::size_t a = 0;
  while (a < cols.size() && cols[a].empty) ++a;
  std::size_t b = cols.size();
  while (b > a && cols[b - 1].empty) --b;
  if (a == b) {
    cols.clear();
    return;
  }
  cols = std::vector<GridColumn>(cols.begin() + a, cols.begin() + b);
  col_begin += static_cast<std::int64_t>(a);
}

namespace {

// SINR test and gradient for one station of a restricted network.
class ZoneField {
 public:
  ZoneField(const Network& net, std::size_t j, const StationSubset& active)
      : noise_(net.noise()), beta_(net.beta()), alpha_(net.alpha()) {
    if (!active.contains(j)) throw ValidationError("station must be active in its own zone");
    for (std::size_t k : active.indices()) {
      if (k >= net.size()) throw ValidationError("active station out of range");
      if (k == j) continue;
      others_.push_back({net.station(k)[0], net.station(k)[1]});
    }
    self_ = {net.station(j)[0], net.station(j)[1]};
  }

  const Vec2& center() const { return self_; }

  bool inside(double x, double y) const {
    const double dj = sq(x - self_[0], y - self_[1]);
    if (dj == 0.0) return true;
    double interference = 0.0;
    for (const auto& s : others_) {
      const double d = sq(x - s[0], y - s[1]);
      if (d == 0.0) return false;
      interference += strength(d);
    }
    return meets_threshold(strength(dj) / (interference + noise_), beta_);
  }

  // Outward unit normal of the level set through (x, y), if well defined.
  std::optional<Vec2> outward_normal(double x, double y) const {
    double gx, gy;
    const double dj = sq(x - self_[0], y - self_[1]);
    const double ej = strength(dj);
    double ejx = -alpha_ * ej * (x - self_[0]) / dj;
    double ejy = -alpha_ * ej * (y - self_[1]) / dj;
    double interference = 0.0, ix = 0.0, iy = 0.0;
    for (const auto& s : others_) {
      const double d = sq(x - s[0], y - s[1]);
      const double e = strength(d);
      interference += e;
      ix += -alpha_ * e * (x - s[0]) / d;
      iy += -alpha_ * e * (y - s[1]) / d;
    }
    const double D = interference + noise_;
    gx = ejx * D - ej * ix;
    gy = ejy * D - ej * iy;
    const double len = std::hypot(gx, gy);
    if (!(len > 0.0) || !std::isfinite(len)) return std::nullopt;
    return Vec2{-gx / len, -gy / len};
  }

 private:
  static double sq(double a, double b) { return a * a + b * b; }
  double strength(double d2) const {
    return alpha_ == 2.0 ? 1.0 / d2 : std::pow(d2, -0.5 * alpha_);
  }

  double noise_;
  double beta_;
  double alpha_;
  Vec2 self_{};
  std::vector<Vec2> others_;
};

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; counter-clockwise from the lexicographic minimum.
std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

// Sutherland-Hodgman against n . x <= c.
std::vector<Vec2> clip(const std::vector<Vec2>& poly, const Vec2& nrm, double c) {
  std::vector<Vec2> out;
  const std::size_t m = poly.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& a = poly[k];
    const Vec2& b = poly[(k + 1) % m];
    const double da = nrm[0] * a[0] + nrm[1] * a[1] - c;
    const double db = nrm[0] * b[0] + nrm[1] * b[1] - c;
    if (da <= 0) out.push_back(a);
    if ((da < 0 && db > 0) || (da > 0 && db < 0)) {
      const double t = da / (da - db);
      out.push_back({a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])});
    }
  }
  return out;
}

struct RayHit {
  Vec2 in;
  Vec2 out;
  std::optional<Vec2> normal;
};

ZoneEnvelope envelope_with_rays(const ZoneField& f, std::size_t station, double radius,
                                std::size_t rays) {
  const Vec2 c = f.center();
  const double reach = radius * (1.0 + 1e-8);
  const double tol = 1e-13 * radius;
  const double pad = 1e-9 * radius;
  const double pi = std::acos(-1.0);

  std::vector<RayHit> hit(rays);
  std::vector<Vec2> dir(rays);
  for (std::size_t k = 0; k < rays; ++k) {
    const double th = 2 * pi * (k + 0.5) / rays;
    dir[k] = {std::cos(th), std::sin(th)};
    double lo = 0.0, hi = reach;
    while (f.inside(c[0] + hi * dir[k][0], c[1] + hi * dir[k][1])) hi *= 2;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (f.inside(c[0] + mid * dir[k][0], c[1] + mid * dir[k][1])) lo = mid;
      else hi = mid;
    }
    hit[k].in = {c[0] + lo * dir[k][0], c[1] + lo * dir[k][1]};
    hit[k].out = {c[0] + hi * dir[k][0], c[1] + hi * dir[k][1]};
    const auto n = f.outward_normal(hit[k].out[0], hit[k].out[1]);
    if (n && (*n)[0] * dir[k][0] + (*n)[1] * dir[k][1] > 0) hit[k].normal = n;
  }

  ZoneEnvelope env;
  env.station = station;
  env.center = c;
  env.rays = rays;
  // Each wedge: bounding triangle of the ball sector cut by the tangent
  // half-planes at both of its rays.
  const double far = reach * 1.01 / std::cos(pi / rays);
  for (std::size_t k = 0; k < rays; ++k) {
    const std::size_t k2 = (k + 1) % rays;
    std::vector<Vec2> poly{c,
                           {c[0] + far * dir[k][0], c[1] + far * dir[k][1]},
                           {c[0] + far * dir[k2][0], c[1] + far * dir[k2][1]}};
    for (std::size_t r : {k, k2}) {
      if (!hit[r].normal) continue;
      const Vec2& n = *hit[r].normal;
      poly = clip(poly, n, n[0] * hit[r].out[0] + n[1] * hit[r].out[1] + pad);
    }
    // poly starts at the center; the rest is this wedge's outer chain.
    const Vec2& a = hit[k].in;
    const Vec2& b = hit[k2].in;
    const double wx = b[0] - a[0], wy = b[1] - a[1];
    const double wl = std::hypot(wx, wy);
    for (std::size_t v = 1; v < poly.size(); ++v) {
      env.outer.push_back(poly[v]);
      const double g = wl > 0 ? ((poly[v][0] - a[0]) * wy - (poly[v][1] - a[1]) * wx) / wl
                              : std::hypot(poly[v][0] - a[0], poly[v][1] - a[1]);
      env.gap = std::max(env.gap, g);
    }
  }

  std::vector<Vec2> pts{c};
  for (const auto& h : hit) pts.push_back(h.in);
  env.inner = convex_hull(std::move(pts));
  for (std::size_t k = 0; k < env.inner.size(); ++k) {
    const Vec2& p = env.inner[k];
    const Vec2& q = env.inner[(k + 1) % env.inner.size()];
    env.area += 0.5 * (p[0] * q[1] - q[0] * p[1]);
    env.perimeter += std::hypot(q[0] - p[0], q[1] - p[1]);
  }
  return env;
}

}  // namespace

ZoneEnvelope zone_envelope(const Network& net, std::size_t j, const StationSubset& active,
                           double target_gap) {
  if (net.dim() != 2) throw PreconditionError("zone envelopes are planar");
  if (!(net.beta() > 1.0) || !(net.noise() > 0.0)) {
    throw PreconditionError("zone envelopes require beta > 1 and N > 0");
  }
  const ZoneField f(net, j, active);
  const double radius = noise_limited_radius(net);
  std::size_t rays = 64;
  ZoneEnvelope env = envelope_with_rays(f, j, radius, rays);
  while (env.gap > target_gap && rays < (1u << 16)) {
    rays *= 2;
    env = envelope_with_rays(f, j, radius, rays);
  }
  return env;
}

namespace {

struct Chain {
  std::vector<Vec2> pts;  // nondecreasing x
  double at(double x) const {
    auto it = std::lower_bound(pts.begin(), pts.end(), x,
                               [](const Vec2& p, double v) { return p[0] < v; });
    const Vec2& b = *it;
    const Vec2& a = *(it - 1);
    if (b[0] == x) return b[1];
    return a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0]);
  }
};

std::int32_t clamp_row(double v) {
  constexpr double lim = 2.0e9;
  return static_cast<std::int32_t>(std::clamp(v, -lim, lim));
}

}  // namespace

GridZone grid_from_envelope(const ZoneEnvelope& env, const GridFrame& frame,
                            std::int64_t col_lo, std::int64_t col_hi) {
  GridZone g;
  g.frame = frame;
  if (env.outer.empty()) return g;
  double oxmin = INFINITY, oxmax = -INFINITY;
  for (const auto& v : env.outer) {
    oxmin = std::min(oxmin, v[0]);
    oxmax = std::max(oxmax, v[0]);
  }
  const std::int64_t c0 = std::max(col_lo, frame.col_of(oxmin));
  const std::int64_t c1 = std::min(col_hi, frame.col_of(oxmax));
  if (c0 > c1) return g;
  const std::size_t ncol = static_cast<std::size_t>(c1 - c0 + 1);
  std::vector<double> ymin(ncol, INFINITY), ymax(ncol, -INFINITY);

  const std::size_t m = env.outer.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2& a = env.outer[k];
    const Vec2& b = env.outer[(k + 1) % m];
    const double ex0 = std::min(a[0], b[0]), ex1 = std::max(a[0], b[0]);
    const std::int64_t ca = std::max(c0, frame.col_of(ex0));
    const std::int64_t cb = std::min(c1, frame.col_of(ex1));
    for (std::int64_t c = ca; c <= cb; ++c) {
      const double xa = std::max(ex0, frame.x0 + c * frame.h);
      const double xb = std::min(ex1, frame.x0 + (c + 1) * frame.h);
      double ya, yb;
      if (b[0] == a[0]) {
        ya = a[1];
        yb = b[1];
      } else {
        const double s = (b[1] - a[1]) / (b[0] - a[0]);
        ya = a[1] + s * (xa - a[0]);
        yb = a[1] + s * (xb - a[0]);
      }
      const std::size_t idx = static_cast<std::size_t>(c - c0);
      ymin[idx] = std::min({ymin[idx], ya, yb});
      ymax[idx] = std::max({ymax[idx], ya, yb});
    }
  }

  // Split the inner hull into x-monotone lower and upper chains.
  Chain lower, upper;
  const auto& in = env.inner;
  bool have_inner = in.size() >= 3;
  if (have_inner) {
    const std::size_t right =
        std::max_element(in.begin(), in.end()) - in.begin();  // lexicographic max
    for (std::size_t k = 0; k <= right; ++k) lower.pts.push_back(in[k]);
    for (std::size_t k = right; k < in.size(); ++k) upper.pts.push_back(in[k]);
    upper.pts.push_back(in[0]);
    std::reverse(upper.pts.begin(), upper.pts.end());
  }
  const double ixmin = have_inner ? in.front()[0] : INFINITY;
  const double ixmax = have_inner ? lower.pts.back()[0] : -INFINITY;

  g.col_begin = c0;
  g.cols.resize(ncol);
  const double h = frame.h;
  for (std::size_t idx = 0; idx < ncol; ++idx) {
    if (!(ymin[idx] <= ymax[idx])) continue;
    GridColumn& col = g.cols[idx];
    col.empty = false;
    const std::int32_t slo = clamp_row(std::floor((ymin[idx] - frame.y0) / h));
    const std::int32_t shi = clamp_row(std::floor((ymax[idx] - frame.y0) / h));
    const std::int64_t c = c0 + static_cast<std::int64_t>(idx);
    const double xa = frame.x0 + c * h, xb = frame.x0 + (c + 1) * h;
    std::int32_t plo = 1, phi = 0;
    if (xa > ixmin && xb < ixmax) {
      const double lo = std::max(lower.at(xa), lower.at(xb));
      const double hi = std::min(upper.at(xa), upper.at(xb));
      plo = clamp_row(std::ceil((lo - frame.y0) / h + 1e-9));
      phi = clamp_row(std::floor((hi - frame.y0) / h - 1e-9) - 1);
    }
    if (plo <= phi) {
      col.lower = {std::min(slo, plo - 1), plo - 1};
      col.upper = {phi + 1, std::max(shi, phi + 1)};
    } else {
      col.lower = col.upper = {slo, shi};
    }
  }
  g.trim();
  return g;
}

GridZone build_zone_grid(const Network& net, std::size_t j, const StationSubset& active,
                         double eps_tilde) {
  if (!(eps_tilde > 0.0)) throw PreconditionError("eps_tilde must be positive");
  const ZoneEnvelope rough = zone_envelope(net, j, active, INFINITY);
  const double h = eps_tilde * rough.area / (4.0 * rough.perimeter);
  const ZoneEnvelope env = zone_envelope(net, j, active, h / 4);
  const double r = noise_limited_radius(net);
  GridFrame frame{net.station(j)[0] - r - 2 * h, net.station(j)[1] - r - 2 * h, h};
  return grid_from_envelope(env, frame, INT64_MIN / 4, INT64_MAX / 4);
}

GridZone intersect_grids(const GridZone& a, const GridZone& b) {
  if (!(a.frame == b.frame)) throw ValidationError("grids use different frames");
  GridZone g;
  g.frame = a.frame;
  const std::int64_t cb = std::max(a.col_begin, b.col_begin);
  const std::int64_t ce = std::min(a.col_end(), b.col_end());
  if (cb >= ce) return g;
  g.col_begin = cb;
  g.cols.resize(static_cast<std::size_t>(ce - cb));
  for (std::int64_t c = cb; c < ce; ++c) {
    const GridColumn& x = *a.column(c);
    const GridColumn& y = *b.column(c);
    GridColumn& o = g.cols[static_cast<std::size_t>(c - cb)];
    if (x.empty || y.empty) continue;
    Run lower{std::max(x.lower.lo, y.lower.lo), std::max(x.lower.hi, y.lower.hi)};
    Run upper{std::min(x.upper.lo, y.upper.lo), std::min(x.upper.hi, y.upper.hi)};
    if (lower.lo > upper.hi) continue;
    if (upper.lo <= lower.hi) {
      // No common '+' row: the whole overlap is undetermined.
      lower = upper = Run{lower.lo, upper.hi};
    }
    o.empty = false;
    o.lower = lower;
    o.upper = upper;
  }
  g.trim();
  return g;
}

GridZone intersect_grids(const std::vector<GridZone>& grids) {
  if (grids.empty()) throw ValidationError("nothing to intersect");
  GridZone g = grids.front();
  for (std::size_t k = 1; k < grids.size() && !g.empty(); ++k) g = intersect_grids(g, grids[k]);
  if (g.empty()) g.frame = grids.front().frame;
  return g;
}

const char* to_string(LocResult r) {
  switch (r) {
    case LocResult::Plus: return "PLUS";
    case LocResult::Minus: return "MINUS";
    case LocResult::Unknown: return "UNKNOWN";
  }
  return "?";
}

void SicLocator::build_index() {
  slabs_.clear();
  std::vector<std::int64_t> cuts;
  for (const auto& z : zones) {
    if (z.grid.empty()) continue;
    cuts.push_back(z.grid.col_begin);
    cuts.push_back(z.grid.col_end());
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (std::size_t t = 0; t + 1 < cuts.size(); ++t) {
    const std::int64_t left = cuts[t], end = cuts[t + 1];
    struct Entry {
      std::int32_t lowest, highest;
      std::uint32_t zone;
    };
    std::vector<Entry> entries;
    for (std::uint32_t k = 0; k < zones.size(); ++k) {
      const GridZone& g = zones[k].grid;
      if (g.empty() || g.col_begin > left || g.col_end() < end) continue;
      std::int32_t lo = INT32_MAX, hi = INT32_MIN;
      for (std::int64_t c = left; c < end; ++c) {
        const GridColumn* col = g.column(c);
        if (col->empty) continue;
        lo = std::min(lo, col->lower.lo);
        hi = std::max(hi, col->upper.hi);
      }
      if (lo <= hi) entries.push_back({lo, hi, k});
    }
    if (entries.empty()) continue;
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      return a.lowest != b.lowest ? a.lowest < b.lowest : a.zone < b.zone;
    });
    Slab s;
    s.left = left;
    std::int32_t running = INT32_MIN;
    for (const auto& e : entries) {
      s.zone.push_back(e.zone);
      s.lowest.push_back(e.lowest);
      s.highest.push_back(e.highest);
      running = std::max(running, e.highest);
      s.prefix_max.push_back(running);
    }
    slabs_.emplace(end - 1, std::move(s));
  }
}

LocResult SicLocator::locate_square(std::int64_t col, std::int64_t row) const {
  const auto it = slabs_.lower_bound(col);
  if (it == slabs_.end() || it->second.left > col) return LocResult::Minus;
  const Slab& s = it->second;
  auto k = static_cast<std::ptrdiff_t>(std::upper_bound(s.lowest.begin(), s.lowest.end(), row) -
                                       s.lowest.begin()) -
           1;
  bool unknown = false;
  for (; k >= 0 && s.prefix_max[k] >= row; --k) {
    if (s.highest[k] < row) continue;
    const Square q = zones[s.zone[k]].grid.classify(col, row);
    if (q == Square::Plus) return LocResult::Plus;
    if (q == Square::Unknown) unknown = true;
  }
  return unknown ? LocResult::Unknown : LocResult::Minus;
}

LocResult SicLocator::locate(const Point& p) const {
  if (p.dim() != 2) throw ValidationError("locator queries are planar points");
  const double cx = (p[0] - frame.x0) / frame.h;
  const double cy = (p[1] - frame.y0) / frame.h;
  constexpr double lim = 4.0e18;
  if (!(std::abs(cx) < lim && std::abs(cy) < lim)) return LocResult::Minus;
  return locate_square(frame.col_of(p[0]), frame.row_of(p[1]));
}

double effective_eps(const Network& net, double eps, double c1) {
  const double kappa = min_pair_dist(net);
  return eps * net.noise() * net.beta() * kappa * kappa /
         (c1 * std::pow(static_cast<double>(net.size()), 5.0));
}

SicLocator build_locator(const Network& net, std::size_t i, double eps,
                         const LocatorOptions& opts) {
  if (net.dim() != 2) throw PreconditionError("locators are built for d = 2");
  if (net.alpha() != 2.0) throw PreconditionError("locators require alpha = 2");
  if (!(net.beta() > 1.0)) throw PreconditionError("locators require beta > 1");
  if (!(net.noise() > 0.0)) throw PreconditionError("locators require N > 0");
  if (!(eps > 0.0 && eps < 1.0)) throw PreconditionError("eps must lie in (0, 1)");
  if (!(opts.c1 > 0.0)) throw PreconditionError("c1 must be positive");
  if (net.size() > 64) throw PreconditionError("locators support at most 64 stations");
  if (i >= net.size()) throw ValidationError("station index out of range");
  const std::size_t n = net.size();

  SicLocator loc;
  loc.station = i;
  loc.n = n;
  loc.eps = eps;
  loc.c1 = opts.c1;
  // Tiny c1 overrides on sparse nets would otherwise give a grid coarser than the zones.
  loc.eps_tilde = std::min(effective_eps(net, eps, opts.c1), eps);

  const StationSubset all = StationSubset::all(n);
  double ratio = INFINITY;
  for (std::size_t j = 0; j < n; ++j) {
    const ZoneEnvelope e = zone_envelope(net, j, all, INFINITY);
    ratio = std::min(ratio, e.area / (4.0 * e.perimeter));
  }
  const double h = loc.eps_tilde * ratio;
  const double r = noise_limited_radius(net);
  double xmin = INFINITY, ymin = INFINITY;
  for (const auto& s : net.stations()) {
    xmin = std::min(xmin, s[0]);
    ymin = std::min(ymin, s[1]);
  }
  loc.frame = GridFrame{xmin - r - 2 * h, ymin - r - 2 * h, h};

  std::mutex mu;
  std::map<std::pair<std::size_t, std::uint64_t>, std::shared_ptr<const ZoneEnvelope>> envs;
  auto envelope = [&](std::size_t j, std::uint64_t canceled) {
    const auto key = std::make_pair(j, canceled);
    {
      std::lock_guard<std::mutex> lock(mu);
      if (auto it = envs.find(key); it != envs.end()) return it->second;
    }
    std::vector<std::size_t> removed;
    for (std::size_t k = 0; k < n; ++k) {
      if (canceled >> k & 1) removed.push_back(k);
    }
    auto e = std::make_shared<const ZoneEnvelope>(
        zone_envelope(net, j, StationSubset::all_except(n, removed), h / 4));
    std::lock_guard<std::mutex> lock(mu);
    return envs.emplace(key, std::move(e)).first->second;
  };
  std::map<std::size_t, std::shared_ptr<const GridZone>> first_grids;
  auto first_grid = [&](std::size_t j) {
    {
      std::lock_guard<std::mutex> lock(mu);
      if (auto it = first_grids.find(j); it != first_grids.end()) return it->second;
    }
    auto g = std::make_shared<const GridZone>(
        grid_from_envelope(*envelope(j, 0), loc.frame, INT64_MIN / 4, INT64_MAX / 4));
    std::lock_guard<std::mutex> lock(mu);
    return first_grids.emplace(j, std::move(g)).first->second;
  };

  const NcoSet nco = extract_nco(build_hds(net), i);
  std::vector<std::optional<GridZone>> folded(nco.size());
  parallel_for(nco.size(), [&](std::size_t k) {
    const auto& st = nco.entries[k].ordering.stations;
    GridZone g = *first_grid(st[0]);
    std::uint64_t canceled = std::uint64_t{1} << st[0];
    for (std::size_t s = 1; s < st.size() && !g.empty(); ++s) {
      const GridZone stage =
          grid_from_envelope(*envelope(st[s], canceled), loc.frame, g.col_begin, g.col_end() - 1);
      g = intersect_grids(g, stage);
      canceled |= std::uint64_t{1} << st[s];
    }
    if (!g.empty()) folded[k] = std::move(g);
  });
  for (std::size_t k = 0; k < nco.size(); ++k) {
    if (folded[k]) {
      loc.zones.push_back({nco.entries[k].ordering, std::move(*folded[k])});
    } else {
      ++loc.empty_orderings;
    }
  }
  loc.build_index();
  return loc;
}

AreaFraction unknown_area_fraction(const SicLocator& loc, const Network& net,
                                   std::size_t samples, std::uint64_t seed) {
  if (loc.n != net.size() || loc.station >= net.size()) {
    throw ValidationError("locator does not match the network");
  }
  if (samples == 0) throw ValidationError("need at least one sample");
  const double r = noise_limited_radius(net) + 2 * loc.frame.h;
  const Point& c = net.station(loc.station);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(c[0] - r, c[0] + r), uy(c[1] - r, c[1] + r);
  std::vector<Point> pts;
  pts.reserve(samples);
  while (pts.size() < samples) {
    Point p{ux(rng), uy(rng)};
    if (net.station_at(p) < net.size()) continue;
    pts.push_back(std::move(p));
  }
  std::vector<std::uint8_t> u(samples), z(samples);
  parallel_for(samples, [&](std::size_t k) {
    u[k] = loc.locate(pts[k]) == LocResult::Unknown;
    z[k] = receives_with_sic(net, loc.station, pts[k]).success;
  });
  AreaFraction a;
  a.samples = samples;
  std::size_t both = 0;
  for (std::size_t k = 0; k < samples; ++k) {
    a.unknown_hits += u[k];
    a.zone_hits += z[k];
    both += u[k] & z[k];
  }
  if (a.zone_hits == 0) throw DomainError("no sample landed in the reception zone");
  const double S = static_cast<double>(samples);
  const double mu = a.unknown_hits / S, mz = a.zone_hits / S;
  const double f = mu / mz;
  const double var_u = mu * (1 - mu), var_z = mz * (1 - mz), cov = both / S - mu * mz;
  const double var_f = std::max(0.0, (var_u - 2 * f * cov + f * f * var_z) / (S * mz * mz));
  const double sd = std::sqrt(var_f);
  a.fraction = f;
  a.ci_low = std::max(0.0, f - 1.96 * sd);
  a.ci_high = f + 1.96 * sd;
  a.upper95 = f + 1.645 * sd;
  return a;
}

}  // namespace sicmap
