#include "sicmap/tasks.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "sicmap/arrangement.hpp"
#include "sicmap/errors.hpp"
#include "sicmap/geom.hpp"
#include "sicmap/sic.hpp"
#include "sicmap/zones.hpp"

namespace sicmap {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

StationSubset subset_of(const std::vector<std::size_t>& idx) { return StationSubset(idx, true); }

}  // namespace

Network exponential_chain(std::size_t n, double alpha) {
  if (n < 2) throw ValidationError("the chain needs n >= 2");
  if (!(alpha > 0)) throw ValidationError("alpha must be > 0");
  std::vector<Point> s;
  for (std::size_t k = 1; k <= n; ++k) s.push_back(Point{std::pow(2.0, k / alpha)});
  return Network(1, std::move(s), std::pow(2.0, -static_cast<double>(n)), 1.0, alpha);
}

namespace {

// Greedy slotting for co-located receivers at `rx`: each slot serves every
// remaining sender its receiver can decode.
std::size_t greedy_slots(const Network& net, const Point& rx, bool sic) {
  std::vector<std::size_t> left(net.size());
  for (std::size_t k = 0; k < left.size(); ++k) left[k] = k;
  std::size_t slots = 0;
  while (!left.empty()) {
    const Network sub = restrict_to(net, subset_of(left));
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < left.size(); ++k) {
      const bool ok = sic ? receives_with_sic(sub, k, rx).success : received(sub, k, rx);
      if (!ok) keep.push_back(left[k]);
    }
    if (keep.size() == left.size()) throw DomainError("no sender can be served");
    left = std::move(keep);
    ++slots;
  }
  return slots;
}

}  // namespace

ScheduleReport schedule_demo(std::size_t n, double alpha) {
  const Network net = exponential_chain(n, alpha);
  const Point rx{0.0};
  ScheduleReport r;
  r.n = n;
  r.alpha = alpha;
  r.min_stage_sinr = INFINITY;
  for (std::size_t k = 0; k < n; ++k) {
    const SicDecodeResult d = receives_with_sic(net, k, rx);
    r.stage_sinr.push_back(d.stage_sinr);
    for (double v : d.stage_sinr) r.min_stage_sinr = std::min(r.min_stage_sinr, v);
  }
  r.slots_with_sic = greedy_slots(net, rx, true);
  r.slots_without_sic = greedy_slots(net, rx, false);
  return r;
}

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ValidationError("need two or more points");
  const double m = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!(x[k] > 0 && y[k] > 0)) throw ValidationError("power fits need positive data");
    const double a = std::log(x[k]), b = std::log(y[k]);
    sx += a;
    sy += b;
    sxx += a * a;
    sxy += a * b;
    syy += b * b;
  }
  const double vx = sxx - sx * sx / m, vy = syy - sy * sy / m, cxy = sxy - sx * sy / m;
  if (!(vx > 0)) throw ValidationError("power fits need distinct x values");
  PowerFit f;
  f.exponent = cxy / vx;
  f.intercept = (sy - f.exponent * sx) / m;
  f.r2 = vy > 0 ? cxy * cxy / (vx * vy) : 1.0;
  return f;
}

SoundnessReport locator_soundness(const SicLocator& loc, const Network& net,
                                  std::size_t plus_budget, std::size_t minus_samples,
                                  std::uint64_t seed) {
  if (loc.n != net.size() || loc.station >= net.size()) {
    throw ValidationError("locator does not match the network");
  }
  SoundnessReport rep;
  std::mt19937_64 rng(seed);
  const GridFrame& f = loc.frame;

  // Prefix counts of '+' squares over (zone, column).
  std::vector<std::size_t> prefix{0};
  std::vector<std::pair<std::size_t, std::size_t>> where;
  for (std::size_t z = 0; z < loc.zones.size(); ++z) {
    const GridZone& g = loc.zones[z].grid;
    for (std::size_t c = 0; c < g.cols.size(); ++c) {
      const GridColumn& col = g.cols[c];
      if (col.empty) continue;
      const std::int64_t cnt = std::int64_t{col.upper.lo} - col.lower.hi - 1;
      if (cnt <= 0) continue;
      prefix.push_back(prefix.back() + static_cast<std::size_t>(cnt));
      where.emplace_back(z, c);
    }
  }
  rep.plus_total = prefix.back();
  auto check_square = [&](std::size_t slot, std::int64_t row) {
    const auto [z, c] = where[slot];
    const GridZone& g = loc.zones[z].grid;
    const std::int64_t col = g.col_begin + static_cast<std::int64_t>(c);
    const Point p{f.x0 + (col + 0.5) * f.h, f.y0 + (row + 0.5) * f.h};
    if (net.station_at(p) < net.size()) return;
    ++rep.plus_checked;
    if (!receives_with_sic(net, loc.station, p).success) ++rep.plus_violations;
  };
  if (rep.plus_total <= plus_budget) {
    rep.plus_exhaustive = true;
    for (std::size_t s = 0; s < where.size(); ++s) {
      const GridColumn& col = loc.zones[where[s].first].grid.cols[where[s].second];
      for (std::int64_t r = std::int64_t{col.lower.hi} + 1; r < col.upper.lo; ++r) check_square(s, r);
    }
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, rep.plus_total - 1);
    for (std::size_t k = 0; k < plus_budget; ++k) {
      const std::size_t u = pick(rng);
      const std::size_t s = std::upper_bound(prefix.begin(), prefix.end(), u) - prefix.begin() - 1;
      const GridColumn& col = loc.zones[where[s].first].grid.cols[where[s].second];
      check_square(s, std::int64_t{col.lower.hi} + 1 + static_cast<std::int64_t>(u - prefix[s]));
    }
  }

  // '-' points: uniform over the noise-limited box of the located station.
  const double r = noise_limited_radius(net) + 4 * f.h;
  const Point& c = net.station(loc.station);
  std::uniform_real_distribution<double> ux(c[0] - r, c[0] + r), uy(c[1] - r, c[1] + r);
  for (std::size_t tries = 0; rep.minus_checked < minus_samples && tries < 50 * minus_samples;
       ++tries) {
    const Point p{ux(rng), uy(rng)};
    if (net.station_at(p) < net.size()) continue;
    if (loc.locate(p) != LocResult::Minus) continue;
    ++rep.minus_checked;
    if (receives_with_sic(net, loc.station, p).success) ++rep.minus_violations;
  }
  return rep;
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "?";
}

bool AuditReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const AuditCheck& c) { return c.status == CheckStatus::Fail; });
}

bool AuditReport::inconclusive() const {
  return std::any_of(checks.begin(), checks.end(),
                     [](const AuditCheck& c) { return c.status == CheckStatus::Inconclusive; });
}

std::string AuditReport::to_tsv() const {
  std::ostringstream out;
  out << "check\tstatus\tsamples\tviolations\tnote\n";
  for (const auto& c : checks) {
    out << c.name << '\t' << to_string(c.status) << '\t' << c.samples << '\t' << c.violations
        << '\t' << c.note << '\n';
  }
  return out.str();
}

namespace {

class Sampler {
 public:
  Sampler(const Network& net, std::uint64_t seed) : net_(net), rng_(seed) {
    double pad = 0.0;
    if (net.noise() > 0) {
      pad = noise_limited_radius(net);
    } else {
      for (std::size_t a = 0; a < net.size(); ++a) {
        for (std::size_t b = a + 1; b < net.size(); ++b) {
          pad = std::max(pad, dist(net.station(a), net.station(b)));
        }
      }
    }
    for (std::size_t k = 0; k < net.dim(); ++k) {
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& s : net.stations()) {
        lo = std::min(lo, s[k]);
        hi = std::max(hi, s[k]);
      }
      axes_.emplace_back(lo - pad, hi + pad);
    }
  }

  Point next() {
    for (;;) {
      std::vector<double> c;
      for (auto& a : axes_) c.push_back(a(rng_));
      Point p(std::move(c));
      if (net_.station_at(p) == net_.size()) return p;
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  const Network& net_;
  std::mt19937_64 rng_;
  std::vector<std::uniform_real_distribution<double>> axes_;
};

template <typename F>
AuditCheck timed(const std::string& name, F&& body) {
  const auto t0 = std::chrono::steady_clock::now();
  AuditCheck c;
  c.name = name;
  body(c);
  if (c.status == CheckStatus::Pass && c.violations > 0) c.status = CheckStatus::Fail;
  c.seconds = seconds_since(t0);
  return c;
}

std::size_t ordering_work(std::size_t n) {
  // Orderings ending at a fixed station: sum over k of (n-1)!/(n-1-k)!.
  std::size_t total = 0, term = 1;
  for (std::size_t k = 0; k < n; ++k) {
    total += term;
    term *= n - 1 - k;
  }
  return total * n;
}

void append_locate_checks(AuditReport& rep, const Network& net, const SicLocator& loc,
                          std::uint64_t seed, std::size_t budget) {
  const std::size_t per = budget / 3;
  rep.checks.push_back(timed("locate-soundness", [&](AuditCheck& c) {
    if (per < kMinCheckSamples) {
      c.status = CheckStatus::Inconclusive;
      c.note = "budget below minimum";
      return;
    }
    const SoundnessReport s = locator_soundness(loc, net, per, per, seed);
    c.samples = s.plus_checked + s.minus_checked;
    c.violations = s.plus_violations + s.minus_violations;
    std::ostringstream note;
    note << "plus " << s.plus_checked << "/" << s.plus_total
         << (s.plus_exhaustive ? " exhaustive" : " sampled") << ", minus " << s.minus_checked;
    c.note = note.str();
  }));
  rep.checks.push_back(timed("locate-area-fraction", [&](AuditCheck& c) {
    if (per < kMinCheckSamples) {
      c.status = CheckStatus::Inconclusive;
      c.note = "budget below minimum";
      return;
    }
    try {
      const AreaFraction a = unknown_area_fraction(loc, net, per, seed + 1);
      c.samples = a.samples;
      c.violations = a.upper95 > loc.eps ? 1 : 0;
      std::ostringstream note;
      note.precision(6);
      note << "fraction " << a.fraction << ", upper95 " << a.upper95 << ", eps " << loc.eps;
      c.note = note.str();
    } catch (const DomainError& e) {
      c.status = CheckStatus::Inconclusive;
      c.note = e.what();
    }
  }));
}

}  // namespace

AuditReport run_locate_audit(const Network& net, const SicLocator& loc, std::uint64_t seed,
                             std::size_t budget) {
  AuditReport rep;
  append_locate_checks(rep, net, loc, seed, budget);
  return rep;
}

AuditReport run_audit(const Network& net, const AuditOptions& opts) {
  AuditReport rep;
  const std::size_t n = net.size();
  const std::size_t per = opts.budget / 6;
  const bool enough = per >= kMinCheckSamples;
  auto short_budget = [](AuditCheck& c) {
    c.status = CheckStatus::Inconclusive;
    c.note = "budget below minimum";
  };

  rep.checks.push_back(timed("sic-decomposition", [&](AuditCheck& c) {
    if (n > kMaxDecompositionStations || !(net.beta() > 1.0)) {
      c.status = CheckStatus::Skipped;
      c.note = "needs n <= 8 and beta > 1";
      return;
    }
    if (!enough) return short_budget(c);
    const std::size_t points =
        std::clamp<std::size_t>(4000000 / ordering_work(n), kMinCheckSamples, per);
    Sampler smp(net, opts.seed);
    for (std::size_t k = 0; k < points; ++k) {
      const Point p = smp.next();
      for (std::size_t i = 0; i < n; ++i) {
        ++c.samples;
        if (!sic_zone_decomposition_check(net, i, p).agreement) ++c.violations;
      }
    }
  }));

  rep.checks.push_back(timed("containment", [&](AuditCheck& c) {
    if (!enough) return short_budget(c);
    Sampler smp(net, opts.seed + 1);
    std::uniform_int_distribution<std::size_t> station(0, n - 1);
    for (std::size_t k = 0; k < per; ++k) {
      const Point p = smp.next();
      const std::size_t i = station(smp.rng());
      CancellationOrdering o;
      if (k % 2 == 0) {
        o = decode_order(net, i, p);
      } else {
        std::vector<std::size_t> rest;
        for (std::size_t s = 0; s < n; ++s) if (s != i) rest.push_back(s);
        std::shuffle(rest.begin(), rest.end(), smp.rng());
        rest.resize(std::uniform_int_distribution<std::size_t>(0, n - 1)(smp.rng()));
        rest.push_back(i);
        o.stations = rest;
      }
      ++c.samples;
      if (cell_member(net, o, p) && !in_ordered_voronoi(net, o, p)) ++c.violations;
      if (received(net, i, p) && !in_voronoi(net, i, p)) ++c.violations;
    }
  }));

  rep.checks.push_back(timed("convexity", [&](AuditCheck& c) {
    if (!enough) return short_budget(c);
    Sampler smp(net, opts.seed + 2);
    std::map<CancellationOrdering, std::vector<Point>> members;
    for (std::size_t k = 0; k < per; ++k) {
      const Point p = smp.next();
      for (std::size_t i = 0; i < n; ++i) {
        const SicDecodeResult d = receives_with_sic(net, i, p);
        if (!d.success || d.degenerate) continue;
        auto& v = members[d.chain];
        if (v.size() < 64) v.push_back(p);
      }
    }
    std::vector<const std::pair<const CancellationOrdering, std::vector<Point>>*> usable;
    for (const auto& kv : members) if (kv.second.size() >= 2) usable.push_back(&kv);
    if (usable.empty()) {
      c.status = CheckStatus::Inconclusive;
      c.note = "no cell with two sampled members";
      return;
    }
    for (std::size_t k = 0; k < per; ++k) {
      const auto& [ord, pts] = *usable[k % usable.size()];
      std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
      const std::size_t a = pick(smp.rng());
      std::size_t b = pick(smp.rng());
      if (a == b) b = (b + 1) % pts.size();
      const Point m = midpoint(pts[a], pts[b]);
      if (net.station_at(m) < n) continue;
      ++c.samples;
      if (!cell_member(net, ord, m)) ++c.violations;
    }
    c.note = std::to_string(usable.size()) + " cells";
  }));

  const bool small_arr = net.dim() == 1 ? n <= 200 : net.dim() == 2 && n <= 20;
  std::optional<Hds> hds;
  rep.checks.push_back(timed("hds-labels", [&](AuditCheck& c) {
    if (!small_arr) {
      c.status = CheckStatus::Skipped;
      c.note = "arrangement too large for the audit";
      return;
    }
    try {
      hds = build_hds(net);
    } catch (const DegenerateInputError& e) {
      c.status = CheckStatus::Skipped;
      c.note = e.what();
      return;
    }
    for (std::size_t k = 0; k < hds->cell_count(); ++k) {
      const DistanceLabel l = label_of(net, hds->arr.cells[k].rep);
      const auto got = hds->label(k);
      ++c.samples;
      if (!std::equal(got.begin(), got.end(), l.order.begin(), l.order.end())) ++c.violations;
    }
    c.note = std::to_string(hds->warnings.size()) + " warnings";
  }));

  rep.checks.push_back(timed("nco-oracle", [&](AuditCheck& c) {
    if (!hds || (net.dim() == 2 && n > 10)) {
      c.status = CheckStatus::Skipped;
      c.note = "needs an arrangement with d = 1 or n <= 10";
      return;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const NcoSet nco = extract_nco(*hds, i);
      const auto oracle = nco_oracle(net, i, 200);
      ++c.samples;
      const bool subset = std::all_of(oracle.begin(), oracle.end(),
                                      [&](const CancellationOrdering& o) { return nco.contains(o); });
      if (!subset || (net.dim() == 1 && oracle.size() != nco.size())) ++c.violations;
    }
  }));

  rep.checks.push_back(timed("compactness", [&](AuditCheck& c) {
    if (!is_compact(net) || !(net.beta() > 1.0) || !(net.noise() > 0)) {
      c.status = CheckStatus::Skipped;
      c.note = "network is not compact";
      return;
    }
    if (!enough) return short_budget(c);
    std::size_t most = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const ContributorReport r =
          compactness_contributor_check(net, i, std::max<std::size_t>(per / n, 1), opts.seed + i);
      c.samples += r.samples;
      c.violations += r.violations;
      most = std::max(most, r.contributors);
    }
    c.note = "max contributors " + std::to_string(most);
  }));

  const bool locatable = opts.locate && net.dim() == 2 && net.alpha() == 2.0 &&
                         net.beta() > 1.0 && net.noise() > 0 && n <= 64;
  if (locatable) {
    try {
      LocatorOptions lo;
      lo.c1 = opts.c1;
      const SicLocator loc = build_locator(net, 0, opts.eps, lo);
      append_locate_checks(rep, net, loc, opts.seed + 7, 3 * per);
    } catch (const DegenerateInputError& e) {
      AuditCheck c;
      c.name = "locate";
      c.status = CheckStatus::Skipped;
      c.note = e.what();
      rep.checks.push_back(c);
    }
  } else {
    AuditCheck c;
    c.name = "locate";
    c.status = CheckStatus::Skipped;
    c.note = "needs d = 2, alpha = 2, beta > 1, N > 0";
    rep.checks.push_back(c);
  }
  return rep;
}

Network random_planar_network(std::size_t n, double spacing, double noise, double beta,
                              double alpha, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const double side = spacing * std::sqrt(static_cast<double>(n));
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> s;
  while (s.size() < n) {
    Point p{u(rng), u(rng)};
    const bool close = std::any_of(s.begin(), s.end(),
                                   [&](const Point& q) { return dist(p, q) < 0.1 * spacing; });
    if (!close) s.push_back(std::move(p));
  }
  return Network(2, std::move(s), noise, beta, alpha);
}

std::string BenchResult::to_tsv() const {
  std::ostringstream out;
  out.precision(6);
  out << "task\tn\tseconds\tsize\n";
  for (const auto& r : rows) out << r.task << '\t' << r.n << '\t' << r.seconds << '\t' << r.size << '\n';
  for (const auto& f : fits) {
    out << "fit\t" << f.task << "\texponent=" << f.fit.exponent << "\tr2=" << f.fit.r2 << '\n';
  }
  return out.str();
}

namespace {

template <typename F>
double best_of(std::size_t repeats, F&& body) {
  double best = INFINITY;
  for (std::size_t k = 0; k < std::max<std::size_t>(repeats, 1); ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    body();
    best = std::min(best, seconds_since(t0));
  }
  return best;
}

void add_fit(BenchResult& res, const std::string& task) {
  std::vector<double> x, y;
  for (const auto& r : res.rows) {
    if (r.task != task) continue;
    x.push_back(static_cast<double>(r.n));
    y.push_back(std::max(r.seconds, 1e-12));
  }
  if (x.size() >= 2) res.fits.push_back({task, fit_power_law(x, y)});
}

}  // namespace

BenchResult run_bench(const BenchOptions& opts) {
  BenchResult res;
  std::mt19937_64 rng(opts.seed);

  for (std::size_t n : opts.hds1) {
    std::uniform_real_distribution<double> u(0.0, 10.0);
    std::vector<Point> s;
    while (s.size() < n) {
      Point p{u(rng)};
      if (std::none_of(s.begin(), s.end(), [&](const Point& q) { return q == p; })) s.push_back(p);
    }
    const Network net(1, std::move(s), 0.01, 2.0, 2.0);
    std::size_t cells = 0;
    const double t = best_of(opts.repeats, [&] { cells = build_hds(net).cell_count(); });
    res.rows.push_back({"hds-d1", n, t, cells});
  }

  for (std::size_t n : opts.hds2) {
    const Network net = random_planar_network(n, 2.0, 0.05, 2.0, 2.0, rng());
    std::optional<Hds> hds;
    const double t = best_of(opts.repeats, [&] { hds = build_hds(net); });
    res.rows.push_back({"hds-d2", n, t, hds->cell_count()});
    std::size_t nco = 0;
    const double te = best_of(opts.repeats, [&] { nco = extract_nco(*hds, 0).size(); });
    res.rows.push_back({"nco-d2", n, te, nco});
  }

  // Locators at a fixed effective eps so that only n varies.
  const double eps = 0.1, target = 1e-3;
  for (std::size_t n : opts.locate) {
    const Network net = random_planar_network(n, 2.0, 0.05, 2.0, 2.0, rng());
    LocatorOptions lo;
    lo.c1 = effective_eps(net, eps, 1.0) / target;
    std::optional<SicLocator> loc;
    const double tb = best_of(1, [&] { loc = build_locator(net, 0, eps, lo); });
    res.rows.push_back({"locator-build", n, tb, loc->zones.size()});

    const double r = noise_limited_radius(net);
    const Point& c = net.station(0);
    std::uniform_real_distribution<double> ux(c[0] - r, c[0] + r), uy(c[1] - r, c[1] + r);
    std::vector<Point> q;
    for (std::size_t k = 0; k < opts.queries; ++k) q.push_back(Point{ux(rng), uy(rng)});
    std::size_t plus = 0;
    const double tq = best_of(opts.repeats, [&] {
      plus = 0;
      for (const auto& p : q) plus += loc->locate(p) == LocResult::Plus;
    });
    res.rows.push_back({"locate", n, tq / std::max<std::size_t>(opts.queries, 1), plus});
  }

  add_fit(res, "hds-d1");
  add_fit(res, "hds-d2");
  add_fit(res, "nco-d2");
  add_fit(res, "locator-build");
  add_fit(res, "locate");
  return res;
}

}  // namespace sicmap
