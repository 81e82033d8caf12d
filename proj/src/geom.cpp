#include "sicmap/geom.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sicmap/errors.hpp"

namespace sicmap {

namespace {

// Relative error of a double squared distance in d <= 3 is a few ulps; this
// leaves a wide margin.
constexpr double kFilter = 1e-14;

int exact_compare(const Point& p, const Point& a, const Point& b) {
  mpq_class da = 0;
  mpq_class db = 0;
  for (std::size_t k = 0; k < p.dim(); ++k) {
    mpq_class x(p[k]);
    mpq_class u = mpq_class(a[k]) - x;
    mpq_class v = mpq_class(b[k]) - x;
    da += u * u;
    db += v * v;
  }
  return cmp(da, db) < 0 ? -1 : (cmp(da, db) > 0 ? 1 : 0);
}

}  // namespace

int compare_distance(const Point& p, const Point& a, const Point& b) {
  if (p.dim() != a.dim() || p.dim() != b.dim()) throw ValidationError("dimension mismatch");
  const double da = squared_dist(p, a);
  const double db = squared_dist(p, b);
  if (std::abs(da - db) > kFilter * (da + db)) return da < db ? -1 : 1;
  return exact_compare(p, a, b);
}

Bisector make_bisector(const Network& net, std::size_t i, std::size_t j) {
  if (i == j || i >= net.size() || j >= net.size()) {
    throw ValidationError("bisector needs two distinct stations");
  }
  if (i > j) std::swap(i, j);
  Bisector b;
  b.i = i;
  b.j = j;
  b.si = net.station(i);
  b.sj = net.station(j);
  b.normal.resize(net.dim());
  double ni = 0.0;
  double nj = 0.0;
  for (std::size_t k = 0; k < net.dim(); ++k) {
    b.normal[k] = 2.0 * (b.sj[k] - b.si[k]);
    ni += b.si[k] * b.si[k];
    nj += b.sj[k] * b.sj[k];
  }
  b.offset = nj - ni;
  return b;
}

Side side(const Bisector& b, const Point& p) {
  const int c = compare_distance(p, b.si, b.sj);
  if (c < 0) return Side::NearerI;
  if (c > 0) return Side::NearerJ;
  return Side::On;
}

std::vector<std::size_t> DistanceLabel::truncated(std::size_t i) const {
  const auto it = std::find(order.begin(), order.end(), i);
  if (it == order.end()) throw ValidationError("station not in label");
  return std::vector<std::size_t>(order.begin(), it + 1);
}

DistanceLabel label_of(const Network& net, const Point& p) {
  net.check_point(p);
  DistanceLabel l;
  l.order.resize(net.size());
  std::iota(l.order.begin(), l.order.end(), 0);
  std::sort(l.order.begin(), l.order.end(), [&](std::size_t a, std::size_t b) {
    const int c = compare_distance(p, net.station(a), net.station(b));
    if (c != 0) return c < 0;
    return a < b;
  });
  for (std::size_t k = 0; k + 1 < l.order.size(); ++k) {
    if (compare_distance(p, net.station(l.order[k]), net.station(l.order[k + 1])) == 0) {
      l.degenerate = true;
    }
  }
  return l;
}

bool in_voronoi(const Network& net, std::size_t i, const Point& p, const StationSubset& subset) {
  if (!subset.contains(i)) throw ValidationError("station not in subset");
  net.check_point(p);
  for (std::size_t j : subset.indices()) {
    if (j != i && compare_distance(p, net.station(i), net.station(j)) > 0) return false;
  }
  return true;
}

bool in_voronoi(const Network& net, std::size_t i, const Point& p) {
  return in_voronoi(net, i, p, StationSubset::all(net.size()));
}

bool in_ordered_voronoi(const Network& net, const CancellationOrdering& ordering,
                        const Point& p) {
  ordering.validate(net.size());
  net.check_point(p);
  const auto& o = ordering.stations;
  for (std::size_t k = 0; k + 1 < o.size(); ++k) {
    if (compare_distance(p, net.station(o[k]), net.station(o[k + 1])) > 0) return false;
  }
  for (std::size_t s = 0; s < net.size(); ++s) {
    if (std::find(o.begin(), o.end(), s) != o.end()) continue;
    if (compare_distance(p, net.station(o.back()), net.station(s)) > 0) return false;
  }
  return true;
}

bool in_ordered_voronoi_intersection(const Network& net, const CancellationOrdering& ordering,
                                     const Point& p) {
  ordering.validate(net.size());
  std::vector<std::size_t> removed;
  for (std::size_t s : ordering.stations) {
    const StationSubset remaining = StationSubset::all_except(net.size(), removed);
    if (!in_voronoi(net, s, p, remaining)) return false;
    removed.push_back(s);
  }
  return true;
}

bool in_order_k_voronoi(const Network& net, const StationSubset& members, const Point& p) {
  net.check_point(p);
  for (std::size_t m : members.indices()) {
    for (std::size_t s = 0; s < net.size(); ++s) {
      if (members.contains(s)) continue;
      if (compare_distance(p, net.station(m), net.station(s)) > 0) return false;
    }
  }
  return true;
}

std::optional<Bisector> separating_bisector(const Network& net, const CancellationOrdering& a,
                                            const CancellationOrdering& b) {
  a.validate(net.size());
  b.validate(net.size());
  const std::size_t len = std::min(a.size(), b.size());
  for (std::size_t m = 0; m < len; ++m) {
    if (a.stations[m] != b.stations[m]) {
      return make_bisector(net, a.stations[m], b.stations[m]);
    }
  }
  return std::nullopt;
}

}  // namespace sicmap
