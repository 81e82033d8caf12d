#include "sicmap/arrangement.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <unordered_map>

#include "sicmap/errors.hpp"
#include "sicmap/geom.hpp"

namespace sicmap {

namespace {

using Q = mpq_class;

struct QPoint {
  Q x;
  Q y;
  friend bool operator<(const QPoint& a, const QPoint& b) {
    const int c = cmp(a.x, b.x);
    if (c != 0) return c < 0;
    return cmp(a.y, b.y) < 0;
  }
};

struct Line {
  Q a;
  Q b;
  Q c;
  std::uint32_t si;
  std::uint32_t sj;
};

[[noreturn]] void throw_coincident(std::uint32_t a, std::uint32_t b, std::uint32_t c,
                                   std::uint32_t d) {
  throw DegenerateInputError("bisectors HP(s" + std::to_string(a + 1) + ",s" +
                             std::to_string(b + 1) + ") and HP(s" + std::to_string(c + 1) +
                             ",s" + std::to_string(d + 1) + ") coincide");
}

double diameter_of(const Network& net) {
  double best = 0.0;
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      best = std::max(best, dist(net.station(i), net.station(j)));
    }
  }
  return best;
}

Arrangement build_1d(const Network& net) {
  struct Mid {
    Q m;
    std::uint32_t i;
    std::uint32_t j;
  };
  std::vector<Mid> mids;
  for (std::uint32_t i = 0; i < net.size(); ++i) {
    for (std::uint32_t j = i + 1; j < net.size(); ++j) {
      mids.push_back({(Q(net.station(i)[0]) + Q(net.station(j)[0])) / 2, i, j});
    }
  }
  std::sort(mids.begin(), mids.end(), [](const Mid& a, const Mid& b) { return a.m < b.m; });
  for (std::size_t k = 0; k + 1 < mids.size(); ++k) {
    if (mids[k].m == mids[k + 1].m) {
      throw_coincident(mids[k].i, mids[k].j, mids[k + 1].i, mids[k + 1].j);
    }
  }

  double lo = net.station(0)[0];
  double hi = lo;
  for (const auto& s : net.stations()) {
    lo = std::min(lo, s[0]);
    hi = std::max(hi, s[0]);
  }
  const double margin = hi - lo;

  Arrangement arr;
  arr.dim = 1;
  arr.n = net.size();
  arr.line_count = mids.size();
  arr.vertex_count = mids.size();
  arr.box = {lo - margin, 0.0, hi + margin, 0.0};

  auto strictly_between = [](double x, const Q* left, const Q* right) {
    const Q qx(x);
    return (!left || cmp(*left, qx) < 0) && (!right || cmp(qx, *right) < 0);
  };

  const std::size_t k = mids.size();
  for (std::size_t c = 0; c <= k; ++c) {
    const Q* left = c > 0 ? &mids[c - 1].m : nullptr;
    const Q* right = c < k ? &mids[c].m : nullptr;
    double rep;
    if (left && right) {
      rep = Q((*left + *right) / 2).get_d();
    } else if (right) {
      rep = right->get_d() - margin;
    } else {
      rep = left->get_d() + margin;
    }
    if (!strictly_between(rep, left, right)) {
      throw DegenerateInputError("interval cell too narrow for a double representative");
    }
    ArrCell cell;
    cell.rep = Point{rep};
    cell.unbounded = !(left && right);
    cell.polygon = {Point{left ? left->get_d() : arr.box[0]},
                    Point{right ? right->get_d() : arr.box[2]}};
    arr.cells.push_back(std::move(cell));
    if (c < k) {
      arr.adjacency.push_back({static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c + 1),
                               mids[c].i, mids[c].j});
    }
  }
  return arr;
}

struct HalfEdge {
  std::uint32_t origin;
  std::uint32_t twin;
  std::uint32_t next = 0;
  std::uint32_t face = 0;
  std::int32_t line;  // -1 for box edges
};

Arrangement build_2d(const Network& net) {
  const std::size_t n = net.size();
  std::vector<Line> lines;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const Q xi(net.station(i)[0]), yi(net.station(i)[1]);
      const Q xj(net.station(j)[0]), yj(net.station(j)[1]);
      lines.push_back({2 * (xj - xi), 2 * (yj - yi), xj * xj + yj * yj - xi * xi - yi * yi, i, j});
    }
  }
  const std::size_t m = lines.size();

  std::map<QPoint, std::uint32_t> index;
  std::vector<QPoint> verts;
  auto vertex = [&](QPoint p) {
    auto [it, inserted] = index.emplace(std::move(p), static_cast<std::uint32_t>(verts.size()));
    if (inserted) verts.push_back(it->first);
    return it->second;
  };

  std::vector<std::vector<std::uint32_t>> on_line(m);
  for (std::size_t l1 = 0; l1 < m; ++l1) {
    for (std::size_t l2 = l1 + 1; l2 < m; ++l2) {
      const Line& A = lines[l1];
      const Line& B = lines[l2];
      const Q det = A.a * B.b - B.a * A.b;
      if (sgn(det) == 0) {
        if (A.a * B.c == B.a * A.c && A.b * B.c == B.b * A.c) {
          throw_coincident(A.si, A.sj, B.si, B.sj);
        }
        continue;
      }
      const std::uint32_t v =
          vertex({Q((A.c * B.b - B.c * A.b) / det), Q((A.a * B.c - B.a * A.c) / det)});
      on_line[l1].push_back(v);
      on_line[l2].push_back(v);
    }
  }
  const std::size_t crossing = verts.size();

  Arrangement arr;
  arr.dim = 2;
  arr.n = n;
  arr.line_count = m;
  arr.vertex_count = crossing;
  {
    std::vector<std::uint32_t> mult(crossing, 0);
    for (auto& ids : on_line) {
      std::sort(ids.begin(), ids.end());
      ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
      for (auto v : ids) ++mult[v];
    }
    arr.concurrent_vertices =
        std::count_if(mult.begin(), mult.end(), [](std::uint32_t k) { return k >= 3; });
  }

  double xmin = net.station(0)[0], xmax = xmin, ymin = net.station(0)[1], ymax = ymin;
  auto grow = [&](double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  };
  for (const auto& s : net.stations()) grow(s[0], s[1]);
  for (const auto& v : verts) grow(v.x.get_d(), v.y.get_d());
  const double margin = std::max({xmax - xmin, ymax - ymin, diameter_of(net)});
  arr.box = {xmin - margin, ymin - margin, xmax + margin, ymax + margin};
  const Q X0(arr.box[0]), Y0(arr.box[1]), X1(arr.box[2]), Y1(arr.box[3]);

  // Box sides: 0 bottom, 1 right, 2 top, 3 left.
  std::array<std::vector<std::uint32_t>, 4> sides;
  const std::uint32_t c00 = vertex({X0, Y0}), c10 = vertex({X1, Y0});
  const std::uint32_t c11 = vertex({X1, Y1}), c01 = vertex({X0, Y1});
  sides[0] = {c00, c10};
  sides[1] = {c10, c11};
  sides[2] = {c01, c11};
  sides[3] = {c00, c01};
  auto note_side = [&](std::uint32_t v) {
    const QPoint& p = verts[v];
    if (p.y == Y0) sides[0].push_back(v);
    if (p.x == X1) sides[1].push_back(v);
    if (p.y == Y1) sides[2].push_back(v);
    if (p.x == X0) sides[3].push_back(v);
  };

  for (std::size_t l = 0; l < m; ++l) {
    const Line& L = lines[l];
    std::vector<QPoint> hits;
    if (sgn(L.b) != 0) {
      for (const Q* X : {&X0, &X1}) {
        Q y = (L.c - L.a * *X) / L.b;
        if (y >= Y0 && y <= Y1) hits.push_back({*X, y});
      }
    }
    if (sgn(L.a) != 0) {
      for (const Q* Y : {&Y0, &Y1}) {
        Q x = (L.c - L.b * *Y) / L.a;
        if (x >= X0 && x <= X1) hits.push_back({x, *Y});
      }
    }
    auto t_of = [&](const QPoint& p) { return Q(-L.b * p.x + L.a * p.y); };
    auto lo = std::min_element(hits.begin(), hits.end(), [&](auto& p, auto& q) {
      return t_of(p) < t_of(q);
    });
    auto hi = std::max_element(hits.begin(), hits.end(), [&](auto& p, auto& q) {
      return t_of(p) < t_of(q);
    });
    const std::uint32_t vlo = vertex(*lo);
    const std::uint32_t vhi = vertex(*hi);
    note_side(vlo);
    note_side(vhi);
    auto& ids = on_line[l];
    ids.push_back(vlo);
    ids.push_back(vhi);
    std::vector<std::pair<Q, std::uint32_t>> keyed;
    keyed.reserve(ids.size());
    for (auto v : ids) keyed.emplace_back(t_of(verts[v]), v);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return cmp(a.first, b.first) < 0; });
    ids.clear();
    for (auto& [t, v] : keyed) {
      if (ids.empty() || ids.back() != v) ids.push_back(v);
    }
  }
  for (int s = 0; s < 4; ++s) {
    auto& ids = sides[s];
    const bool by_x = (s == 0 || s == 2);
    std::sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
      return by_x ? verts[a].x < verts[b].x : verts[a].y < verts[b].y;
    });
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }

  std::vector<HalfEdge> he;
  auto add_edge = [&](std::uint32_t u, std::uint32_t v, std::int32_t line) {
    const auto h = static_cast<std::uint32_t>(he.size());
    he.push_back({u, h + 1, 0, 0, line});
    he.push_back({v, h, 0, 0, line});
    return h;
  };
  for (std::size_t l = 0; l < m; ++l) {
    for (std::size_t k = 0; k + 1 < on_line[l].size(); ++k) {
      add_edge(on_line[l][k], on_line[l][k + 1], static_cast<std::int32_t>(l));
    }
  }
  // The westward copy of the first bottom edge lies on the outer face.
  std::uint32_t outer_seed = 0;
  for (int s = 0; s < 4; ++s) {
    for (std::size_t k = 0; k + 1 < sides[s].size(); ++k) {
      const std::uint32_t h = add_edge(sides[s][k], sides[s][k + 1], -1);
      if (s == 0 && k == 0) outer_seed = h + 1;
    }
  }

  const std::size_t nv = verts.size();
  std::vector<std::vector<std::uint32_t>> out(nv);
  for (std::uint32_t h = 0; h < he.size(); ++h) out[he[h].origin].push_back(h);
  std::vector<Q> dx(he.size()), dy(he.size());
  for (std::uint32_t h = 0; h < he.size(); ++h) {
    const QPoint& a = verts[he[h].origin];
    const QPoint& b = verts[he[he[h].twin].origin];
    dx[h] = b.x - a.x;
    dy[h] = b.y - a.y;
  }
  auto upper = [&](std::uint32_t h) {
    return sgn(dy[h]) > 0 || (sgn(dy[h]) == 0 && sgn(dx[h]) > 0);
  };
  std::vector<std::uint32_t> pos(he.size());
  for (auto& list : out) {
    std::sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
      const bool ua = upper(a), ub = upper(b);
      if (ua != ub) return ua;
      return sgn(dx[a] * dy[b] - dy[a] * dx[b]) > 0;
    });
    for (std::uint32_t k = 0; k < list.size(); ++k) pos[list[k]] = k;
  }
  for (std::uint32_t h = 0; h < he.size(); ++h) {
    const std::uint32_t t = he[h].twin;
    const auto& list = out[he[t].origin];
    he[h].next = list[(pos[t] + list.size() - 1) % list.size()];
  }

  constexpr std::uint32_t kNone = UINT32_MAX;
  std::vector<std::uint32_t> face(he.size(), kNone);
  std::vector<std::uint32_t> face_start;
  for (std::uint32_t h = 0; h < he.size(); ++h) {
    if (face[h] != kNone) continue;
    const auto f = static_cast<std::uint32_t>(face_start.size());
    face_start.push_back(h);
    for (std::uint32_t e = h; face[e] == kNone; e = he[e].next) face[e] = f;
  }
  const std::uint32_t outer = face[outer_seed];

  std::vector<std::uint32_t> cell_of(face_start.size(), kNone);
  for (std::uint32_t f = 0; f < face_start.size(); ++f) {
    if (f == outer) continue;
    const std::uint32_t start = face_start[f];
    std::vector<std::uint32_t> cycle;
    bool unbounded = false;
    std::uint32_t e = start;
    do {
      cycle.push_back(e);
      if (he[e].line < 0) unbounded = true;
      e = he[e].next;
    } while (e != start);

    auto interior = [&](double px, double py) {
      const Q qx(px), qy(py);
      for (std::uint32_t h : cycle) {
        const QPoint& a = verts[he[h].origin];
        if (sgn(dx[h] * (qy - a.y) - dy[h] * (qx - a.x)) <= 0) return false;
      }
      return true;
    };
    Q cx = 0, cy = 0;
    for (std::uint32_t h : cycle) {
      cx += verts[he[h].origin].x;
      cy += verts[he[h].origin].y;
    }
    cx /= static_cast<long>(cycle.size());
    cy /= static_cast<long>(cycle.size());
    double rx = cx.get_d(), ry = cy.get_d();
    bool found = interior(rx, ry);
    // Thin cells: slide from each edge midpoint toward the centroid.
    for (std::size_t k = 0; !found && k < cycle.size(); ++k) {
      const QPoint& a = verts[he[cycle[k]].origin];
      const QPoint& b = verts[he[he[cycle[k]].twin].origin];
      Q mx = (a.x + b.x) / 2, my = (a.y + b.y) / 2;
      for (int s = 1; !found && s <= 60; ++s) {
        Q w(1, 1UL << std::min(s, 62));
        rx = Q(mx + (cx - mx) * w).get_d();
        ry = Q(my + (cy - my) * w).get_d();
        found = interior(rx, ry);
      }
    }
    if (!found) throw DegenerateInputError("cell too thin for a double representative");

    ArrCell cell;
    cell.rep = Point{rx, ry};
    cell.unbounded = unbounded;
    for (std::uint32_t h : cycle) {
      cell.polygon.push_back(Point{verts[he[h].origin].x.get_d(), verts[he[h].origin].y.get_d()});
    }
    cell_of[f] = static_cast<std::uint32_t>(arr.cells.size());
    arr.cells.push_back(std::move(cell));
  }

  for (std::uint32_t h = 0; h < he.size(); ++h) {
    const std::uint32_t t = he[h].twin;
    if (he[h].line < 0 || h > t) continue;
    const std::uint32_t a = cell_of[face[h]];
    const std::uint32_t b = cell_of[face[t]];
    const Line& L = lines[he[h].line];
    arr.adjacency.push_back({std::min(a, b), std::max(a, b), L.si, L.sj});
  }
  return arr;
}

}  // namespace

Arrangement build_arrangement(const Network& net) {
  if (net.dim() == 1) return build_1d(net);
  if (net.dim() == 2) return build_2d(net);
  throw PreconditionError("arrangements are built for d = 1 or d = 2 only");
}

Hds label_arrangement(const Network& net, Arrangement arr, std::size_t root) {
  Hds hds;
  hds.n = net.size();
  const std::size_t cells = arr.cells.size();
  if (root >= cells) throw ValidationError("root cell out of range");
  hds.root = root;
  hds.labels.assign(cells * hds.n, 0);

  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> nbr(cells);
  for (std::uint32_t k = 0; k < arr.adjacency.size(); ++k) {
    nbr[arr.adjacency[k].a].emplace_back(arr.adjacency[k].b, k);
    nbr[arr.adjacency[k].b].emplace_back(arr.adjacency[k].a, k);
  }
  auto direct = [&](std::size_t c) {
    const DistanceLabel l = label_of(net, arr.cells[c].rep);
    for (std::size_t k = 0; k < hds.n; ++k) {
      hds.labels[c * hds.n + k] = static_cast<std::uint32_t>(l.order[k]);
    }
  };

  std::vector<bool> seen(cells, false);
  std::vector<std::uint32_t> stack{static_cast<std::uint32_t>(root)};
  direct(root);
  seen[root] = true;
  while (!stack.empty()) {
    const std::uint32_t f = stack.back();
    stack.pop_back();
    for (auto [g, k] : nbr[f]) {
      if (seen[g]) continue;
      seen[g] = true;
      std::uint32_t* dst = hds.labels.data() + g * hds.n;
      const std::uint32_t* src = hds.labels.data() + f * hds.n;
      std::copy(src, src + hds.n, dst);
      const auto& adj = arr.adjacency[k];
      const auto pi = std::find(dst, dst + hds.n, adj.si) - dst;
      const auto pj = std::find(dst, dst + hds.n, adj.sj) - dst;
      if (pi - pj == 1 || pj - pi == 1) {
        std::swap(dst[pi], dst[pj]);
      } else {
        hds.warnings.push_back("cell " + std::to_string(g) + ": s" + std::to_string(adj.si + 1) +
                               " and s" + std::to_string(adj.sj + 1) +
                               " not adjacent in label, sorted directly");
        direct(g);
      }
      stack.push_back(g);
    }
  }
  for (std::size_t c = 0; c < cells; ++c) {
    if (!seen[c]) {
      hds.warnings.push_back("cell " + std::to_string(c) + " unreachable, sorted directly");
      direct(c);
    }
  }
  hds.arr = std::move(arr);
  return hds;
}

Hds build_hds(const Network& net, std::size_t root) {
  return label_arrangement(net, build_arrangement(net), root);
}

std::vector<CancellationOrdering> NcoSet::orderings() const {
  std::vector<CancellationOrdering> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.ordering);
  return out;
}

bool NcoSet::contains(const CancellationOrdering& o) const {
  return std::any_of(entries.begin(), entries.end(),
                     [&](const NcoEntry& e) { return e.ordering == o; });
}

namespace {

struct SeqHash {
  std::size_t operator()(const std::vector<std::uint32_t>& v) const {
    std::size_t h = v.size();
    for (auto x : v) h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

bool shortlex(const CancellationOrdering& a, const CancellationOrdering& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.stations < b.stations;
}

}  // namespace

NcoSet extract_nco(const Hds& hds, std::size_t i) {
  if (i >= hds.n) throw ValidationError("station index out of range");
  NcoSet set;
  set.station = i;
  std::unordered_map<std::vector<std::uint32_t>, std::size_t, SeqHash> seen;
  for (std::size_t c = 0; c < hds.cell_count(); ++c) {
    const auto l = hds.label(c);
    const auto end = std::find(l.begin(), l.end(), static_cast<std::uint32_t>(i));
    std::vector<std::uint32_t> key(l.begin(), end + 1);
    auto [it, inserted] = seen.emplace(std::move(key), set.entries.size());
    if (inserted) {
      NcoEntry e;
      e.ordering.stations.assign(it->first.begin(), it->first.end());
      set.entries.push_back(std::move(e));
    }
    set.entries[it->second].cells.push_back(static_cast<std::uint32_t>(c));
  }
  std::sort(set.entries.begin(), set.entries.end(),
            [](const NcoEntry& a, const NcoEntry& b) { return shortlex(a.ordering, b.ordering); });
  return set;
}

Network gen_lower_bound_1d(std::size_t n, double noise, double beta, double alpha) {
  if (n < 2) throw ValidationError("lower-bound instance needs n >= 2");
  std::vector<double> x{0.0, 1.0};
  while (x.size() < n) x.push_back(x[x.size() - 1] + x[x.size() - 2] + 1.0);
  x.resize(n);
  std::vector<Point> stations;
  for (double v : x) stations.push_back(Point{v});
  return Network(1, std::move(stations), noise, beta, alpha);
}

std::vector<CancellationOrdering> nco_oracle(const Network& net, std::size_t i,
                                             std::size_t density) {
  if (i >= net.size()) throw ValidationError("station index out of range");
  std::set<std::vector<std::size_t>> found;
  auto probe = [&](const Point& p) {
    const DistanceLabel l = label_of(net, p);
    if (!l.degenerate) found.insert(l.truncated(i));
  };
  const std::size_t n = net.size();

  if (net.dim() == 1) {
    std::vector<double> mids;
    double lo = net.station(0)[0], hi = lo;
    for (std::size_t a = 0; a < n; ++a) {
      lo = std::min(lo, net.station(a)[0]);
      hi = std::max(hi, net.station(a)[0]);
      for (std::size_t b = a + 1; b < n; ++b) {
        mids.push_back(0.5 * (net.station(a)[0] + net.station(b)[0]));
      }
    }
    std::sort(mids.begin(), mids.end());
    mids.erase(std::unique(mids.begin(), mids.end()), mids.end());
    const double span = hi - lo + 1.0;
    probe(Point{mids.front() - span});
    probe(Point{mids.back() + span});
    for (std::size_t k = 0; k + 1 < mids.size(); ++k) probe(Point{0.5 * (mids[k] + mids[k + 1])});
  } else if (net.dim() == 2) {
    struct L2 {
      double a, b, c;
    };
    std::vector<L2> ls;
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a + 1; b < n; ++b) {
        const Point& p = net.station(a);
        const Point& q = net.station(b);
        ls.push_back({q[0] - p[0], q[1] - p[1],
                      0.5 * (q[0] * q[0] + q[1] * q[1] - p[0] * p[0] - p[1] * p[1])});
      }
    }
    double xmin = net.station(0)[0], xmax = xmin, ymin = net.station(0)[1], ymax = ymin;
    auto grow = [&](double x, double y) {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    };
    for (const auto& s : net.stations()) grow(s[0], s[1]);
    struct Cross {
      double x, y;
      std::size_t l1, l2;
    };
    std::vector<Cross> crossings;
    for (std::size_t u = 0; u < ls.size(); ++u) {
      for (std::size_t v = u + 1; v < ls.size(); ++v) {
        const double det = ls[u].a * ls[v].b - ls[v].a * ls[u].b;
        if (det == 0.0) continue;
        const double x = (ls[u].c * ls[v].b - ls[v].c * ls[u].b) / det;
        const double y = (ls[u].a * ls[v].c - ls[v].a * ls[u].c) / det;
        crossings.push_back({x, y, u, v});
        grow(x, y);
      }
    }
    const double size = std::max(xmax - xmin, ymax - ymin);
    const double x0 = xmin - size, y0 = ymin - size;
    const double side = 3.0 * size;
    const std::size_t g = std::max<std::size_t>(density, 2);
    for (std::size_t r = 0; r < g; ++r) {
      for (std::size_t c = 0; c < g; ++c) {
        probe(Point{x0 + side * (c + 0.5) / g, y0 + side * (r + 0.5) / g});
      }
    }
    // Every cell has a corner at some crossing (or is found by the grid);
    // probe each wedge between two crossing lines along its angle bisector.
    for (const auto& cr : crossings) {
      auto dir = [&](std::size_t l) {
        const double len = std::hypot(ls[l].a, ls[l].b);
        return std::pair{-ls[l].b / len, ls[l].a / len};
      };
      const auto [ux, uy] = dir(cr.l1);
      const auto [vx, vy] = dir(cr.l2);
      for (double radius : {1e-4 * size, 1e-7 * size}) {
        for (int su : {1, -1}) {
          for (int sv : {1, -1}) {
            const double wx = su * ux + sv * vx, wy = su * uy + sv * vy;
            const double wl = std::hypot(wx, wy);
            probe(Point{cr.x + radius * wx / wl, cr.y + radius * wy / wl});
          }
        }
      }
    }
  } else {
    throw PreconditionError("sampling oracle supports d = 1 or d = 2 only");
  }

  std::vector<CancellationOrdering> out;
  for (const auto& s : found) out.emplace_back(s);
  std::sort(out.begin(), out.end(), shortlex);
  return out;
}

}  // namespace sicmap
