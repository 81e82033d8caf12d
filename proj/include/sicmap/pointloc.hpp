#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "sicmap/model.hpp"
#include "sicmap/sic.hpp"

namespace sicmap {

// Square (c, r) covers [x0 + c h, x0 + (c+1) h] x [y0 + r h, y0 + (r+1) h].
struct GridFrame {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;

  std::int64_t col_of(double x) const;
  std::int64_t row_of(double y) const;
  friend bool operator==(const GridFrame&, const GridFrame&) = default;
};

// Inclusive row interval.
struct Run {
  std::int32_t lo = 0;
  std::int32_t hi = -1;
  friend bool operator==(const Run&, const Run&) = default;
};

// Rows strictly between lower.hi and upper.lo are '+', rows in
// [lower.lo, upper.hi] otherwise '?', everything else '-'.
struct GridColumn {
  bool empty = true;
  Run lower;
  Run upper;
  friend bool operator==(const GridColumn&, const GridColumn&) = default;
};

enum class Square : std::uint8_t { Minus, Unknown, Plus };

struct GridZone {
  GridFrame frame;
  std::int64_t col_begin = 0;
  std::vector<GridColumn> cols;

  bool empty() const { return cols.empty(); }
  std::int64_t col_end() const { return col_begin + static_cast<std::int64_t>(cols.size()); }
  const GridColumn* column(std::int64_t c) const;
  Square classify(std::int64_t col, std::int64_t row) const;
  // Drops empty columns at both ends.
  void trim();
  friend bool operator==(const GridZone&, const GridZone&) = default;
};

// Certified sandwich of a no-cancellation zone H(s_j | active): `inner` is a
// convex polygon inside the zone, `outer` a star-shaped outline containing it.
struct ZoneEnvelope {
  std::size_t station = 0;
  std::array<double, 2> center{};
  std::vector<std::array<double, 2>> inner;  // counter-clockwise hull
  std::vector<std::array<double, 2>> outer;  // star-shaped around center
  double area = 0.0;                         // of inner
  double perimeter = 0.0;                    // of inner
  double gap = 0.0;                          // widest inner/outer separation
  std::size_t rays = 0;
};

// Rays are doubled from 64 until the gap is at most target_gap (or 1 << 16).
ZoneEnvelope zone_envelope(const Network& net, std::size_t j, const StationSubset& active,
                           double target_gap);

// Column grid of an envelope on a given frame, restricted to columns
// [col_lo, col_hi].
GridZone grid_from_envelope(const ZoneEnvelope& env, const GridFrame& frame,
                            std::int64_t col_lo, std::int64_t col_hi);

// Chooses h = eps_tilde * area / (4 perimeter) and a frame anchored below the
// noise-limited box of s_j.
GridZone build_zone_grid(const Network& net, std::size_t j, const StationSubset& active,
                         double eps_tilde);

// Componentwise: lower over max, upper over min.  Throws ValidationError on
// mismatched frames.
GridZone intersect_grids(const std::vector<GridZone>& grids);
GridZone intersect_grids(const GridZone& a, const GridZone& b);

enum class LocResult { Plus, Minus, Unknown };
const char* to_string(LocResult r);

struct LocatorZone {
  CancellationOrdering ordering;
  GridZone grid;
};

struct LocatorOptions {
  double c1 = 1.0;
};

class SicLocator {
 public:
  std::size_t station = 0;
  std::size_t n = 0;
  double eps = 0.0;
  double c1 = 1.0;
  double eps_tilde = 0.0;
  GridFrame frame;
  // Orderings whose intersection came out nonempty on the grid.
  std::vector<LocatorZone> zones;
  // Orderings of NCO_i whose stage supports do not overlap.
  std::size_t empty_orderings = 0;

  // Rebuilds the query index; call after changing `zones`.
  void build_index();
  LocResult locate(const Point& p) const;
  LocResult locate_square(std::int64_t col, std::int64_t row) const;

 private:
  struct Slab {
    std::int64_t left = 0;
    std::vector<std::uint32_t> zone;        // sorted by lowest row
    std::vector<std::int32_t> lowest;
    std::vector<std::int32_t> highest;
    std::vector<std::int32_t> prefix_max;   // of highest
  };
  // Keyed by the slab's rightmost column.
  std::map<std::int64_t, Slab> slabs_;
};

// eps * N * beta * kappa^2 / (c1 * n^5) with kappa the minimal station gap.
double effective_eps(const Network& net, double eps, double c1);

// eps_tilde is capped at eps.  Throws PreconditionError outside d = 2, alpha = 2, beta > 1, N > 0,
// 0 < eps < 1.
SicLocator build_locator(const Network& net, std::size_t i, double eps,
                         const LocatorOptions& opts = {});

struct AreaFraction {
  double fraction = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double upper95 = 0.0;  // one-sided
  std::size_t samples = 0;
  std::size_t unknown_hits = 0;
  std::size_t zone_hits = 0;
};

// Monte Carlo ratio Area(Unknown) / Area(H^SIC(s_i)) over the noise-limited
// box of s_i.  Throws DomainError when no sample lands in the zone.
AreaFraction unknown_area_fraction(const SicLocator& loc, const Network& net,
                                   std::size_t samples, std::uint64_t seed);

}  // namespace sicmap
