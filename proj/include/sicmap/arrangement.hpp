#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sicmap/model.hpp"
#include "sicmap/sic.hpp"

namespace sicmap {

struct ArrCell {
  Point rep;
  // d = 2: clipped polygon, counter-clockwise.  d = 1: the two interval
  // endpoints, clipped to the working box.
  std::vector<Point> polygon;
  bool unbounded = false;
};

// Two cells sharing a facet, separated by HP(s_si, s_sj).
struct ArrAdjacency {
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t si = 0;
  std::uint32_t sj = 0;
};

struct Arrangement {
  std::size_t dim = 0;
  std::size_t n = 0;
  std::vector<ArrCell> cells;
  std::vector<ArrAdjacency> adjacency;
  std::size_t line_count = 0;
  // Vertices where bisectors cross (excluding points on the box boundary).
  std::size_t vertex_count = 0;
  // Crossing vertices of multiplicity >= 3 (circumcenters of station triples).
  std::size_t concurrent_vertices = 0;
  // xmin, ymin, xmax, ymax (y entries unused for d = 1).
  std::array<double, 4> box{};
};

// Throws DegenerateInputError naming the station quadruple when two
// bisectors coincide, PreconditionError for d outside {1, 2}.
Arrangement build_arrangement(const Network& net);

struct Hds {
  Arrangement arr;
  std::size_t n = 0;
  std::size_t root = 0;
  // Row-major: cell c owns labels[c*n, (c+1)*n).
  std::vector<std::uint32_t> labels;
  std::vector<std::string> warnings;

  std::span<const std::uint32_t> label(std::size_t c) const {
    return std::span<const std::uint32_t>(labels).subspan(c * n, n);
  }
  std::size_t cell_count() const { return arr.cells.size(); }
};

// Root label by direct sort, every other label by a single swap across the
// bisector crossed during a depth-first walk.
Hds build_hds(const Network& net, std::size_t root = 0);
Hds label_arrangement(const Network& net, Arrangement arr, std::size_t root = 0);

struct NcoEntry {
  CancellationOrdering ordering;
  // Arrangement cells whose truncated label is this ordering.
  std::vector<std::uint32_t> cells;
};

struct NcoSet {
  std::size_t station = 0;
  // Sorted by length, then lexicographically.
  std::vector<NcoEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::vector<CancellationOrdering> orderings() const;
  bool contains(const CancellationOrdering& o) const;
};

NcoSet extract_nco(const Hds& hds, std::size_t i);

// x_1 = 0, x_2 = 1, x_{k+1} = x_k + x_{k-1} + 1.
Network gen_lower_bound_1d(std::size_t n, double noise = 0.01, double beta = 2.0,
                           double alpha = 2.0);

// Truncated labels realized at sample points, found without the arrangement.
// d = 1 samples every interval between distinct midpoints once; d = 2 uses a
// density x density grid plus probes around every pairwise bisector crossing.
std::vector<CancellationOrdering> nco_oracle(const Network& net, std::size_t i,
                                             std::size_t density);

}  // namespace sicmap
