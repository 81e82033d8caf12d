#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sicmap/model.hpp"
#include "sicmap/sic.hpp"

namespace sicmap {

// Sign of d(p,a)^2 - d(p,b)^2, exact: a floating-point filter with a rational
// fallback when the two values are too close to call.
int compare_distance(const Point& p, const Point& a, const Point& b);

// Perpendicular bisector HP(s_i, s_j), i < j, in the form normal . x = offset
// with normal = 2 (s_j - s_i) and offset = |s_j|^2 - |s_i|^2.  Points with
// normal . x < offset are nearer s_i.
struct Bisector {
  std::size_t i = 0;
  std::size_t j = 0;
  Point si;
  Point sj;
  std::vector<double> normal;
  double offset = 0.0;

  friend bool operator==(const Bisector& a, const Bisector& b) {
    return a.i == b.i && a.j == b.j;
  }
};

Bisector make_bisector(const Network& net, std::size_t i, std::size_t j);

enum class Side { NearerI, NearerJ, On };

Side side(const Bisector& b, const Point& p);

struct DistanceLabel {
  std::vector<std::size_t> order;
  bool degenerate = false;

  // Prefix ending at station i.
  std::vector<std::size_t> truncated(std::size_t i) const;
};

DistanceLabel label_of(const Network& net, const Point& p);

// d(s_i,p) <= d(s_j,p) for every j in subset; i must be in the subset.
bool in_voronoi(const Network& net, std::size_t i, const Point& p, const StationSubset& subset);
bool in_voronoi(const Network& net, std::size_t i, const Point& p);

// d(p,s_{i_1}) <= ... <= d(p,s_{i_k}) <= d(p,s) for every s outside the ordering.
bool in_ordered_voronoi(const Network& net, const CancellationOrdering& ordering,
                        const Point& p);

// The same region written as the intersection of nested Voronoi cells.
bool in_ordered_voronoi_intersection(const Network& net, const CancellationOrdering& ordering,
                                     const Point& p);

// Unordered order-k region: every member is at least as close as every
// non-member.
bool in_order_k_voronoi(const Network& net, const StationSubset& members, const Point& p);

// Bisector between the stations at the first index where the orderings
// differ; none when one ordering is a prefix of the other.
std::optional<Bisector> separating_bisector(const Network& net, const CancellationOrdering& a,
                                            const CancellationOrdering& b);

}  // namespace sicmap
