#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sicmap/arrangement.hpp"
#include "sicmap/model.hpp"
#include "sicmap/sic.hpp"

namespace sicmap {

enum class CellStatus { NonemptyVerified, EmptyUndetected };

struct SicCell {
  CancellationOrdering ordering;
  CellStatus status = CellStatus::EmptyUndetected;
  std::optional<Point> witness;
  // A bounded subset of member points found while sampling.
  std::vector<Point> samples;
};

struct SicZone {
  std::size_t station = 0;
  // One entry per ordering of NCO_i, in the NcoSet's order.
  std::vector<SicCell> cells;
  std::size_t nonempty = 0;
  // Grid samples whose label prefix was missing from NCO_i (must stay 0).
  std::size_t unmatched_samples = 0;
};

inline constexpr std::size_t kMaxCellSamples = 32;

// Sampling grid of `resolution` points per axis over the bounding box of the
// noise-limited ball of s_i; undetected orderings are retried up to three
// times at doubled density inside their arrangement cells.
SicZone build_sic_zone(const Network& net, std::size_t i, std::size_t resolution);
SicZone build_sic_zone(const Network& net, std::size_t i, std::size_t resolution,
                       const Hds& hds);

struct ContributorReport {
  std::size_t station = 0;
  std::size_t samples = 0;
  std::size_t successes = 0;
  // First station of each successful chain -> distinct chains seen.
  std::map<std::size_t, std::vector<CancellationOrdering>> chains_by_first;
  std::size_t contributors = 0;
  std::size_t violations = 0;
};

// Samples the noise-limited ball of s_i (grid plus uniform random points) and
// groups successful SIC chains by their first station.  Throws
// PreconditionError unless the network is compact under `threshold`.
ContributorReport compactness_contributor_check(const Network& net, std::size_t i,
                                                std::size_t samples, std::uint64_t seed,
                                                double threshold = 5.0);

enum class MapMode { NoSic, SicStation, SicAll };

struct RenderOptions {
  MapMode mode = MapMode::NoSic;
  std::size_t station = 0;        // for SicStation
  std::size_t max_depth = SIZE_MAX;  // SicStation: cancellations allowed
  std::size_t resolution = 0;     // 0 picks 1024 (d = 2) or 4096 (d = 1)
  bool voronoi_overlay = false;
};

inline constexpr std::size_t kMaxResolution = 8192;

struct Scene {
  std::size_t dim = 2;
  std::size_t width = 0;
  std::size_t height = 0;
  // xmin, ymin, xmax, ymax of the rendered window.
  double box[4] = {0, 0, 0, 0};
  // Row-major from the top row; -1 marks the null zone.
  std::vector<std::int32_t> owner;
  // Cancellations performed before the owner was decoded.
  std::vector<std::uint8_t> depth;
  std::vector<Point> stations;
  // Clipped Voronoi edges (x0, y0, x1, y1) when the overlay is requested.
  std::vector<std::array<double, 4>> voronoi;

  std::size_t count_owner(std::int32_t s) const;
  std::size_t count_owner_depth(std::int32_t s, std::size_t max_depth) const;
};

// Throws PreconditionError for d outside {1,2} or N = 0, ValidationError for
// a resolution above kMaxResolution.
Scene render_map(const Network& net, const RenderOptions& opts);

std::string scene_to_svg(const Scene& scene);

}  // namespace sicmap
