#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sicmap/model.hpp"

namespace sicmap {

// Stations decoded and canceled in order; the last one is the target.
struct CancellationOrdering {
  std::vector<std::size_t> stations;

  CancellationOrdering() = default;
  explicit CancellationOrdering(std::vector<std::size_t> s) : stations(std::move(s)) {}

  std::size_t target() const { return stations.back(); }
  std::size_t size() const { return stations.size(); }
  bool empty() const { return stations.empty(); }

  // Throws ValidationError unless nonempty, distinct and every index < n.
  void validate(std::size_t n) const;

  // "(s2,s1)" with 1-based station names.
  std::string to_string() const;

  friend bool operator==(const CancellationOrdering&, const CancellationOrdering&) = default;
  friend auto operator<=>(const CancellationOrdering&, const CancellationOrdering&) = default;
};

struct SicDecodeResult {
  bool success = false;
  CancellationOrdering chain;
  // Stage number (1-based) of the first stage that failed.
  std::optional<std::size_t> failed_at;
  // SINR observed at each attempted stage.
  std::vector<double> stage_sinr;
  // A distance tie touched the prefix and was broken by station index.
  bool degenerate = false;
};

// Stations at distance <= d(s_i, p), nearest first, ending at s_i.  Ties are
// broken by lower index and reported through `degenerate` when given.
CancellationOrdering decode_order(const Network& net, std::size_t i, const Point& p,
                                  bool* degenerate = nullptr);

SicDecodeResult receives_with_sic(const Network& net, std::size_t i, const Point& p);

// True at p = s_i; throws DomainError at any other station.
bool in_sic_zone(const Network& net, std::size_t i, const Point& p);

// Membership in the cell of `ordering`: every stage decodes after canceling
// all earlier stations.
bool cell_member(const Network& net, const CancellationOrdering& ordering, const Point& p);

// Same test from precomputed signal strengths (no validation).
bool cell_member_from_strengths(std::span<const double> strengths,
                                std::span<const std::size_t> ordering, double noise,
                                double beta);

// All ordered subsets of the other stations followed by i.
std::vector<CancellationOrdering> enumerate_orderings(std::size_t n, std::size_t i);

struct DecompositionReport {
  bool agreement = false;
  bool greedy_success = false;
  bool union_member = false;
  std::size_t orderings_checked = 0;
  std::size_t members = 0;
};

inline constexpr std::size_t kMaxDecompositionStations = 8;

// Brute-force union over every ordering ending at s_i compared against the
// greedy decoder.  Throws PreconditionError for n > 8.
DecompositionReport sic_zone_decomposition_check(const Network& net, std::size_t i,
                                                 const Point& p);

}  // namespace sicmap
