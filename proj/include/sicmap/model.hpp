#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace sicmap {

// Relative tolerance applied to every SINR threshold comparison.
inline constexpr double kThresholdRelTol = 1e-9;

// A point in d-dimensional Euclidean space.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t k) const { return coords_[k]; }
  double& operator[](std::size_t k) { return coords_[k]; }
  std::span<const double> coords() const { return coords_; }

  friend bool operator==(const Point&, const Point&) = default;

  std::string to_string() const;

 private:
  std::vector<double> coords_;
};

double squared_dist(const Point& p, const Point& q);
double dist(const Point& p, const Point& q);
Point midpoint(const Point& p, const Point& q);

// Index set over the stations of a network.  Ordered subsets keep the given
// order; unordered ones are normalized to ascending order.
class StationSubset {
 public:
  StationSubset(std::vector<std::size_t> indices, bool ordered);
  static StationSubset all(std::size_t n);
  static StationSubset all_except(std::size_t n, std::span<const std::size_t> removed);

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool ordered() const { return ordered_; }
  bool contains(std::size_t i) const;

 private:
  std::vector<std::size_t> indices_;
  bool ordered_;
};

// Uniform-power wireless network <d, S, P = 1, N, beta, alpha>.
class Network {
 public:
  // Validates n >= 2, distinct stations, beta >= 1, alpha > 0, N >= 0.
  Network(std::size_t dim, std::vector<Point> stations, double noise, double beta,
          double alpha);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return stations_.size(); }
  const Point& station(std::size_t i) const { return stations_.at(i); }
  const std::vector<Point>& stations() const { return stations_; }
  double noise() const { return noise_; }
  double beta() const { return beta_; }
  double alpha() const { return alpha_; }
  double power(std::size_t) const { return 1.0; }

  // Index of station i in the network this one was restricted from (identity
  // for unrestricted networks).
  std::size_t original_index(std::size_t i) const { return original_index_.at(i); }

  // Signal strength d(s_i, p)^-alpha for all stations; throws DomainError if p
  // coincides with a station.
  std::vector<double> signal_strengths(const Point& p) const;
  void signal_strengths(const Point& p, std::span<double> out) const;

  // Index of a station located exactly at p, or size() if none.
  std::size_t station_at(const Point& p) const;

  void check_point(const Point& p) const;

  friend Network restrict_to(const Network& net, const StationSubset& subset);

 private:
  struct Unchecked {};
  Network(Unchecked, std::size_t dim, std::vector<Point> stations, double noise, double beta,
          double alpha, std::vector<std::size_t> original_index);

  std::size_t dim_;
  std::vector<Point> stations_;
  double noise_;
  double beta_;
  double alpha_;
  std::vector<std::size_t> original_index_;
};

// SINR of station i at p.  Throws DomainError when p is a station location.
double sinr(const Network& net, std::size_t i, const Point& p);

// SINR of station i given precomputed signal strengths, counting only the
// stations flagged in `active` as interferers (all when empty).
double sinr_from_strengths(std::span<const double> strengths, std::size_t i, double noise,
                           std::span<const bool> active = {});

bool meets_threshold(double sinr_value, double beta);

// s_i is heard at p without cancellation.
bool received(const Network& net, std::size_t i, const Point& p);

// Characteristic polynomial F_{s_i}(p); F <= 0 iff s_i is heard at p (p not a station).
double char_poly(const Network& net, std::size_t i, const Point& p);

// Same parameters, stations reduced to the subset (in subset order).
Network restrict_to(const Network& net, const StationSubset& subset);

double compactness(const Network& net);
bool is_compact(const Network& net, double threshold = 5.0);

// Radius beyond which no station can be heard, (1 / (beta N))^(1/alpha).
double noise_limited_radius(const Network& net);

double min_pair_dist(const Network& net);

}  // namespace sicmap
