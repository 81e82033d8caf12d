#include "sicmap/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sicmap/errors.hpp"

namespace sicmap {

namespace {

double strength_from_sq(double d2, double alpha) {
  if (alpha == 2.0) return 1.0 / d2;
  return std::pow(d2, -0.5 * alpha);
}

double dist_pow_alpha(double d2, double alpha) {
  if (alpha == 2.0) return d2;
  return std::pow(d2, 0.5 * alpha);
}

}  // namespace

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  if (coords_.empty()) throw ValidationError("point must have at least one coordinate");
  for (double c : coords_) {
    if (!std::isfinite(c)) throw ValidationError("point coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

std::string Point::to_string() const {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t k = 0; k < coords_.size(); ++k) {
    if (k) os << ',';
    os << coords_[k];
  }
  return os.str();
}

double squared_dist(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) throw ValidationError("dimension mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < p.dim(); ++k) {
    const double d = q[k] - p[k];
    s += d * d;
  }
  return s;
}

double dist(const Point& p, const Point& q) { return std::sqrt(squared_dist(p, q)); }

Point midpoint(const Point& p, const Point& q) {
  if (p.dim() != q.dim()) throw ValidationError("dimension mismatch");
  std::vector<double> c(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) c[k] = 0.5 * (p[k] + q[k]);
  return Point(std::move(c));
}

StationSubset::StationSubset(std::vector<std::size_t> indices, bool ordered)
    : indices_(std::move(indices)), ordered_(ordered) {
  std::vector<std::size_t> sorted = indices_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ValidationError("station subset contains repeated indices");
  }
  if (!ordered_) indices_ = std::move(sorted);
}

StationSubset StationSubset::all(std::size_t n) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  return StationSubset(std::move(idx), false);
}

StationSubset StationSubset::all_except(std::size_t n, std::span<const std::size_t> removed) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(removed.begin(), removed.end(), i) == removed.end()) idx.push_back(i);
  }
  return StationSubset(std::move(idx), false);
}

bool StationSubset::contains(std::size_t i) const {
  return std::find(indices_.begin(), indices_.end(), i) != indices_.end();
}

Network::Network(std::size_t dim, std::vector<Point> stations, double noise, double beta,
                 double alpha)
    : dim_(dim), stations_(std::move(stations)), noise_(noise), beta_(beta), alpha_(alpha) {
  if (dim_ == 0) throw ValidationError("dimension must be positive");
  if (stations_.size() < 2) throw ValidationError("network needs at least two stations");
  if (!(std::isfinite(noise_) && noise_ >= 0.0)) throw ValidationError("noise must be >= 0");
  if (!(std::isfinite(beta_) && beta_ >= 1.0)) throw ValidationError("beta must be >= 1");
  if (!(std::isfinite(alpha_) && alpha_ > 0.0)) throw ValidationError("alpha must be > 0");
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    if (stations_[i].dim() != dim_) {
      throw ValidationError("station " + std::to_string(i + 1) + " has wrong dimension");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (stations_[i] == stations_[j]) {
        throw ValidationError("stations " + std::to_string(j + 1) + " and " +
                              std::to_string(i + 1) + " coincide");
      }
    }
  }
  original_index_.resize(stations_.size());
  for (std::size_t i = 0; i < stations_.size(); ++i) original_index_[i] = i;
}

Network::Network(Unchecked, std::size_t dim, std::vector<Point> stations, double noise,
                 double beta, double alpha, std::vector<std::size_t> original_index)
    : dim_(dim),
      stations_(std::move(stations)),
      noise_(noise),
      beta_(beta),
      alpha_(alpha),
      original_index_(std::move(original_index)) {}

void Network::check_point(const Point& p) const {
  if (p.dim() != dim_) throw ValidationError("query point has wrong dimension");
}

std::size_t Network::station_at(const Point& p) const {
  check_point(p);
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    if (stations_[i] == p) return i;
  }
  return stations_.size();
}

void Network::signal_strengths(const Point& p, std::span<double> out) const {
  check_point(p);
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    const double d2 = squared_dist(stations_[i], p);
    if (d2 == 0.0) {
      throw DomainError("SINR is undefined at station " + std::to_string(i + 1));
    }
    out[i] = strength_from_sq(d2, alpha_);
  }
}

std::vector<double> Network::signal_strengths(const Point& p) const {
  std::vector<double> out(stations_.size());
  signal_strengths(p, out);
  return out;
}

double sinr_from_strengths(std::span<const double> strengths, std::size_t i, double noise,
                           std::span<const bool> active) {
  double interference = 0.0;
  for (std::size_t j = 0; j < strengths.size(); ++j) {
    if (j == i) continue;
    if (!active.empty() && !active[j]) continue;
    interference += strengths[j];
  }
  return strengths[i] / (interference + noise);
}

double sinr(const Network& net, std::size_t i, const Point& p) {
  if (i >= net.size()) throw ValidationError("station index out of range");
  const auto e = net.signal_strengths(p);
  return sinr_from_strengths(e, i, net.noise());
}

bool meets_threshold(double sinr_value, double beta) {
  return sinr_value >= beta * (1.0 - kThresholdRelTol);
}

bool received(const Network& net, std::size_t i, const Point& p) {
  return meets_threshold(sinr(net, i, p), net.beta());
}

double char_poly(const Network& net, std::size_t i, const Point& p) {
  if (i >= net.size()) throw ValidationError("station index out of range");
  net.check_point(p);
  const std::size_t n = net.size();
  std::vector<double> da(n);
  for (std::size_t k = 0; k < n; ++k) {
    da[k] = dist_pow_alpha(squared_dist(net.station(k), p), net.alpha());
  }
  auto product_except = [&](std::size_t a, std::size_t b) {
    double prod = 1.0;
    for (std::size_t l = 0; l < n; ++l) {
      if (l != a && l != b) prod *= da[l];
    }
    return prod;
  };
  double interference = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k == i) continue;
    interference += net.power(k) * product_except(k, k);
  }
  const double noise_term = net.noise() * product_except(n, n);
  return net.beta() * (interference + noise_term) - net.power(i) * product_except(i, i);
}

Network restrict_to(const Network& net, const StationSubset& subset) {
  if (subset.size() == 0) throw ValidationError("cannot restrict to an empty subset");
  std::vector<Point> stations;
  std::vector<std::size_t> original;
  for (std::size_t idx : subset.indices()) {
    if (idx >= net.size()) throw ValidationError("subset index out of range");
    stations.push_back(net.station(idx));
    original.push_back(net.original_index(idx));
  }
  return Network(Network::Unchecked{}, net.dim(), std::move(stations), net.noise(), net.beta(),
                 net.alpha(), std::move(original));
}

double compactness(const Network& net) { return std::pow(net.beta(), 1.0 / net.alpha()); }

bool is_compact(const Network& net, double threshold) {
  return compactness(net) >= threshold * (1.0 - kThresholdRelTol);
}

double noise_limited_radius(const Network& net) {
  if (net.noise() <= 0.0) {
    throw DomainError("noise-limited radius is unbounded for N = 0");
  }
  return std::pow(1.0 / (net.beta() * net.noise()), 1.0 / net.alpha());
}

double min_pair_dist(const Network& net) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < net.size(); ++i) {
    for (std::size_t j = i + 1; j < net.size(); ++j) {
      best = std::min(best, dist(net.station(i), net.station(j)));
    }
  }
  return best;
}

}  // namespace sicmap
