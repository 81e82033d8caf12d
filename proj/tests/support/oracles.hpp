#pragma once

// Reference implementations used by the tests.  They work in long double
// straight from the formulas and share no code with the library.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "sicmap/model.hpp"

namespace sicmap::testing {

using real = long double;

inline real ref_dist2(const Point& a, const Point& b) {
  real s = 0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const real d = static_cast<real>(a[k]) - b[k];
    s += d * d;
  }
  return s;
}

inline real ref_strength(const Network& net, std::size_t k, const Point& p) {
  return std::pow(ref_dist2(net.station(k), p), -static_cast<real>(net.alpha()) / 2);
}

inline real ref_sinr(const Network& net, std::size_t i, const Point& p,
                     const std::vector<bool>& active = {}) {
  real interference = 0;
  for (std::size_t k = 0; k < net.size(); ++k) {
    if (k == i || (!active.empty() && !active[k])) continue;
    interference += ref_strength(net, k, p);
  }
  return ref_strength(net, i, p) / (interference + net.noise());
}

// Stations sorted by distance to p, ties by index.
inline std::vector<std::size_t> ref_label(const Network& net, const Point& p) {
  std::vector<std::size_t> order(net.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return ref_dist2(net.station(a), p) < ref_dist2(net.station(b), p);
  });
  return order;
}

struct RefDecode {
  bool success = false;
  std::vector<std::size_t> chain;
  // Smallest distance between a stage SINR and the threshold, relative.
  real margin = INFINITY;
};

// Greedy SIC towards i: decode stations nearest first until i is reached.
inline RefDecode ref_decode(const Network& net, std::size_t i, const Point& p) {
  RefDecode r;
  const auto order = ref_label(net, p);
  std::vector<bool> active(net.size(), true);
  for (std::size_t s : order) {
    r.chain.push_back(s);
    const real v = ref_sinr(net, s, p, active);
    r.margin = std::min(r.margin, std::abs(v / net.beta() - 1));
    if (v < net.beta()) return r;
    if (s == i) {
      r.success = true;
      return r;
    }
    active[s] = false;
  }
  return r;
}

// Ordering membership: each stage decodes after canceling the earlier ones.
inline bool ref_cell_member(const Network& net, const std::vector<std::size_t>& ord,
                            const Point& p, real* margin = nullptr) {
  std::vector<bool> active(net.size(), true);
  for (std::size_t s : ord) {
    const real v = ref_sinr(net, s, p, active);
    if (margin) *margin = std::min(*margin, std::abs(v / net.beta() - 1));
    if (v < net.beta()) return false;
    active[s] = false;
  }
  return true;
}

inline Network random_network(std::mt19937_64& rng, std::size_t dim, std::size_t n,
                              double noise, double beta, double alpha = 2.0,
                              double side = 10.0) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> s;
  while (s.size() < n) {
    std::vector<double> c(dim);
    for (auto& v : c) v = u(rng);
    Point p(std::move(c));
    const bool close = std::any_of(s.begin(), s.end(), [&](const Point& q) {
      return ref_dist2(p, q) < 0.01 * side * side / (n * n);
    });
    if (!close) s.push_back(std::move(p));
  }
  return Network(dim, std::move(s), noise, beta, alpha);
}

// Uniform point in the station bounding box grown by `pad`.
inline Point random_point(std::mt19937_64& rng, const Network& net, double pad) {
  std::vector<double> c(net.dim());
  for (std::size_t k = 0; k < net.dim(); ++k) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : net.stations()) {
      lo = std::min(lo, s[k]);
      hi = std::max(hi, s[k]);
    }
    c[k] = std::uniform_real_distribution<double>(lo - pad, hi + pad)(rng);
  }
  return Point(std::move(c));
}

}  // namespace sicmap::testing
