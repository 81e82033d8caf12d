#include "sicmap/sic.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "sicmap/errors.hpp"

namespace sicmap {

void CancellationOrdering::validate(std::size_t n) const {
  if (stations.empty()) throw ValidationError("cancellation ordering is empty");
  std::vector<bool> seen(n, false);
  for (std::size_t s : stations) {
    if (s >= n) throw ValidationError("ordering references station " + std::to_string(s + 1));
    if (seen[s]) throw ValidationError("ordering repeats station " + std::to_string(s + 1));
    seen[s] = true;
  }
}

std::string CancellationOrdering::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < stations.size(); ++k) {
    if (k) os << ',';
    os << 's' << stations[k] + 1;
  }
  os << ')';
  return os.str();
}

namespace {

struct Sorted {
  std::vector<std::size_t> order;
  std::vector<double> strength;  // indexed by station
  bool degenerate = false;
};

Sorted sort_by_distance(const Network& net, std::size_t i, const Point& p) {
  if (i >= net.size()) throw ValidationError("station index out of range");
  Sorted s;
  s.strength = net.signal_strengths(p);
  std::vector<double> d2(net.size());
  for (std::size_t k = 0; k < net.size(); ++k) d2[k] = squared_dist(net.station(k), p);
  s.order.resize(net.size());
  std::iota(s.order.begin(), s.order.end(), 0);
  std::sort(s.order.begin(), s.order.end(), [&](std::size_t a, std::size_t b) {
    if (d2[a] != d2[b]) return d2[a] < d2[b];
    return a < b;
  });
  // Only ties among the decoded prefix (or straddling its end) matter.
  const std::size_t pos = std::find(s.order.begin(), s.order.end(), i) - s.order.begin();
  for (std::size_t k = 0; k + 1 < s.order.size() && k <= pos; ++k) {
    if (d2[s.order[k]] == d2[s.order[k + 1]]) s.degenerate = true;
  }
  return s;
}

}  // namespace

CancellationOrdering decode_order(const Network& net, std::size_t i, const Point& p,
                                  bool* degenerate) {
  Sorted s = sort_by_distance(net, i, p);
  const auto it = std::find(s.order.begin(), s.order.end(), i);
  if (degenerate) *degenerate = s.degenerate;
  return CancellationOrdering(std::vector<std::size_t>(s.order.begin(), it + 1));
}

SicDecodeResult receives_with_sic(const Network& net, std::size_t i, const Point& p) {
  Sorted s = sort_by_distance(net, i, p);
  const std::size_t n = net.size();
  // suffix[k] = total strength of the stations at sorted positions >= k,
  // accumulated from the weakest upward.
  std::vector<double> suffix(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) suffix[k] = suffix[k + 1] + s.strength[s.order[k]];

  SicDecodeResult r;
  r.degenerate = s.degenerate;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t st = s.order[k];
    r.chain.stations.push_back(st);
    const double value = s.strength[st] / (suffix[k + 1] + net.noise());
    r.stage_sinr.push_back(value);
    if (!meets_threshold(value, net.beta())) {
      r.failed_at = k + 1;
      return r;
    }
    if (st == i) {
      r.success = true;
      return r;
    }
  }
  return r;
}

bool in_sic_zone(const Network& net, std::size_t i, const Point& p) {
  if (i >= net.size()) throw ValidationError("station index out of range");
  const std::size_t at = net.station_at(p);
  if (at == i) return true;
  return receives_with_sic(net, i, p).success;
}

bool cell_member_from_strengths(std::span<const double> strengths,
                                std::span<const std::size_t> ordering, double noise,
                                double beta) {
  // Interference at stage j is everything outside the ordering plus the
  // ordering's tail after j.
  double rest = 0.0;
  for (std::size_t k = 0; k < strengths.size(); ++k) {
    if (std::find(ordering.begin(), ordering.end(), k) == ordering.end()) rest += strengths[k];
  }
  double tail = 0.0;
  std::vector<double> tails(ordering.size());
  for (std::size_t j = ordering.size(); j-- > 0;) {
    tails[j] = tail;
    tail += strengths[ordering[j]];
  }
  for (std::size_t j = 0; j < ordering.size(); ++j) {
    const double value = strengths[ordering[j]] / (rest + tails[j] + noise);
    if (!meets_threshold(value, beta)) return false;
  }
  return true;
}

bool cell_member(const Network& net, const CancellationOrdering& ordering, const Point& p) {
  ordering.validate(net.size());
  const auto e = net.signal_strengths(p);
  return cell_member_from_strengths(e, ordering.stations, net.noise(), net.beta());
}

std::vector<CancellationOrdering> enumerate_orderings(std::size_t n, std::size_t i) {
  if (i >= n) throw ValidationError("station index out of range");
  std::vector<CancellationOrdering> out;
  std::vector<std::size_t> prefix;
  std::vector<bool> used(n, false);
  used[i] = true;
  auto rec = [&](auto&& self) -> void {
    CancellationOrdering o(prefix);
    o.stations.push_back(i);
    out.push_back(std::move(o));
    for (std::size_t s = 0; s < n; ++s) {
      if (used[s]) continue;
      used[s] = true;
      prefix.push_back(s);
      self(self);
      prefix.pop_back();
      used[s] = false;
    }
  };
  rec(rec);
  return out;
}

DecompositionReport sic_zone_decomposition_check(const Network& net, std::size_t i,
                                                 const Point& p) {
  const std::size_t n = net.size();
  if (n > kMaxDecompositionStations) {
    throw PreconditionError("decomposition check is limited to 8 stations");
  }
  if (i >= n) throw ValidationError("station index out of range");
  const auto e = net.signal_strengths(p);

  DecompositionReport rep;
  std::vector<bool> canceled(n, false);
  std::vector<bool> used(n, false);
  used[i] = true;
  // Interference is summed afresh at every stage; subtracting canceled
  // strengths from a running total loses everything near a station.
  auto stage_ok = [&](std::size_t st) {
    double interference = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != st && !canceled[k]) interference += e[k];
    }
    return meets_threshold(e[st] / (interference + net.noise()), net.beta());
  };
  auto rec = [&](auto&& self, bool ok) -> void {
    ++rep.orderings_checked;
    if (ok && stage_ok(i)) {
      ++rep.members;
      rep.union_member = true;
    }
    for (std::size_t s = 0; s < n; ++s) {
      if (used[s]) continue;
      const bool next_ok = ok && stage_ok(s);
      used[s] = true;
      canceled[s] = true;
      self(self, next_ok);
      canceled[s] = false;
      used[s] = false;
    }
  };
  rec(rec, true);
  rep.greedy_success = receives_with_sic(net, i, p).success;
  rep.agreement = rep.greedy_success == rep.union_member;
  return rep;
}

}  // namespace sicmap
