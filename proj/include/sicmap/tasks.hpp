#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sicmap/model.hpp"
#include "sicmap/pointloc.hpp"

namespace sicmap {

// Senders at 2^(k/alpha), k = 1..n, all receivers at the origin, N = 2^-n,
// beta = 1.
Network exponential_chain(std::size_t n, double alpha);

struct ScheduleReport {
  std::size_t n = 0;
  double alpha = 0.0;
  std::size_t slots_with_sic = 0;
  std::size_t slots_without_sic = 0;
  // stage_sinr[k]: SINRs seen by the receiver of sender k in the SIC slot.
  std::vector<std::vector<double>> stage_sinr;
  double min_stage_sinr = 0.0;
};

// Throws ValidationError for n < 2.
ScheduleReport schedule_demo(std::size_t n, double alpha);

struct PowerFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

// Least squares of log y on log x.
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

struct SoundnessReport {
  std::size_t plus_total = 0;
  std::size_t plus_checked = 0;
  std::size_t plus_violations = 0;
  std::size_t minus_checked = 0;
  std::size_t minus_violations = 0;
  bool plus_exhaustive = false;
};

// '+' square centers must decode under SIC, sampled '-' points must not.
// Every '+' square is tested when there are at most plus_budget of them.
SoundnessReport locator_soundness(const SicLocator& loc, const Network& net,
                                  std::size_t plus_budget, std::size_t minus_samples,
                                  std::uint64_t seed);

enum class CheckStatus { Pass, Fail, Skipped, Inconclusive };
const char* to_string(CheckStatus s);

struct AuditCheck {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::size_t samples = 0;
  std::size_t violations = 0;
  std::string note;
  double seconds = 0.0;
};

struct AuditReport {
  std::vector<AuditCheck> checks;
  bool passed() const;
  bool inconclusive() const;
  // Tab-separated, one check per line; timings are left out so reruns
  // compare equal.
  std::string to_tsv() const;
};

struct AuditOptions {
  std::uint64_t seed = 1;
  // Total point samples shared by the sampling checks.
  std::size_t budget = 200000;
  double eps = 0.1;
  double c1 = 1.0;
  bool locate = true;
};

inline constexpr std::size_t kMinCheckSamples = 200;

AuditReport run_audit(const Network& net, const AuditOptions& opts);
// Soundness and area-fraction checks for an existing locator.
AuditReport run_locate_audit(const Network& net, const SicLocator& loc, std::uint64_t seed,
                             std::size_t budget);

struct BenchOptions {
  std::vector<std::size_t> hds2 = {6, 8, 12, 16, 20};
  std::vector<std::size_t> hds1 = {50, 100, 200, 400};
  std::vector<std::size_t> locate = {4, 8, 16, 32};
  std::size_t repeats = 3;
  std::size_t queries = 200000;
  std::uint64_t seed = 1;
};

struct BenchRow {
  std::string task;
  std::size_t n = 0;
  double seconds = 0.0;
  std::size_t size = 0;  // cells, orderings or stored zones
};

struct BenchFitRow {
  std::string task;
  PowerFit fit;
};

struct BenchResult {
  std::vector<BenchRow> rows;
  std::vector<BenchFitRow> fits;
  std::string to_tsv() const;
};

// Random network of n stations at unit density scaled by `spacing`.
Network random_planar_network(std::size_t n, double spacing, double noise, double beta,
                              double alpha, std::uint64_t seed);

BenchResult run_bench(const BenchOptions& opts);

}  // namespace sicmap
