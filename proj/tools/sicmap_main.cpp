// sicmap command line.  Machine-readable records go to stdout, progress and
// diagnostics to stderr.  Stations are numbered from 1 on the command line.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "sicmap/arrangement.hpp"
#include "sicmap/errors.hpp"
#include "sicmap/io.hpp"
#include "sicmap/parallel.hpp"
#include "sicmap/pointloc.hpp"
#include "sicmap/sic.hpp"
#include "sicmap/tasks.hpp"
#include "sicmap/zones.hpp"

using namespace sicmap;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitAudit = 3;

struct Global {
  std::uint64_t seed = 1;
  std::size_t threads = 0;
  double eps = 0.1;
  std::size_t res = 0;
};

Point parse_point(const std::string& text, std::size_t dim) {
  std::vector<double> c;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    char* end = nullptr;
    const double v = std::strtod(part.c_str(), &end);
    if (part.empty() || end == part.c_str() || *end != '\0') {
      throw ValidationError("bad coordinate '" + part + "' in point '" + text + "'");
    }
    c.push_back(v);
  }
  if (c.size() != dim) {
    throw ValidationError("point '" + text + "' needs " + std::to_string(dim) + " coordinates");
  }
  return Point(std::move(c));
}

std::size_t station_index(std::size_t one_based, const Network& net) {
  if (one_based < 1 || one_based > net.size()) {
    throw ValidationError("station must lie in 1.." + std::to_string(net.size()));
  }
  return one_based - 1;
}

// Orderings are printed 1-based to match --station.
std::string ordering_text(const CancellationOrdering& o) {
  std::string s = "(";
  for (std::size_t k = 0; k < o.size(); ++k) {
    if (k) s += ",";
    s += "s" + std::to_string(o.stations[k] + 1);
  }
  return s + ")";
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

class Stopwatch {
 public:
  explicit Stopwatch(std::string what) : what_(std::move(what)) {}
  ~Stopwatch() {
    const double s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    std::cerr << what_ << ": " << fmt(s) << " s\n";
  }

 private:
  std::string what_;
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

int report_audit(const AuditReport& rep) {
  std::cout << rep.to_tsv();
  for (const auto& c : rep.checks) std::cerr << c.name << ": " << fmt(c.seconds) << " s\n";
  if (!rep.passed()) {
    std::cerr << "audit: violations found\n";
    return kExitAudit;
  }
  if (rep.inconclusive()) std::cerr << "audit: some checks were inconclusive\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SINR diagrams under successive interference cancellation"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--seed", g.seed, "Seed for randomized checks")->envname("SICMAP_SEED");
  app.add_option("--threads", g.threads, "Worker threads (0: all cores)")
      ->envname("SICMAP_THREADS");
  app.add_option("--eps", g.eps, "Locator accuracy")->envname("SICMAP_EPS");
  app.add_option("--res", g.res, "Sampling or raster resolution (0: default)")
      ->envname("SICMAP_RES");

  std::string net_path, point_text, out_path, locator_path, points_path, dump_path;
  std::size_t station = 0;

  auto net_opt = [&](CLI::App* sub) {
    sub->add_option("--net", net_path, "Network file")->required()->envname("SICMAP_NET");
  };
  auto station_opt = [&](CLI::App* sub, bool required) {
    auto* o = sub->add_option("--station", station, "Station (1-based)")
                  ->envname("SICMAP_STATION");
    if (required) o->required();
  };

  auto* eval = app.add_subcommand("eval", "SINR and reception of every station at a point");
  net_opt(eval);
  eval->add_option("--point", point_text, "x[,y]")->required()->envname("SICMAP_POINT");

  auto* chain = app.add_subcommand("sic-chain", "Decode chain towards one station");
  net_opt(chain);
  station_opt(chain, true);
  chain->add_option("--point", point_text, "x[,y]")->required()->envname("SICMAP_POINT");

  bool verify = false;
  auto* nco = app.add_subcommand("nco", "Nonempty cancellation orderings of a station");
  net_opt(nco);
  station_opt(nco, true);
  nco->add_flag("--verify", verify, "Compare against the sampling oracle")
      ->envname("SICMAP_VERIFY");
  nco->add_option("--dump-hds", dump_path, "Write labeled cells as JSON lines")
      ->envname("SICMAP_DUMP_HDS");

  bool sic = false, voronoi = false;
  std::size_t depth = SIZE_MAX;
  auto* map = app.add_subcommand("map", "Render a reception map as SVG");
  net_opt(map);
  station_opt(map, false);
  map->add_flag("--sic", sic, "Decode with cancellation")->envname("SICMAP_SIC");
  map->add_flag("--voronoi", voronoi, "Overlay the Voronoi diagram")->envname("SICMAP_VORONOI");
  map->add_option("--depth", depth, "Cancellations allowed for --station")
      ->envname("SICMAP_DEPTH");
  map->add_option("-o,--out", out_path, "Output SVG")->required()->envname("SICMAP_OUT");

  auto* zstats = app.add_subcommand("zone-stats", "Per-station cell counts and compactness");
  net_opt(zstats);

  double c1 = 1.0;
  auto* lbuild = app.add_subcommand("locate-build", "Build a point-location structure");
  net_opt(lbuild);
  station_opt(lbuild, true);
  lbuild->add_option("--c1", c1, "Constant in the effective eps")->envname("SICMAP_C1");
  lbuild->add_option("-o,--out", out_path, "Output locator file")->required()
      ->envname("SICMAP_OUT");

  auto* lquery = app.add_subcommand("locate-query", "Classify points with a locator");
  lquery->add_option("--locator", locator_path, "Locator file")->required()
      ->envname("SICMAP_LOCATOR");
  lquery->add_option("--points", points_path, "One x,y per line")->required()
      ->envname("SICMAP_POINTS");

  std::size_t budget = 200000;
  auto* laudit = app.add_subcommand("locate-audit", "Soundness and area checks of a locator");
  net_opt(laudit);
  station_opt(laudit, false);
  laudit->add_option("--locator", locator_path, "Locator file (built when absent)")
      ->envname("SICMAP_LOCATOR");
  laudit->add_option("--c1", c1, "Constant in the effective eps")->envname("SICMAP_C1");
  laudit->add_option("--budget", budget, "Sample budget")->envname("SICMAP_BUDGET");

  std::size_t chain_n = 8;
  double chain_alpha = 2.0;
  auto* sched = app.add_subcommand("schedule-demo", "Exponential chain schedule");
  sched->add_option("--n", chain_n, "Number of links")->envname("SICMAP_N");
  sched->add_option("--alpha", chain_alpha, "Path-loss exponent")->envname("SICMAP_ALPHA");

  bool no_locate = false;
  auto* audit = app.add_subcommand("audit", "Run the property suite on a network");
  net_opt(audit);
  audit->add_option("--budget", budget, "Sample budget")->envname("SICMAP_BUDGET");
  audit->add_option("--c1", c1, "Constant in the effective eps")->envname("SICMAP_C1");
  audit->add_flag("--no-locate", no_locate, "Skip the locator checks")
      ->envname("SICMAP_NO_LOCATE");

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Timing table with fitted exponents");
  bench->add_option("--hds2", bench_opts.hds2, "Sizes for 2D arrangements")
      ->envname("SICMAP_HDS2")->delimiter(',');
  bench->add_option("--hds1", bench_opts.hds1, "Sizes for 1D arrangements")
      ->envname("SICMAP_HDS1")->delimiter(',');
  bench->add_option("--locate", bench_opts.locate, "Sizes for locators")
      ->envname("SICMAP_LOCATE")->delimiter(',');
  bench->add_option("--queries", bench_opts.queries, "Queries per locator")
      ->envname("SICMAP_QUERIES");
  bench->add_option("--repeats", bench_opts.repeats, "Repeats per timing (best kept)")
      ->envname("SICMAP_REPEATS");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  set_thread_count(g.threads);
  try {
    if (*eval) {
      const Network net = load_network(net_path);
      const Point p = parse_point(point_text, net.dim());
      net.check_point(p);
      if (net.station_at(p) < net.size()) {
        throw ValidationError("point coincides with station " +
                              std::to_string(net.station_at(p) + 1));
      }
      std::cout << "station\tsinr\treceived\tsic\n";
      for (std::size_t i = 0; i < net.size(); ++i) {
        std::cout << i + 1 << '\t' << fmt(sinr(net, i, p)) << '\t' << received(net, i, p) << '\t'
                  << receives_with_sic(net, i, p).success << '\n';
      }
      return kExitOk;
    }

    if (*chain) {
      const Network net = load_network(net_path);
      const std::size_t i = station_index(station, net);
      const Point p = parse_point(point_text, net.dim());
      net.check_point(p);
      const SicDecodeResult r = receives_with_sic(net, i, p);
      std::cout << "station\t" << i + 1 << "\n";
      std::cout << "chain\t" << ordering_text(r.chain) << "\n";
      for (std::size_t k = 0; k < r.stage_sinr.size(); ++k) {
        const bool ok = !r.failed_at || k + 1 < *r.failed_at;
        std::cout << "stage\t" << k + 1 << "\ts" << r.chain.stations[k] + 1 << '\t'
                  << fmt(r.stage_sinr[k]) << '\t' << (ok ? "decoded" : "failed") << "\n";
      }
      std::cout << "result\t" << (r.success ? "success" : "failure") << "\n";
      if (r.degenerate) std::cout << "degenerate\t1\n";
      return kExitOk;
    }

    if (*nco) {
      const Network net = load_network(net_path);
      const std::size_t i = station_index(station, net);
      Stopwatch sw("nco");
      const Hds hds = build_hds(net);
      const NcoSet set = extract_nco(hds, i);
      for (const auto& w : hds.warnings) std::cerr << "warning: " << w << "\n";
      std::cout << "size\t" << set.size() << "\n";
      for (const auto& e : set.entries) std::cout << "ordering\t" << ordering_text(e.ordering) << "\n";
      if (!dump_path.empty()) {
        std::ostringstream out;
        for (std::size_t c = 0; c < hds.cell_count(); ++c) {
          const ArrCell& cell = hds.arr.cells[c];
          nlohmann::json j;
          j["cell"] = c;
          j["rep"] = std::vector<double>(cell.rep.coords().begin(), cell.rep.coords().end());
          j["vertices"] = nlohmann::json::array();
          for (const auto& v : cell.polygon) {
            j["vertices"].push_back(std::vector<double>(v.coords().begin(), v.coords().end()));
          }
          j["unbounded"] = cell.unbounded;
          std::vector<std::size_t> label;
          for (auto s : hds.label(c)) label.push_back(s + 1);
          j["label"] = label;
          out << j.dump() << "\n";
        }
        write_file_atomic(dump_path, out.str());
      }
      if (verify) {
        const auto oracle = nco_oracle(net, i, g.res ? g.res : 200);
        std::size_t missing = 0;
        for (const auto& o : oracle) missing += !set.contains(o);
        const bool exact = oracle.size() == set.size();
        std::cout << "oracle\t" << oracle.size() << "\n";
        std::cout << "oracle_missing\t" << missing << "\n";
        std::cout << "oracle_equal\t" << (missing == 0 && exact) << "\n";
        const bool ok = missing == 0 && (net.dim() != 1 || exact);
        if (!ok) return kExitAudit;
      }
      return kExitOk;
    }

    if (*map) {
      const Network net = load_network(net_path);
      RenderOptions ro;
      ro.resolution = g.res;
      ro.voronoi_overlay = voronoi;
      if (!sic) {
        ro.mode = MapMode::NoSic;
      } else if (station) {
        ro.mode = MapMode::SicStation;
        ro.station = station_index(station, net);
        ro.max_depth = depth;
      } else {
        ro.mode = MapMode::SicAll;
      }
      if (!sic && station) station_index(station, net);
      Stopwatch sw("map");
      const Scene scene = render_map(net, ro);
      write_file_atomic(out_path, scene_to_svg(scene));
      std::cout << "station\tpixels\n";
      for (std::size_t k = 0; k < net.size(); ++k) {
        std::cout << k + 1 << '\t' << scene.count_owner(static_cast<std::int32_t>(k)) << "\n";
      }
      std::cout << "null\t" << scene.count_owner(-1) << "\n";
      return kExitOk;
    }

    if (*zstats) {
      const Network net = load_network(net_path);
      const bool compact = is_compact(net) && net.beta() > 1.0 && net.noise() > 0;
      std::cout << "compactness\t" << fmt(compactness(net)) << "\t" << (compact ? "compact" : "not-compact")
                << "\n";
      std::cout << "station\ttau_hat\tnco\tcontributors\tviolations\n";
      Stopwatch sw("zone-stats");
      const Hds hds = build_hds(net);
      const std::size_t res = g.res ? g.res : 256;
      for (std::size_t i = 0; i < net.size(); ++i) {
        const SicZone z = build_sic_zone(net, i, res, hds);
        std::cout << i + 1 << '\t' << z.nonempty << '\t' << z.cells.size() << '\t';
        if (compact) {
          const ContributorReport r = compactness_contributor_check(net, i, 20000, g.seed + i);
          std::cout << r.contributors << '\t' << r.violations << "\n";
        } else {
          std::cout << "-\t-\n";
        }
      }
      return kExitOk;
    }

    if (*lbuild) {
      const Network net = load_network(net_path);
      const std::size_t i = station_index(station, net);
      LocatorOptions lo;
      lo.c1 = c1;
      std::optional<SicLocator> loc;
      {
        Stopwatch sw("locate-build");
        loc = build_locator(net, i, g.eps, lo);
      }
      save_locator(*loc, out_path);
      std::size_t cols = 0;
      for (const auto& z : loc->zones) cols += z.grid.cols.size();
      std::cout << "zones\t" << loc->zones.size() << "\n";
      std::cout << "empty_orderings\t" << loc->empty_orderings << "\n";
      std::cout << "eps_tilde\t" << fmt(loc->eps_tilde) << "\n";
      std::cout << "square\t" << fmt(loc->frame.h) << "\n";
      std::cout << "columns\t" << cols << "\n";
      return kExitOk;
    }

    if (*lquery) {
      const SicLocator loc = load_locator(locator_path);
      std::ifstream in(points_path);
      if (!in) throw ValidationError("cannot read " + points_path);
      std::string line;
      std::ostringstream out;
      for (std::size_t ln = 1; std::getline(in, line); ++ln) {
        if (line.empty() || line[0] == '#') continue;
        try {
          out << to_string(loc.locate(parse_point(line, 2))) << "\n";
        } catch (const ValidationError& e) {
          throw ValidationError(points_path + ":" + std::to_string(ln) + ": " + e.what());
        }
      }
      std::cout << out.str();
      return kExitOk;
    }

    if (*laudit) {
      const Network net = load_network(net_path);
      std::optional<SicLocator> loc;
      if (!locator_path.empty()) {
        loc = load_locator(locator_path);
      } else {
        LocatorOptions lo;
        lo.c1 = c1;
        loc = build_locator(net, station ? station_index(station, net) : 0, g.eps, lo);
      }
      return report_audit(run_locate_audit(net, *loc, g.seed, budget));
    }

    if (*sched) {
      const ScheduleReport r = schedule_demo(chain_n, chain_alpha);
      std::cout << "n\t" << r.n << "\n";
      std::cout << "alpha\t" << fmt(r.alpha) << "\n";
      std::cout << "slots_with_sic\t" << r.slots_with_sic << "\n";
      std::cout << "slots_without_sic\t" << r.slots_without_sic << "\n";
      std::cout << "min_stage_sinr\t" << fmt(r.min_stage_sinr) << "\n";
      for (std::size_t k = 0; k < r.stage_sinr.size(); ++k) {
        std::cout << "receiver\t" << k + 1;
        for (double v : r.stage_sinr[k]) std::cout << '\t' << fmt(v);
        std::cout << "\n";
      }
      const bool ok = r.slots_with_sic == 1 && r.min_stage_sinr >= 1.0 - 1e-9;
      return ok ? kExitOk : kExitAudit;
    }

    if (*audit) {
      const Network net = load_network(net_path);
      AuditOptions ao;
      ao.seed = g.seed;
      ao.budget = budget;
      ao.eps = g.eps;
      ao.c1 = c1;
      ao.locate = !no_locate;
      return report_audit(run_audit(net, ao));
    }

    if (*bench) {
      bench_opts.seed = g.seed;
      const BenchResult r = run_bench(bench_opts);
      std::cout << r.to_tsv();
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DegenerateInputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitUsage;
}
