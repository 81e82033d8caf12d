#include "sicmap/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"

#include "sicmap/errors.hpp"

namespace sicmap {

using nlohmann::json;

namespace {

[[noreturn]] void field_error(const std::string& field, const std::string& what) {
  throw ValidationError("field '" + field + "': " + what);
}

double number_field(const json& j, const std::string& name) {
  if (!j.contains(name)) field_error(name, "missing");
  const json& v = j.at(name);
  if (!v.is_number()) field_error(name, "expected a number");
  return v.get<double>();
}

}  // namespace

Network parse_network(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ValidationError("parse error at line " + std::to_string(line) + ", column " +
                          std::to_string(col) + ": " + e.what());
  }
  if (!j.is_object()) throw ValidationError("network file must hold a JSON object");
  for (const auto& [key, _] : j.items()) {
    static const char* known[] = {"dim", "stations", "noise", "beta", "alpha", "power"};
    if (std::none_of(std::begin(known), std::end(known),
                     [&](const char* k) { return key == k; })) {
      field_error(key, "unknown field");
    }
  }
  if (!j.contains("dim")) field_error("dim", "missing");
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 1) {
    field_error("dim", "expected a positive integer");
  }
  const auto dim = static_cast<std::size_t>(j["dim"].get<long long>());
  if (!j.contains("stations")) field_error("stations", "missing");
  const json& st = j["stations"];
  if (!st.is_array()) field_error("stations", "expected an array");
  std::vector<Point> stations;
  for (std::size_t k = 0; k < st.size(); ++k) {
    const std::string f = "stations[" + std::to_string(k) + "]";
    const json& p = st[k];
    if (!p.is_array()) field_error(f, "expected a coordinate array");
    if (p.size() != dim) field_error(f, "expected " + std::to_string(dim) + " coordinates");
    std::vector<double> c;
    for (std::size_t a = 0; a < p.size(); ++a) {
      if (!p[a].is_number()) field_error(f + "[" + std::to_string(a) + "]", "expected a number");
      c.push_back(p[a].get<double>());
    }
    stations.emplace_back(std::move(c));
  }
  if (j.contains("power")) {
    const json& pw = j["power"];
    auto check = [](const json& v, const std::string& f) {
      if (!v.is_number()) field_error(f, "expected a number");
      if (v.get<double>() != 1.0) field_error(f, "only uniform power 1 is supported");
    };
    if (pw.is_array()) {
      if (pw.size() != stations.size()) field_error("power", "expected one entry per station");
      for (std::size_t k = 0; k < pw.size(); ++k) check(pw[k], "power[" + std::to_string(k) + "]");
    } else {
      check(pw, "power");
    }
  }
  return Network(dim, std::move(stations), number_field(j, "noise"), number_field(j, "beta"),
                 number_field(j, "alpha"));
}

Network load_network(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_network(ss.str());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string network_to_json(const Network& net) {
  json j;
  j["dim"] = net.dim();
  j["stations"] = json::array();
  for (const auto& s : net.stations()) {
    j["stations"].push_back(std::vector<double>(s.coords().begin(), s.coords().end()));
  }
  j["noise"] = net.noise();
  j["beta"] = net.beta();
  j["alpha"] = net.alpha();
  return j.dump() + "\n";
}

namespace {

class Writer {
 public:
  explicit Writer(std::ostream& out) : out_(out) {}
  void bytes(const void* p, std::size_t n) { out_.write(static_cast<const char*>(p), n); }
  template <typename T>
  void put(T v) {
    std::uint64_t bits = 0;
    if constexpr (std::is_floating_point_v<T>) {
      static_assert(sizeof(T) == 8);
      std::memcpy(&bits, &v, 8);
    } else {
      bits = static_cast<std::uint64_t>(v);
    }
    unsigned char buf[sizeof(T)];
    for (std::size_t k = 0; k < sizeof(T); ++k) buf[k] = static_cast<unsigned char>(bits >> (8 * k));
    bytes(buf, sizeof(T));
  }

 private:
  std::ostream& out_;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  void bytes(void* p, std::size_t n) {
    in_.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n)) {
      throw ValidationError("locator file is truncated");
    }
  }
  template <typename T>
  T get() {
    unsigned char buf[sizeof(T)];
    bytes(buf, sizeof(T));
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < sizeof(T); ++k) bits |= std::uint64_t{buf[k]} << (8 * k);
    if constexpr (std::is_floating_point_v<T>) {
      double v;
      std::memcpy(&v, &bits, 8);
      return v;
    } else {
      return static_cast<T>(bits);
    }
  }

 private:
  std::istream& in_;
};

}  // namespace

void write_locator(const SicLocator& loc, std::ostream& out) {
  Writer w(out);
  w.bytes("SICL", 4);
  w.put<std::uint16_t>(kLocatorVersion);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(loc.station));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(loc.n));
  w.put<double>(loc.eps);
  w.put<double>(loc.c1);
  w.put<double>(loc.eps_tilde);
  w.put<double>(loc.frame.x0);
  w.put<double>(loc.frame.y0);
  w.put<double>(loc.frame.h);
  w.put<std::uint32_t>(static_cast<std::uint32_t>(loc.zones.size()));
  w.put<std::uint32_t>(static_cast<std::uint32_t>(loc.empty_orderings));
  for (const auto& z : loc.zones) {
    w.put<std::uint32_t>(static_cast<std::uint32_t>(z.ordering.size()));
    for (std::size_t s : z.ordering.stations) w.put<std::uint32_t>(static_cast<std::uint32_t>(s));
    w.put<std::int64_t>(z.grid.col_begin);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(z.grid.cols.size()));
    for (const auto& c : z.grid.cols) {
      w.put<std::uint8_t>(c.empty ? 1 : 0);
      w.put<std::int32_t>(c.lower.lo);
      w.put<std::int32_t>(c.lower.hi);
      w.put<std::int32_t>(c.upper.lo);
      w.put<std::int32_t>(c.upper.hi);
    }
  }
  if (!out) throw ValidationError("failed to write locator");
}

SicLocator read_locator(std::istream& in) {
  Reader r(in);
  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, "SICL", 4) != 0) throw ValidationError("not a locator file");
  const auto version = r.get<std::uint16_t>();
  if (version != kLocatorVersion) {
    throw ValidationError("unsupported locator version " + std::to_string(version));
  }
  SicLocator loc;
  loc.station = r.get<std::uint32_t>();
  loc.n = r.get<std::uint32_t>();
  loc.eps = r.get<double>();
  loc.c1 = r.get<double>();
  loc.eps_tilde = r.get<double>();
  loc.frame.x0 = r.get<double>();
  loc.frame.y0 = r.get<double>();
  loc.frame.h = r.get<double>();
  if (loc.n < 2 || loc.n > 64 || loc.station >= loc.n) {
    throw ValidationError("locator header has bad station counts");
  }
  if (!(std::isfinite(loc.frame.x0) && std::isfinite(loc.frame.y0) && loc.frame.h > 0 &&
        std::isfinite(loc.frame.h))) {
    throw ValidationError("locator header has a bad grid frame");
  }
  const auto zones = r.get<std::uint32_t>();
  loc.empty_orderings = r.get<std::uint32_t>();
  for (std::uint32_t k = 0; k < zones; ++k) {
    LocatorZone z;
    const auto len = r.get<std::uint32_t>();
    if (len == 0 || len > loc.n) throw ValidationError("locator ordering has bad length");
    for (std::uint32_t s = 0; s < len; ++s) z.ordering.stations.push_back(r.get<std::uint32_t>());
    try {
      z.ordering.validate(loc.n);
    } catch (const std::exception& e) {
      throw ValidationError(std::string("locator ordering: ") + e.what());
    }
    if (z.ordering.target() != loc.station) {
      throw ValidationError("locator ordering does not end at the located station");
    }
    z.grid.frame = loc.frame;
    z.grid.col_begin = r.get<std::int64_t>();
    const auto ncols = r.get<std::uint32_t>();
    for (std::uint32_t c = 0; c < ncols; ++c) {
      GridColumn col;
      const auto flags = r.get<std::uint8_t>();
      if (flags > 1) throw ValidationError("locator column has unknown flags");
      col.empty = flags == 1;
      col.lower.lo = r.get<std::int32_t>();
      col.lower.hi = r.get<std::int32_t>();
      col.upper.lo = r.get<std::int32_t>();
      col.upper.hi = r.get<std::int32_t>();
      if (!col.empty && !(col.lower.lo <= col.lower.hi && col.lower.hi <= col.upper.hi &&
                          col.lower.lo <= col.upper.lo && col.upper.lo <= col.upper.hi)) {
        throw ValidationError("locator column has inconsistent runs");
      }
      z.grid.cols.push_back(col);
    }
    loc.zones.push_back(std::move(z));
  }
  if (in.peek() != std::char_traits<char>::eof()) {
    throw ValidationError("locator file has trailing bytes");
  }
  loc.build_index();
  return loc;
}

void save_locator(const SicLocator& loc, const std::string& path) {
  std::ostringstream ss;
  write_locator(loc, ss);
  write_file_atomic(path, ss.str());
}

SicLocator load_locator(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path);
  return read_locator(in);
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
      std::remove(tmp.c_str());
      throw ValidationError("failed writing " + path);
    }
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw ValidationError("cannot replace " + path);
  }
}

}  // namespace sicmap
