#pragma once

#include <iosfwd>
#include <string>

#include "sicmap/model.hpp"
#include "sicmap/pointloc.hpp"

namespace sicmap {

// {"dim": d, "stations": [[x, y], ...], "noise": N, "beta": b, "alpha": a}
// with an optional "power" (a number or per-station list) that must be 1.
// Throws ValidationError with line/field context.
Network parse_network(const std::string& text);
Network load_network(const std::string& path);
std::string network_to_json(const Network& net);

inline constexpr std::uint16_t kLocatorVersion = 1;

// Little-endian; magic "SICL", version, frame, then one column table per
// stored ordering.
void write_locator(const SicLocator& loc, std::ostream& out);
// Validates the structure and rebuilds the query index.
SicLocator read_locator(std::istream& in);
void save_locator(const SicLocator& loc, const std::string& path);
SicLocator load_locator(const std::string& path);

// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace sicmap
