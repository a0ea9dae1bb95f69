#pragma once

// Stable text, CSV and JSON emission. Floats are written in the shortest
// form that round-trips; identical inputs give byte-identical output.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "otto/optimize.hpp"

namespace otto::io {

using Json = nlohmann::ordered_json;

std::string format_double(double v);

// Rounds to `digits` significant decimal digits (reported optima use 6).
double round_sig(double v, int digits = 6);

// RFC-4180 field quoting: quoted only when it contains , " CR or LF.
std::string csv_field(std::string_view s);

std::string region_map_csv(const RegionMap& map);
std::string boundaries_csv(const std::vector<Polyline>& lines);
std::string table1_csv(const std::vector<Table1Row>& rows);
std::string table1_text(const std::vector<Table1Row>& rows);
std::string extrema_csv(const std::vector<Extremum>& extrema);
std::string cycle_result_csv(const CycleResult& r);

Json to_json(const CycleResult& r);
Json to_json(const Spectrum& s);
Json to_json(const ControlPlane& plane);
Json to_json(const Window& w);
Json to_json(const Polyline& line);
Json to_json(const std::vector<Polyline>& lines);
Json to_json(const RegionMap& map);
Json to_json(const Extremum& e);
Json to_json(const std::vector<Extremum>& extrema);
Json to_json(const MaxPowerReport& report);
Json to_json(const std::vector<Table1Row>& rows);

std::string dump(const Json& doc);

// Writes to a temporary sibling and renames it over `path`.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace otto::io
