#include "otto/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "otto/error.hpp"

namespace otto::io {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (v == 0.0) return "0";  // folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double round_sig(double v, int digits) {
  if (!std::isfinite(v) || v == 0.0) return v;
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, digits - 1);
  double out = 0.0;
  std::from_chars(buf, res.ptr, out);
  return out;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

namespace {

std::string opt_field(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

Json opt_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

std::string region_map_csv(const RegionMap& map) {
  std::string out = "x,y,mode,w\n";
  for (const Cell& c : map.cells) {
    out += format_double(c.x);
    out += ',';
    out += format_double(c.y);
    out += ',';
    out += to_string(c.mode);
    out += ',';
    out += format_double(c.w);
    out += '\n';
  }
  return out;
}

std::string boundaries_csv(const std::vector<Polyline>& lines) {
  std::string out = "id,label,segment,x,y\n";
  for (const auto& line : lines) {
    for (std::size_t s = 0; s < line.segments.size(); ++s) {
      for (const Point& p : line.segments[s]) {
        out += std::to_string(line.id) + ',' + csv_field(line.label) + ',' + std::to_string(s) +
               ',' + format_double(p.x) + ',' + format_double(p.y) + '\n';
      }
    }
  }
  return out;
}

std::string table1_csv(const std::vector<Table1Row>& rows) {
  std::string out = "th,r1_i,r1_f,w,eta_mp,eta_c,eta_n\n";
  for (const auto& r : rows) {
    out += format_double(r.th);
    for (double v : {r.r1_i, r.r1_f, r.w, r.eta_mp, r.eta_c, r.eta_n}) {
      out += ',';
      out += format_double(round_sig(v));
    }
    out += '\n';
  }
  return out;
}

std::string table1_text(const std::vector<Table1Row>& rows) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-6s %10s %10s %11s %8s %8s %8s\n", "th", "r1_i", "r1_f", "W",
                "eta_mp", "eta_C", "eta_N");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-6g %10.6g %10.6g %11.6g %7.2f%% %7.1f%% %7.2f%%\n", r.th,
                  r.r1_i, r.r1_f, r.w, 100.0 * r.eta_mp, 100.0 * r.eta_c, 100.0 * r.eta_n);
    out += line;
  }
  return out;
}

std::string extrema_csv(const std::vector<Extremum>& extrema) {
  std::string out = "basin,x,y,w,q_h,q_c,mode,efficiency,cop\n";
  for (const auto& e : extrema) {
    out += std::to_string(e.basin_id) + ',' + format_double(round_sig(e.location.x)) + ',' +
           format_double(round_sig(e.location.y)) + ',' + format_double(round_sig(e.w)) + ',' +
           format_double(round_sig(e.q_h)) + ',' + format_double(round_sig(e.q_c)) + ',' +
           std::string(to_string(e.mode)) + ',' +
           opt_field(e.efficiency ? std::optional(round_sig(*e.efficiency)) : std::nullopt) + ',' +
           opt_field(e.cop ? std::optional(round_sig(*e.cop)) : std::nullopt) + '\n';
  }
  return out;
}

std::string cycle_result_csv(const CycleResult& r) {
  std::string out = "w_in,w_out,w,q_h,q_c,mode,efficiency,cop\n";
  out += format_double(r.w_in) + ',' + format_double(r.w_out) + ',' + format_double(r.w) + ',' +
         format_double(r.q_h) + ',' + format_double(r.q_c) + ',' + std::string(to_string(r.mode)) +
         ',' + opt_field(r.efficiency) + ',' + opt_field(r.cop) + '\n';
  return out;
}

Json to_json(const CycleResult& r) {
  Json j;
  j["w_in"] = r.w_in;
  j["w_out"] = r.w_out;
  j["w"] = r.w;
  j["q_h"] = r.q_h;
  j["q_c"] = r.q_c;
  j["mode"] = std::string(to_string(r.mode));
  j["efficiency"] = opt_json(r.efficiency);
  j["cop"] = opt_json(r.cop);
  return j;
}

Json to_json(const Spectrum& s) {
  Json j;
  j["jz"] = s.jz();
  j["r1"] = s.r1();
  j["r2"] = s.r2();
  return j;
}

Json to_json(const ControlPlane& p) {
  Json j;
  j["family"] = std::string(to_string(p.family));
  if (p.family == CaseFamily::Jz) j["r1"] = p.r1;
  if (p.family != CaseFamily::ThreeLevel) j["r2"] = p.r2;
  j["tc"] = p.tc;
  j["th"] = p.th;
  if (p.family == CaseFamily::ThreeLevel) j["mirror_lower_half"] = p.mirror_lower_half;
  return j;
}

Json to_json(const Window& w) {
  Json j;
  j["x_min"] = w.x_min;
  j["x_max"] = w.x_max;
  j["y_min"] = w.y_min;
  j["y_max"] = w.y_max;
  return j;
}

Json to_json(const Polyline& line) {
  Json j;
  j["id"] = line.id;
  j["label"] = line.label;
  j["dropped"] = line.dropped;
  Json segs = Json::array();
  for (const auto& seg : line.segments) {
    Json pts = Json::array();
    for (const Point& p : seg) pts.push_back(Json::array({p.x, p.y}));
    segs.push_back(std::move(pts));
  }
  j["segments"] = std::move(segs);
  return j;
}

Json to_json(const std::vector<Polyline>& lines) {
  Json arr = Json::array();
  for (const auto& l : lines) arr.push_back(to_json(l));
  return arr;
}

Json to_json(const RegionMap& map) {
  Json j;
  j["plane"] = to_json(map.plane);
  j["window"] = to_json(map.window);
  j["nx"] = map.nx;
  j["ny"] = map.ny;
  Json cells = Json::array();
  for (const Cell& c : map.cells) {
    Json cj;
    cj["x"] = c.x;
    cj["y"] = c.y;
    cj["mode"] = std::string(to_string(c.mode));
    cj["w"] = c.w;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  j["boundaries"] = to_json(map.boundaries);
  return j;
}

Json to_json(const Extremum& e) {
  Json j;
  j["basin_id"] = e.basin_id;
  j["x"] = round_sig(e.location.x);
  j["y"] = round_sig(e.location.y);
  j["w"] = round_sig(e.w);
  j["q_h"] = round_sig(e.q_h);
  j["q_c"] = round_sig(e.q_c);
  j["mode"] = std::string(to_string(e.mode));
  j["efficiency"] = e.efficiency ? Json(round_sig(*e.efficiency)) : Json(nullptr);
  j["cop"] = e.cop ? Json(round_sig(*e.cop)) : Json(nullptr);
  return j;
}

Json to_json(const std::vector<Extremum>& extrema) {
  Json arr = Json::array();
  for (const auto& e : extrema) arr.push_back(to_json(e));
  return arr;
}

Json to_json(const MaxPowerReport& r) {
  Json j;
  j["optimum"] = to_json(r.optimum);
  j["eta_mp"] = round_sig(r.eta_mp);
  j["eta_c"] = round_sig(r.eta_c);
  j["eta_n"] = round_sig(r.eta_n);
  return j;
}

Json to_json(const std::vector<Table1Row>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["th"] = r.th;
    j["r1_i"] = round_sig(r.r1_i);
    j["r1_f"] = round_sig(r.r1_f);
    j["w"] = round_sig(r.w);
    j["eta_mp"] = round_sig(r.eta_mp);
    j["eta_c"] = round_sig(r.eta_c);
    j["eta_n"] = round_sig(r.eta_n);
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void atomic_write(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open " + tmp.string() + " for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!f) throw Error(ErrorCode::InvalidArgument, "write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::InvalidArgument, "cannot move output into " + path.string());
  }
}

}  // namespace otto::io
