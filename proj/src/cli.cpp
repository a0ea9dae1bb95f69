#include "otto/cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "otto/error.hpp"
#include "otto/io.hpp"

namespace otto::cli {

namespace {

using io::Json;

const std::vector<std::string> kCommands = {"analyze", "sweep", "boundaries", "optimize",
                                            "table1"};
const std::vector<std::string> kRaw = {"b1", "b2", "jx", "jy", "dz", "gz"};

// Option storage for one subcommand. std::map keeps addresses stable for
// CLI11's bound pointers.
struct Storage {
  std::map<std::string, double> numbers;
  std::map<std::string, std::size_t> counts;
  std::map<std::string, std::string> strings;
  std::map<std::string, bool> flags;
  std::vector<double> th_list;
  std::map<std::string, CLI::Option*> options;
};

void add_number(CLI::App* app, Storage& s, const std::string& name, const std::string& help) {
  s.options[name] = app->add_option("--" + name, s.numbers[name], help);
}

void add_count(CLI::App* app, Storage& s, const std::string& name, const std::string& help) {
  s.options[name] = app->add_option("--" + name, s.counts[name], help);
}

void add_flag(CLI::App* app, Storage& s, const std::string& name, const std::string& help) {
  s.options[name] = app->add_flag("--" + name, s.flags[name], help);
}

void add_common(CLI::App* app, Storage& s, const std::string& default_format) {
  s.strings["output"] = "";
  s.options["output"] = app->add_option("-o,--output", s.strings["output"], "output file");
  s.strings["format"] = default_format;
  s.options["format"] = app->add_option("--format", s.strings["format"], "csv | json | text")
                            ->check(CLI::IsMember({"csv", "json", "text"}));
}

void add_temperatures(CLI::App* app, Storage& s) {
  add_number(app, s, "tc", "cold bath temperature");
  add_number(app, s, "th", "hot bath temperature");
}

void add_family(CLI::App* app, Storage& s) {
  s.strings["family"] = "";
  s.options["family"] = app->add_option("--family", s.strings["family"],
                                        "three-level | r2const | jz")
                            ->check(CLI::IsMember({"three-level", "r2const", "jz"}));
  add_number(app, s, "r1", "fixed r1 (jz family)");
  add_number(app, s, "r2", "fixed r2 (r2const and jz families)");
  for (const auto& k : kRaw) add_number(app, s, k, "raw coupling, reduced to r1/r2");
  for (const auto& k : {"x-min", "x-max", "y-min", "y-max"}) add_number(app, s, k, "window bound");
  add_flag(app, s, "no-mirror", "three-level: physical ledger below the diagonal");
}

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  return out;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool has_flag(const std::vector<std::string>& args, const std::string& key) {
  const std::string flag = "--" + key;
  return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
    return a == flag || a.rfind(flag + "=", 0) == 0;
  });
}

// Pulls --config out of args and appends its key=value entries for flags
// not present on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::string path;
  for (auto it = args.begin(); it != args.end();) {
    if (*it == "--config") {
      if (it + 1 == args.end()) throw UsageError("--config: missing file name");
      path = *(it + 1);
      it = args.erase(it, it + 2);
    } else if (it->rfind("--config=", 0) == 0) {
      path = it->substr(9);
      it = args.erase(it);
    } else {
      ++it;
    }
  }
  if (path.empty()) return args;
  std::ifstream in(path);
  if (!in) throw UsageError("--config: cannot read " + path);
  std::string line;
  std::vector<std::string> extra;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("--config: expected key=value, got '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "config") throw UsageError("--config: nested config files are not supported");
    if (has_flag(args, key)) continue;
    extra.push_back("--" + key + "=" + value);
  }
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

std::optional<double> number_if_set(const Storage& s, const std::string& name) {
  const auto it = s.options.find(name);
  if (it == s.options.end() || it->second->count() == 0) return std::nullopt;
  return s.numbers.at(name);
}

bool is_set(const Storage& s, const std::string& name) {
  const auto it = s.options.find(name);
  return it != s.options.end() && it->second->count() > 0;
}

void fill_endpoint(const Storage& s, const std::string& suffix, EndpointInput& e) {
  e.jz = number_if_set(s, "jz" + suffix);
  e.r1 = number_if_set(s, "r1" + suffix);
  e.r2 = number_if_set(s, "r2" + suffix);
  e.b1 = number_if_set(s, "b1" + suffix);
  e.b2 = number_if_set(s, "b2" + suffix);
  e.jx = number_if_set(s, "jx" + suffix);
  e.jy = number_if_set(s, "jy" + suffix);
  e.dz = number_if_set(s, "dz" + suffix);
  e.gz = number_if_set(s, "gz" + suffix);
}

bool any_raw(const EndpointInput& e) { return e.b1 || e.b2 || e.jx || e.jy || e.dz || e.gz; }

template <typename T>
std::optional<T> first_of(const std::optional<T>& a, const std::optional<T>& b) {
  return a ? a : b;
}

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string summary_line(const CycleResult& r) {
  std::string line = std::string(to_string(r.mode)) + " W=" + fmt6(r.w);
  char buf[64];
  if (r.efficiency) {
    std::snprintf(buf, sizeof buf, " eta=%.1f%%", 100.0 * *r.efficiency);
    line += buf;
  }
  if (r.cop) {
    std::snprintf(buf, sizeof buf, " cop=%.3g", *r.cop);
    line += buf;
  }
  return line;
}

char mode_glyph(OperatingMode m) {
  switch (m) {
    case OperatingMode::Engine: return 'E';
    case OperatingMode::Refrigerator: return 'R';
    case OperatingMode::Heater: return 'H';
    case OperatingMode::Accelerator: return 'A';
    case OperatingMode::Idle: return '.';
  }
  return '.';
}

// Mode letters, top row = y_max.
std::string region_map_text(const RegionMap& map) {
  std::string out;
  for (std::size_t row = map.ny; row-- > 0;) {
    for (std::size_t ix = 0; ix < map.nx; ++ix) out += mode_glyph(map.at(ix, row).mode);
    out += '\n';
  }
  return out;
}

Json provenance(const RunConfig& c) {
  Json p;
  p["tool"] = "otto-spin";
  p["command"] = c.command;
  Json opts = Json::object();
  for (const auto& [k, v] : c.given) opts[k] = v;
  p["options"] = std::move(opts);
  Json resolved;
  if (c.command == "analyze") {
    resolved["spec_i"] = io::to_json(resolve_endpoint(c, false));
    resolved["spec_f"] = io::to_json(resolve_endpoint(c, true));
    resolved["tc"] = *c.tc;
    resolved["th"] = *c.th;
    resolved["reverse"] = c.reverse;
    resolved["zero_tol"] = c.zero_tol;
  } else if (c.command == "table1") {
    resolved["tc"] = *c.tc;
    resolved["th"] = c.th_list;
    resolved["grid"] = c.grid;
    resolved["refine_tol"] = c.refine_tol;
  } else {
    resolved["plane"] = io::to_json(resolve_plane(c));
    resolved["window"] = io::to_json(resolve_window(c));
    if (c.command == "sweep") {
      resolved["n"] = c.n;
      resolved["samples"] = c.samples;
      resolved["zero_tol"] = c.zero_tol;
    } else if (c.command == "boundaries") {
      resolved["samples"] = c.samples;
    } else {
      resolved["grid"] = c.grid;
      resolved["refine_tol"] = c.refine_tol;
      resolved["zero_tol"] = c.zero_tol;
      resolved["objective"] = c.maximize ? "maximize" : "minimize";
    }
  }
  p["resolved"] = std::move(resolved);
  return p;
}

void emit(const RunConfig& c, const std::string& content, std::ostream& out) {
  if (c.output.empty()) {
    out << content;
    return;
  }
  io::atomic_write(c.output, content);
  if (c.format != "json") {
    io::atomic_write(c.output + ".provenance.json", io::dump(provenance(c)));
  }
}

Json document(const RunConfig& c) {
  Json doc;
  doc["provenance"] = provenance(c);
  return doc;
}

int run_analyze(const RunConfig& c, std::ostream& out) {
  const CycleSpec cycle{resolve_endpoint(c, false), resolve_endpoint(c, true), *c.tc, *c.th};
  const CycleResult r = c.reverse ? analyze_reversed(cycle, c.zero_tol) : analyze(cycle, c.zero_tol);
  const std::string line = summary_line(r);
  out << line << '\n';
  if (c.output.empty()) return 0;
  std::string content;
  if (c.format == "json") {
    Json doc = document(c);
    doc["result"] = io::to_json(r);
    content = io::dump(doc);
  } else if (c.format == "csv") {
    content = io::cycle_result_csv(r);
  } else {
    content = line + '\n';
  }
  emit(c, content, out);
  return 0;
}

int run_sweep(const RunConfig& c, std::ostream& out) {
  const RegionMap map =
      region_map(resolve_plane(c), resolve_window(c), c.n, c.n, c.zero_tol, c.samples);
  std::string content;
  if (c.format == "json") {
    Json doc = document(c);
    doc["region_map"] = io::to_json(map);
    content = io::dump(doc);
  } else if (c.format == "csv") {
    content = io::region_map_csv(map);
  } else {
    content = region_map_text(map);
  }
  emit(c, content, out);
  return 0;
}

int run_boundaries(const RunConfig& c, std::ostream& out) {
  const ControlPlane plane = resolve_plane(c);
  const Window window = resolve_window(c);
  std::vector<Polyline> lines;
  Json extra = Json::object();
  switch (plane.family) {
    case CaseFamily::ThreeLevel: {
      lines = boundaries(plane, window, c.samples);
      const auto b = three_level_boundaries(plane.tc, plane.th);
      extra["slopes"] = Json::array({b.diagonal, b.upper, b.lower});
      break;
    }
    case CaseFamily::R2Const: {
      lines = boundaries(plane, window, c.samples);
      extra["kappa"] = kappa(plane.r2, plane.tc, plane.th);
      if (plane.th > plane.tc) extra["critical_r2"] = critical_r2(plane.tc, plane.th);
      extra["diagonal_crossings"] = r2const_diagonal_crossings(plane.r2, plane.tc, plane.th);
      break;
    }
    case CaseFamily::Jz: {
      lines = jz_boundaries(plane.r1, plane.r2, plane.tc, plane.th, window, c.samples);
      const JzLines l = jz_lines(plane.r1, plane.r2, plane.tc, plane.th);
      extra["zero_work_line"] = {{"slope", l.zero_work.slope}, {"intercept", l.zero_work.intercept}};
      if (plane.th > plane.tc) {
        const Point x = intersection(l.diagonal, l.zero_work);
        extra["line_intersection"] = Json::array({x.x, x.y});
      }
      break;
    }
  }
  std::string content;
  if (c.format == "csv") {
    content = io::boundaries_csv(lines);
  } else {
    Json doc = document(c);
    doc["analytic"] = std::move(extra);
    doc["boundaries"] = io::to_json(lines);
    content = io::dump(doc);
  }
  emit(c, content, out);
  return 0;
}

int run_optimize(const RunConfig& c, std::ostream& out) {
  OptimizationProblem p;
  p.plane = resolve_plane(c);
  p.window = resolve_window(c);
  p.grid = c.grid;
  p.refine_tol = c.refine_tol;
  p.zero_tol = c.zero_tol;
  p.objective = c.maximize ? Objective::MaximizeWork : Objective::MinimizeWork;
  const auto extrema = find_minima(p);
  std::optional<MaxPowerReport> report;
  if (!c.maximize) {
    const auto engine = std::find_if(extrema.begin(), extrema.end(),
                                     [](const Extremum& e) { return e.efficiency.has_value(); });
    if (engine != extrema.end()) {
      report = MaxPowerReport{*engine, std::abs(engine->w) / engine->q_h,
                              carnot_efficiency(p.plane.tc, p.plane.th),
                              novikov_efficiency(p.plane.tc, p.plane.th)};
    }
  }
  std::string content;
  if (c.format == "json") {
    Json doc = document(c);
    doc["extrema"] = io::to_json(extrema);
    doc["max_power"] = report ? io::to_json(*report) : Json(nullptr);
    content = io::dump(doc);
  } else if (c.format == "csv") {
    content = io::extrema_csv(extrema);
  } else {
    for (const auto& e : extrema) {
      content += "#" + std::to_string(e.basin_id) + " (" + fmt6(e.location.x) + ", " +
                 fmt6(e.location.y) + ") " +
                 summary_line(CycleResult{0, 0, e.w, e.q_h, e.q_c, e.mode, e.efficiency, e.cop}) +
                 '\n';
    }
    if (report) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "eta_mp=%.2f%% eta_C=%.2f%% eta_N=%.2f%%\n",
                    100.0 * report->eta_mp, 100.0 * report->eta_c, 100.0 * report->eta_n);
      content += buf;
    }
  }
  emit(c, content, out);
  return 0;
}

int run_table1(const RunConfig& c, std::ostream& out) {
  const auto rows = table1(*c.tc, c.th_list, c.grid, c.refine_tol);
  std::string content;
  if (c.format == "json") {
    Json doc = document(c);
    doc["rows"] = io::to_json(rows);
    content = io::dump(doc);
  } else if (c.format == "csv") {
    content = io::table1_csv(rows);
  } else {
    content = io::table1_text(rows);
  }
  emit(c, content, out);
  return 0;
}

}  // namespace

RunConfig parse(std::vector<std::string> args) {
  args = merge_config(std::move(args));

  CLI::App app{"Quantum Otto machine on a two-qubit XYZ working medium with DM and KSEA couplings",
               "otto-spin"};
  app.require_subcommand(1);
  std::map<std::string, Storage> storage;

  {
    auto* sub = app.add_subcommand("analyze", "stroke ledger and mode of one cycle");
    Storage& s = storage["analyze"];
    add_temperatures(sub, s);
    add_number(sub, s, "zero-tol", "classification band around zero");
    for (const std::string base : {"jz", "r1", "r2", "b1", "b2", "jx", "jy", "dz", "gz"}) {
      add_number(sub, s, base, "both endpoints");
      add_number(sub, s, base + "-i", "cold-contact endpoint");
      add_number(sub, s, base + "-f", "hot-contact endpoint");
    }
    add_flag(sub, s, "reverse", "report the reversed traversal");
    add_common(sub, s, "text");
  }
  {
    auto* sub = app.add_subcommand("sweep", "operating-mode region map");
    Storage& s = storage["sweep"];
    add_family(sub, s);
    add_temperatures(sub, s);
    add_count(sub, s, "n", "grid resolution per axis");
    add_count(sub, s, "samples", "boundary samples per curve");
    add_number(sub, s, "zero-tol", "classification band around zero");
    add_common(sub, s, "csv");
  }
  {
    auto* sub = app.add_subcommand("boundaries", "analytic mode boundaries");
    Storage& s = storage["boundaries"];
    add_family(sub, s);
    add_temperatures(sub, s);
    add_count(sub, s, "samples", "samples per curve");
    add_common(sub, s, "json");
  }
  {
    auto* sub = app.add_subcommand("optimize", "local extrema of the total work");
    Storage& s = storage["optimize"];
    add_family(sub, s);
    add_temperatures(sub, s);
    add_count(sub, s, "grid", "coarse grid per axis");
    add_number(sub, s, "refine-tol", "pattern-search tolerance");
    add_number(sub, s, "zero-tol", "classification band around zero");
    add_flag(sub, s, "maximize", "search maxima of W (refrigerator side)");
    add_common(sub, s, "json");
  }
  {
    auto* sub = app.add_subcommand("table1", "three-level engine optimum per hot temperature");
    Storage& s = storage["table1"];
    add_number(sub, s, "tc", "cold bath temperature");
    s.options["th"] = sub->add_option("--th", s.th_list, "hot temperatures, comma separated")
                          ->delimiter(',');
    add_count(sub, s, "grid", "coarse grid per axis");
    add_number(sub, s, "refine-tol", "pattern-search tolerance");
    add_common(sub, s, "csv");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  RunConfig c;
  for (const auto& name : kCommands) {
    if (app.got_subcommand(name)) c.command = name;
  }
  const Storage& s = storage.at(c.command);
  for (const auto& [name, opt] : s.options) {
    if (opt->count() == 0) continue;
    if (s.flags.count(name)) {
      c.given[name] = s.flags.at(name) ? "true" : "false";
    } else {
      c.given[name] = join(opt->results());
    }
  }

  c.tc = number_if_set(s, "tc");
  if (c.command == "table1") {
    c.th_list = s.th_list;
  } else {
    c.th = number_if_set(s, "th");
  }
  if (auto v = number_if_set(s, "zero-tol")) c.zero_tol = *v;
  if (auto v = number_if_set(s, "refine-tol")) c.refine_tol = *v;
  c.output = s.strings.at("output");
  c.format = s.strings.at("format");

  fill_endpoint(s, "", c.shared);
  fill_endpoint(s, "-i", c.initial);
  fill_endpoint(s, "-f", c.final);

  if (s.strings.count("family")) c.family = s.strings.at("family");
  c.x_min = number_if_set(s, "x-min");
  c.x_max = number_if_set(s, "x-max");
  c.y_min = number_if_set(s, "y-min");
  c.y_max = number_if_set(s, "y-max");
  if (is_set(s, "n")) c.n = s.counts.at("n");
  if (is_set(s, "grid")) c.grid = s.counts.at("grid");
  if (is_set(s, "samples")) c.samples = s.counts.at("samples");
  c.maximize = s.flags.count("maximize") && s.flags.at("maximize");
  c.no_mirror = s.flags.count("no-mirror") && s.flags.at("no-mirror");
  c.reverse = s.flags.count("reverse") && s.flags.at("reverse");
  return c;
}

Spectrum resolve_endpoint(const RunConfig& c, bool final_endpoint) {
  const EndpointInput& own = final_endpoint ? c.final : c.initial;
  const EndpointInput& sh = c.shared;
  EndpointInput e;
  e.jz = first_of(own.jz, sh.jz);
  e.r1 = first_of(own.r1, sh.r1);
  e.r2 = first_of(own.r2, sh.r2);
  e.b1 = first_of(own.b1, sh.b1);
  e.b2 = first_of(own.b2, sh.b2);
  e.jx = first_of(own.jx, sh.jx);
  e.jy = first_of(own.jy, sh.jy);
  e.dz = first_of(own.dz, sh.dz);
  e.gz = first_of(own.gz, sh.gz);
  if (any_raw(e)) {
    return reduce(SpinParams{e.b1.value_or(0), e.b2.value_or(0), e.jx.value_or(0),
                             e.jy.value_or(0), e.jz.value_or(0), e.dz.value_or(0),
                             e.gz.value_or(0)});
  }
  return Spectrum(e.jz.value_or(0), e.r1.value_or(0), e.r2.value_or(0));
}

ControlPlane resolve_plane(const RunConfig& c) {
  ControlPlane p;
  if (c.family == "r2const") {
    p.family = CaseFamily::R2Const;
  } else if (c.family == "jz") {
    p.family = CaseFamily::Jz;
  } else {
    p.family = CaseFamily::ThreeLevel;
  }
  if (any_raw(c.shared)) {
    const Spectrum s = reduce(SpinParams{c.shared.b1.value_or(0), c.shared.b2.value_or(0),
                                         c.shared.jx.value_or(0), c.shared.jy.value_or(0), 0.0,
                                         c.shared.dz.value_or(0), c.shared.gz.value_or(0)});
    p.r1 = s.r1();
    p.r2 = s.r2();
  } else {
    p.r1 = c.shared.r1.value_or(0);
    p.r2 = c.shared.r2.value_or(0);
  }
  if (p.family == CaseFamily::ThreeLevel) p.r1 = p.r2 = 0.0;
  if (p.family == CaseFamily::R2Const) p.r1 = 0.0;
  p.tc = c.tc.value_or(1.0);
  p.th = c.th.value_or(1.0);
  p.mirror_lower_half = !c.no_mirror;
  return p;
}

Window resolve_window(const RunConfig& c) {
  Window w;
  if (c.family == "jz") {
    w = {-3.0, 5.0, -3.0, 5.0};
  } else if (c.family == "r2const") {
    w = {0.0, 10.0, 0.0, 10.0};
  } else {
    w = {0.0, 8.0, 0.0, 8.0};
  }
  w.x_min = c.x_min.value_or(w.x_min);
  w.x_max = c.x_max.value_or(w.x_max);
  w.y_min = c.y_min.value_or(w.y_min);
  w.y_max = c.y_max.value_or(w.y_max);
  return w;
}

void validate(const RunConfig& c) {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw UsageError(msg);
  };
  auto finite = [](const std::optional<double>& v) { return !v || std::isfinite(*v); };
  if (c.command.empty()) throw UsageError("missing command");

  require(c.tc.has_value(), "--tc is required");
  require(std::isfinite(*c.tc) && *c.tc > 0.0, "--tc: temperature must be positive");
  if (c.command == "table1") {
    require(!c.th_list.empty(), "--th is required (comma-separated list)");
    for (double th : c.th_list) {
      require(std::isfinite(th) && th > *c.tc,
              "--th: every hot temperature must exceed --tc (temperatures)");
    }
  } else {
    require(c.th.has_value(), "--th is required");
    require(std::isfinite(*c.th) && *c.th >= *c.tc,
            "--tc/--th: temperatures must satisfy 0 < tc <= th");
  }
  require(std::isfinite(c.zero_tol) && c.zero_tol >= 0.0, "--zero-tol must be >= 0");
  require(std::isfinite(c.refine_tol) && c.refine_tol > 0.0, "--refine-tol must be > 0");

  for (const EndpointInput* e : {&c.shared, &c.initial, &c.final}) {
    for (const auto* v : {&e->jz, &e->r1, &e->r2, &e->b1, &e->b2, &e->jx, &e->jy, &e->dz, &e->gz}) {
      require(finite(*v), "spectrum flags must be finite numbers");
    }
  }

  if (c.command == "analyze") {
    for (bool fin : {false, true}) {
      const EndpointInput& own = fin ? c.final : c.initial;
      const std::string side = fin ? "-f" : "-i";
      const bool raw = any_raw(own) || any_raw(c.shared);
      const bool reduced = own.r1 || own.r2 || c.shared.r1 || c.shared.r2;
      require(!(raw && reduced), "--r1" + side + "/--b1" + side +
                                     ": give either reduced (jz, r1, r2) or raw couplings, not both");
      const auto r1 = first_of(own.r1, c.shared.r1);
      const auto r2 = first_of(own.r2, c.shared.r2);
      require(!r1 || *r1 >= 0.0, "--r1" + side + ": level shift must be >= 0");
      require(!r2 || *r2 >= 0.0, "--r2" + side + ": level shift must be >= 0");
    }
    return;
  }
  if (c.command == "table1") {
    require(c.grid >= 3, "--grid must be >= 3");
    return;
  }

  require(!c.family.empty(), "--family is required (three-level | r2const | jz)");
  const bool raw = any_raw(c.shared);
  require(!(raw && (c.shared.r1 || c.shared.r2)),
          "--r1/--b1: give either reduced shifts or raw couplings, not both");
  if (c.family == "jz") {
    require(raw || (c.shared.r1 && c.shared.r2), "--r1/--r2 are required for the jz family");
  }
  if (c.family == "r2const") {
    require(raw || c.shared.r2.has_value(), "--r2 is required for the r2const family");
  }
  require(!c.shared.r1 || *c.shared.r1 >= 0.0, "--r1: level shift must be >= 0");
  require(!c.shared.r2 || *c.shared.r2 >= 0.0, "--r2: level shift must be >= 0");

  const Window w = resolve_window(c);
  for (double v : {w.x_min, w.x_max, w.y_min, w.y_max}) {
    require(std::isfinite(v), "--x-min/--x-max/--y-min/--y-max must be finite");
  }
  require(w.x_max > w.x_min, "--x-max must exceed --x-min");
  require(w.y_max > w.y_min, "--y-max must exceed --y-min");
  if (c.family != "jz") {
    require(w.x_min >= 0.0, "--x-min: r1 windows start at 0 or above");
    require(w.y_min >= 0.0, "--y-min: r1 windows start at 0 or above");
  }
  require(c.n >= 2, "--n must be >= 2");
  require(c.grid >= 3, "--grid must be >= 3");
  require(c.samples >= 2, "--samples must be >= 2");
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.command == "analyze") return run_analyze(c, out);
    if (c.command == "sweep") return run_sweep(c, out);
    if (c.command == "boundaries") return run_boundaries(c, out);
    if (c.command == "optimize") return run_optimize(c, out);
    if (c.command == "table1") return run_table1(c, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "error: unknown command " << c.command << '\n';
  return 2;
}

std::vector<std::string> replay_args(const Json& prov) {
  const Json& p = prov.contains("provenance") ? prov.at("provenance") : prov;
  if (!p.contains("command") || !p.contains("options")) {
    throw UsageError("replay: file has no provenance block");
  }
  std::vector<std::string> args{p.at("command").get<std::string>()};
  for (const auto& [k, v] : p.at("options").items()) {
    args.push_back("--" + k + "=" + v.get<std::string>());
  }
  return args;
}

int main_entry(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  try {
    if (const char* env = std::getenv("OTTO_SPIN_THREADS")) {
      char* end = nullptr;
      const long cap = std::strtol(env, &end, 10);
      if (end == env || *end != '\0' || cap < 1) {
        throw UsageError("OTTO_SPIN_THREADS must be a positive integer");
      }
      omp_set_num_threads(static_cast<int>(std::min<long>(cap, omp_get_max_threads())));
    }
    if (!args.empty() && args.front() == "replay") {
      if (args.size() < 2) throw UsageError("replay: missing provenance file");
      std::ifstream in(args[1]);
      if (!in) throw UsageError("replay: cannot read " + args[1]);
      Json prov;
      try {
        prov = Json::parse(in);
      } catch (const Json::exception& e) {
        throw UsageError(std::string("replay: ") + e.what());
      }
      auto replayed = replay_args(prov);
      replayed.insert(replayed.end(), args.begin() + 2, args.end());
      args = std::move(replayed);
    }
    RunConfig config = parse(std::move(args));
    validate(config);
    return run(config, out, err);
  } catch (const HelpRequested& e) {
    out << e.what();
    return 0;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace otto::cli
